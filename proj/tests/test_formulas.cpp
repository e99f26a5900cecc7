#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <ccnorm/formulas.hpp>

using namespace ccnorm;

namespace {

TruncConfig small_cfg(Index n_max = 100000) {
  TruncConfig c;
  c.n_max = n_max;
  return c;
}

std::vector<double> random_values(std::mt19937_64& rng, Index max_len) {
  std::uniform_int_distribution<Index> len(1, max_len);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(len(rng)));
  for (double& x : v) x = U(rng) < 0.1 ? 0.0 : U(rng);
  return v;
}

bool close_rel(double a, double b, double rel) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

Weight ones(std::size_t n) { return Weight::list(std::vector<double>(n, 1.0)); }

}  // namespace

TEST(NormGeneral, Examples) {
  const Weight u = Weight::list({1, 2, 4});
  const Weight v = Weight::list({1, 0.5, 0.25});
  EXPECT_DOUBLE_EQ(norm_general(OpTag::I, u, v, Cone::All).value.value(), 1.0);
  const NormResult r = norm_general(OpTag::C, ones(4), ones(4), Cone::All);
  EXPECT_DOUBLE_EQ(r.value.value(), 1.0);
  EXPECT_EQ(r.status, Status::TruncatedConverged);
  EXPECT_EQ(r.n_used, 4);
}

TEST(Cesaro, Examples) {
  const Weight h = Weight::power(0.5);
  const NormResult r = norm_cesaro(h, h, Cone::All, small_cfg(1'000'000));
  EXPECT_NEAR(r.value.value(), 2.0, std::max(1e-3, r.residual_estimate));
  EXPECT_LE(r.value.value(), 2.0);
  EXPECT_NEAR(norm_cesaro(Weight::power(-1), Weight::power(-1), Cone::Nonincr, small_cfg()).value.value(), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(norm_cesaro(Weight::list({3, 1, 2}), Weight::list({1, 0, 0}), Cone::All).value.value(), 3.0);
}

TEST(Copson, Examples) {
  const Weight w = Weight::power(1.0);
  const NormResult r = norm_copson(w, w, Cone::Nonneg, small_cfg());
  EXPECT_NEAR(r.value.value(), std::numbers::pi * std::numbers::pi / 6.0, 1e-9);
  EXPECT_EQ(r.argmax, 1);
  const NormResult d = norm_copson(Weight::power(-1), Weight::power(-1), Cone::All, small_cfg());
  EXPECT_EQ(d.status, Status::Divergent);
  EXPECT_TRUE(d.value.is_infinite());
  const NormResult z = norm_copson(Weight::list({1, 2}), Weight::list({5}), Cone::Nondecr);
  EXPECT_EQ(z.status, Status::ClosedForm);
  EXPECT_EQ(z.value.value(), 0.0);
}

TEST(CesaroMinusIdentity, Examples) {
  const Weight h = Weight::power(0.5);
  const NormResult r = dist_cesaro_identity(h, h, Cone::All, small_cfg(1'000'000));
  EXPECT_NEAR(r.value.value(), 3.0, std::max(1e-3, r.residual_estimate));
  // sup is the limit 1 - 1/n, so the scan sits 1/n_max below it
  const NormResult lim = dist_cesaro_identity(Weight::power(-1), Weight::power(-1), Cone::Nonneg, small_cfg());
  EXPECT_LE(lim.value.value(), 1.0);
  EXPECT_NEAR(lim.value.value(), 1.0, std::max(2e-5, lim.residual_estimate));
  EXPECT_NEAR(dist_cesaro_identity(Weight::power(0), Weight::power(0), Cone::Nondecr, small_cfg()).value.value(), 1.0,
              2e-5);
}

TEST(CopsonMinusIdentity, Examples) {
  const Weight w2 = Weight::power(2.0);
  const NormResult lim = dist_copson_identity(w2, w2, Cone::All, small_cfg());
  EXPECT_LE(lim.value.value(), 1.5);
  EXPECT_NEAR(lim.value.value(), 1.5, std::max(5e-5, lim.residual_estimate));
  const Weight h = Weight::power(0.5);
  const NormResult r = dist_copson_identity(h, h, Cone::Nonneg, small_cfg(1'000'000));
  EXPECT_NEAR(r.value.value(), 2.0, std::max(1e-3, r.residual_estimate));
  const NormResult open = dist_copson_identity(h, h, Cone::Nonincr);
  EXPECT_EQ(open.status, Status::Unsupported);
  EXPECT_NE(open.note.find("open problem"), std::string::npos);
  EXPECT_EQ(dist_copson_identity(h, h, Cone::Nondecr).value.value(), 0.0);
}

TEST(CMinusSstar, Examples) {
  const Weight one = Weight::power(0.0);
  EXPECT_NEAR(norm_c_minus_sstar(one, one, Cone::All, small_cfg()).value.value(), 2.0, 1e-12);
  EXPECT_DOUBLE_EQ(norm_c_minus_sstar(Weight::list({1, 1}), Weight::list({1}), Cone::Nonneg).value.value(), 1.0);
  EXPECT_NEAR(norm_c_minus_sstar(one, one, Cone::Nondecr, small_cfg()).value.value(), 1.0, 1e-12);
  // u_k = k on the nondecreasing cone: v_n u_{n+1} = n + 1 grows without bound
  const NormResult d = norm_c_minus_sstar(Weight::power(-1.0), Weight::power(0.0), Cone::Nondecr, small_cfg());
  EXPECT_EQ(d.status, Status::Divergent);
}

TEST(CstarSD, Examples) {
  const Weight one = Weight::power(0.0);
  EXPECT_NEAR(norm_cstarsd(one, one, Cone::Nondecr, small_cfg()).value.value(), 1.0, 1e-12);
  // x = 1 is nonincreasing and ((C* - S)D x)_1 = sum 1/(k(k+1)) = 1
  EXPECT_NEAR(norm_cstarsd(one, one, Cone::Nonincr, small_cfg()).value.value(), 1.0, 1e-12);
  const Weight zero = Weight::list({0, 0, 0});
  for (Cone c : kCones) EXPECT_EQ(norm_cstarsd(zero, Weight::power(0.0), c, small_cfg(1000)).value.value(), 0.0);
}

TEST(NormOf, GenericEngineAgreesWithSpecializedOnLists) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 60; ++i) {
    const Weight u = Weight::list(random_values(rng, 20));
    const Weight v = Weight::list(random_values(rng, 20));
    for (OpTag op : kPrincipalOps)
      for (Cone cone : kCones) {
        const NormResult a = norm_of(op, u, v, cone);
        const NormResult b = norm_general(op, u, v, cone);
        if (a.status == Status::Unsupported) {
          EXPECT_EQ(op, OpTag::CstarMinusI);
          continue;
        }
        EXPECT_TRUE(close_rel(a.value.value(), b.value.value(), 1e-12))
            << op_name(op) << " " << cone_name(cone) << " " << a.value.value() << " vs " << b.value.value();
      }
  }
}

TEST(NormOf, GenericEngineAgreesWithSpecializedOnPowers) {
  for (double a : {-1.5, -0.5, 0.0, 0.4, 1.3})
    for (double b : {-0.7, 0.0, 0.4, 1.0}) {
      const Weight u = Weight::power(a), v = Weight::power(b);
      for (OpTag op : kPrincipalOps)
        for (Cone cone : kCones) {
          const NormResult x = norm_of(op, u, v, cone, small_cfg(20000));
          if (x.status == Status::Unsupported) continue;
          const NormResult y = norm_general(op, u, v, cone, small_cfg(20000));
          EXPECT_EQ(x.status == Status::Divergent, y.status == Status::Divergent)
              << op_name(op) << " " << cone_name(cone) << " " << a << " " << b;
          if (x.status != Status::Divergent && y.status != Status::Divergent) {
            EXPECT_TRUE(close_rel(x.value.value(), y.value.value(), 1e-12))
                << op_name(op) << " " << cone_name(cone) << " " << a << " " << b;
          }
        }
    }
}

TEST(NormOf, ConeOrdering) {
  // smaller cone, smaller norm; nondecreasing lists continue with their
  // last value, so compare against the nonneg norm of the held weight
  std::mt19937_64 rng(33);
  for (int i = 0; i < 60; ++i) {
    const auto uv = random_values(rng, 15);
    const Weight u = Weight::list(uv);
    const Weight v = Weight::list(random_values(rng, 15));
    for (OpTag op : kPrincipalOps) {
      const double all = norm_of(op, u, v, Cone::All).value.value();
      const double nn = norm_of(op, u, v, Cone::Nonneg).value.value();
      EXPECT_LE(nn, all * (1 + 1e-12)) << op_name(op);
      const NormResult dec = norm_of(op, u, v, Cone::Nonincr);
      if (dec.status != Status::Unsupported) EXPECT_LE(dec.value.value(), nn * (1 + 1e-12)) << op_name(op);
      const NormResult inc = norm_of(op, u, v, Cone::Nondecr);
      const double nn_held = norm_of(op, Weight::list(uv, TailRule::Hold), v, Cone::Nonneg).value.value();
      EXPECT_LE(inc.value.value(), nn_held * (1 + 1e-12)) << op_name(op);
    }
  }
}

TEST(NormOf, PositivelyHomogeneousInBothWeights) {
  std::mt19937_64 rng(44);
  for (int i = 0; i < 30; ++i) {
    const Weight u = Weight::list(random_values(rng, 12));
    const Weight v = Weight::list(random_values(rng, 12));
    for (OpTag op : kPrincipalOps)
      for (Cone cone : kCones) {
        const NormResult base = norm_of(op, u, v, cone);
        if (base.status == Status::Unsupported) continue;
        const double b = base.value.value();
        EXPECT_TRUE(close_rel(norm_of(op, u.scaled(4.0), v, cone).value.value(), 4.0 * b, 1e-12));
        EXPECT_TRUE(close_rel(norm_of(op, u, v.scaled(0.25), cone).value.value(), 0.25 * b, 1e-12));
      }
  }
}

TEST(SupOverRows, LongerScansNeverDecrease) {
  const Weight u = Weight::power(0.7), v = Weight::power(0.7);
  double prev = 0.0;
  for (Index n : {10, 100, 1000, 10000, 100000}) {
    const double x = norm_cesaro(u, v, Cone::All, small_cfg(n)).value.value();
    EXPECT_GE(x, prev);
    prev = x;
  }
  EXPECT_LE(prev, 1.0 / 0.3);
}

TEST(SupOverRows, ThreadCountDoesNotChangeResult) {
  const Weight u = Weight::power(0.3), v = Weight::power(0.3);
  TruncConfig one = small_cfg(200000), many = small_cfg(200000);
  one.threads = 1;
  many.threads = 8;
  const NormResult a = dist_cesaro_identity(u, v, Cone::Nonneg, one);
  const NormResult b = dist_cesaro_identity(u, v, Cone::Nonneg, many);
  EXPECT_EQ(a.value.value(), b.value.value());
  EXPECT_EQ(a.argmax, b.argmax);
  EXPECT_EQ(a.residual_estimate, b.residual_estimate);
}

TEST(SupOverRows, ThresholdFlagsDivergence) {
  TruncConfig cfg;
  cfg.divergence_threshold = 10.0;
  const NormResult r = norm_cesaro(Weight::list({100}), Weight::list({1}), Cone::All, cfg);
  EXPECT_EQ(r.status, Status::Divergent);
  EXPECT_TRUE(r.value.is_infinite());
  // below the threshold the same problem is finite
  EXPECT_EQ(norm_cesaro(Weight::list({5}), Weight::list({1}), Cone::All, cfg).value.value(), 5.0);
}

TEST(SupOverRows, GrowthAnalysisCatchesSlowDivergence) {
  // sup_n n^0.01 is infinite although n^0.01 < 2 for n <= 1e6
  const NormResult r = norm_cesaro(Weight::power(0.0), Weight::power(0.01), Cone::All, small_cfg(1000));
  EXPECT_EQ(r.status, Status::Divergent);
}

TEST(SupOverRows, ConvergedScanHasSmallResidual) {
  const NormResult r = norm_cesaro(Weight::power(-1.0), Weight::power(-1.0), Cone::All, small_cfg());
  EXPECT_EQ(r.status, Status::TruncatedConverged);
  EXPECT_NEAR(r.value.value(), 1.0, 1e-12);
}
