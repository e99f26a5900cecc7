#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <ccnorm/oracle.hpp>

using namespace ccnorm;
using namespace ccnorm::oracle;

namespace {

std::vector<double> random_values(std::mt19937_64& rng, Index max_len) {
  std::uniform_int_distribution<Index> len(1, max_len);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(len(rng)));
  for (double& x : v) x = U(rng) < 0.1 ? 0.0 : U(rng);
  return v;
}

}  // namespace

TEST(RandomLowerBound, CesaroPowerPair) {
  const Weight h = Weight::power(0.5);
  const double r = random_lower_bound(OpTag::C, h, h, Cone::All, 10000, 1000, 42);
  EXPECT_GT(r, 0.0);
  EXPECT_LE(r, 2.0);
}

TEST(RandomLowerBound, IdentityIsExactlyOne) {
  const Weight u = Weight::list({1, 2, 4, 0.5});
  const Weight v = Weight::list({1, 0.5, 0.25, 2});
  for (Cone c : {Cone::All, Cone::Nonneg})
    EXPECT_NEAR(random_lower_bound(OpTag::I, u, v, c, 0, 50, 1), 1.0, 1e-15);
}

TEST(RandomLowerBound, RejectsZeroTrials) {
  EXPECT_THROW(random_lower_bound(OpTag::C, Weight::list({1}), Weight::list({1}), Cone::All, 0, 0, 1),
               std::invalid_argument);
}

TEST(RandomLowerBound, DeterministicInSeedAndThreads) {
  const Weight u = Weight::list({0.3, 0.9, 0.0, 0.5, 0.7});
  const Weight v = Weight::list({1.0, 0.2, 0.6});
  for (Cone c : kCones) {
    const double a = random_lower_bound(OpTag::CminusSstar, u, v, c, 0, 300, 99);
    EXPECT_EQ(a, random_lower_bound(OpTag::CminusSstar, u, v, c, 0, 300, 99));
    EXPECT_EQ(a, random_lower_bound(OpTag::CminusSstar, u, v, c, 0, 300, 99, 4));
  }
}

TEST(ExtremalLowerBound, GrowsWithN) {
  const Weight h = Weight::power(0.5);
  double prev = 0.0;
  for (Index N : {10, 100, 1000, 10000}) {
    const double e = extremal_lower_bound(OpTag::C, h, h, Cone::All, N);
    EXPECT_GE(e, prev);
    EXPECT_LE(e, 2.0);
    prev = e;
  }
  EXPECT_GT(prev, 1.9);
}

TEST(Verify, Examples) {
  const Weight w2 = Weight::power(2.0);
  const VerifyReport r = verify(OpTag::CstarMinusI, w2, w2, Cone::All, {}, 300, 5);
  EXPECT_LE(r.formula_value.value(), 1.5);
  EXPECT_NEAR(r.formula_value.value(), 1.5, 1e-5);
  EXPECT_LE(r.random_best, 1.5 + 1e-9);
  EXPECT_TRUE(r.pass);

  const Weight zero = Weight::list({0, 0, 0, 0});
  for (Cone c : kCones) {
    const VerifyReport z = verify(OpTag::CstarSD, zero, Weight::list({1, 1}), c, {}, 100, 5);
    EXPECT_EQ(z.formula_value.value(), 0.0);
    EXPECT_EQ(z.extremal_value, 0.0);
    EXPECT_EQ(z.random_best, 0.0);
    EXPECT_TRUE(z.pass);
  }
}

TEST(Verify, OpenConeIsRejected) {
  EXPECT_THROW(verify(OpTag::CstarMinusI, Weight::list({1}), Weight::list({1}), Cone::Nonincr, {}, 10, 1),
               UnsupportedCone);
}

TEST(Verify, ListProblemsAreExact) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 15; ++i) {
    const Weight u = Weight::list(random_values(rng, 20));
    const Weight v = Weight::list(random_values(rng, 20));
    for (OpTag op : kPrincipalOps)
      for (Cone c : kCones) {
        if (op == OpTag::CstarMinusI && c == Cone::Nonincr) continue;
        const VerifyReport r = verify(op, u, v, c, {}, 200, 100 + static_cast<std::uint64_t>(i));
        EXPECT_TRUE(r.pass) << op_name(op) << " " << cone_name(c) << " formula " << r.formula_value.value()
                            << " extremal " << r.extremal_value << " random " << r.random_best;
      }
  }
}

TEST(Verify, MixedPowerWeights) {
  for (double a : {-0.5, 0.5, 1.5})
    for (double b : {-0.5, 0.0, 0.5})
      for (OpTag op : kPrincipalOps)
        for (Cone c : kCones) {
          if (op == OpTag::CstarMinusI && c == Cone::Nonincr) continue;
          TruncConfig cfg;
          cfg.n_max = 20000;
          const VerifyReport r = verify(op, Weight::power(a), Weight::power(b), c, cfg, 30, 3, 100);
          EXPECT_TRUE(r.pass) << op_name(op) << " " << cone_name(c) << " " << a << " " << b;
        }
}

TEST(TwoOpWitness, ReproducesBestConstantAtArgmax) {
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 40; ++i) {
    const Weight u = Weight::list(random_values(rng, 20));
    const Weight v = Weight::list(random_values(rng, 20));
    for (Direction d : {Direction::C_le_Cstar, Direction::Cstar_le_C})
      for (Cone c : {Cone::All, Cone::Nonneg}) {
        const NormResult f = best_constant({d, c, u, v, {}});
        const double val = f.value.value();
        if (val == 0.0) continue;
        ASSERT_GT(f.argmax, 0);
        const double w = two_op_witness_ratio(d, c, u, v, f.argmax);
        EXPECT_LE(std::abs(w - val), 1e-12 * val) << direction_name(d) << " " << cone_name(c) << " " << i;
      }
  }
}

TEST(TwoOpWitness, NeverBeatsTheConstant) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    const Weight u = Weight::list(random_values(rng, 12));
    const Weight v = Weight::list(random_values(rng, 12));
    for (Direction d : {Direction::C_le_Cstar, Direction::Cstar_le_C})
      for (Cone c : {Cone::All, Cone::Nonneg}) {
        const double val = best_constant({d, c, u, v, {}}).value.value();
        for (Index n = 1; n <= 14; ++n)
          EXPECT_LE(two_op_witness_ratio(d, c, u, v, n), val * (1 + 1e-12) + 1e-300);
      }
  }
}

TEST(TwoOpWitness, RejectsPowerWeights) {
  EXPECT_THROW(two_op_witness_ratio(Direction::C_le_Cstar, Cone::All, Weight::power(1), Weight::list({1}), 1),
               std::invalid_argument);
}
