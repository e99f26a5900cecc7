#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include <ccnorm/power.hpp>

using namespace ccnorm;
using namespace ccnorm::power;
using namespace ccnorm::power::averages;

namespace {
constexpr double kZeta2 = std::numbers::pi * std::numbers::pi / 6.0;

// argmax and max of n^(alpha-1)(n-1) over 1 <= n <= N
std::pair<Index, double> brute_argmax(double alpha, Index N) {
  Index best_n = 1;
  double best = 0.0;
  for (Index n = 1; n <= N; ++n) {
    const double dn = static_cast<double>(n);
    const double g = std::pow(dn, alpha - 1.0) * (dn - 1.0);
    if (g > best) {
      best = g;
      best_n = n;
    }
  }
  return {best_n, best};
}
}  // namespace

TEST(Cesaro, Examples) {
  EXPECT_NEAR(cesaro_power(0.5, Cone::All).value.value(), 2.0, 1e-12);
  EXPECT_NEAR(cesaro_power(0.5, Cone::Nonincr).value.value(), 2.0, 1e-12);
  EXPECT_EQ(cesaro_power(-3, Cone::Nonincr).value.value(), 1.0);
  EXPECT_EQ(cesaro_power(2, Cone::Nondecr).value.value(), 0.0);
  EXPECT_TRUE(cesaro_power(1.0, Cone::Nonneg).value.is_infinite());
}

TEST(Cesaro, BranchEdgesFollowTheStatedInequalities) {
  EXPECT_EQ(cesaro_power(0.0, Cone::All).case_label, "0<=alpha<1");
  EXPECT_EQ(cesaro_power(-1e-300, Cone::All).case_label, "alpha<0");
  EXPECT_EQ(cesaro_power(1.0, Cone::All).case_label, "alpha>=1");
  EXPECT_EQ(cesaro_power(0.0, Cone::Nondecr).case_label, "alpha<=0");
  EXPECT_EQ(cesaro_power(0.0, Cone::Nondecr).value.value(), 1.0);
}

TEST(Copson, Examples) {
  const PowerCaseResult r = copson_power(1.0, Cone::Nonneg);
  EXPECT_NEAR(r.value.value(), kZeta2, 1e-10);
  ASSERT_TRUE(r.special.zeta_arg);
  EXPECT_EQ(*r.special.zeta_arg, 2.0);
  EXPECT_TRUE(copson_power(-0.5, Cone::All).value.is_infinite());
  EXPECT_TRUE(copson_power(0.0, Cone::All).value.is_infinite());
  EXPECT_EQ(copson_power(3, Cone::Nondecr).value.value(), 0.0);
}

TEST(CesaroMinusId, Examples) {
  EXPECT_NEAR(cesaro_minus_id_power(0.5, Cone::All).value.value(), 3.0, 1e-12);
  const PowerCaseResult r = cesaro_minus_id_power(-0.5, Cone::Nonincr);
  ASSERT_TRUE(r.special.m_breakpoint);
  EXPECT_EQ(*r.special.m_breakpoint, 2);
  EXPECT_NEAR(r.value.value(), 2.0 * std::pow(3.0, -1.5), 1e-15);
  EXPECT_NEAR(r.value.value(), 0.38490017945975, 1e-13);
  EXPECT_EQ(cesaro_minus_id_power(0.0, Cone::Nondecr).value.value(), 1.0);
  EXPECT_EQ(cesaro_minus_id_power(-1.0, Cone::Nonneg).value.value(), 1.0);
}

TEST(CopsonMinusId, Examples) {
  EXPECT_NEAR(copson_minus_id_power(2, Cone::All).value.value(), 1.5, 1e-15);
  EXPECT_NEAR(copson_minus_id_power(0.5, Cone::Nonneg).value.value(), 2.0, 1e-15);
  EXPECT_TRUE(copson_minus_id_power(-1, Cone::All).value.is_infinite());
  EXPECT_EQ(copson_minus_id_power(1.0, Cone::Nonneg).case_label, "alpha>=1");
  EXPECT_THROW(copson_minus_id_power(0.5, Cone::Nonincr), std::invalid_argument);
}

TEST(TwoOp, Examples) {
  EXPECT_NEAR(two_op_cc_power(-1, Cone::All).value.value(), 3.0, 1e-15);
  EXPECT_NEAR(two_op_cc_power(0.5, Cone::Nonneg).value.value(), 2.0, 1e-15);
  EXPECT_TRUE(two_op_cc_power(1, Cone::All).value.is_infinite());
  EXPECT_NEAR(two_op_cstarc_power(0.5, Cone::All).value.value(), 3.0, 1e-15);
  EXPECT_NEAR(two_op_cstarc_power(0.5, Cone::Nonneg).value.value(), 2.0, 1e-15);
  const PowerCaseResult r = two_op_cstarc_power(2, Cone::All);
  EXPECT_NEAR(r.value.value(), 4.0 * (kZeta2 - 1.0), 1e-10);
  ASSERT_TRUE(r.special.M_alpha);
  EXPECT_NEAR(*r.special.M_alpha, kZeta2 - 1.0, 1e-12);
  EXPECT_EQ(two_op_cstarc_power(2, Cone::Nonneg).value.value(), 0.0);
  EXPECT_EQ(two_op_cstarc_power(1.0, Cone::Nonneg).case_label, "0<alpha<=1");
  EXPECT_THROW(two_op_cc_power(0.5, Cone::Nondecr), std::invalid_argument);
}

TEST(TwoOp, ContinuousAtAlphaOne) {
  // 2^alpha M_alpha -> 2 as alpha -> 1+, matching 1 + 1/alpha at 1
  EXPECT_NEAR(two_op_cstarc_power(1.0 + 1e-7, Cone::All).value.value(), 2.0, 1e-5);
}

TEST(Breakpoints, Values) {
  EXPECT_TRUE(std::isinf(breakpoint_s(1)));
  EXPECT_NEAR(breakpoint_s(2), 1.0 + std::log(0.5) / std::log(1.5), 1e-15);
  EXPECT_NEAR(breakpoint_s(2), -0.70951, 1e-5);
  EXPECT_NEAR(breakpoint_s(3), -0.40942, 1e-5);
  double prev = breakpoint_s(2);
  for (Index m = 3; m <= 100000; m = m * 3 / 2 + 1) {
    const double s = breakpoint_s(m);
    EXPECT_GT(s, prev);
    EXPECT_LT(s, 0.0);
    prev = s;
  }
  EXPECT_GT(breakpoint_s(Index{1} << 40), -1e-11);
}

TEST(Breakpoints, IndexBracketsAlpha) {
  for (double a : {-50.0, -3.0, -0.70951, -0.5, -0.1, -0.01, -1e-4}) {
    const Index m = breakpoint_index(a);
    EXPECT_LT(breakpoint_s(m), a);
    EXPECT_LE(a, breakpoint_s(m + 1));
  }
  // runtime m: a folded breakpoint_s(5) may round differently from libm
  volatile Index five = 5;
  EXPECT_EQ(breakpoint_index(breakpoint_s(five)), 4);
  EXPECT_THROW(breakpoint_index(0.0), std::invalid_argument);
}

TEST(Breakpoints, BruteForceArgmax) {
  for (double a : {-3.0, -2.0, -1.0, -0.6, -0.3, -0.1}) {
    const PowerCaseResult r = cesaro_minus_id_power(a, Cone::Nonincr);
    const auto [n, best] = brute_argmax(a, 100000);
    EXPECT_EQ(n, *r.special.m_breakpoint + 1) << a;
    EXPECT_NEAR(r.value.value(), best, 1e-12) << a;
  }
}

TEST(Breakpoints, AdjacentBranchesMeet) {
  for (Index m = 2; m <= 10; ++m) {
    const double s = breakpoint_s(m);
    const double dm = static_cast<double>(m);
    const double left = std::pow(dm, s - 1.0) * (dm - 1.0);
    const double right = std::pow(dm + 1.0, s - 1.0) * dm;
    EXPECT_NEAR(left, right, 1e-12) << m;
    EXPECT_NEAR(cesaro_minus_id_power(s, Cone::Nonincr).value.value(), left, 1e-12) << m;
    EXPECT_NEAR(cesaro_minus_id_power(std::nextafter(s, 0.0), Cone::Nonincr).value.value(), right, 1e-12) << m;
  }
}

TEST(Breakpoints, ApproachesLimitBranch) {
  // m -> inf: (m+1)^(alpha-1) m -> 1 = 1/(1-0)
  EXPECT_NEAR(cesaro_minus_id_power(-1e-9, Cone::Nonincr).value.value(), 1.0, 1e-6);
}

TEST(Averages, CesaroMeanMonotone) {
  // starts at 1; falls to 1/(1-alpha) for alpha < 0, rises to it for 0 < alpha < 1
  for (double a : {-2.0, -1.0, -0.5, -0.1}) {
    double prev = cesaro_mean(a, 1);
    for (Index n = 2; n <= 10000; ++n) {
      const double x = cesaro_mean(a, n);
      ASSERT_LE(x, prev * (1 + 1e-13)) << a << " " << n;
      prev = x;
    }
  }
  for (double a : {0.1, 0.5, 0.9}) {
    double prev = cesaro_mean(a, 1);
    for (Index n = 2; n <= 10000; ++n) {
      const double x = cesaro_mean(a, n);
      ASSERT_GE(x, prev * (1 - 1e-13)) << a << " " << n;
      ASSERT_LE(x, 1.0 / (1.0 - a)) << a << " " << n;
      prev = x;
    }
  }
}

TEST(Averages, CopsonTailsMonotone) {
  for (double a : {0.1, 0.5, 1.0, 2.0, 4.0}) {
    double dec = copson_tail(a, 1);
    double inc = copson_strict_tail(a, 1);
    for (Index n = 2; n <= 10000; ++n) {
      const double d = copson_tail(a, n);
      const double i = copson_strict_tail(a, n);
      ASSERT_LE(d, dec * (1 + 1e-13)) << a << " " << n;
      ASSERT_GE(i, inc * (1 - 1e-13)) << a << " " << n;
      ASSERT_LE(i, 1.0 / a) << a << " " << n;
      dec = d;
      inc = i;
    }
  }
}

TEST(Averages, ShiftedMeanMonotone) {
  for (double a : {0.2, 0.5, 1.0}) {
    double prev = shifted_mean(a, 1);
    for (Index n = 2; n <= 10000; ++n) {
      const double x = shifted_mean(a, n);
      ASSERT_GE(x, prev * (1 - 1e-13)) << a << " " << n;
      ASSERT_LE(x, 1.0 / a * (1 + 1e-13)) << a << " " << n;
      prev = x;
    }
  }
  for (double a : {1.5, 2.0, 3.0}) {
    double prev = shifted_mean(a, 1);
    for (Index n = 2; n <= 10000; ++n) {
      const double x = shifted_mean(a, n);
      ASSERT_LE(x, prev * (1 + 1e-13)) << a << " " << n;
      prev = x;
    }
  }
}

TEST(Power, RejectsNonFinite) {
  EXPECT_THROW(cesaro_power(NAN, Cone::All), std::invalid_argument);
  EXPECT_THROW(two_op_cstarc_power(INFINITY, Cone::All), std::invalid_argument);
}
