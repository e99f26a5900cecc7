#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "core.hpp"
#include "operators.hpp"
#include "special.hpp"

// Closed forms for the matched power pair u_k = k^-alpha, v_n = n^alpha.
namespace ccnorm::power {

struct SpecialValues {
  std::optional<double> zeta_arg;
  std::optional<double> M_alpha;
  std::optional<Index> m_breakpoint;
};

struct PowerCaseResult {
  ExtReal value = 0.0;
  std::string case_label;
  SpecialValues special;
};

namespace detail {
inline PowerCaseResult make(double v, std::string label) { return {v, std::move(label), {}}; }
inline void require_finite(double alpha) {
  if (!std::isfinite(alpha)) throw std::invalid_argument("alpha must be finite");
}
inline void require_two_cones(Cone c, const char* what) {
  if (c != Cone::All && c != Cone::Nonneg)
    throw std::invalid_argument(std::string(what) + ": cone must be all or nonneg");
}
}  // namespace detail

// s_m = 1 + log(1 - 1/m) / log(1 + 1/m), m >= 2; s_1 = -inf
inline double breakpoint_s(Index m) {
  if (m < 1) throw std::invalid_argument("breakpoint_s: m >= 1");
  if (m == 1) return -kInf;
  const double x = 1.0 / static_cast<double>(m);
  return 1.0 + std::log1p(-x) / std::log1p(x);
}

// the m with s_m < alpha <= s_{m+1}, alpha < 0
inline Index breakpoint_index(double alpha) {
  if (!(alpha < 0.0)) throw std::invalid_argument("breakpoint_index: alpha < 0");
  Index hi = 2;
  while (breakpoint_s(hi) < alpha) {
    if (hi > (Index{1} << 60)) return hi;
    hi *= 2;
  }
  Index lo = 1;  // s_lo < alpha <= s_hi
  while (hi - lo > 1) {
    const Index mid = lo + (hi - lo) / 2;
    if (breakpoint_s(mid) < alpha) lo = mid;
    else hi = mid;
  }
  return lo;
}

inline PowerCaseResult cesaro_power(double alpha, Cone cone) {
  detail::require_finite(alpha);
  if (cone == Cone::Nondecr) return alpha <= 0.0 ? detail::make(1.0, "alpha<=0") : detail::make(0.0, "alpha>0");
  if (alpha < 0.0) return detail::make(1.0, "alpha<0");
  if (alpha < 1.0) return detail::make(1.0 / (1.0 - alpha), "0<=alpha<1");
  return detail::make(kInf, "alpha>=1");
}

inline PowerCaseResult copson_power(double alpha, Cone cone) {
  detail::require_finite(alpha);
  if (cone == Cone::Nondecr) return detail::make(0.0, "nondecreasing");
  if (alpha <= 0.0) return detail::make(kInf, "alpha<=0");
  PowerCaseResult r = detail::make(special::zeta(alpha + 1.0), "alpha>0");
  r.special.zeta_arg = alpha + 1.0;
  return r;
}

inline PowerCaseResult cesaro_minus_id_power(double alpha, Cone cone) {
  detail::require_finite(alpha);
  switch (cone) {
    case Cone::All:
      if (alpha < 1.0) return detail::make((2.0 - alpha) / (1.0 - alpha), "alpha<1");
      return detail::make(kInf, "alpha>=1");
    case Cone::Nonneg:
      if (alpha < 0.0) return detail::make(1.0, "alpha<0");
      if (alpha < 1.0) return detail::make(1.0 / (1.0 - alpha), "0<=alpha<1");
      return detail::make(kInf, "alpha>=1");
    case Cone::Nonincr: {
      if (alpha < 0.0) {
        const Index m = breakpoint_index(alpha);
        const double dm = static_cast<double>(m);
        PowerCaseResult r = detail::make(std::pow(dm + 1.0, alpha - 1.0) * dm, "s_m<alpha<=s_{m+1}");
        r.special.m_breakpoint = m;
        return r;
      }
      if (alpha < 1.0) return detail::make(1.0 / (1.0 - alpha), "0<=alpha<1");
      return detail::make(kInf, "alpha>=1");
    }
    case Cone::Nondecr: return alpha <= 0.0 ? detail::make(1.0, "alpha<=0") : detail::make(0.0, "alpha>0");
  }
  return {};
}

// all and nonneg only; nonincr is open and nondecr is the trivial 0
inline PowerCaseResult copson_minus_id_power(double alpha, Cone cone) {
  detail::require_finite(alpha);
  detail::require_two_cones(cone, "copson_minus_id_power");
  if (alpha <= 0.0) return detail::make(kInf, "alpha<=0");
  if (cone == Cone::All) return detail::make(1.0 + 1.0 / alpha, "alpha>0");
  if (alpha < 1.0) return detail::make(1.0 / alpha, "0<alpha<1");
  return detail::make(1.0, "alpha>=1");
}

// best A in ||Cx|| <= A ||C*x||
inline PowerCaseResult two_op_cc_power(double alpha, Cone cone) {
  detail::require_finite(alpha);
  detail::require_two_cones(cone, "two_op_cc_power");
  if (alpha >= 1.0) return detail::make(kInf, "alpha>=1");
  if (cone == Cone::All) {
    if (alpha <= 0.0) return detail::make(1.0 + std::exp2(-alpha), "alpha<=0");
    return detail::make((2.0 - alpha) / (1.0 - alpha), "0<alpha<1");
  }
  if (alpha <= 0.0) return detail::make(1.0, "alpha<=0");
  return detail::make(1.0 / (1.0 - alpha), "0<alpha<1");
}

// best A in ||C*x|| <= A ||Cx||
inline PowerCaseResult two_op_cstarc_power(double alpha, Cone cone) {
  detail::require_finite(alpha);
  detail::require_two_cones(cone, "two_op_cstarc_power");
  if (alpha <= 0.0) return detail::make(kInf, "alpha<=0");
  if (alpha <= 1.0) return detail::make(cone == Cone::All ? 1.0 + 1.0 / alpha : 1.0 / alpha, "0<alpha<=1");
  if (cone == Cone::Nonneg) return detail::make(0.0, "alpha>1");
  const double M = special::m_alpha(alpha);
  PowerCaseResult r = detail::make(std::exp2(alpha) * M, "alpha>1");
  r.special.M_alpha = M;
  return r;
}

// Averages whose monotonicity in n drives the closed forms.
namespace averages {

inline double npow(Index n, double e) { return std::pow(static_cast<double>(n), e); }

// n^(alpha-1) sum_{k<=n} k^-alpha
inline double cesaro_mean(double alpha, Index n) { return npow(n, alpha - 1.0) * special::PowerPrefixSum(alpha)(n); }

// n^alpha sum_{k>=n} k^(-alpha-1), alpha > 0
inline double copson_tail(double alpha, Index n) { return npow(n, alpha) * special::hurwitz_tail(alpha + 1.0, n); }

// n^alpha sum_{k>n} k^(-alpha-1), alpha > 0
inline double copson_strict_tail(double alpha, Index n) {
  return npow(n, alpha) * special::hurwitz_tail(alpha + 1.0, n + 1);
}

// n^alpha sum_{k>=n} k^-alpha / (k+1), alpha > 0
inline double shifted_mean(double alpha, Index n) { return npow(n, alpha) * special::shifted_tail(alpha, n); }

}  // namespace averages

}  // namespace ccnorm::power
