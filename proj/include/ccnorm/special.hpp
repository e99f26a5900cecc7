#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "core.hpp"

namespace ccnorm::special {

// A value together with an absolute error bound.
struct Certified {
  double value = 0.0;
  double bound = 0.0;
};

namespace detail {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

// Rising factorial s (s+1) ... (s+m-1).
inline double rising(double s, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= s + i;
  return r;
}

inline double kpow(Index k, double s) {
  return k == 1 ? 1.0 : std::pow(static_cast<double>(k), -s);
}

// Euler-Maclaurin bound for sum_{k>=N} k^-s with corrections through B4:
// the first omitted (B6) term.
inline double em_bound(double s, double N) {
  return std::abs(rising(s, 5)) / 30240.0 * std::pow(N, -s - 5.0);
}

}  // namespace detail

// sum_{k>=n} k^-s, s > 1.
inline Certified hurwitz_tail_certified(double s, Index n) {
  if (!(s > 1.0)) throw std::domain_error("hurwitz_tail: needs s > 1");
  if (n < 1) throw std::domain_error("hurwitz_tail: needs n >= 1");

  const double dn = static_cast<double>(n);
  // cheap lower bound on the result, used to pick the cut N
  const double floor_value =
      std::max(std::pow(dn, -s), std::pow(dn, 1.0 - s) / (s - 1.0));
  Index N = std::max<Index>(n, 8);
  while (detail::em_bound(s, static_cast<double>(N)) > 1e-17 * floor_value)
    N += std::max<Index>(N / 2, 8);

  double direct = 0.0;
  for (Index k = N - 1; k >= n; --k) direct += detail::kpow(k, s);  // small terms first

  const double x = static_cast<double>(N);
  const double fx = std::pow(x, -s);
  const double tail = x * fx / (s - 1.0) + 0.5 * fx + s / 12.0 * fx / x -
                      detail::rising(s, 3) / 720.0 * fx / (x * x * x);
  const double value = direct + tail;
  const double rounding =
      (static_cast<double>(N - n) + 8.0) * detail::kEps * value;
  return {value, detail::em_bound(s, x) + rounding};
}

inline double hurwitz_tail(double s, Index n) {
  return hurwitz_tail_certified(s, n).value;
}

inline Certified zeta_certified(double s) {
  if (!(s > 1.0)) throw std::domain_error("zeta: needs s > 1");
  return hurwitz_tail_certified(s, 1);
}

inline double zeta(double s) { return zeta_certified(s).value; }

// sum_{k>=n} k^-beta / (k+1), beta > 0.
inline Certified shifted_tail_certified(double beta, Index n) {
  if (!(beta > 0.0)) throw std::domain_error("shifted_tail: needs beta > 0");
  if (n < 1) throw std::domain_error("shifted_tail: needs n >= 1");

  constexpr Index kSplit = 16;
  if (n < kSplit) {
    Certified rest = shifted_tail_certified(beta, kSplit);
    double head = 0.0;
    for (Index k = kSplit - 1; k >= n; --k)
      head += detail::kpow(k, beta) / static_cast<double>(k + 1);
    return {head + rest.value,
            rest.bound + 16.0 * detail::kEps * (head + rest.value)};
  }

  // k^-beta/(k+1) = sum_{j>=0} (-1)^j k^-(beta+1+j), ratio 1/k <= 1/16
  double sum = 0.0;
  double bound = 0.0;
  double sign = 1.0;
  for (int j = 0; j < 200; ++j) {
    const Certified t = hurwitz_tail_certified(beta + 1.0 + j, n);
    sum += sign * t.value;
    bound += t.bound;
    sign = -sign;
    if (t.value <= 1e-18 * std::abs(sum)) {
      bound += t.value;  // alternating: first omitted term dominates
      break;
    }
  }
  return {sum, bound + 8.0 * detail::kEps * std::abs(sum)};
}

inline double shifted_tail(double beta, Index n) {
  return shifted_tail_certified(beta, n).value;
}

// M_alpha = sum_{k>=1} k^-alpha / (k+1)
inline Certified m_alpha_certified(double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("m_alpha: needs alpha > 0");
  return shifted_tail_certified(alpha, 1);
}

inline double m_alpha(double alpha) { return m_alpha_certified(alpha).value; }

// Prefix sums sum_{k=1}^n k^-a for any real a. The Euler-Maclaurin constant
// is computed once at construction so each query costs O(1) for large n.
class PowerPrefixSum {
 public:
  explicit PowerPrefixSum(double a) : a_(a) {
    double s = 0.0;
    for (Index k = 1; k <= kDirect; ++k) {
      s += detail::kpow(k, a_);
      head_[k] = s;
    }
    constant_ = head_[kDirect] - g(static_cast<double>(kDirect));
  }

  double exponent() const { return a_; }

  double operator()(Index n) const {
    if (n <= 0) return 0.0;
    if (n <= kDirect) return head_[n];
    return constant_ + g(static_cast<double>(n));
  }

 private:
  static constexpr Index kDirect = 64;

  // antiderivative plus the Euler-Maclaurin end corrections at x
  double g(double x) const {
    const double a = a_;
    const double fx = std::pow(x, -a);
    const double F = a == 1.0 ? std::log(x) : x * fx / (1.0 - a);
    const double x2 = x * x;
    return F + 0.5 * fx - a / 12.0 * fx / x +
           detail::rising(a, 3) / 720.0 * fx / (x * x2) -
           detail::rising(a, 5) / 30240.0 * fx / (x * x2 * x2);
  }

  double a_;
  double constant_ = 0.0;
  double head_[kDirect + 1] = {};
};

}  // namespace ccnorm::special
