#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "core.hpp"

namespace ccnorm {

// How a list weight continues past its last stored index L.
//   Zero  u_k = 0 for k > L (finitely supported weight)
//   Hold  u_k = u_L for k > L
enum class TailRule { Zero, Hold };

// A weight sequence: either the power weight of exponent alpha or an
// explicit list u_1..u_L.
//
// Power weights act in two roles. As a domain weight u_k = k^-alpha,
// as a codomain weight v_n = n^alpha, so Weight::power(a) on both sides
// gives the matched pair.
class Weight {
 public:
  static Weight power(double alpha) {
    if (!std::isfinite(alpha)) throw std::invalid_argument("power weight: alpha must be finite");
    Weight w;
    w.is_power_ = true;
    w.alpha_ = alpha;
    return w;
  }

  static Weight list(std::vector<double> values, TailRule tail = TailRule::Zero) {
    for (double x : values)
      if (!(x >= 0.0) || !std::isfinite(x))
        throw std::invalid_argument("list weight: entries must be finite and >= 0");
    Weight w;
    w.values_ = std::move(values);
    w.tail_ = tail;
    return w;
  }

  bool is_power() const { return is_power_; }
  double alpha() const { return alpha_; }
  const std::vector<double>& values() const { return values_; }
  Index length() const { return static_cast<Index>(values_.size()); }
  TailRule tail_rule() const { return tail_; }

  // value carried beyond the stored list
  double tail_value() const {
    if (tail_ == TailRule::Zero || values_.empty()) return 0.0;
    return values_.back();
  }

  // u_k in the domain role
  double at(Index k) const {
    if (k < 1) return 0.0;
    if (is_power_) return k == 1 ? 1.0 : std::pow(static_cast<double>(k), -alpha_);
    if (k <= length()) return values_[static_cast<std::size_t>(k - 1)];
    return tail_value();
  }

  // v_n in the codomain role
  double codomain_at(Index n) const {
    if (is_power_) return n == 1 ? 1.0 : std::pow(static_cast<double>(n), alpha_);
    return at(n);
  }

  // list weights switch to the held tail; power weights are unchanged
  Weight held() const {
    if (is_power_) return *this;
    return list(values_, TailRule::Hold);
  }

  // w_k = k u_k
  Weight scaled_by_index() const {
    if (is_power_) return power(alpha_ - 1.0);
    if (tail_ == TailRule::Hold && tail_value() > 0.0)
      throw std::invalid_argument("scaled_by_index: k*u_L is not a list tail");
    std::vector<double> w(values_.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = static_cast<double>(i + 1) * values_[i];
    return list(std::move(w), tail_);
  }

  Weight scaled(double c) const {
    if (is_power_) throw std::invalid_argument("scaled: power weights are fixed");
    std::vector<double> w = values_;
    for (double& x : w) x *= c;
    return list(std::move(w), tail_);
  }

 private:
  Weight() = default;
  bool is_power_ = false;
  double alpha_ = 0.0;
  std::vector<double> values_;
  TailRule tail_ = TailRule::Zero;
};

inline double weight_at(const Weight& w, Index k) { return w.at(k); }

// Finite window x_start..x_{start+len-1} of a sequence; entries before
// the window are 0, entries after it equal `tail`.
struct SeqWindow {
  Index start = 1;
  std::vector<double> values;
  double tail = 0.0;

  Index end() const { return start + static_cast<Index>(values.size()); }
  double at(Index k) const {
    if (k < start) return 0.0;
    if (k >= end()) return tail;
    return values[static_cast<std::size_t>(k - start)];
  }
};

// sup_n |x_n| v_n
inline ExtReal sup_norm_weighted(const SeqWindow& x, const Weight& v) {
  double best = 0.0;
  for (Index n = std::max<Index>(x.start, 1); n < x.end(); ++n)
    best = std::max(best, mul0(std::abs(x.at(n)), v.codomain_at(n)));
  if (x.tail != 0.0) {
    const Index m = std::max<Index>(x.end(), 1);
    const double t = std::abs(x.tail);
    if (v.is_power()) {
      best = std::max(best, v.alpha() > 0.0 ? kInf : t * v.codomain_at(m));
    } else {
      for (Index n = m; n <= v.length(); ++n) best = std::max(best, t * v.at(n));
      best = std::max(best, t * v.tail_value());
    }
  }
  return best;
}

namespace detail {
// |x| / u with 0/0 = 0 and x/0 = inf
inline double quotient(double x, double u) {
  if (x == 0.0) return 0.0;
  if (u == 0.0) return kInf;
  return std::abs(x) / u;
}
}  // namespace detail

// sup_k |x_k| / u_k
inline ExtReal quotient_norm_weighted(const SeqWindow& x, const Weight& u) {
  double best = 0.0;
  for (Index k = std::max<Index>(x.start, 1); k < x.end(); ++k)
    best = std::max(best, detail::quotient(x.at(k), u.at(k)));
  if (x.tail != 0.0) {
    const Index m = std::max<Index>(x.end(), 1);
    if (u.is_power()) {
      best = std::max(best, u.alpha() > 0.0 ? kInf : detail::quotient(x.tail, u.at(m)));
    } else {
      for (Index k = m; k <= u.length(); ++k) best = std::max(best, detail::quotient(x.tail, u.at(k)));
      best = std::max(best, detail::quotient(x.tail, u.tail_value()));
    }
  }
  return best;
}

// running minimum u_1..u_K
inline std::vector<double> envelope_down(const Weight& u, Index K) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max<Index>(K, 0)));
  double m = kInf;
  for (Index k = 1; k <= K; ++k) {
    m = std::min(m, u.at(k));
    out.push_back(m);
  }
  return out;
}

// suffix infimum inf_{j>=k} u_j for k = 1..K
inline std::vector<double> envelope_up(const Weight& u, Index K) {
  std::vector<double> out(static_cast<std::size_t>(std::max<Index>(K, 0)), 0.0);
  if (u.is_power()) {
    if (u.alpha() <= 0.0)
      for (Index k = 1; k <= K; ++k) out[static_cast<std::size_t>(k - 1)] = u.at(k);
    return out;
  }
  if (u.tail_rule() == TailRule::Zero) return out;
  const Index L = u.length();
  const double t = u.tail_value();
  double m = t;
  std::vector<double> suffix(static_cast<std::size_t>(L), t);
  for (Index k = L; k >= 1; --k) {
    m = std::min(m, u.at(k));
    suffix[static_cast<std::size_t>(k - 1)] = m;
  }
  for (Index k = 1; k <= K; ++k)
    out[static_cast<std::size_t>(k - 1)] = k <= L ? suffix[static_cast<std::size_t>(k - 1)] : t;
  return out;
}

}  // namespace ccnorm
