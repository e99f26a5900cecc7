#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace ccnorm {

using Index = std::int64_t;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Value in [−∞, +∞] that is never NaN.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  ExtReal(double v) : v_(v) {  // NOLINT: implicit on purpose
    if (std::isnan(v)) throw std::domain_error("ExtReal: NaN");
  }

  static ExtReal infinity() { return ExtReal(kInf); }

  double value() const { return v_; }
  bool is_finite() const { return std::isfinite(v_); }
  bool is_infinite() const { return v_ == kInf; }

  friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
  friend std::partial_ordering operator<=>(ExtReal a, ExtReal b) {
    return a.v_ <=> b.v_;
  }

 private:
  double v_ = 0.0;
};

// Shapes of the sums a matrix row can apply to a sequence f,
// starting at index m:
//   Point        f_m
//   Prefix       f_1 + ... + f_m
//   Harmonic     sum_{k>=m} f_k / k
//   Telescoping  sum_{k>=m} f_k / (k(k+1))
//   Shifted      sum_{k>=m} f_k / (k+1)
enum class SumKind { Point, Prefix, Harmonic, Telescoping, Shifted };

// Row coefficient (per_n * n + constant) / (n + shift), n >= 1.
struct Coef {
  double per_n = 0.0;
  double constant = 0.0;
  double shift = 0.0;

  double at(Index n) const {
    const double dn = static_cast<double>(n);
    return (per_n * dn + constant) / (dn + shift);
  }
  // exponent e with |coef(n)| ~ n^e
  double growth() const { return per_n != 0.0 ? 0.0 : -1.0; }
};

// 0 * inf = 0 throughout (weights of zero switch a term off).
inline double mul0(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

}  // namespace ccnorm
