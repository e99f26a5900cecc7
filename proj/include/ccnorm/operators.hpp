#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "core.hpp"
#include "sequences.hpp"

namespace ccnorm {

// The structured matrices. CstarSD is (C* - S)D.
enum class OpTag { C, Cstar, CminusI, CstarMinusI, CminusSstar, CstarSD, S, Sstar, D, E, I };

inline constexpr OpTag kPrincipalOps[] = {OpTag::C,           OpTag::Cstar,       OpTag::CminusI,
                                          OpTag::CstarMinusI, OpTag::CminusSstar, OpTag::CstarSD};

inline std::string_view op_name(OpTag t) {
  switch (t) {
    case OpTag::C: return "C";
    case OpTag::Cstar: return "C*";
    case OpTag::CminusI: return "C-I";
    case OpTag::CstarMinusI: return "C*-I";
    case OpTag::CminusSstar: return "C-S*";
    case OpTag::CstarSD: return "(C*-S)D";
    case OpTag::S: return "S";
    case OpTag::Sstar: return "S*";
    case OpTag::D: return "D";
    case OpTag::E: return "E";
    case OpTag::I: return "I";
  }
  return "?";
}

// Rows whose entries are negated: every row when `all` is set, with the
// rows listed in `rows` toggled back.
struct RowFlip {
  bool all = false;
  std::set<Index> rows;

  bool flips(Index n) const { return all != (rows.count(n) > 0); }
  bool empty() const { return !all && rows.empty(); }
};

struct OpKind {
  OpTag tag = OpTag::C;
  RowFlip flip;

  OpKind() = default;
  OpKind(OpTag t) : tag(t) {}  // NOLINT
  OpKind(OpTag t, RowFlip f) : tag(t), flip(std::move(f)) {}

  double sign(Index n) const { return flip.flips(n) ? -1.0 : 1.0; }
};

// Matrix entry b_{n,k}, straight from the definitions.
inline double entry(const OpKind& B, Index n, Index k) {
  if (n < 1 || k < 1) return 0.0;
  const double dn = static_cast<double>(n);
  const double dk = static_cast<double>(k);
  double b = 0.0;
  switch (B.tag) {
    case OpTag::C: b = k <= n ? 1.0 / dn : 0.0; break;
    case OpTag::Cstar: b = k >= n ? 1.0 / dk : 0.0; break;
    case OpTag::CminusI:
      if (k < n) b = 1.0 / dn;
      else if (k == n) b = (1.0 - dn) / dn;
      break;
    case OpTag::CstarMinusI:
      if (k == n) b = (1.0 - dn) / dn;
      else if (k > n) b = 1.0 / dk;
      break;
    case OpTag::CminusSstar:
      if (k <= n) b = 1.0 / dn;
      else if (k == n + 1) b = -1.0;
      break;
    case OpTag::CstarSD:
      if (k >= n) b = 1.0 / (dk * (dk + 1.0));
      else if (k == n - 1) b = -1.0 / dn;
      break;
    case OpTag::S: b = k == n - 1 ? 1.0 : 0.0; break;
    case OpTag::Sstar: b = k == n + 1 ? 1.0 : 0.0; break;
    case OpTag::D: b = k == n ? 1.0 / (dn + 1.0) : 0.0; break;
    case OpTag::E: b = k <= n ? 1.0 : 0.0; break;
    case OpTag::I: b = k == n ? 1.0 : 0.0; break;
  }
  return b == 0.0 ? 0.0 : B.sign(n) * b;
}

inline double pos_part(const OpKind& B, Index n, Index k) { return std::max(entry(B, n, k), 0.0); }
inline double neg_part(const OpKind& B, Index n, Index k) { return std::max(-entry(B, n, k), 0.0); }

// One piece of a row: `kind` applied from index n + offset with the given
// coefficient. Harmonic and Telescoping carry their own 1/k, 1/(k(k+1)).
struct Segment {
  SumKind kind;
  Index offset;
  Coef coef;

  // first and last column touched in row n (last = -1 for unbounded)
  Index first(Index n) const { return kind == SumKind::Prefix ? 1 : std::max<Index>(n + offset, 1); }
  Index last(Index n) const {
    switch (kind) {
      case SumKind::Point:
      case SumKind::Prefix: return n + offset;
      default: return -1;
    }
  }
  bool empty_in(Index n) const {
    if (kind == SumKind::Point || kind == SumKind::Prefix) return n + offset < 1;
    return false;
  }
};

// Unsigned row structure of each matrix; segments are disjoint.
inline std::vector<Segment> row_shape(OpTag t) {
  using K = SumKind;
  const Coef one{1.0, 0.0, 0.0};
  const Coef inv_n{0.0, 1.0, 0.0};
  const Coef minus_inv_n{0.0, -1.0, 0.0};
  const Coef one_minus_n{-1.0, 1.0, 0.0};  // (1-n)/n
  const Coef minus_one{-1.0, 0.0, 0.0};
  switch (t) {
    case OpTag::C: return {{K::Prefix, 0, inv_n}};
    case OpTag::Cstar: return {{K::Harmonic, 0, one}};
    case OpTag::CminusI: return {{K::Prefix, -1, inv_n}, {K::Point, 0, one_minus_n}};
    case OpTag::CstarMinusI: return {{K::Point, 0, one_minus_n}, {K::Harmonic, 1, one}};
    case OpTag::CminusSstar: return {{K::Prefix, 0, inv_n}, {K::Point, 1, minus_one}};
    case OpTag::CstarSD: return {{K::Point, -1, minus_inv_n}, {K::Telescoping, 0, one}};
    case OpTag::S: return {{K::Point, -1, one}};
    case OpTag::Sstar: return {{K::Point, 1, one}};
    case OpTag::D: return {{K::Point, 0, Coef{0.0, 1.0, 1.0}}};
    case OpTag::E: return {{K::Prefix, 0, one}};
    case OpTag::I: return {{K::Point, 0, one}};
  }
  return {};
}

// Signed coefficient of a segment in row n (0 when the segment is empty).
inline double segment_coef(const OpKind& B, const Segment& s, Index n) {
  if (s.empty_in(n)) return 0.0;
  const double c = s.coef.at(n);
  return c == 0.0 ? 0.0 : B.sign(n) * c;
}

// sum_{k>=from} b_{n,k}, analytically.
inline double row_sum_from(const OpKind& B, Index n, Index from) {
  from = std::max<Index>(from, 1);
  double total = 0.0;
  for (const Segment& s : row_shape(B.tag)) {
    const double c = segment_coef(B, s, n);
    if (c == 0.0) continue;
    const Index lo = std::max(from, s.first(n));
    switch (s.kind) {
      case SumKind::Point:
        if (n + s.offset >= from) total += c;
        break;
      case SumKind::Prefix:
        if (s.last(n) >= lo) total += c * static_cast<double>(s.last(n) - lo + 1);
        break;
      case SumKind::Harmonic: total += c > 0 ? kInf : -kInf; break;
      case SumKind::Telescoping: total += c / static_cast<double>(lo); break;
      case SumKind::Shifted: total += c > 0 ? kInf : -kInf; break;
    }
  }
  return total;
}

enum class RowPattern { AllZero, PosBeforeNeg, NegBeforePos, Both, Mixed };

struct RowClass {
  RowPattern pattern = RowPattern::AllZero;
  ExtReal row_sum = 0.0;
  bool finite_sum = true;

  // Both (single-signed) rows satisfy either ordering
  bool pos_before_neg() const {
    return pattern == RowPattern::PosBeforeNeg || pattern == RowPattern::Both || pattern == RowPattern::AllZero;
  }
  bool neg_before_pos() const {
    return pattern == RowPattern::NegBeforePos || pattern == RowPattern::Both || pattern == RowPattern::AllZero;
  }
};

inline RowClass classify_row(const OpKind& B, Index n) {
  struct Piece {
    Index first;
    int sign;
  };
  std::vector<Piece> pieces;
  for (const Segment& s : row_shape(B.tag)) {
    const double c = segment_coef(B, s, n);
    if (c == 0.0) continue;
    pieces.push_back({s.first(n), c > 0 ? 1 : -1});
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.first < b.first; });

  RowClass rc;
  int changes = 0;
  for (std::size_t i = 1; i < pieces.size(); ++i) changes += pieces[i].sign != pieces[i - 1].sign;
  if (pieces.empty()) rc.pattern = RowPattern::AllZero;
  else if (changes == 0) rc.pattern = RowPattern::Both;
  else if (changes == 1) rc.pattern = pieces.front().sign > 0 ? RowPattern::PosBeforeNeg : RowPattern::NegBeforePos;
  else rc.pattern = RowPattern::Mixed;

  const double sum = row_sum_from(B, n, 1);
  rc.row_sum = sum;
  rc.finite_sum = std::isfinite(sum);
  return rc;
}

namespace detail {
// The row structure is uniform in n apart from the first couple of rows,
// so checking rows 1..4 plus every explicitly flipped row and its
// neighbours covers all rows.
inline std::vector<Index> rows_to_check(const OpKind& B) {
  std::set<Index> rows = {1, 2, 3, 4};
  for (Index r : B.flip.rows)
    for (Index d = -1; d <= 1; ++d)
      if (r + d >= 1) rows.insert(r + d);
  return {rows.begin(), rows.end()};
}
}  // namespace detail

// every row positives-before-negatives with nonnegative sum
inline bool nonincr_hypothesis(const OpKind& B) {
  for (Index n : detail::rows_to_check(B)) {
    const RowClass rc = classify_row(B, n);
    if (!rc.pos_before_neg() || rc.row_sum < 0.0) return false;
  }
  return true;
}

// every row negatives-before-positives with nonnegative sum
inline bool nondecr_hypothesis(const OpKind& B) {
  for (Index n : detail::rows_to_check(B)) {
    const RowClass rc = classify_row(B, n);
    if (!rc.neg_before_pos() || rc.row_sum < 0.0) return false;
  }
  return true;
}

inline bool has_infinite_row_sum(const OpKind& B) {
  for (Index n : detail::rows_to_check(B))
    if (!classify_row(B, n).finite_sum) return true;
  return false;
}

enum class Cone { All, Nonneg, Nonincr, Nondecr };

inline constexpr Cone kCones[] = {Cone::All, Cone::Nonneg, Cone::Nonincr, Cone::Nondecr};

inline std::string_view cone_name(Cone c) {
  switch (c) {
    case Cone::All: return "all";
    case Cone::Nonneg: return "nonneg";
    case Cone::Nonincr: return "nonincr";
    case Cone::Nondecr: return "nondecr";
  }
  return "?";
}

// Row sign flips that make the monotone-cone hypotheses hold, if any do.
// Flipping a row leaves the norm unchanged.
inline std::optional<OpKind> preprocess_for(const OpKind& B, Cone cone) {
  if (cone == Cone::All || cone == Cone::Nonneg) return B;
  const RowFlip candidates[] = {B.flip, RowFlip{true, {}}, RowFlip{true, {1}}, RowFlip{false, {1}}};
  for (const RowFlip& f : candidates) {
    OpKind cand{B.tag, f};
    if (cone == Cone::Nonincr ? nonincr_hypothesis(cand) : nondecr_hypothesis(cand)) return cand;
  }
  return std::nullopt;
}

// last column with a positive (negative) entry in row n; -1 = unbounded,
// 0 = none
inline Index last_index_with_sign(const OpKind& B, Index n, int sign) {
  Index best = 0;
  for (const Segment& s : row_shape(B.tag)) {
    const double c = segment_coef(B, s, n);
    if (c == 0.0 || (c > 0) != (sign > 0)) continue;
    const Index l = s.last(n);
    if (l < 0) return -1;
    best = std::max(best, l);
  }
  return best;
}

// (Bx)_n for a window x with constant tail. Rows that would need an
// infinite sum against a nonzero tail are rejected.
inline double row_apply(const OpKind& B, const SeqWindow& x, Index n) {
  double acc = 0.0;
  for (Index k = std::max<Index>(x.start, 1); k < x.end(); ++k) {
    const double xk = x.at(k);
    if (xk != 0.0) acc += entry(B, n, k) * xk;
  }
  if (x.tail != 0.0) {
    const double r = row_sum_from(B, n, std::max<Index>(x.end(), 1));
    if (!std::isfinite(r)) throw std::domain_error("apply: sequence outside the operator domain");
    acc += mul0(r, x.tail);
  }
  return acc;
}

// (Bx)_1..(Bx)_N from prefix/suffix sums over the segments, O(N + window)
inline SeqWindow apply(const OpKind& B, const SeqWindow& x, Index N) {
  SeqWindow out;
  out.values.resize(static_cast<std::size_t>(std::max<Index>(N, 0)));
  if (N <= 0) return out;

  // window columns 1..M-1; P[m] = sum_{k<=m} x_k, H/T/Sh suffix sums from m
  const Index M = std::max<Index>(x.end(), 1);
  const auto sz = static_cast<std::size_t>(M + 1);
  std::vector<double> P(sz, 0.0), H(sz, 0.0), T(sz, 0.0), Sh(sz, 0.0);
  for (Index k = 1; k < M; ++k) P[static_cast<std::size_t>(k)] = P[static_cast<std::size_t>(k - 1)] + x.at(k);
  for (Index k = M - 1; k >= 1; --k) {
    const auto i = static_cast<std::size_t>(k);
    const double dk = static_cast<double>(k);
    const double xk = x.at(k);
    H[i] = H[i + 1] + xk / dk;
    T[i] = T[i + 1] + xk / (dk * (dk + 1.0));
    Sh[i] = Sh[i + 1] + xk / (dk + 1.0);
  }
  auto clampi = [M](Index m) { return static_cast<std::size_t>(std::clamp<Index>(m, 0, M)); };

  const std::vector<Segment> shape = row_shape(B.tag);
  for (Index n = 1; n <= N; ++n) {
    double acc = 0.0;
    for (const Segment& s : shape) {
      const double c = segment_coef(B, s, n);
      if (c == 0.0) continue;
      const Index m = n + s.offset;
      switch (s.kind) {
        case SumKind::Point:
          if (m >= 1 && m < M) acc += c * x.at(m);
          break;
        case SumKind::Prefix: acc += c * P[clampi(std::min(m, M - 1))]; break;
        case SumKind::Harmonic: acc += c * H[clampi(std::max<Index>(m, 1))]; break;
        case SumKind::Telescoping: acc += c * T[clampi(std::max<Index>(m, 1))]; break;
        case SumKind::Shifted: acc += c * Sh[clampi(std::max<Index>(m, 1))]; break;
      }
    }
    if (x.tail != 0.0) {
      const double r = row_sum_from(B, n, M);
      if (!std::isfinite(r)) throw std::domain_error("apply: sequence outside the operator domain");
      acc += mul0(r, x.tail);
    }
    out.values[static_cast<std::size_t>(n - 1)] = acc;
  }
  return out;
}

namespace detail {
inline double sup_abs(const SeqWindow& x) {
  double m = 0.0;
  for (double t : x.values) m = std::max(m, std::abs(t));
  return m;
}
inline double max_dev(const SeqWindow& a, const SeqWindow& b, Index N) {
  double d = 0.0;
  for (Index n = 1; n <= N; ++n) d = std::max(d, std::abs(a.at(n) - b.at(n)));
  return d;
}
}  // namespace detail

// max_{n<=N} |((C - S*) C* x)_n - (Cx)_n|
inline double check_identity_first(const SeqWindow& x, Index N) {
  if (x.tail != 0.0) throw std::invalid_argument("check_identity_first: x must be finitely supported");
  const SeqWindow y = apply(OpTag::Cstar, x, std::max(N + 1, x.end()));
  return detail::max_dev(apply(OpTag::CminusSstar, y, N), apply(OpTag::C, x, N), N);
}

// max_{n<=N} |((C* - S) D E x)_n - (C*x)_n|; Ex is constant past the support
inline double check_identity_second(const SeqWindow& x, Index N) {
  if (x.tail != 0.0) throw std::invalid_argument("check_identity_second: x must be finitely supported");
  const Index M = std::max(N, x.end());
  SeqWindow z = apply(OpTag::E, x, M);
  z.tail = z.values.empty() ? 0.0 : z.values.back();
  return detail::max_dev(apply(OpTag::CstarSD, z, N), apply(OpTag::Cstar, x, N), N);
}

}  // namespace ccnorm
