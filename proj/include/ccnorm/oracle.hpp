#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "constants.hpp"
#include "formulas.hpp"
#include "operators.hpp"
#include "sequences.hpp"

// Independent lower bounds for the formulas: explicit extremal sequences
// per row, and random search over the cone.
namespace ccnorm::oracle {

class UnsupportedCone : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct VerifyReport {
  ExtReal formula_value = 0.0;
  double extremal_value = 0.0;
  double random_best = 0.0;
  double gap_extremal = 0.0;
  double gap_random = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  int trials = 0;
  Index N = 0;
  Status formula_status = Status::ClosedForm;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// The problem as the formulas see it: preprocessed rows, the domain weight
// (held on the nondecreasing cone), the row range and the x window.
struct Problem {
  OpKind op;
  Weight u;
  Weight v;
  Cone cone;
  Index rows;    // outer range 1..rows
  Index window;  // x lives on 1..window (plus a held tail on nondecr)
  bool trivial;  // domain meets the cone only in 0
};

inline Problem setup(const OpKind& B, const Weight& u, const Weight& v, Cone cone, Index N) {
  const auto pre = preprocess_for(B, cone);
  if (!pre) throw UnsupportedCone("rows do not have the sign pattern this cone needs");
  Problem p{*pre, cone == Cone::Nondecr ? u.held() : u, v, cone, 0, 0, false};
  p.trivial = cone == Cone::Nondecr && has_infinite_row_sum(p.op);
  p.rows = (!v.is_power() && v.tail_value() == 0.0) ? v.length() : N;
  p.window = u.is_power() ? N : std::max<Index>(u.length(), 1);
  return p;
}

inline double ratio_of_row(const Problem& p, const SeqWindow& x, Index n) {
  const double den = quotient_norm_weighted(x, p.u).value();
  if (den == 0.0 || !std::isfinite(den)) return 0.0;
  const double vn = p.v.codomain_at(n);
  return mul0(vn, std::abs(row_apply(p.op, x, n))) / den;
}

inline double ratio_full(const Problem& p, const SeqWindow& x) {
  const double den = quotient_norm_weighted(x, p.u).value();
  if (den == 0.0 || !std::isfinite(den)) return 0.0;
  return sup_norm_weighted(apply(p.op, x, p.rows), p.v).value() / den;
}

// u-up on 1..K and the value it keeps beyond K
inline std::pair<std::vector<double>, double> up_envelope(const Weight& u, Index K) {
  std::vector<double> up = envelope_up(u, K);
  double tail = 0.0;
  if (u.is_power()) tail = up.empty() ? 0.0 : up.back();
  else tail = u.tail_value();
  return {std::move(up), tail};
}

}  // namespace detail

namespace detail {

// Rows probed by the extremal search: every row of a finite problem;
// on long power-weight ranges the first 256 rows, a geometric grid, and N.
inline std::vector<Index> probe_rows(Index rows, bool exhaustive) {
  std::vector<Index> out;
  if (exhaustive || rows <= 512) {
    for (Index n = 1; n <= rows; ++n) out.push_back(n);
    return out;
  }
  for (Index n = 1; n <= 256; ++n) out.push_back(n);
  for (int j = 1;; ++j) {
    const auto n = static_cast<Index>(std::llround(256.0 * std::exp2(j / 16.0)));
    if (n >= rows) break;
    if (n > out.back()) out.push_back(n);
  }
  out.push_back(rows);
  return out;
}

// columns a witness for row n needs
inline Index row_window(const OpKind& op, Index n, Index K) {
  const Index lp = last_index_with_sign(op, n, +1);
  const Index ln = last_index_with_sign(op, n, -1);
  if (lp < 0 || ln < 0) return K;
  return std::min(K, std::max<Index>({lp, ln, 1}));
}

}  // namespace detail

// max over rows n <= N of the row-n witness ratio. Equals the formula
// value on finite list problems; a lower bound otherwise.
inline double extremal_lower_bound(const OpKind& B, const Weight& u, const Weight& v, Cone cone, Index N) {
  const detail::Problem p = detail::setup(B, u, v, cone, N);
  if (p.trivial) return 0.0;
  const Index K = p.window;
  const std::vector<double> down = envelope_down(p.u, K);
  const auto [up, up_tail] = detail::up_envelope(p.u, K);

  double best = 0.0;
  SeqWindow x;
  for (Index n : detail::probe_rows(p.rows, !u.is_power() && !v.is_power())) {
    if (p.v.codomain_at(n) == 0.0) continue;
    switch (cone) {
      case Cone::All:
      case Cone::Nonneg: {
        const Index W = detail::row_window(p.op, n, K);
        SeqWindow pos, neg;
        pos.values.assign(static_cast<std::size_t>(W), 0.0);
        neg.values.assign(static_cast<std::size_t>(W), 0.0);
        for (Index k = 1; k <= W; ++k) {
          const double b = entry(p.op, n, k);
          const double uk = p.u.at(k);
          if (b > 0) pos.values[static_cast<std::size_t>(k - 1)] = uk;
          if (b < 0) neg.values[static_cast<std::size_t>(k - 1)] = uk;
        }
        if (cone == Cone::All) {
          x.values.assign(static_cast<std::size_t>(W), 0.0);
          for (std::size_t i = 0; i < x.values.size(); ++i) x.values[i] = pos.values[i] - neg.values[i];
          best = std::max(best, detail::ratio_of_row(p, x, n));
        } else {
          best = std::max({best, detail::ratio_of_row(p, pos, n), detail::ratio_of_row(p, neg, n)});
        }
        break;
      }
      case Cone::Nonincr: {
        // u-down up to the last positive column
        const Index m = last_index_with_sign(p.op, n, +1);
        const Index top = m < 0 ? K : std::min(m, K);
        x.values.assign(static_cast<std::size_t>(std::max<Index>(top, 0)), 0.0);
        for (Index k = 1; k <= top; ++k) x.values[static_cast<std::size_t>(k - 1)] = down[static_cast<std::size_t>(k - 1)];
        best = std::max(best, detail::ratio_of_row(p, x, n));
        break;
      }
      case Cone::Nondecr: {
        // zero through the last negative column, then u-up, held at the cap
        const Index m = std::max<Index>(last_index_with_sign(p.op, n, -1), 0);
        const Index top = std::max(K, m);
        x.values.assign(static_cast<std::size_t>(top), 0.0);
        for (Index k = m + 1; k <= top; ++k)
          x.values[static_cast<std::size_t>(k - 1)] = k <= K ? up[static_cast<std::size_t>(k - 1)] : up_tail;
        x.tail = up_tail;
        best = std::max(best, detail::ratio_of_row(p, x, n));
        x.tail = 0.0;
        break;
      }
    }
  }
  return best;
}

namespace detail {

// one random member of the cone on the problem window
inline SeqWindow sample(const Problem& p, const std::vector<double>& down, const std::vector<double>& up,
                        double up_tail, std::mt19937_64& rng, int strategy) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const Index K = p.window;
  SeqWindow x;
  x.values.assign(static_cast<std::size_t>(K), 0.0);
  auto at = [&](Index k) -> double& { return x.values[static_cast<std::size_t>(k - 1)]; };
  switch (p.cone) {
    case Cone::All:
      for (Index k = 1; k <= K; ++k) {
        const double s = U(rng) < 0.5 ? -1.0 : 1.0;
        const double r = U(rng);
        if (strategy == 0) at(k) = (2.0 * r - 1.0) * p.u.at(k);
        else if (strategy == 1) at(k) = s * p.u.at(k);
        else at(k) = r < 0.5 ? 0.0 : s * p.u.at(k);
      }
      break;
    case Cone::Nonneg:
      for (Index k = 1; k <= K; ++k) {
        const double r = U(rng);
        if (strategy == 0) at(k) = r * p.u.at(k);
        else at(k) = r < 0.5 ? 0.0 : p.u.at(k);
      }
      break;
    case Cone::Nonincr: {
      if (strategy == 0) {
        std::vector<double> r(static_cast<std::size_t>(K));
        for (double& t : r) t = U(rng);
        std::sort(r.begin(), r.end(), std::greater<>());
        const double scale = down.empty() ? 0.0 : down.front();
        for (Index k = 1; k <= K; ++k)
          at(k) = std::min(r[static_cast<std::size_t>(k - 1)] * scale, down[static_cast<std::size_t>(k - 1)]);
      } else {
        const Index cut = 1 + static_cast<Index>(U(rng) * static_cast<double>(K));
        for (Index k = 1; k <= std::min(cut, K); ++k) at(k) = down[static_cast<std::size_t>(k - 1)];
      }
      break;
    }
    case Cone::Nondecr: {
      const double scale = std::max(up_tail, up.empty() ? 0.0 : up.back());
      if (strategy == 0) {
        double run = 0.0;
        for (Index k = 1; k <= K; ++k) {
          run = std::max(run, U(rng) * scale);
          at(k) = std::min(run, up[static_cast<std::size_t>(k - 1)]);
        }
        x.tail = std::min(at(K), up_tail);
      } else {
        const Index from = 1 + static_cast<Index>(U(rng) * static_cast<double>(K + 1));
        for (Index k = from; k <= K; ++k) at(k) = up[static_cast<std::size_t>(k - 1)];
        x.tail = up_tail;
      }
      break;
    }
  }
  return x;
}

}  // namespace detail

// best ||Bx|| / ||x|| over random cone members; deterministic in seed
inline double random_lower_bound(const OpKind& B, const Weight& u, const Weight& v, Cone cone, Index N, int trials,
                                 std::uint64_t seed, unsigned threads = 1) {
  if (trials < 1) throw std::invalid_argument("random_lower_bound: trials >= 1");
  const detail::Problem p = detail::setup(B, u, v, cone, N);
  if (p.trivial) return 0.0;
  const std::vector<double> down = envelope_down(p.u, p.window);
  const auto [up, up_tail] = detail::up_envelope(p.u, p.window);

  auto run = [&](int lo, int hi) {
    double best = 0.0;
    for (int t = lo; t < hi; ++t) {
      std::mt19937_64 rng(detail::splitmix64(seed ^ (0x5851f42d4c957f2dULL * static_cast<std::uint64_t>(t + 1))));
      for (int attempt = 0; attempt < 8; ++attempt) {
        const SeqWindow x = detail::sample(p, down, up, up_tail, rng, t % 3);
        const double r = detail::ratio_full(p, x);
        if (quotient_norm_weighted(x, p.u).value() == 0.0) continue;  // x = 0, draw again
        best = std::max(best, r);
        break;
      }
    }
    return best;
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
  if (threads == 1) return run(0, trials);
  std::vector<double> parts(threads, 0.0);
  std::vector<std::thread> pool;
  const int step = (trials + static_cast<int>(threads) - 1) / static_cast<int>(threads);
  for (unsigned i = 0; i < threads; ++i) {
    const int lo = static_cast<int>(i) * step;
    const int hi = std::min(trials, lo + step);
    pool.emplace_back([&, i, lo, hi] { parts[i] = lo < hi ? run(lo, hi) : 0.0; });
  }
  for (auto& th : pool) th.join();
  return *std::max_element(parts.begin(), parts.end());
}

// N = 0 picks 200 rows for power weights.
inline VerifyReport verify(const OpKind& B, const Weight& u, const Weight& v, Cone cone, const TruncConfig& cfg,
                           int trials, std::uint64_t seed, Index N = 0) {
  const NormResult f = norm_general(B, u, v, cone, cfg);
  if (f.status == Status::Unsupported) throw UnsupportedCone(f.note);
  if (N == 0) N = 200;

  VerifyReport r;
  r.formula_value = f.value;
  r.formula_status = f.status;
  r.seed = seed;
  r.trials = trials;
  r.extremal_value = extremal_lower_bound(B, u, v, cone, N);
  r.random_best = random_lower_bound(B, u, v, cone, N, trials, seed);
  r.N = detail::setup(B, u, v, cone, N).rows;

  const double fv = f.value.value();
  r.gap_extremal = fv - r.extremal_value;
  r.gap_random = std::max(0.0, fv - r.random_best);
  const bool random_ok = r.random_best <= fv + 1e-9 + 1e-12 * std::abs(fv);
  const bool finite_problem = !u.is_power() && !v.is_power() && v.tail_value() == 0.0;
  bool extremal_ok;
  if (finite_problem) {
    extremal_ok = fv == r.extremal_value ||
                  std::abs(fv - r.extremal_value) <= 1e-12 * std::max(std::abs(fv), std::abs(r.extremal_value));
  } else {
    extremal_ok = r.extremal_value <= fv + 1e-9 + 1e-12 * std::abs(fv);
  }
  r.pass = random_ok && extremal_ok;
  return r;
}

// ---------------------------------------------------------------------------
// Two-operator witnesses: x rebuilt from y = C*x or from the prefix sums
// Z = Ex, then the ratio of the two norms evaluated directly.

namespace detail {
inline SeqWindow from_values(std::vector<double> v) {
  SeqWindow w;
  w.values = std::move(v);
  return w;
}

// Telescoped sums leave ulp-sized residue where the exact value is 0;
// against a zero weight that residue would read as an infinite norm.
inline SeqWindow snap(SeqWindow w, double scale) {
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * scale;
  for (double& t : w.values)
    if (std::abs(t) <= floor) t = 0.0;
  return w;
}

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double t : v) m = std::max(m, std::abs(t));
  return m;
}
}  // namespace detail

// Ratio ||Cx||/||C*x|| (C_le_Cstar) or ||C*x||/||Cx|| (Cstar_le_C) for the
// row-n witness. List weights only; v must be finitely supported.
inline double two_op_witness_ratio(Direction dir, Cone cone, const Weight& u, const Weight& v, Index n) {
  if (u.is_power() || v.is_power() || v.tail_value() != 0.0)
    throw std::invalid_argument("two_op_witness_ratio: list weights with finite v");
  if (cone != Cone::All && cone != Cone::Nonneg) throw std::invalid_argument("two_op_witness_ratio: cone");
  const Index L = u.length();
  const Index R = v.length();
  const Index top = std::max({L, n, R}) + 2;

  if (dir == Direction::C_le_Cstar) {
    // y plays C*x
    std::vector<double> y(static_cast<std::size_t>(top + 1), 0.0);
    const std::vector<double> down = envelope_down(u, n);
    for (Index k = 1; k <= n; ++k)
      y[static_cast<std::size_t>(k)] = cone == Cone::All ? u.at(k) : down[static_cast<std::size_t>(k - 1)];
    if (cone == Cone::All) y[static_cast<std::size_t>(n + 1)] = -u.at(n + 1);
    std::vector<double> x(static_cast<std::size_t>(top), 0.0);
    for (Index k = 1; k <= top; ++k) {
      const double next = k + 1 <= top ? y[static_cast<std::size_t>(k + 1)] : 0.0;
      x[static_cast<std::size_t>(k - 1)] = static_cast<double>(k) * (y[static_cast<std::size_t>(k)] - next);
    }
    const SeqWindow xs = detail::from_values(std::move(x));
    const double num = sup_norm_weighted(apply(OpTag::C, xs, R), v).value();
    const double den =
        quotient_norm_weighted(detail::snap(apply(OpTag::Cstar, xs, top), detail::max_abs(y)), u).value();
    return den == 0.0 ? 0.0 : num / den;
  }

  // Z = Ex plays n * (Cx)_n; w_k = k u_k, held past the list only on the
  // nonneg cone (the all-cone formula reads the zero-padded u)
  const Weight w = cone == Cone::All ? u.scaled_by_index() : index_weight(u);
  std::vector<double> Z(static_cast<std::size_t>(top + 1), 0.0);
  double held = 0.0;
  if (cone == Cone::All) {
    if (n >= 2) Z[static_cast<std::size_t>(n - 1)] = -w.at(n - 1);
    for (Index k = n; k <= L; ++k) Z[static_cast<std::size_t>(k)] = w.at(k);
  } else {
    const std::vector<double> wup = envelope_up(w, top);
    for (Index k = n; k <= top; ++k) Z[static_cast<std::size_t>(k)] = wup[static_cast<std::size_t>(k - 1)];
    held = Z[static_cast<std::size_t>(top)];
  }
  std::vector<double> x(static_cast<std::size_t>(top), 0.0);
  for (Index k = 1; k <= top; ++k)
    x[static_cast<std::size_t>(k - 1)] = Z[static_cast<std::size_t>(k)] - Z[static_cast<std::size_t>(k - 1)];
  const SeqWindow xs = detail::from_values(std::move(x));

  const double num = sup_norm_weighted(apply(OpTag::Cstar, xs, R), v).value();
  // ||Cx||_u with u_k = w_k / k; beyond the window Cx = held / k against
  // the held w
  double den = 0.0;
  const SeqWindow cx = detail::snap(apply(OpTag::C, xs, top), detail::max_abs(Z));
  for (Index k = 1; k <= top; ++k)
    den = std::max(den, ccnorm::detail::quotient(cx.at(k), w.at(k) / static_cast<double>(k)));
  if (held != 0.0) den = std::max(den, ccnorm::detail::quotient(held, w.tail_value()));
  return den == 0.0 ? 0.0 : num / den;
}

}  // namespace ccnorm::oracle
