#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "core.hpp"
#include "operators.hpp"
#include "sequences.hpp"
#include "sums.hpp"

namespace ccnorm {

enum class Status { ClosedForm, TruncatedConverged, TruncatedLowerBound, Divergent, Unsupported };

inline std::string_view status_name(Status s) {
  switch (s) {
    case Status::ClosedForm: return "ClosedForm";
    case Status::TruncatedConverged: return "TruncatedConverged";
    case Status::TruncatedLowerBound: return "TruncatedLowerBound";
    case Status::Divergent: return "Divergent";
    case Status::Unsupported: return "Unsupported";
  }
  return "?";
}

struct NormResult {
  ExtReal value = 0.0;
  Status status = Status::ClosedForm;
  Index n_used = 0;
  double residual_estimate = 0.0;
  Index argmax = 0;  // row attaining the reported sup (0 if none)
  std::string note;

  static NormResult closed(double v, std::string why = {}) {
    NormResult r;
    r.value = v;
    r.status = Status::ClosedForm;
    r.note = std::move(why);
    return r;
  }
  static NormResult unsupported(std::string why) {
    NormResult r;
    r.status = Status::Unsupported;
    r.note = std::move(why);
    return r;
  }
};

struct TruncConfig {
  Index n_max = 1'000'000;
  double tol = 1e-9;
  double divergence_threshold = 1e15;
  unsigned threads = 0;  // 0: NORMS_THREADS, else hardware concurrency
};

// One term of a row functional, for the asymptotic growth check.
struct GrowthTerm {
  SumKind kind;
  double coef_growth;
  Asymptotics view;
};

// n -> (row functional applied to u) before the v_n factor.
struct RowFunctional {
  std::function<double(Index)> row;
  std::vector<GrowthTerm> growth;
};

namespace detail {

inline unsigned worker_count(const TruncConfig& cfg, Index rows) {
  unsigned t = cfg.threads;
  if (t == 0) {
    if (const char* env = std::getenv("NORMS_THREADS")) t = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
  }
  if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
  const Index cap = std::max<Index>(1, rows / 4096);
  return static_cast<unsigned>(std::min<Index>(t, cap));
}

// exponent e (and log flag) with term ~ n^e (log n)
struct Growth {
  double e = -kInf;
  bool log = false;
};

inline Growth term_growth(const GrowthTerm& t) {
  const Asymptotics& a = t.view;
  const double ce = t.coef_growth;
  if (!a.has_mass) return {};
  if (a.eventually_zero) {
    // only prefix sums keep a nonzero limit
    if (t.kind == SumKind::Prefix) return {ce, false};
    return {};
  }
  const double d = a.decay;
  switch (t.kind) {
    case SumKind::Point: return {ce - d, false};
    case SumKind::Prefix:
      if (d < 1.0) return {ce + 1.0 - d, false};
      if (d == 1.0) return {ce, true};
      return {ce, false};
    case SumKind::Harmonic: return d <= 0.0 ? Growth{kInf, false} : Growth{ce - d, false};
    case SumKind::Telescoping: return d <= -1.0 ? Growth{kInf, false} : Growth{ce - d - 1.0, false};
    case SumKind::Shifted: return d <= 0.0 ? Growth{kInf, false} : Growth{ce - d, false};
  }
  return {};
}

// v_n sup over an infinite range diverges?
inline bool diverges(const std::vector<GrowthTerm>& terms, const Weight& v) {
  double b = 0.0;
  if (v.is_power()) b = v.alpha();
  else if (v.tail_value() == 0.0) return false;
  for (const GrowthTerm& t : terms) {
    const Growth g = term_growth(t);
    if (g.e == -kInf) continue;
    const double e = g.e + b;
    if (e > 1e-12) return true;
    if (std::abs(e) <= 1e-12 && g.log) return true;
  }
  return false;
}

struct ChunkScan {
  double best = 0.0;
  Index argmax = 0;
  double best_before_cut = 0.0;
  Index first_bad = 0;
};

}  // namespace detail

// v_n * row(n), with 0 * inf = 0
inline double weighted_row(const RowFunctional& f, const Weight& v, Index n) {
  const double vn = v.codomain_at(n);
  if (vn == 0.0) return 0.0;
  return mul0(vn, f.row(n));
}

// sup_n v_n row(n) with truncation and divergence handling.
inline NormResult sup_over_rows(const RowFunctional& f, const Weight& v, const TruncConfig& cfg) {
  const bool exact = !v.is_power() && v.tail_value() == 0.0;
  NormResult res;
  if (!exact && detail::diverges(f.growth, v)) {
    res.value = ExtReal::infinity();
    res.status = Status::Divergent;
    res.note = "divergent by growth analysis";
    return res;
  }
  const Index N = exact ? v.length() : std::max<Index>(cfg.n_max, 1);
  const Index cut = N - N / 10;

  auto scan = [&](Index lo, Index hi) {
    detail::ChunkScan c;
    for (Index n = lo; n <= hi; ++n) {
      const double g = weighted_row(f, v, n);
      if (!(g <= cfg.divergence_threshold)) {
        c.first_bad = n;
        break;
      }
      if (g > c.best) {
        c.best = g;
        c.argmax = n;
      }
      if (n <= cut) c.best_before_cut = std::max(c.best_before_cut, g);
    }
    return c;
  };

  const unsigned T = detail::worker_count(cfg, N);
  std::vector<detail::ChunkScan> parts(T);
  if (T <= 1) {
    parts[0] = scan(1, N);
  } else {
    std::vector<std::thread> pool;
    const Index step = (N + T - 1) / T;
    for (unsigned t = 0; t < T; ++t) {
      const Index lo = 1 + static_cast<Index>(t) * step;
      const Index hi = std::min(N, lo + step - 1);
      pool.emplace_back([&, t, lo, hi] { parts[t] = lo <= hi ? scan(lo, hi) : detail::ChunkScan{}; });
    }
    for (auto& th : pool) th.join();
  }

  detail::ChunkScan all;
  for (const auto& c : parts) {
    if (c.first_bad != 0 && (all.first_bad == 0 || c.first_bad < all.first_bad)) all.first_bad = c.first_bad;
    if (c.best > all.best) {
      all.best = c.best;
      all.argmax = c.argmax;
    }
    all.best_before_cut = std::max(all.best_before_cut, c.best_before_cut);
  }

  if (all.first_bad != 0) {
    res.value = ExtReal::infinity();
    res.status = Status::Divergent;
    res.n_used = all.first_bad;
    res.note = "row value above divergence threshold";
    return res;
  }
  res.value = all.best;
  res.argmax = all.argmax;
  res.n_used = N;
  if (exact) {
    res.status = Status::TruncatedConverged;
    return res;
  }

  // residual: late change of the running sup, and the gap to a geometric
  // extrapolation of the row values at N/4, N/2, N
  const double change = all.best - all.best_before_cut;
  double gap = 0.0;
  if (N >= 64) {
    const double r1 = weighted_row(f, v, N / 4);
    const double r2 = weighted_row(f, v, N / 2);
    const double r3 = weighted_row(f, v, N);
    const double d1 = r2 - r1;
    const double d2 = r3 - r2;
    double extra = 0.0;
    if (d2 > 1e-14 * (1.0 + std::abs(r3))) {
      extra = (d1 > 0.0 && d2 < d1) ? d2 * (d2 / d1) / (1.0 - d2 / d1) : kInf;
    }
    gap = std::max(0.0, r3 + extra - all.best);
  }
  res.residual_estimate = std::max(change, 2.0 * gap);
  res.status = res.residual_estimate <= cfg.tol ? Status::TruncatedConverged : Status::TruncatedLowerBound;
  return res;
}

// ---------------------------------------------------------------------------
// Row formulas built from a handful of sum terms.

struct Term {
  SumKind kind;
  int view;      // index into RowFormula::views
  Index offset;  // sum starts at n + offset
  Coef coef;
  Index only_row = 0;  // nonzero: term lives in this row only
};

struct RowFormula {
  std::vector<WeightView> views;
  std::vector<Term> terms;
  bool use_max = false;  // combine terms by max instead of sum

  double term_value(const Term& t, Index n) const {
    if (t.only_row != 0 && n != t.only_row) return 0.0;
    const double c = std::abs(t.coef.at(n));
    if (c == 0.0) return 0.0;
    return mul0(c, views[static_cast<std::size_t>(t.view)].sum(t.kind, n + t.offset));
  }

  double operator()(Index n) const {
    double acc = 0.0;
    for (const Term& t : terms) {
      const double x = term_value(t, n);
      acc = use_max ? std::max(acc, x) : acc + x;
    }
    return acc;
  }

  RowFunctional functional() const& {
    RowFunctional f;
    auto self = std::make_shared<RowFormula>(*this);
    f.row = [self](Index n) { return (*self)(n); };
    for (const Term& t : terms)
      if (t.only_row == 0)
        f.growth.push_back({t.kind, t.coef.growth(), views[static_cast<std::size_t>(t.view)].asymptotics()});
    return f;
  }
};

namespace coef {
inline constexpr Coef one{1.0, 0.0, 0.0};
inline constexpr Coef inv_n{0.0, 1.0, 0.0};             // 1/n
inline constexpr Coef n_minus_one_over_n{1.0, -1.0, 0.0};  // (n-1)/n
}  // namespace coef

namespace detail {

inline Envelope envelope_for(Cone c) {
  switch (c) {
    case Cone::Nonincr: return Envelope::Down;
    case Cone::Nondecr: return Envelope::Up;
    default: return Envelope::None;
  }
}

// Lists on the nondecreasing cone continue with their last value.
inline Weight domain_for(const Weight& u, Cone c) { return c == Cone::Nondecr ? u.held() : u; }

inline NormResult run(const RowFormula& f, const Weight& v, const TruncConfig& cfg) {
  return sup_over_rows(f.functional(), v, cfg);
}

inline RowFormula single_view(const Weight& u, Cone cone) {
  RowFormula f;
  f.views.emplace_back(domain_for(u, cone), envelope_for(cone));
  return f;
}

}  // namespace detail

// C: sup_n (v_n/n) sum_{k<=n} u_k, with u-down / u-up on the monotone cones
inline NormResult norm_cesaro(const Weight& u, const Weight& v, Cone cone, const TruncConfig& cfg = {}) {
  RowFormula f = detail::single_view(u, cone);
  f.terms = {{SumKind::Prefix, 0, 0, coef::inv_n}};
  return detail::run(f, v, cfg);
}

// C*: sup_n v_n sum_{k>=n} u_k/k; zero on the nondecreasing cone
inline NormResult norm_copson(const Weight& u, const Weight& v, Cone cone, const TruncConfig& cfg = {}) {
  if (cone == Cone::Nondecr) return NormResult::closed(0.0, "no nonzero nondecreasing sequence in the domain");
  RowFormula f = detail::single_view(u, cone);
  f.terms = {{SumKind::Harmonic, 0, 0, coef::one}};
  return detail::run(f, v, cfg);
}

// C - I
inline NormResult dist_cesaro_identity(const Weight& u, const Weight& v, Cone cone, const TruncConfig& cfg = {}) {
  RowFormula f = detail::single_view(u, cone);
  const Term diag{SumKind::Point, 0, 0, coef::n_minus_one_over_n};
  const Term below{SumKind::Prefix, 0, -1, coef::inv_n};
  switch (cone) {
    case Cone::All: f.terms = {diag, below}; break;
    case Cone::Nonneg:
      f.terms = {diag, below};
      f.use_max = true;
      break;
    case Cone::Nonincr: f.terms = {below}; break;
    case Cone::Nondecr: f.terms = {diag}; break;
  }
  return detail::run(f, v, cfg);
}

// C* - I; the nonincreasing cone is an open problem
inline NormResult dist_copson_identity(const Weight& u, const Weight& v, Cone cone, const TruncConfig& cfg = {}) {
  if (cone == Cone::Nonincr)
    return NormResult::unsupported("open problem: the norm of C*-I on nonincreasing sequences is not known");
  if (cone == Cone::Nondecr) return NormResult::closed(0.0, "row 1 has an infinite sum");
  RowFormula f = detail::single_view(u, cone);
  f.terms = {{SumKind::Point, 0, 0, coef::n_minus_one_over_n}, {SumKind::Harmonic, 0, 1, coef::one}};
  f.use_max = cone == Cone::Nonneg;
  return detail::run(f, v, cfg);
}

// C - S*
inline NormResult norm_c_minus_sstar(const Weight& u, const Weight& v, Cone cone, const TruncConfig& cfg = {}) {
  RowFormula f = detail::single_view(u, cone);
  const Term next{SumKind::Point, 0, 1, coef::one};
  const Term avg{SumKind::Prefix, 0, 0, coef::inv_n};
  switch (cone) {
    case Cone::All: f.terms = {next, avg}; break;
    case Cone::Nonneg:
      f.terms = {next, avg};
      f.use_max = true;
      break;
    case Cone::Nonincr: f.terms = {avg}; break;
    case Cone::Nondecr: f.terms = {next}; break;  // sup_n v_n inf_{j>=n+1} u_j
  }
  return detail::run(f, v, cfg);
}

// (C* - S)D
inline NormResult norm_cstarsd(const Weight& u, const Weight& v, Cone cone, const TruncConfig& cfg = {}) {
  RowFormula f = detail::single_view(u, cone);
  const Term prev{SumKind::Point, 0, -1, coef::inv_n};
  const Term tail{SumKind::Telescoping, 0, 0, coef::one};
  switch (cone) {
    case Cone::All: f.terms = {prev, tail}; break;
    case Cone::Nonneg:
      f.terms = {prev, tail};
      f.use_max = true;
      break;
    case Cone::Nonincr: {
      // row 1 is all negative with sum -1 and keeps its sign; rows n >= 2
      // are flipped to positives-before-negatives
      Term first = tail;
      first.only_row = 1;
      f.terms = {first, prev};
      break;
    }
    case Cone::Nondecr: f.terms = {tail}; break;
  }
  return detail::run(f, v, cfg);
}

// Generic engine: norms from the positive/negative parts of the rows.
inline NormResult norm_general(const OpKind& B, const Weight& u, const Weight& v, Cone cone,
                               const TruncConfig& cfg = {}) {
  OpKind op = B;
  if (cone == Cone::Nonincr || cone == Cone::Nondecr) {
    const auto pre = preprocess_for(B, cone);
    if (!pre) return NormResult::unsupported("rows do not have the sign pattern this cone needs");
    op = *pre;
    if (cone == Cone::Nondecr && has_infinite_row_sum(op))
      return NormResult::closed(0.0, "a row has an infinite sum");
  }

  auto view = std::make_shared<WeightView>(detail::domain_for(u, cone), detail::envelope_for(cone));
  auto shape = std::make_shared<std::vector<Segment>>(row_shape(op.tag));

  RowFunctional f;
  f.row = [op, view, shape, cone](Index n) {
    double pos = 0.0;
    double neg = 0.0;
    for (const Segment& s : *shape) {
      const double c = segment_coef(op, s, n);
      if (c == 0.0) continue;
      const double S = view->sum(s.kind, n + s.offset);
      if (c > 0.0) pos += mul0(c, S);
      else neg += mul0(-c, S);
    }
    switch (cone) {
      case Cone::All: return pos + neg;
      case Cone::Nonneg: return std::max(pos, neg);
      default: return pos;
    }
  };
  const Index far = 1'000'000'000;
  for (const Segment& s : *shape) {
    const double c = segment_coef(op, s, far);
    if (c == 0.0) continue;
    if ((cone == Cone::Nonincr || cone == Cone::Nondecr) && c < 0.0) continue;
    f.growth.push_back({s.kind, s.coef.growth(), view->asymptotics()});
  }
  return sup_over_rows(f, v, cfg);
}

// Specialized evaluator for each principal operator.
inline NormResult norm_of(OpTag op, const Weight& u, const Weight& v, Cone cone, const TruncConfig& cfg = {}) {
  switch (op) {
    case OpTag::C: return norm_cesaro(u, v, cone, cfg);
    case OpTag::Cstar: return norm_copson(u, v, cone, cfg);
    case OpTag::CminusI: return dist_cesaro_identity(u, v, cone, cfg);
    case OpTag::CstarMinusI: return dist_copson_identity(u, v, cone, cfg);
    case OpTag::CminusSstar: return norm_c_minus_sstar(u, v, cone, cfg);
    case OpTag::CstarSD: return norm_cstarsd(u, v, cone, cfg);
    default: return norm_general(op, u, v, cone, cfg);
  }
}

}  // namespace ccnorm
