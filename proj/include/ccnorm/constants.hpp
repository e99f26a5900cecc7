#pragma once

#include <stdexcept>
#include <string_view>
#include <vector>

#include "formulas.hpp"
#include "sequences.hpp"

namespace ccnorm {

// C_le_Cstar: best A with ||Cx|| <= A ||C*x||
// Cstar_le_C: best A with ||C*x|| <= A ||Cx||
enum class Direction { C_le_Cstar, Cstar_le_C };

inline std::string_view direction_name(Direction d) {
  return d == Direction::C_le_Cstar ? "c-le-cstar" : "cstar-le-c";
}

struct TwoOpQuery {
  Direction direction = Direction::C_le_Cstar;
  Cone cone = Cone::All;
  Weight u = Weight::power(0.0);
  Weight v = Weight::power(0.0);
  TruncConfig cfg;
};

// w_k = k u_k, continued by its last value for lists
inline Weight index_weight(const Weight& u) {
  if (u.is_power()) return u.scaled_by_index();
  return Weight::list(u.scaled_by_index().values(), TailRule::Hold);
}

// inf_{j>=k} j u_j for k = 1..K
inline std::vector<double> w_envelope(const Weight& u, Index K) { return envelope_up(index_weight(u), K); }

inline NormResult best_constant(const TwoOpQuery& q) {
  if (q.cone != Cone::All && q.cone != Cone::Nonneg)
    throw std::invalid_argument("best_constant: cone must be all or nonneg");
  RowFormula f;
  if (q.direction == Direction::C_le_Cstar) {
    if (q.cone == Cone::All) {
      // v_n (u_{n+1} + (1/n) sum_{k<=n} u_k)
      f.views.emplace_back(q.u, Envelope::None);
      f.terms = {{SumKind::Point, 0, 1, coef::one}, {SumKind::Prefix, 0, 0, coef::inv_n}};
    } else {
      // (v_n/n) sum_{k<=n} min_{j<=k} u_j
      f.views.emplace_back(q.u, Envelope::Down);
      f.terms = {{SumKind::Prefix, 0, 0, coef::inv_n}};
    }
  } else {
    if (q.cone == Cone::All) {
      // v_n (((n-1)/n) u_{n-1} + sum_{k>=n} u_k/(k+1)), u_0 = 0
      f.views.emplace_back(q.u, Envelope::None);
      f.terms = {{SumKind::Point, 0, -1, coef::n_minus_one_over_n}, {SumKind::Shifted, 0, 0, coef::one}};
    } else {
      // v_n sum_{k>=n} (inf_{j>=k} j u_j) / (k(k+1))
      f.views.emplace_back(index_weight(q.u), Envelope::Up);
      f.terms = {{SumKind::Telescoping, 0, 0, coef::one}};
    }
  }
  return sup_over_rows(f.functional(), q.v, q.cfg);
}

}  // namespace ccnorm
