#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cli_io.hpp"

// Verification suites shared by `ccnorm verify` and the acceptance runner.
// Each returns an array of JSON reports carrying a "pass" flag.
namespace ccnorm::cli {

inline bool all_pass(const json& reports) {
  for (const auto& r : reports)
    if (!r.value("pass", false)) return false;
  return true;
}

// ~10% zeros, otherwise uniform on [0,1)
inline std::vector<double> random_list(std::mt19937_64& rng, Index max_len) {
  std::uniform_int_distribution<Index> len(1, max_len);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(len(rng)));
  for (double& x : v) x = U(rng) < 0.1 ? 0.0 : U(rng);
  return v;
}

inline SeqWindow random_window(std::mt19937_64& rng, Index max_support) {
  std::uniform_int_distribution<Index> start(1, 10);
  std::uniform_int_distribution<Index> len(0, max_support);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  SeqWindow x;
  x.start = start(rng);
  x.values.resize(static_cast<std::size_t>(len(rng)));
  for (double& t : x.values) t = U(rng);
  return x;
}

inline json identity_suite(std::uint64_t seed, int windows = 1000, Index N = 50) {
  std::mt19937_64 rng(seed);
  double worst_first = 0.0;
  double worst_second = 0.0;
  for (int i = 0; i < windows; ++i) {
    const SeqWindow x = random_window(rng, 40);
    const double c = detail::sup_abs(apply(OpTag::C, x, N));
    const double cs = detail::sup_abs(apply(OpTag::Cstar, x, N));
    worst_first = std::max(worst_first, check_identity_first(x, N) / (1.0 + c));
    worst_second = std::max(worst_second, check_identity_second(x, N) / (1.0 + cs));
  }
  json out = json::array();
  out.push_back({{"suite", "identities"}, {"check", "first"}, {"windows", windows}, {"N", N},
                 {"max_relative_deviation", worst_first}, {"pass", worst_first <= 1e-12}});
  out.push_back({{"suite", "identities"}, {"check", "second"}, {"windows", windows}, {"N", N},
                 {"max_relative_deviation", worst_second}, {"pass", worst_second <= 1e-12}});
  return out;
}

enum class Theorem { Cesaro, Copson, CesaroMinusId, CopsonMinusId, TwoOpCC, TwoOpCstarC };

inline constexpr Theorem kTheorems[] = {Theorem::Cesaro,        Theorem::Copson,  Theorem::CesaroMinusId,
                                        Theorem::CopsonMinusId, Theorem::TwoOpCC, Theorem::TwoOpCstarC};

inline std::string theorem_name(Theorem t) {
  switch (t) {
    case Theorem::Cesaro: return "cesaro";
    case Theorem::Copson: return "copson";
    case Theorem::CesaroMinusId: return "cesaro-minus-identity";
    case Theorem::CopsonMinusId: return "copson-minus-identity";
    case Theorem::TwoOpCC: return "two-op-cc";
    case Theorem::TwoOpCstarC: return "two-op-cstarc";
  }
  return "?";
}

// cones with a closed form for each theorem
inline std::vector<Cone> theorem_cones(Theorem t) {
  switch (t) {
    case Theorem::CopsonMinusId: return {Cone::All, Cone::Nonneg};
    case Theorem::TwoOpCC:
    case Theorem::TwoOpCstarC: return {Cone::All, Cone::Nonneg};
    default: return {Cone::All, Cone::Nonneg, Cone::Nonincr, Cone::Nondecr};
  }
}

inline power::PowerCaseResult closed_form(Theorem t, double alpha, Cone cone) {
  switch (t) {
    case Theorem::Cesaro: return power::cesaro_power(alpha, cone);
    case Theorem::Copson: return power::copson_power(alpha, cone);
    case Theorem::CesaroMinusId: return power::cesaro_minus_id_power(alpha, cone);
    case Theorem::CopsonMinusId: return power::copson_minus_id_power(alpha, cone);
    case Theorem::TwoOpCC: return power::two_op_cc_power(alpha, cone);
    case Theorem::TwoOpCstarC: return power::two_op_cstarc_power(alpha, cone);
  }
  return {};
}

// the general formula on the matched power pair
inline NormResult general_form(Theorem t, double alpha, Cone cone, const TruncConfig& cfg) {
  const Weight w = Weight::power(alpha);
  switch (t) {
    case Theorem::Cesaro: return norm_cesaro(w, w, cone, cfg);
    case Theorem::Copson: return norm_copson(w, w, cone, cfg);
    case Theorem::CesaroMinusId: return dist_cesaro_identity(w, w, cone, cfg);
    case Theorem::CopsonMinusId: return dist_copson_identity(w, w, cone, cfg);
    case Theorem::TwoOpCC: return best_constant({Direction::C_le_Cstar, cone, w, w, cfg});
    case Theorem::TwoOpCstarC: return best_constant({Direction::Cstar_le_C, cone, w, w, cfg});
  }
  return {};
}

// closed form and general scan agree within max(1e-3, residual); infinite
// closed forms must come back infinite
inline json power_consistency_case(Theorem t, double alpha, Cone cone, const TruncConfig& cfg) {
  const power::PowerCaseResult cf = closed_form(t, alpha, cone);
  const NormResult g = general_form(t, alpha, cone, cfg);
  const double c = cf.value.value();
  const double v = g.value.value();
  bool pass;
  if (std::isinf(c)) pass = std::isinf(v) || v > cfg.divergence_threshold;
  else pass = std::isfinite(v) && std::abs(v - c) <= std::max(1e-3, g.residual_estimate);
  return {{"suite", "power-consistency"},
          {"theorem", theorem_name(t)},
          {"cone", std::string(cone_name(cone))},
          {"alpha", alpha},
          {"case", cf.case_label},
          {"closed_form", number_or_inf(c)},
          {"general", number_or_inf(v)},
          {"status", std::string(status_name(g.status))},
          {"n_used", g.n_used},
          {"residual", number_or_inf(g.residual_estimate)},
          {"pass", pass}};
}

inline const std::vector<double>& consistency_alphas() {
  static const std::vector<double> a = {-2.0, -1.0, -0.5, 0.0, 0.3, 0.7, 0.99};
  return a;
}

inline json power_consistency_suite(const TruncConfig& cfg, const std::vector<double>& alphas = consistency_alphas()) {
  json out = json::array();
  for (Theorem t : kTheorems)
    for (Cone cone : theorem_cones(t))
      for (double a : alphas) out.push_back(power_consistency_case(t, a, cone, cfg));
  return out;
}

inline std::string op_cli_name(OpTag t) {
  switch (t) {
    case OpTag::C: return "cesaro";
    case OpTag::Cstar: return "copson";
    case OpTag::CminusI: return "cesaro-minus-identity";
    case OpTag::CstarMinusI: return "copson-minus-identity";
    case OpTag::CminusSstar: return "c-minus-sstar";
    case OpTag::CstarSD: return "cstar-sd";
    default: return std::string(op_name(t));
  }
}

inline json report_json(const std::string& op, Cone cone, const oracle::VerifyReport& r) {
  return {{"suite", "oracle"},
          {"op", op},
          {"cone", std::string(cone_name(cone))},
          {"formula", number_or_inf(r.formula_value.value())},
          {"formula_status", std::string(status_name(r.formula_status))},
          {"extremal", r.extremal_value},
          {"random_best", r.random_best},
          {"gap_extremal", number_or_inf(r.gap_extremal)},
          {"gap_random", number_or_inf(r.gap_random)},
          {"seed", r.seed},
          {"trials", r.trials},
          {"N", r.N},
          {"pass", r.pass}};
}

// all principal operators x cones on random list pairs; unsupported
// (operator, cone) combinations are skipped
inline json oracle_suite(std::uint64_t seed, int lists = 50, int trials = 500, Index max_len = 20) {
  json out = json::array();
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Weight, Weight>> pairs;
  for (int i = 0; i < lists; ++i) pairs.emplace_back(Weight::list(random_list(rng, max_len)), Weight::list(random_list(rng, max_len)));
  for (OpTag op : kPrincipalOps) {
    for (Cone cone : kCones) {
      if (!preprocess_for(op, cone)) continue;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto r = oracle::verify(op, pairs[i].first, pairs[i].second, cone, {}, trials, seed + i);
        json j = report_json(op_cli_name(op), cone, r);
        j["case"] = i;
        out.push_back(std::move(j));
      }
    }
  }
  return out;
}

}  // namespace ccnorm::cli
