// ccnorm: operator norms of the Cesaro/Copson family on weighted sup spaces.
//
//   ccnorm norm --op cesaro --cone all --u power:0.5 --v power:0.5
//   ccnorm two-op --dir c-le-cstar --cone all --u power:-1 --v power:-1
//   ccnorm power-table --theorem cesaro --from -1 --to 0.9 --step 0.1
//   ccnorm verify --suite all --seed 42

#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cli_io.hpp"
#include "suites.hpp"

using namespace ccnorm;
using namespace ccnorm::cli;

namespace {

const std::map<std::string, OpTag> kOps = {
    {"cesaro", OpTag::C},
    {"copson", OpTag::Cstar},
    {"cesaro-minus-identity", OpTag::CminusI},
    {"copson-minus-identity", OpTag::CstarMinusI},
    {"c-minus-sstar", OpTag::CminusSstar},
    {"cstar-sd", OpTag::CstarSD},
};

const std::map<std::string, Cone> kConeNames = {
    {"all", Cone::All}, {"nonneg", Cone::Nonneg}, {"nonincr", Cone::Nonincr}, {"nondecr", Cone::Nondecr}};

const std::map<std::string, Theorem> kTheoremNames = {
    {"cesaro", Theorem::Cesaro},
    {"copson", Theorem::Copson},
    {"cesaro-minus-identity", Theorem::CesaroMinusId},
    {"copson-minus-identity", Theorem::CopsonMinusId},
    {"two-op-cc", Theorem::TwoOpCC},
    {"two-op-cstarc", Theorem::TwoOpCstarC},
};

struct CfgFlags {
  Index n_max = 1'000'000;
  double tol = 1e-9;
  double threshold = 1e15;

  TruncConfig get() const {
    TruncConfig c;
    c.n_max = n_max;
    c.tol = tol;
    c.divergence_threshold = threshold;
    return c;
  }
};

void add_cfg(CLI::App* app, CfgFlags& f) {
  app->add_option("--n-max", f.n_max, "rows scanned for infinite weights")->check(CLI::PositiveNumber);
  app->add_option("--tol", f.tol, "convergence tolerance")->check(CLI::PositiveNumber);
  app->add_option("--divergence-threshold", f.threshold, "row value treated as divergence")->check(CLI::PositiveNumber);
}

json result_json(const std::string& op, const std::string& cone, const NormResult& r) {
  json j;
  j["op"] = op;
  j["cone"] = cone;
  if (r.status == Status::Unsupported) j["value"] = nullptr;
  else j["value"] = number_or_inf(r.value.value());
  j["status"] = std::string(status_name(r.status));
  j["n_used"] = r.n_used;
  j["residual"] = number_or_inf(r.residual_estimate);
  return j;
}

NormResult from_closed(const power::PowerCaseResult& p) { return NormResult::closed(p.value.value(), p.case_label); }

bool matched_pair(const WeightSpec& u, const WeightSpec& v) {
  if (u.pair && v.pair) return u.weight.alpha() == v.weight.alpha();
  return u.weight.is_power() && v.weight.is_power() && u.weight.alpha() == v.weight.alpha();
}

// closed form for the matched power pair when a theorem covers it
std::optional<NormResult> power_route(OpTag op, double alpha, Cone cone) {
  switch (op) {
    case OpTag::C: return from_closed(power::cesaro_power(alpha, cone));
    case OpTag::Cstar: return from_closed(power::copson_power(alpha, cone));
    case OpTag::CminusI: return from_closed(power::cesaro_minus_id_power(alpha, cone));
    case OpTag::CstarMinusI:
      if (cone == Cone::All || cone == Cone::Nonneg) return from_closed(power::copson_minus_id_power(alpha, cone));
      return std::nullopt;
    default: return std::nullopt;
  }
}

int emit(const json& j) {
  std::cout << j.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operator norms of Cesaro and Copson operators on weighted sup spaces"};
  app.require_subcommand(1);

  // norm
  auto* norm = app.add_subcommand("norm", "norm or distance to identity of one operator on a cone");
  std::string op_s, cone_s, u_s, v_s;
  CfgFlags norm_cfg;
  norm->add_option("--op", op_s, "operator")->required()->check(CLI::IsMember(kOps));
  norm->add_option("--cone", cone_s, "cone")->required()->check(CLI::IsMember(kConeNames));
  norm->add_option("--u", u_s, "domain weight spec")->required();
  norm->add_option("--v", v_s, "codomain weight spec")->required();
  add_cfg(norm, norm_cfg);

  // two-op
  auto* two = app.add_subcommand("two-op", "best constant between C and C*");
  std::string dir_s, two_cone_s, two_u, two_v;
  CfgFlags two_cfg;
  two->add_option("--dir", dir_s, "c-le-cstar or cstar-le-c")->required()->check(CLI::IsMember({"c-le-cstar", "cstar-le-c"}));
  two->add_option("--cone", two_cone_s, "all or nonneg")->required()->check(CLI::IsMember({"all", "nonneg"}));
  two->add_option("--u", two_u, "domain weight spec")->required();
  two->add_option("--v", two_v, "codomain weight spec")->required();
  add_cfg(two, two_cfg);

  // power-table
  auto* table = app.add_subcommand("power-table", "closed forms over a range of alpha, as CSV");
  std::string theorem_s;
  double from = 0.0, to = 0.0, step = 0.1;
  table->add_option("--theorem", theorem_s, "theorem")->required()->check(CLI::IsMember(kTheoremNames));
  table->add_option("--from", from, "first alpha")->required();
  table->add_option("--to", to, "last alpha")->required();
  table->add_option("--step", step, "alpha step");

  // verify
  auto* verify = app.add_subcommand("verify", "cross-check formulas against the oracle");
  std::string suite = "all";
  std::uint64_t seed = 42;
  int trials = 500;
  int lists = 50;
  Index vn_max = 1'000'000;
  verify->add_option("--suite", suite, "identities, power-consistency, oracle or all")
      ->check(CLI::IsMember({"identities", "power-consistency", "oracle", "all"}));
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--trials", trials, "random trials per oracle case")->check(CLI::PositiveNumber);
  verify->add_option("--lists", lists, "random weight pairs in the oracle suite")->check(CLI::PositiveNumber);
  verify->add_option("--n", vn_max, "rows scanned in the power-consistency suite")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*norm) {
      const WeightSpec u = parse_weight_spec(u_s);
      const WeightSpec v = parse_weight_spec(v_s);
      const OpTag op = kOps.at(op_s);
      const Cone cone = kConeNames.at(cone_s);
      std::optional<NormResult> r;
      if (matched_pair(u, v)) r = power_route(op, u.weight.alpha(), cone);
      if (!r) r = norm_of(op, u.weight, v.weight, cone, norm_cfg.get());
      emit(result_json(op_s, cone_s, *r));
      if (r->status == Status::Unsupported) {
        std::cerr << "unsupported: " << r->note << "\n";
        return 2;
      }
      return 0;
    }

    if (*two) {
      const WeightSpec u = parse_weight_spec(two_u);
      const WeightSpec v = parse_weight_spec(two_v);
      const Direction d = dir_s == "c-le-cstar" ? Direction::C_le_Cstar : Direction::Cstar_le_C;
      const Cone cone = kConeNames.at(two_cone_s);
      NormResult r;
      if (matched_pair(u, v)) {
        const double a = u.weight.alpha();
        r = from_closed(d == Direction::C_le_Cstar ? power::two_op_cc_power(a, cone) : power::two_op_cstarc_power(a, cone));
      } else {
        r = best_constant({d, cone, u.weight, v.weight, two_cfg.get()});
      }
      return emit(result_json(dir_s, two_cone_s, r));
    }

    if (*table) {
      if (!(step > 0.0) || !std::isfinite(from) || !std::isfinite(to) || to < from) {
        std::cerr << "error: need finite from <= to and step > 0\n";
        return 1;
      }
      const Theorem t = kTheoremNames.at(theorem_s);
      std::vector<Cone> cones = theorem_cones(t);
      if (t == Theorem::CopsonMinusId) {
        std::cout << "# nonincr omitted: the nonincreasing case is an open problem\n";
        cones.push_back(Cone::Nondecr);
      }
      std::cout << "alpha,cone,value,case_label\n";
      const auto count = static_cast<Index>(std::floor((to - from) / step + 1e-9));
      for (Index i = 0; i <= count; ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", from + static_cast<double>(i) * step);
        const double alpha = parse_real(buf, "alpha");
        for (Cone c : cones) {
          power::PowerCaseResult p;
          if (t == Theorem::CopsonMinusId && c == Cone::Nondecr) p = {0.0, "nondecreasing", {}};
          else p = closed_form(t, alpha, c);
          std::cout << format_number(alpha) << ',' << cone_name(c) << ',' << format_number(p.value.value()) << ','
                    << p.case_label << "\n";
        }
      }
      return 0;
    }

    if (*verify) {
      json reports = json::array();
      auto append = [&](const json& part) {
        for (const auto& r : part) reports.push_back(r);
      };
      if (suite == "identities" || suite == "all") append(identity_suite(seed));
      if (suite == "power-consistency" || suite == "all") {
        TruncConfig cfg;
        cfg.n_max = vn_max;
        append(power_consistency_suite(cfg));
      }
      if (suite == "oracle" || suite == "all") append(oracle_suite(seed, lists, trials));
      std::cout << reports.dump(1) << "\n";
      return all_pass(reports) ? 0 : 3;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
