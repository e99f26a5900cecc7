// Small tour of the library: a closed form, the same constant from the
// general formula, and an oracle check on a hand-written weight list.

#include <cstdio>

#include <ccnorm/ccnorm.hpp>

int main() {
  using namespace ccnorm;

  const double alpha = 0.5;
  const auto closed = power::cesaro_power(alpha, Cone::All);
  std::printf("closed form  A(C), alpha=%.2f: %.12g  [%s]\n", alpha, closed.value.value(), closed.case_label.c_str());

  const Weight w = Weight::power(alpha);
  TruncConfig cfg;
  cfg.n_max = 100000;
  const NormResult scan = norm_cesaro(w, w, Cone::All, cfg);
  std::printf("general scan A(C), alpha=%.2f: %.12g  (%s, residual %.3g)\n", alpha, scan.value.value(),
              std::string(status_name(scan.status)).c_str(), scan.residual_estimate);

  const Weight u = Weight::list({1.0, 0.5, 0.75, 0.0, 0.25});
  const Weight v = Weight::list({1.0, 2.0, 1.0, 3.0});
  const auto report = oracle::verify(OpTag::CminusSstar, u, v, Cone::Nonneg, cfg, 200, 7);
  std::printf("C-S* on nonneg: formula %.15g, extremal %.15g, random %.15g, %s\n", report.formula_value.value(),
              report.extremal_value, report.random_best, report.pass ? "pass" : "FAIL");
  return report.pass ? 0 : 1;
}
