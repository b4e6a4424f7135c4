// Acceptance run: one PASS/FAIL line per criterion with its wall time.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "commands.hpp"

using namespace insep;
using namespace insep::cli;

namespace {

struct Criterion {
  int id;
  std::string title;
  double budget_s;
  std::function<std::vector<CheckResult>()> run;
};

CheckResult indices_command() {
  CheckResult res{"indices command on X^8 + t*X^3 + t*X^2 + t"};
  res.cases = 1;
  const auto out = cmd_indices({parse_field_spec("laurent:p=2,d=1"), kExamplePoly, kDefaultPrecision});
  res.detail["i"] = out.report["i"];
  if (out.report["i"] != json::parse("[3,2,2,0]")) res.fail({{"i", out.report["i"]}});
  return res;
}

// The exhaustive certificate must not move when the sweep gets two more digits.
CheckResult sweep_stability() {
  CheckResult res{"g_4(1) unchanged with B = 10"};
  res.cases = 1;
  const auto ext = catalog::octic();
  ExhaustiveOptions opts;
  opts.digits = 10;
  opts.stop_at_gamma = false;
  const auto g = g_exact(ext, profile(ext), 4, 1, GMode::exhaustive, opts);
  if (g.status != GStatus::exact || g.value != 2) res.fail({{"g", g.value}, {"status", to_string(g.status)}});
  return res;
}

}  // namespace

int main() {
  const std::uint64_t seed = 7;
  const std::vector<Criterion> criteria = {
      {1, "worked example indices (3,2,2,0)", 1, [] { return std::vector{indices_command()}; }},
      {2, "worked example coefficients 6, 9, -5", 5, [] { return std::vector{check_worked_coefficients()}; }},
      {3, "E_4(M_L) in M_K^2 over F_2 with symbolic congruence", 30,
       [] { return std::vector{check_example_claim(), sweep_stability()}; }},
      {4, "F_4 contrast: g_4(1) = 1 with beta outside F_2", 30, [] { return std::vector{check_multiple()}; }},
      {5, "tilings equal basis change for w <= 8", 120, [] { return std::vector{check_oracle_equivalence(8)}; }},
      {6, "closed forms for w <= 10 with a u < v zero case", 60, [] { return std::vector{check_closed_forms(10)}; }},
      {7, "subring memberships, divisibility and congruences", 120,
       [] { return std::vector{check_power(4), check_valuation_divisibility(4), check_congruence(4)}; }},
      {8, "containment bound on 200 random elements per cell", 300,
       [seed] { return std::vector{check_contain(200, seed)}; }},
      {9, "pi^r attains the bound at breakpoints", 60, [] { return std::vector{check_distinct()}; }},
      {10, "tame binomial criterion with exhaustive cross-check", 120, [] { return std::vector{check_tame()}; }},
      {11, "d_0 = i_0 + n - 1 and trace ideals", 60, [] { return std::vector{check_differents()}; }},
      {12, "indices independent of the uniformizer", 60, [] { return std::vector{check_independence()}; }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<CheckResult> results;
    std::string error;
    try {
      results = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = error.empty();
    std::int64_t cases = 0;
    for (const auto& r : results) {
      pass = pass && r.pass;
      cases += r.cases;
    }
    const bool in_budget = secs <= c.budget_s;
    std::printf("%s  criterion %2d  %-55s  %lld cases  %.2fs (budget %.0fs)%s\n", pass && in_budget ? "PASS" : "FAIL",
                c.id, c.title.c_str(), static_cast<long long>(cases), secs, c.budget_s,
                in_budget ? "" : "  over budget");
    if (!error.empty()) std::printf("      exception: %s\n", error.c_str());
    for (const auto& r : results)
      if (r.counterexample) std::printf("      %s: %s\n", r.name.c_str(), r.counterexample->dump().c_str());
    if (!(pass && in_budget)) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
