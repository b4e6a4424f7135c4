#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "insep/insep.hpp"
#include "verify.hpp"

namespace insep::cli {

inline constexpr int kSchema = 1;

/// Input the user got wrong; exits with status 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Outcome {
  json report;
  std::string text;
  int exit_code = 0;
};

inline json header(const std::string& command) {
  json j;
  j["schema"] = kSchema;
  j["command"] = command;
  return j;
}

inline json optional_json(const std::optional<std::int64_t>& v) { return v ? json(*v) : json(nullptr); }

/// "R" or "R0..R1".
inline std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  try {
    const auto dots = text.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const std::int64_t r = std::stoll(text, &used);
      if (used != text.size()) throw UsageError("");
      return {r, r};
    }
    const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    const std::int64_t lo = std::stoll(a, &used);
    if (used != a.size()) throw UsageError("");
    const std::int64_t hi = std::stoll(b, &used);
    if (used != b.size()) throw UsageError("");
    if (lo > hi) throw UsageError("");
    return {lo, hi};
  } catch (const std::exception&) {
    throw UsageError("bad range '" + text + "': expected R or R0..R1 with R0 <= R1");
  }
}

// ---------------------------------------------------------------------------

inline Outcome cmd_dcoef(const std::string& lambda_text, const std::string& mu_text, bool trace) {
  const Partition lambda = parse_partition(lambda_text), mu = parse_partition(mu_text);
  if (lambda.sum() != mu.sum())
    throw UsageError("dcoef: " + lambda.to_string() + " and " + mu.to_string() + " have different sums");
  const auto tr = d_coefficient_trace(lambda, mu);
  Outcome out;
  out.report = header("dcoef");
  out.report["lambda"] = lambda.to_string();
  out.report["mu"] = mu.to_string();
  out.report["d"] = tr.value;
  std::ostringstream text;
  text << tr.value << '\n';
  if (trace) {
    json terms = json::array();
    text << "outer sign " << tr.outer_sign << '\n';
    for (const auto& t : tr.terms) {
      terms.push_back({{"digraph", t.digraph.cycle_lengths().to_string()}, {"sign", t.sign}, {"eta", t.eta}});
      text << "Gamma=" << t.digraph.cycle_lengths().to_string() << " sgn=" << t.sign << " eta=" << t.eta << '\n';
    }
    out.report["outer_sign"] = tr.outer_sign;
    out.report["terms"] = terms;
  }
  out.text = text.str();
  return out;
}

inline Outcome cmd_psi(const std::string& mu_text, int n, bool check_kr, int bound) {
  const Partition mu = parse_partition(mu_text);
  if (n < 1) throw UsageError("psi: --n must be >= 1");
  const auto psi = brute_force_psi(mu, n, bound > 0 ? bound : std::max(mu.sum(), kDefaultPsiBound));
  Outcome out;
  out.report = header("psi");
  out.report["mu"] = mu.to_string();
  out.report["n"] = n;
  json terms = json::array();
  for (const auto& [lambda, c] : psi.terms) terms.push_back({{"lambda", lambda.to_string()}, {"coefficient", c.str()}});
  out.report["terms"] = terms;
  out.text = psi.to_string();
  if (check_kr) {
    json mismatches = json::array();
    std::int64_t compared = 0;
    for (const auto& lambda : enumerate(mu.sum(), {.min_part = 1, .max_part = n, .num_parts = std::nullopt})) {
      ++compared;
      const std::int64_t d = d_coefficient_cached(lambda, mu);
      if (psi.coefficient(lambda) != d)
        mismatches.push_back({{"lambda", lambda.to_string()}, {"psi", psi.coefficient(lambda).str()}, {"tilings", d}});
    }
    out.report["check_kr"] = {{"compared", compared}, {"pass", mismatches.empty()}, {"mismatches", mismatches}};
    out.text += mismatches.empty() ? "check-kr: PASS (" + std::to_string(compared) + " coefficients)\n"
                                   : "check-kr: FAIL " + mismatches.dump() + "\n";
    if (!mismatches.empty()) out.exit_code = 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// field commands

struct FieldArgs {
  FieldSpec spec;
  std::string poly;
  std::int64_t precision = kDefaultPrecision;
};

template <class F>
auto with_extension(const FieldArgs& args, F&& f) {
  AnyBase base = make_base(args.spec, args.precision);
  return std::visit([&](const auto& b) { return f(parse_extension(b, args.poly)); }, base);
}

inline json field_json(const FieldArgs& args) {
  return {{"field", args.spec.to_string()}, {"poly", args.poly}, {"precision", args.precision}};
}

template <class Ext>
json profile_json(const Ext& ext, const InsepProfile& pr) {
  json j;
  j["polynomial"] = ext.polynomial_string();
  j["n"] = pr.n;
  j["p"] = pr.p;
  j["nu"] = pr.nu;
  j["u"] = pr.u;
  j["e_L"] = optional_json(pr.e_L);
  j["i"] = pr.i;
  json ipi = json::array(), a = json::array(), b = json::array(), d = json::array();
  for (std::size_t k = 0; k < pr.i.size(); ++k) {
    ipi.push_back(optional_json(pr.i_pi[k]));
    a.push_back(optional_json(pr.a[k]));
    b.push_back(optional_json(pr.b[k]));
    d.push_back(higher_different(pr, static_cast<int>(k)));
  }
  j["i_pi"] = ipi;
  j["a"] = a;
  j["b"] = b;
  j["d_j"] = d;
  if (!pr.notes.empty()) j["notes"] = pr.notes;
  return j;
}

inline Outcome cmd_indices(const FieldArgs& args) {
  return with_extension(args, [&](const auto& ext) {
    const auto pr = profile(ext);
    Outcome out;
    out.report = header("indices");
    out.report.update(field_json(args));
    out.report.update(profile_json(ext, pr));
    std::ostringstream text;
    text << ext.polynomial_string() << "\n";
    for (std::size_t j = 0; j < pr.i.size(); ++j)
      text << "j=" << j << "  i_j=" << pr.i[j] << "  i_j^pi="
           << (pr.i_pi[j] ? std::to_string(*pr.i_pi[j]) : "inf") << "  d_j=" << higher_different(pr, static_cast<int>(j))
           << '\n';
    out.text = text.str();
    return out;
  });
}

template <class Ext>
json g_row(const Ext& ext, const InsepProfile& pr, int h, std::int64_t r, GMode mode, int digits) {
  json row{{"h", h}, {"r", r}};
  try {
    ExhaustiveOptions opts;
    opts.digits = digits;
    const auto g = g_exact(ext, pr, h, r, mode, opts);
    row["gamma"] = g.gamma;
    row["g"] = g.value;
    row["status"] = to_string(g.status);
    if (g.status == GStatus::upper_bound) row["proven_lower"] = g.proven_lower;
    row["method"] = g.method;
    if (g.witness && g.status != GStatus::lower_bound) row["witness"] = ext.element_string(*g.witness);
  } catch (const ResidueFieldTooSmall& e) {
    row["gamma"] = gamma_lower_bound(pr, h, r);
    row["g"] = gamma_lower_bound(pr, h, r);
    row["status"] = "lower_bound";
    row["method"] = e.what();
  }
  return row;
}

inline Outcome cmd_gtable(const FieldArgs& args, int h, const std::string& range, const std::string& mode_text,
                          int digits) {
  GMode mode;
  if (mode_text == "witness") mode = GMode::witness;
  else if (mode_text == "exhaustive") mode = GMode::exhaustive;
  else throw UsageError("gtable: --mode must be witness or exhaustive");
  const auto [lo, hi] = parse_range(range);
  if (hi - lo > 10000) throw UsageError("gtable: range too long");
  return with_extension(args, [&](const auto& ext) {
    if (h < 1 || h > ext.n()) throw UsageError("gtable: need 1 <= h <= n = " + std::to_string(ext.n()));
    const auto pr = profile(ext);
    Outcome out;
    out.report = header("gtable");
    out.report.update(field_json(args));
    out.report["polynomial"] = ext.polynomial_string();
    out.report["mode"] = mode_text;
    if (mode == GMode::exhaustive) out.report["digits"] = digits > 0 ? digits : ext.n();
    json rows = json::array();
    std::ostringstream text;
    text << "h r gamma g status\n";
    for (std::int64_t r = lo; r <= hi; ++r) {
      rows.push_back(g_row(ext, pr, h, r, mode, digits));
      const auto& row = rows.back();
      text << h << ' ' << r << ' ' << row["gamma"].get<std::int64_t>() << ' ' << row["g"].get<std::int64_t>() << ' '
           << row["status"].get<std::string>();
      if (row.contains("witness")) text << "  witness " << row["witness"].get<std::string>();
      text << '\n';
    }
    out.report["rows"] = rows;
    out.text = text.str();
    return out;
  });
}

inline Outcome cmd_trace(const FieldArgs& args, const std::string& range) {
  const auto [lo, hi] = parse_range(range);
  if (hi - lo > 10000) throw UsageError("trace: range too long");
  return with_extension(args, [&](const auto& ext) {
    const auto pr = profile(ext);
    Outcome out;
    out.report = header("trace");
    out.report.update(field_json(args));
    out.report["polynomial"] = ext.polynomial_string();
    out.report["d_0"] = higher_different(pr, 0);
    json rows = json::array();
    std::ostringstream text;
    text << "d_0=" << higher_different(pr, 0) << "\nr formula sweep\n";
    bool all = true;
    for (std::int64_t r = lo; r <= hi; ++r) {
      const std::int64_t formula = trace_ideal(pr, r);
      const Valuation sweep = trace_sweep(ext, r);
      const bool agree = sweep.is_finite() && sweep.value() == formula;
      all = all && agree;
      rows.push_back({{"r", r}, {"formula", formula}, {"sweep", sweep.to_string()}, {"agree", agree}});
      text << r << ' ' << formula << ' ' << sweep.to_string() << (agree ? "" : "  MISMATCH") << '\n';
    }
    out.report["rows"] = rows;
    out.report["pass"] = all;
    out.text = text.str();
    out.exit_code = all ? 0 : 1;
    return out;
  });
}

// ---------------------------------------------------------------------------
// example

inline constexpr const char* kExamplePoly = "X^8 + t*X^3 + t*X^2 + t";

namespace example_detail {

struct Check {
  std::string name;
  bool pass;
  json value;
};

/// g_4(1) on the given Laurent field, by the method appropriate to its residue field.
inline json g4_run(const LaurentExtension& ext, const InsepProfile& pr, std::vector<Check>& checks,
                   const std::string& label) {
  json run;
  run["field"] = ext.base().describe();
  if (ext.n() < 4) {
    checks.push_back({label + ": degree at least 4", false, ext.n()});
    return run;
  }
  const bool small = ext.base().q() == 2;
  ExhaustiveOptions opts;
  opts.digits = ext.n();
  opts.stop_at_gamma = false;
  GResult<LaurentBase> g;
  if (small) {
    g = g_exact(ext, pr, 4, 1, GMode::exhaustive, opts);
  } else {
    try {
      g = g_exact(ext, pr, 4, 1, GMode::witness);
    } catch (const ResidueFieldTooSmall&) {
      g = g_exact(ext, pr, 4, 1, GMode::exhaustive, opts);
    }
  }
  run["gamma"] = g.gamma;
  run["g4(1)"] = g.value;
  run["status"] = to_string(g.status);
  run["method"] = g.method;
  if (g.witness) run["witness"] = ext.element_string(*g.witness);
  if (small) {
    checks.push_back({label + ": E_4(M_L) in M_K^2 (g_4(1) >= 2, certified)",
                      g.status == GStatus::exact && g.value >= 2, run});
  } else {
    bool outside = false;
    if (g.witness)
      for (const auto& c : g.witness->coeffs)
        for (std::int64_t e = c.is_zero() ? 0 : c.order(); !c.is_zero() && e < c.end(); ++e)
          if (!ext.base().field->in_prime_field(c.coefficient(e))) outside = true;
    run["beta_outside_F2"] = outside;
    checks.push_back({label + ": g_4(1) = 1 with a witness beta outside F_2",
                      g.status == GStatus::exact && g.value == 1 && outside, run});
  }
  return run;
}

}  // namespace example_detail

inline Outcome cmd_example(const FieldArgs& args) {
  using example_detail::Check;
  if (args.spec.kind != FieldSpec::Kind::laurent || args.spec.p != 2)
    throw UsageError("example: the worked example lives over a Laurent base with p = 2");
  std::vector<Check> checks;
  const auto base = std::get<LaurentBase>(make_base(args.spec, args.precision));
  const auto ext = parse_extension(base, args.poly);
  Outcome out;
  out.report = header("example");
  out.report.update(field_json(args));
  out.report["polynomial"] = ext.polynomial_string();

  std::optional<InsepProfile> pr;
  try {
    pr = profile(ext);
  } catch (const InseparableInput& e) {
    checks.push_back({"indices (3,2,2,0)", false, e.what()});
  }
  if (pr) checks.push_back({"indices (3,2,2,0)", pr->i == std::vector<std::int64_t>{3, 2, 2, 0}, pr->i});

  const std::vector<std::tuple<Partition, Partition, std::int64_t>> ds = {
      {Partition{6}, Partition{1, 1, 1, 3}, 6}, {Partition{6}, Partition{1, 1, 2, 2}, 9},
      {Partition{5}, Partition{1, 1, 1, 2}, -5}};
  for (const auto& [lambda, mu, expected] : ds) {
    const std::int64_t d = d_coefficient(lambda, mu);
    checks.push_back({"d" + lambda.to_string() + mu.to_string() + " = " + std::to_string(expected), d == expected, d});
  }

  if (pr && ext.n() >= 4) {
    const std::string symbolic = symbolic_string(e_h_symbolic(ext, *pr, 4, 1, 2));
    checks.push_back({"E_4(alpha) = a_1^3*a_2*t + a_1^2*a_2^2*t mod M_K^2",
                      symbolic == "a_1^3*a_2*t + a_1^2*a_2^2*t", symbolic});
    out.report["g4"] = example_detail::g4_run(ext, *pr, checks, "main run");
    // The contrast: the same polynomial over the other residue field size.
    FieldSpec other = args.spec;
    other.d = ext.base().q() == 2 ? 2 : 1;
    other.modulus.clear();
    const auto other_ext = parse_extension(std::get<LaurentBase>(make_base(other, args.precision)), args.poly);
    out.report["contrast"] = example_detail::g4_run(other_ext, profile(other_ext), checks, "contrast run");
  }

  json arr = json::array();
  std::ostringstream text;
  text << "field " << args.spec.to_string() << "  f = " << ext.polynomial_string() << '\n';
  bool all = true;
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name}, {"pass", c.pass}, {"value", c.value}});
    text << (c.pass ? "PASS  " : "FAIL  ") << c.name << "  " << c.value.dump() << '\n';
    all = all && c.pass;
  }
  out.report["checks"] = arr;
  out.report["pass"] = all;
  out.text = text.str();
  out.exit_code = all ? 0 : 1;
  return out;
}

// ---------------------------------------------------------------------------
// verify

inline Outcome cmd_verify(const std::string& suite, const VerifyConfig& cfg) {
  std::vector<std::string> suites;
  if (suite == "all") suites = suite_names();
  else if (std::find(suite_names().begin(), suite_names().end(), suite) != suite_names().end()) suites = {suite};
  else throw UsageError("verify: unknown suite '" + suite + "' (kr, subrings, fields, insep, all)");
  Outcome out;
  out.report = header("verify");
  out.report["suite"] = suite;
  out.report["config"] = {{"seed", cfg.seed},
                          {"kr_max_w", cfg.kr_max_w},
                          {"contain_samples", cfg.contain_samples},
                          {"two_path_samples", cfg.two_path_samples},
                          {"two_path_cap", cfg.two_path_cap},
                          {"precision", cfg.precision}};
  json arr = json::array();
  std::ostringstream text;
  bool all = true;
  for (const auto& name : suites) {
    json checks = json::array();
    for (const auto& c : run_suite(name, cfg)) {
      checks.push_back(c.to_json());
      all = all && c.pass;
      text << (c.pass ? "PASS  " : "FAIL  ") << name << "  " << c.name << "  (" << c.cases << " cases)\n";
      if (c.counterexample) text << "      counterexample " << c.counterexample->dump() << '\n';
    }
    arr.push_back({{"suite", name}, {"checks", checks}});
  }
  out.report["suites"] = arr;
  out.report["pass"] = all;
  out.text = text.str();
  out.exit_code = all ? 0 : 1;
  return out;
}

}  // namespace insep::cli
