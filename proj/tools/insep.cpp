#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace insep;
using namespace insep::cli;

namespace {

struct Common {
  std::string field = "laurent:p=2,d=1";
  std::string poly;
  std::int64_t precision = kDefaultPrecision;
};

void add_field_options(CLI::App* cmd, Common& c, bool poly_required) {
  cmd->add_option("--field,--base", c.field, "base field: laurent:p=P,d=D[,modulus=c0:c1:...] or padic:p=P")
      ->capture_default_str();
  auto* poly = cmd->add_option("--poly", c.poly, "Eisenstein polynomial, e.g. \"X^8 + t*X^3 + t*X^2 + t\"");
  if (poly_required) poly->required();
  cmd->add_option("--precision", c.precision, "absolute precision of base-field arithmetic")
      ->envname("INSEP_PRECISION")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_format(CLI::App* cmd, std::map<const CLI::App*, std::string>& formats, const std::string& fallback) {
  std::string& format = formats[cmd];
  format = fallback;
  cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
}

FieldArgs field_args(const Common& c) { return {parse_field_spec(c.field), c.poly, c.precision}; }

int emit(const Outcome& out, const std::string& format) {
  if (format == "json")
    std::cout << out.report.dump(2) << '\n';
  else
    std::cout << out.text;
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Indices of inseparability, transition coefficients and differents of Eisenstein extensions"};
  app.require_subcommand(1);

  Common c;
  std::map<const CLI::App*, std::string> formats;
  std::string lambda, mu, range, mode = "witness", suite = "all";
  bool trace = false, check_kr = false;
  int n = 0, h = 1, digits = 0, bound = 0;
  VerifyConfig vcfg;

  auto* dcoef = app.add_subcommand("dcoef", "transition coefficient d_{lambda,mu} from cycle-digraph tilings");
  dcoef->add_option("--lambda", lambda, "partition, e.g. \"{6}\"")->required();
  dcoef->add_option("--mu", mu, "partition, e.g. \"{1,1,1,3}\"")->required();
  dcoef->add_flag("--trace", trace, "list each contributing digraph with its sign and count");
  add_format(dcoef, formats, "table");

  auto* psi = app.add_subcommand("psi", "expand m_mu in elementary symmetric polynomials");
  psi->add_option("--mu", mu, "partition")->required();
  psi->add_option("--n", n, "number of variables")->required();
  psi->add_option("--bound", bound, "refuse weights above this (default max(sum(mu), 12))");
  psi->add_flag("--check-kr", check_kr, "compare every coefficient with the tiling count");
  add_format(psi, formats, "table");

  auto* indices = app.add_subcommand("indices", "indices of inseparability and higher differents");
  add_field_options(indices, c, true);
  add_format(indices, formats, "json");

  auto* gtable = app.add_subcommand("gtable", "g_h(r) over a range of r");
  gtable->set_help_flag("--help", "Print this help message and exit");  // frees -h for the index option
  add_field_options(gtable, c, true);
  gtable->add_option("--h", h, "index h, 1 <= h <= n")->required();
  gtable->add_option("--r", range, "R or R0..R1")->required();
  gtable->add_option("--mode", mode, "witness or exhaustive")->check(CLI::IsMember({"witness", "exhaustive"}))
      ->capture_default_str();
  gtable->add_option("--digits", digits, "exhaustive sweep length B (default n)")->check(CLI::PositiveNumber);
  add_format(gtable, formats, "json");

  auto* tr = app.add_subcommand("trace", "trace ideal Tr(M_L^r) by formula and by sweep");
  add_field_options(tr, c, true);
  tr->add_option("--r", range, "R or R0..R1")->required();
  add_format(tr, formats, "json");

  auto* example = app.add_subcommand("example", "reproduce the worked octic example over F_2((t))");
  add_field_options(example, c, false);
  add_format(example, formats, "table");

  auto* verify = app.add_subcommand("verify", "run the checkers");
  verify->add_option("suite", suite, "kr, subrings, fields, insep or all")->capture_default_str();
  verify->add_option("--seed", vcfg.seed, "seed for randomized checks")->capture_default_str();
  verify->add_option("--max-w", vcfg.kr_max_w, "weight bound of the oracle sweep")->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--samples", vcfg.contain_samples, "random elements per cell")->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--precision", vcfg.precision, "absolute precision")->envname("INSEP_PRECISION")
      ->check(CLI::PositiveNumber)->capture_default_str();
  add_format(verify, formats, "json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*dcoef) return emit(cmd_dcoef(lambda, mu, trace), formats[dcoef]);
    if (*psi) return emit(cmd_psi(mu, n, check_kr, bound), formats[psi]);
    if (*indices) return emit(cmd_indices(field_args(c)), formats[indices]);
    if (*gtable) return emit(cmd_gtable(field_args(c), h, range, mode, digits), formats[gtable]);
    if (*tr) return emit(cmd_trace(field_args(c), range), formats[tr]);
    if (*example) {
      if (c.poly.empty()) c.poly = kExamplePoly;
      return emit(cmd_example(field_args(c)), formats[example]);
    }
    if (*verify) return emit(cmd_verify(suite, vcfg), formats[verify]);
  } catch (const std::invalid_argument& e) {
    // parse errors, malformed partitions, non-Eisenstein or inseparable input
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
