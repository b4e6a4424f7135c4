#include <sys/wait.h>

#include <cstdlib>
#include <string>

#include <gtest/gtest.h>

#include "commands.hpp"

using namespace insep;
using namespace insep::cli;

namespace {

const char* const kOctic = "X^8 + t*X^3 + t*X^2 + t";

FieldArgs laurent(int d, const std::string& poly) {
  return {parse_field_spec("laurent:p=2,d=" + std::to_string(d)), poly, kDefaultPrecision};
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(INSEP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, IndicesReport) {
  const auto out = cmd_indices(laurent(1, kOctic));
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_EQ(out.report["schema"], 1);
  EXPECT_EQ(out.report["i"], json::parse("[3,2,2,0]"));
  EXPECT_EQ(out.report["b"], json::parse("[5,6,6,8]"));
  EXPECT_EQ(out.report["d_j"], json::parse("[10,4,2,0]"));
  for (const char* key : {"a", "i_pi", "n", "p"}) EXPECT_TRUE(out.report.contains(key)) << key;
}

TEST(Cli, DcoefTraceListsDigraphs) {
  const auto out = cmd_dcoef("{6}", "{1,1,1,3}", true);
  EXPECT_EQ(out.report["d"], 6);
  ASSERT_TRUE(out.report.contains("terms"));
  EXPECT_FALSE(out.report["terms"].empty());
  EXPECT_EQ(cmd_dcoef("{5}", "{2,1,1,1}", false).report["d"], -5);
}

TEST(Cli, PsiCheckAgainstTilings) {
  const auto out = cmd_psi("{2,2,1}", 5, true, 0);
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_TRUE(out.report["check_kr"]["pass"].get<bool>());
}

TEST(Cli, GtableRowsCarryStatus) {
  const auto out = cmd_gtable(laurent(1, kOctic), 4, "1..3", "exhaustive", 0);
  ASSERT_EQ(out.report["rows"].size(), 3u);
  const auto& first = out.report["rows"][0];
  for (const char* key : {"h", "r", "gamma", "g", "status"}) EXPECT_TRUE(first.contains(key)) << key;
  EXPECT_EQ(first["g"], 2);
  EXPECT_EQ(first["status"], "exact");
}

TEST(Cli, GtableWitnessOverSmallFieldDegradesToBound) {
  const auto out = cmd_gtable(laurent(1, kOctic), 4, "1", "witness", 0);
  EXPECT_EQ(out.report["rows"][0]["status"], "lower_bound");
}

TEST(Cli, TraceFormulaMatchesSweep) {
  const auto out = cmd_trace(laurent(1, kOctic), "0..9");
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_EQ(out.report["rows"].size(), 10u);
}

TEST(Cli, ExampleOverBothResidueFields) {
  EXPECT_EQ(cmd_example(laurent(1, kOctic)).exit_code, 0);
  EXPECT_EQ(cmd_example(laurent(2, kOctic)).exit_code, 0);
}

TEST(Cli, ExampleCatchesTamperedPolynomial) {
  const auto out = cmd_example(laurent(1, "X^8 + t*X^2 + t"));
  EXPECT_EQ(out.exit_code, 1);
  EXPECT_NE(out.text.find("FAIL"), std::string::npos);
}

TEST(Cli, RangeParsing) {
  EXPECT_EQ(parse_range("4"), std::make_pair(std::int64_t{4}, std::int64_t{4}));
  EXPECT_EQ(parse_range("-2..5"), std::make_pair(std::int64_t{-2}, std::int64_t{5}));
  EXPECT_THROW(parse_range("5..2"), UsageError);
  EXPECT_THROW(parse_range("x"), UsageError);
}

TEST(Cli, UnknownSuiteIsUsageError) { EXPECT_THROW(cmd_verify("nope", VerifyConfig{}), UsageError); }

TEST(CliBinary, ExitCodes) {
  EXPECT_EQ(run_binary("indices --poly \"X^8 + t*X^3 + t*X^2 + t\""), 0);
  EXPECT_EQ(run_binary("example"), 0);
  EXPECT_EQ(run_binary("example --poly \"X^8 + t*X^2 + t\""), 1);
  EXPECT_EQ(run_binary("indices --poly \"X^4 + t*X^\""), 2);
  EXPECT_EQ(run_binary("indices --poly \"X^4 + t\""), 2);
  EXPECT_EQ(run_binary("indices --poly \"X^4 + X + t\""), 2);
  EXPECT_EQ(run_binary("gtable --poly \"X^4 + t*X + t\" --h 9 --r 1"), 2);
  EXPECT_EQ(run_binary("dcoef --lambda \"{2,1}\""), 2);
  EXPECT_EQ(run_binary("frobnicate"), 2);
  EXPECT_EQ(run_binary("gtable --help"), 0);
}

TEST(CliBinary, PrecisionFromEnvironment) {
  EXPECT_EQ(run_binary("indices --poly \"X^8 + t*X^3 + t*X^2 + t\" --precision 0"), 2);
  EXPECT_EQ(std::system((std::string("INSEP_PRECISION=12 ") + INSEP_CLI_PATH +
                         " indices --poly \"X^4 + t*X + t\" | grep -q '\"precision\": 12'")
                            .c_str()),
            0);
}

TEST(CliParse, ErrorPositionPointsAtToken) {
  try {
    parse_polynomial(LaurentBase::make(2, 1, {}, 16), "X^4 + t*X + $");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position() + 1, 13u);
    EXPECT_NE(std::string(e.what()).find("position 13"), std::string::npos) << e.what();
  }
}
