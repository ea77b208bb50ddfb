// CLI golden tests. Set PLAUT_UPDATE_GOLDEN=1 to rewrite the golden files.

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

struct CliRun {
  std::string out;
  int code = -1;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(PLAUT_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  CliRun r;
  if (!pipe) return r;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void check_golden(const std::string& name, const std::string& args, int expected_code) {
  const CliRun r = run(args);
  EXPECT_EQ(r.code, expected_code) << r.out;
  const fs::path golden = fs::path(PLAUT_GOLDEN_DIR) / (name + ".json");
  const char* update = std::getenv("PLAUT_UPDATE_GOLDEN");
  if (update && std::string(update) == "1") {
    std::ofstream(golden) << r.out;
    return;
  }
  ASSERT_TRUE(fs::exists(golden)) << golden;
  EXPECT_EQ(r.out, read_file(golden)) << name;
}

const std::string kJson = "--format json ";
const std::string kConfig = std::string(PLAUT_GOLDEN_DIR) + "/henon_small.cfg";

}  // namespace

TEST(Cli, Decompose) { check_golden("decompose_henon", kJson + "decompose --map \"(y, x + y^2)\"", 0); }

TEST(Cli, Invert) { check_golden("invert_henon", kJson + "invert --map \"(y, y^2 + x + 1)\"", 0); }

TEST(Cli, CheckAutomorphism) {
  check_golden("check_aut_false", kJson + "check-aut --map \"(x^2, y)\"", 1);
  check_golden("check_aut_fp", kJson + "--field fp:10007 check-aut --map \"(y, x + y^2)\"", 0);
}

TEST(Cli, ParseErrorExitsWithTwo) { check_golden("parse_error", kJson + "decompose --map \"(x,\"", 2); }

TEST(Cli, FixedSet) {
  check_golden("fix_swap", kJson + "fix --map \"(y, x)\"", 0);
  check_golden("fix_henon_fp", kJson + "--field fp:101 fix --map \"(y, x + y^2 + 3)\"", 0);
}

TEST(Cli, ClassifyNilpotent) {
  check_golden("classify_t3", kJson + "classify-nilpotent --family \"(b^2*x + c*y^2, b*y)\" --params b,c --degree 3",
               0);
}

TEST(Cli, MatchSeparable) {
  check_golden("match_separable", kJson + "match-separable --family \"(y, x + t*y^2 + t)\" --params t", 0);
  check_golden("match_unknown",
               kJson + "match-separable --family \"(y + t*(x + t*y^2)^2, x + t*y^2)\" --params t", 1);
}

TEST(Cli, Expand) {
  check_golden("expand_henon", kJson + "expand --config " + kConfig, 0);
  // The worker count never changes the report.
  EXPECT_EQ(run(kJson + "expand --workers 3 --config " + kConfig).out, run(kJson + "expand --config " + kConfig).out);
}

TEST(Cli, ExpandCsv) {
  const fs::path csv = fs::temp_directory_path() / "plaut_cli_test.csv";
  const CliRun r = run("expand --csv " + csv.string() + " --config " + kConfig);
  EXPECT_EQ(r.code, 0) << r.out;
  // The last column is wall time.
  const std::string text = read_file(csv);
  EXPECT_EQ(text.substr(0, text.rfind(',')),
            "|A|,|B|,|F|,|F*A|,exponent,gp_max_line,eps_nilp_fraction,millis\n"
            "256,8,8,1616,1.332276,16,1.000000");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("decompose").code, 2);
  EXPECT_EQ(run("--field fp:10 decompose --map \"(y, x)\"").code, 2);
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("expand --config /nonexistent/plaut.cfg").code, 2);
}
