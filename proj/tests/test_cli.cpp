#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(STDQ_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

TEST(Cli, AsymptoteCsv) {
  const auto r = run("asymptote --q 1 --r 1:4");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "q_repr,x,r,quantity,value,oracle_value,abs_diff,status\n"
            "q=1,inf,1,asymptote,0,,,ok\n"
            "q=1,inf,2,asymptote,1,,,ok\n"
            "q=1,inf,3,asymptote,5,,,ok\n"
            "q=1,inf,4,asymptote,23,,,ok\n");
}

TEST(Cli, SweepJsonWithOracle) {
  const auto r = run("sweep --q 1.3 --x 3 --r 3 --oracle-tol 1e-12 --format json");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"oracle_value\""), std::string::npos);
  EXPECT_NE(r.out.find("\"status\": \"ok\""), std::string::npos);
}

TEST(Cli, ErrorRowsExitOne) {
  const auto r = run("sweep --q 2 --x 1 --r 3");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("domain_error"), std::string::npos);
}

TEST(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(run("sweep --q 1 --theta 0.5 --x 1 --r 2").code, 2);
  EXPECT_EQ(run("sweep --q 1 --x 1:2 --r 2").code, 2);
  EXPECT_EQ(run("sweep --q -1 --x 1 --r 2").code, 2);
  EXPECT_EQ(run("sweep --q 1 --x 1 --r 2 --quantity nope").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST(Cli, IoErrorExitsThree) {
  EXPECT_EQ(run("sweep --q 1 --x 1 --r 2 --out /nonexistent_dir/x.csv").code, 3);
}

TEST(Cli, VerifyQuick) {
  const auto r = run("verify --preset quick");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(Cli, ThetaRangeSweep) {
  const auto r = run("sweep --theta 0.1:0.5:3 --x 1,2 --r 2 --quantity intercept");
  EXPECT_EQ(r.code, 0);
  std::size_t lines = 0;
  for (char c : r.out) lines += c == '\n';
  EXPECT_EQ(lines, 7u);
}

}  // namespace
