#include "qgb/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

namespace qgb::cli {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(Cli, IrredExamples) {
  auto r = run_cli({"irred", "--k", "2", "x^2+2"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "reducible: (x + (0,-1)) * (x + (0,1))\n");
  auto s = run_cli({"irred", "--k", "2", "x^2+1"});
  EXPECT_EQ(s.code, kExitOk);
  EXPECT_EQ(s.out, "irreducible\n");
  EXPECT_EQ(run_cli({"irred", "--k", "2", "--engine", "oracle", "x^2+1"}).out, "irreducible\n");
  EXPECT_EQ(run_cli({"irred", "--k", "4", "x"}).code, kExitInvalidRing);
  EXPECT_EQ(run_cli({"irred", "--k", "1", "x"}).code, kExitInvalidRing);
}

TEST(Cli, ErrorCodes) {
  auto r = run_cli({"irred", "--k", "2", "x^^2"});
  EXPECT_EQ(r.code, kExitSyntax);
  EXPECT_NE(r.err.find("offset 2"), std::string::npos);
  EXPECT_EQ(run_cli({"irred", "--k", "2", "x^5+1"}).code, kExitCapacity);
  EXPECT_EQ(run_cli({"irred", "--k", "2", "(2,0)*x^2+1"}).code, kExitCapacity);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kExitSyntax);
  EXPECT_EQ(run_cli({"sweep", "--k", "2", "--f", "x^2", "--y", "1", "--y-min", "1", "--y-max", "2"}).code,
            kExitSyntax);
  EXPECT_EQ(run_cli({"sweep", "--k", "2", "--f", "x^2", "--y", "1", "--jobs", "0"}).code, kExitSyntax);
  EXPECT_EQ(run_cli({"sweep", "--k", "2", "--f", "x", "--y", "1"}).code, kExitCapacity);
  EXPECT_EQ(run_cli({"sweep", "--k", "2", "--f", "x^2", "--y", "3,2"}).code, kExitCapacity);
  EXPECT_EQ(run_cli({"mahler-check", "--k", "2", "--trials", "0"}).code, kExitCapacity);
}

TEST(Cli, SweepGolden) {
  auto r = run_cli({"sweep", "--k", "2", "--f", "x^2", "--mode", "box", "--y-min", "1", "--y-max", "4", "--step", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto l = lines(r.out);
  ASSERT_EQ(l.size(), 6u);
  EXPECT_EQ(l[0], kSweepCsvHeader);
  EXPECT_EQ(l[1], "2,box,2,x^2,1,9,9,1,8,0.888889,2.000000,0.500000");
  EXPECT_EQ(l[2], "2,box,2,x^2,2,25,25,4,21,0.840000,1.312500,0.328125");
  EXPECT_EQ(l[5].rfind("# fit slope=", 0), 0u);

  auto d = run_cli({"sweep", "--k", "2", "--f", "x^2", "--mode", "disk", "--y-min", "1", "--y-max", "1"});
  auto dl = lines(d.out);
  ASSERT_GE(dl.size(), 2u);
  EXPECT_EQ(dl[1], "2,disk,2,x^2,1,3,,1,2,0.666667,0.500000,0.125000");
}

TEST(Cli, SweepJobsIdentical) {
  std::vector<std::string> base{"sweep", "--k", "3", "--f", "x^3", "--mode", "box", "--y", "1,2"};
  auto one = run_cli(base);
  base.insert(base.end(), {"--jobs", "8"});
  auto eight = run_cli(base);
  EXPECT_EQ(one.code, 0);
  EXPECT_EQ(one.out, eight.out);
}

TEST(Cli, SweepJson) {
  auto r = run_cli({"sweep", "--k", "2", "--f", "x^2", "--y", "1", "--format", "json"});
  auto l = lines(r.out);
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0],
            "{\"k\":2,\"mode\":\"box\",\"d\":2,\"f\":\"x^2\",\"y\":1,\"T_enum\":9,\"T_formula\":9,"
            "\"pairs_reducible\":1,\"R\":8,\"ratio_R_T\":0.888889,\"ratio_R_2y\":2.0,\"ratio_R_4y\":0.5}");
}

TEST(Cli, PairsTotal) {
  auto r = run_cli({"pairs-total", "--k", "2", "--f", "x^3", "--mode", "box", "--y", "2"});
  EXPECT_EQ(r.out, "k,mode,d,f,y,T_enum,T_formula\n2,box,3,x^3,2,650,650\n");
}

TEST(Cli, Lemma2) {
  auto r = run_cli({"lemma2", "--k", "2", "--d", "2", "--g-lead", "(-1,0)", "--mode", "box", "--y", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto l = lines(r.out);
  ASSERT_GE(l.size(), 2u);
  EXPECT_EQ(l[0], "k,mode,d,g_lead,y,candidates,r_y,ratio");
  EXPECT_EQ(l[1], "2,box,2,\"(-1,0)\",1,9,1,0.111111");
  auto out = run_cli({"lemma2", "--k", "2", "--d", "2", "--g-lead", "(9,9)", "--mode", "box", "--y", "1"});
  EXPECT_EQ(lines(out.out)[1], "2,box,2,\"(9,9)\",1,9,0,0.000000");
  auto free = run_cli({"lemma2", "--k", "2", "--d", "2", "--free-lead", "--mode", "box", "--y", "1"});
  ASSERT_EQ(free.code, 0) << free.err;
  EXPECT_NE(lines(free.out)[1].find(",81,18,"), std::string::npos);
}

TEST(Cli, MahlerCheck) {
  auto r = run_cli({"mahler-check", "--k", "2", "--trials", "1"});
  EXPECT_EQ(r.code, 0);
  auto l = lines(r.out);
  ASSERT_EQ(l.size(), 6u);
  for (const auto& line : l) {
    EXPECT_EQ(line.front(), '{');
    EXPECT_EQ(line.back(), '}');
    EXPECT_NE(line.find("\"generator\":\"mt19937_64\""), std::string::npos);
  }
  auto t = run_cli({"mahler-check", "--k", "2", "--trials", "20", "--seed", "1", "--tamper-scale", "0.01"});
  EXPECT_EQ(t.code, kExitPropertyFailure);
  EXPECT_NE(t.out.find("\"counterexample\":\"k=2 f="), std::string::npos);
}

TEST(Cli, OutFile) {
  auto path = std::filesystem::temp_directory_path() / "qgb_cli_out.csv";
  auto r = run_cli({"pairs-total", "--k", "2", "--f", "x^2", "--y", "1", "--out", path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), "k,mode,d,f,y,T_enum,T_formula\n2,box,2,x^2,1,9,9\n");
  std::filesystem::remove(path);
}

TEST(Cli, FormatReal) {
  EXPECT_EQ(format_real(2.0), "2.000000");
  EXPECT_EQ(format_real(1.0 / 3.0), "0.333333");
}

}  // namespace
}  // namespace qgb::cli
