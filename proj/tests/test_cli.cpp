#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <sys/wait.h>

#include "cylknot/cylknot.hpp"
#include "test_support.hpp"

using namespace cylknot;
using namespace cylknot::testing;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CYLKNOT_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("cylknot_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, AnalyzeTenKnot) {
  const auto r = run("analyze " + data_path("ten_knot.json") + " --write-matrices " + path("knot"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("34.7078032583"), std::string::npos) << r.out;
  EXPECT_EQ(SeidelMatrix(parse_matrix(read_text_file(path("knot.P.txt")))), chirality_matrix(ten_knot()));
  EXPECT_EQ(RingMatrix(parse_matrix(read_text_file(path("knot.R.txt")))), named::R10());
}

TEST_F(Cli, AnalyzeJson) {
  const auto r = run("analyze --json " + data_path("ten_knot.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j.at("report").at("invariant").get<double>(), 34.7078032583, 1e-9);
  EXPECT_EQ(j.at("R").size(), 10u);
}

TEST_F(Cli, AnalyzeTwoCylinders) {
  const auto r = run("analyze " + data_path("two_cylinders.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("P (2x2)"), std::string::npos);
  EXPECT_NE(r.out.find("R (2x2)\n    0  0\n    0  0"), std::string::npos) << r.out;
}

TEST_F(Cli, AnalyzeParallelAxesIsADomainError) {
  const auto r = run("analyze " + data_path("parallel_axes.json"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("DegenerateParallel"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("[0 1]"), std::string::npos) << r.out;
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("analyze").code, 2);
  EXPECT_EQ(run("analyze " + data_path("ten_knot.json") + " --bogus").code, 2);
  EXPECT_EQ(run("solve --profile square -n 3").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, ParseErrorIsADomainError) {
  write_text_file(path("bad.json"), "{ nope");
  const auto r = run("analyze " + path("bad.json"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("ParseError"), std::string::npos);
}

TEST_F(Cli, CheckContainment) {
  write_text_file(path("m11.txt"), format_matrix(named::M11().matrix()));
  write_text_file(path("p7.txt"), format_matrix(named::P7().matrix()));
  const auto a = run("check " + path("m11.txt") + " --target P1625");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out.rfind("contained", 0), 0u) << a.out;
  const auto b = run("check " + path("p7.txt") + " --target K5");
  EXPECT_EQ(b.code, 0);
  EXPECT_EQ(b.out, "not contained\n");
  const auto c = run("check " + path("p7.txt") + " --target M11");
  EXPECT_EQ(c.code, 1);
  EXPECT_NE(c.out.find("OrderError"), std::string::npos);
}

TEST_F(Cli, CheckK5Rank19) {
  std::mt19937_64 rng(5);
  write_text_file(path("r19.txt"), format_matrix(random_seidel(19, rng).matrix()));
  const auto r = run("check " + path("r19.txt") + " --k5-rank19");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("K5 contained\nrows"), std::string::npos) << r.out;
  write_text_file(path("p7.txt"), format_matrix(named::P7().matrix()));
  EXPECT_EQ(run("check " + path("p7.txt") + " --k5-rank19").code, 1);
}

TEST_F(Cli, Catalog) {
  const auto list = run("catalog");
  EXPECT_EQ(list.code, 0);
  for (const auto& e : catalog()) EXPECT_NE(list.out.find(e.name), std::string::npos) << e.name;
  const auto one = run("catalog Pm125");
  EXPECT_EQ(one.code, 0);
  EXPECT_EQ(parse_matrix(one.out), named::Pm125().matrix());
  EXPECT_EQ(run("catalog nothing").code, 1);
}

TEST_F(Cli, ExportMesh) {
  const auto r = run("export-mesh " + data_path("ten_knot.json") + " --segments 6 -o " + path("knot.obj"));
  ASSERT_EQ(r.code, 0) << r.out;
  const auto text = read_text_file(path("knot.obj"));
  EXPECT_NE(text.find("g cylinder_9"), std::string::npos);
  EXPECT_EQ(run("export-mesh " + data_path("ten_knot.json") + " --segments 2").code, 2);
}

TEST_F(Cli, SolveWritesAValidConfiguration) {
  const auto r = run("solve -n 4 --profile equal_round --seed 3 --restarts 40 -o " + path("sol.json") +
                     " --report " + path("rep.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  const auto c = load_configuration(path("sol.json"));
  EXPECT_TRUE(validate(c).passed);
  const auto rep = json::parse(read_text_file(path("rep.json")));
  IntMatrix p(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) p(i, j) = rep.at("P").at(i).at(j).get<int>();
  EXPECT_EQ(SeidelMatrix(p), chirality_matrix(c));
}

TEST_F(Cli, SolveInfeasibleIsADomainError) {
  write_text_file(path("m11.txt"), format_matrix(named::M11().matrix()));
  const auto r = run("solve --target " + path("m11.txt") + " --profile free_round");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("InfeasibleDof"), std::string::npos) << r.out;
}

TEST_F(Cli, CensusTable) {
  const auto a = run("census --trials 100 --seed 4 -o " + path("a.tsv"));
  const auto b = run("census --trials 100 --seed 4 -o " + path("b.tsv"));
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(read_text_file(path("a.tsv")), read_text_file(path("b.tsv")));
  EXPECT_NE(read_text_file(path("a.tsv")).find("accepted 100"), std::string::npos);
}
