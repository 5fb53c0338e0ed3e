#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "phasedr/cli.hpp"

using namespace phasedr;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli_main(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("usage and help") {
  const auto none = run({});
  CHECK(none.code == 2);
  CHECK(none.err.find("spectral-cert") != std::string::npos);

  const auto help = run({"global", "--help"});
  CHECK(help.code == 0);
  CHECK((help.out + help.err).find("--init") != std::string::npos);
}

TEST_CASE("bad arguments exit with 2") {
  CHECK(run({"global", "--no-such-flag"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"global", "--shape", "6x6", "--sector", "0,2"}).code == 2);
  CHECK(run({"global", "--shape", "6x6", "--sector", "0.7,0.7"}).code == 2);
  CHECK(run({"global", "--shape", "6x6", "--variant", "three-mask"}).code == 2);
  CHECK(run({"global", "--shape", "6x", "--max-iters", "3"}).code == 2);
  CHECK(run({"local-rate", "--shape", "6x6", "--init", "ri"}).code == 2);
  CHECK(run({"gen-image", "--shape", "6x6"}).code == 2);
}

TEST_CASE("spectral-cert writes one row per trial") {
  const auto r = run({"spectral-cert", "--shape", "6x6", "--trials", "2", "--seed", "3"});
  CHECK(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0][0] == '#');
  CHECK(lines[1].rfind("seed,variant,n,N,lambda1,lambda2", 0) == 0);
  CHECK(lines[2].rfind("3,one-and-half,36,242,", 0) == 0);
  std::istringstream row(lines[2]);
  std::string cell;
  for (int i = 0; i < 6; ++i) std::getline(row, cell, ',');
  CHECK(std::stod(cell) < 1.0);
}

TEST_CASE("global with a sector constraint") {
  const auto r = run({"global", "--shape", "6x6", "--variant", "one-mask", "--sector", "0,0.5",
                      "--init", "ci", "--max-iters", "20"});
  CHECK(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() >= 3);
  CHECK(lines[1] == "trial,init,k,relative_error");
  CHECK(lines[2].rfind("0,ci,1,", 0) == 0);
  CHECK(lines[0].find("\"sector\":[0.0,0.5]") != std::string::npos);
}

TEST_CASE("output file and summary are separated") {
  const auto dir = std::filesystem::temp_directory_path() / "phasedr_cli_test";
  std::filesystem::create_directories(dir);
  const std::string csv = (dir / "noise.csv").string();
  const auto r = run({"noise-sweep", "--shape", "6x6", "--nsr", "0,0.1", "--budgets", "10,20",
                      "--out", csv});
  CHECK(r.code == 0);
  std::ifstream in(csv);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto lines = lines_of(buf.str());
  REQUIRE(lines.size() == 2 + 2 * 2);
  CHECK(lines[1] == "nsr,trial,budget,relative_error");
  CHECK(!r.out.empty());

  const std::string prefix = (dir / "obj").string();
  CHECK(run({"gen-image", "--shape", "8x8", "--image", "tcb", "--out", prefix}).code == 0);
  CHECK(std::filesystem::exists(prefix + ".re.pgm"));
  CHECK(std::filesystem::exists(prefix + ".im.pgm"));
  const auto back = run({"spectral-cert", "--shape", "8x8", "--image", "file:" + prefix});
  CHECK(back.code == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("padding sweep and local rate run end to end") {
  const auto p = run({"padding-sweep", "--shape", "6x6", "--ntilde", "1,4", "--max-iters", "10",
                      "--init", "ri"});
  CHECK(p.code == 0);
  CHECK(lines_of(p.out)[1] == "ratio,ntilde,trial,relative_error,iterations");
  const auto l = run({"local-rate", "--shape", "6x6", "--max-iters", "10"});
  CHECK(l.code == 0);
  CHECK(lines_of(l.out)[1] == "trial,algo,k,error,lambda2_ref");
}
