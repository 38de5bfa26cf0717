#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(KHDETECT_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const std::string kFig8 = "'PD[X[8,5,1,6],X[4,1,5,2],X[2,8,3,7],X[6,4,7,3]]'";
const std::string kTrefoil = "'PD[X[6,3,1,4],X[4,1,5,2],X[2,5,3,6]]'";

}  // namespace

TEST_CASE("single-knot commands") {
  auto r = run("det " + kFig8);
  CHECK(r.code == 0);
  CHECK(r.out == "det = 5\n");
  r = run("detect " + kFig8);
  CHECK(r.code == 0);
  CHECK(r.out.find("verdict: FigureEight") != std::string::npos);
  r = run("detect --json " + kFig8);
  CHECK(r.out.find("\"verdict\": \"FigureEight\"") != std::string::npos);
  r = run("kh 'PD[]'");
  CHECK(r.out.find("dimension 1") != std::string::npos);
  CHECK(r.out.find("h=0 q=0  1") != std::string::npos);
  r = run("kh --json --field F2 " + kTrefoil);
  CHECK(r.out == "{\"field\":\"F2\",\"dims\":[[-3,-8,1],[-2,-6,1],[0,-2,1]]}\n");
  r = run("kh --naive --field F3 " + kTrefoil);
  CHECK(r.code == 0);
  r = run("kh --field Z " + kTrefoil);
  CHECK(r.out.find("free rank 3") != std::string::npos);
  r = run("jones " + kTrefoil);
  CHECK(r.out == "V(t) = t^-1 + t^-3 - t^-4\n");
  r = run("alexander '[[6,3,1,4],[4,1,5,2],[2,5,3,6]]'");
  CHECK(r.out == "Delta(t) = t - 1 + t^-1\n");
}

TEST_CASE("file input and exit codes") {
  const auto dir = std::filesystem::temp_directory_path() / ("khdetect_cli_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "fig8.pd") << "PD[X[8,5,1,6],X[4,1,5,2],\n X[2,8,3,7],X[6,4,7,3]]\n";
  CHECK(run("det @" + (dir / "fig8.pd").string()).out == "det = 5\n");
  CHECK(run("det @" + (dir / "missing.pd").string()).code == 1);
  CHECK(run("kh 'PD[X[1,2,3]'").code == 1);
  CHECK(run("kh 'PD[X[1,2,3,4]]'").code == 2);
  CHECK(run("kh 'PD[X[4,1,3,2],X[2,3,1,4]]'").code == 2);
  CHECK(run("kh --max-crossings 2 " + kTrefoil).code == 3);
  CHECK(run("kh --field F4 " + kTrefoil).code == 1);
  CHECK(run("").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("--help").code == 0);

  std::ofstream(dir / "in.csv") << "name,pd\n4_1," << "\"PD[X[8,5,1,6],X[4,1,5,2],X[2,8,3,7],X[6,4,7,3]]\"\n"
                                << "3_1,\"PD[X[6,3,1,4],X[4,1,5,2],X[2,5,3,6]]\"\n";
  const auto store = (dir / "store.jsonl").string();
  auto r = run("census run --parallel 2 " + (dir / "in.csv").string() + " " + store);
  CHECK(r.code == 0);
  CHECK(r.out.find("written 2") != std::string::npos);
  r = run("census query " + store + " 'verdict == FigureEight'");
  CHECK(r.out.find("\"name\":\"4_1\"") != std::string::npos);
  CHECK(r.out.find("\"name\":\"3_1\"") == std::string::npos);
  CHECK(run("census query " + store + " 'verdict ='").code == 1);
  std::filesystem::remove_all(dir);
}

TEST_CASE("cyclotomic commands") {
  CHECK(run("cyclo phi 10").out == "t^4 - t^3 + t^2 - t + 1\n");
  CHECK(run("cyclo special-values 10").out == "Phi_10(1) = 1, Phi_10(-1) = 5\n");
  auto r = run("cyclo scan-ph 2");
  CHECK(r.out.find("h=1: Phi_10\n") != std::string::npos);
  CHECK(r.out.find("h=2: Phi_10 * Phi_12\n") != std::string::npos);
  r = run("cyclo scan-ph 10");
  CHECK(r.code == 0);
  for (int h = 3; h <= 10; ++h) CHECK(r.out.find("h=" + std::to_string(h) + ": not a cyclotomic product") != std::string::npos);
  CHECK(run("cyclo graeffe 't^4 - t^3 + t^2 - t + 1'").out == "t^4 + t^3 + t^2 + t + 1\n");
  CHECK(run("cyclo graeffe --json '[1, -1, 1, -1, 1]'").out == "[1, 1, 1, 1, 1]\n");
  CHECK(run("cyclo check '[1,-1,0,0,0,0,0,-1,1]'").out == "cyclotomic product: Phi_1^2 * Phi_7\n");
  CHECK(run("cyclo check 't^2 + 3'").out.find("not a cyclotomic product") != std::string::npos);
  CHECK(run("cyclo check 't^2 + x'").code == 1);
  CHECK(run("cyclo phi 0").code == 1);
}
