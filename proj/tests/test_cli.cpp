#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string command = std::string(WALKENT_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buffer{};
  while (fgets(buffer.data(), static_cast<int>(buffer.size()), pipe)) out += buffer.data();
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

} // namespace

TEST_CASE("cli gen and classes") {
  const auto gen = run("gen 'kks(4,5)'");
  CHECK(gen.status == 0);
  CHECK(gen.out.rfind("n 24\n", 0) == 0);
  const auto cls = run("classes 'spidertorus(4,2,5,3)'");
  CHECK(cls.status == 0);
  const auto j = nlohmann::json::parse(cls.out);
  CHECK(j["classes"] == 3);
  CHECK(j["sizes"] == nlohmann::json({15, 60, 60}));
}

TEST_CASE("cli certify and saff verdicts") {
  const auto ok = run("certify 'spidertorus(4,2,5,3)'");
  CHECK(ok.status == 0);
  CHECK(ok.out.find("certified") != std::string::npos);
  const auto no = run("certify 'path(3)' --mode reduced");
  CHECK(no.status == 1);
  CHECK(no.out.find("infeasible-not-entropic") != std::string::npos);
  const auto saff = run("saff --matrix '[[1],[2]]'");
  CHECK(saff.status == 1);
}

TEST_CASE("cli errors") {
  CHECK(run("").status == 2);
  const auto bad = run("classes 'kks(4'");
  CHECK(bad.status == 2);
  CHECK_FALSE(bad.out.empty());
  CHECK(run("walk-matrix 'complete(201)' --mode full").status == 2);
}

TEST_CASE("cli output is deterministic") {
  const auto a = run("scan-entropic 'kks(4,5)'");
  const auto b = run("scan-entropic 'kks(4,5)'");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(run("kks-find-beta --c 4").status == 0);
}
