#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "json.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string &args) {
  const std::string cmd = std::string(PCOH_BINARY) + " " + args + " 2>/dev/null";
  Run r;
  FILE *pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0)
    r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path &p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path scratch(const std::string &name) {
  const fs::path d = fs::temp_directory_path() / ("pcoh_cli_" + name);
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("corpus generate is idempotent") {
  const fs::path d = scratch("gen2");
  REQUIRE(run("corpus generate --p 2 --out " + d.string()).code == 0);
  std::size_t files = 0;
  for (const auto &f : fs::directory_iterator(d))
    files += f.path().filename() != "manifest.json";
  CHECK(files >= 20);
  CHECK(fs::exists(d / "manifest.json"));
  const std::string before = slurp(d / "D8.json") + slurp(d / "manifest.json");
  REQUIRE(run("corpus generate --p 2 --out " + d.string()).code == 0);
  CHECK(slurp(d / "D8.json") + slurp(d / "manifest.json") == before);

  const fs::path d3 = scratch("gen3");
  REQUIRE(run("corpus generate --p 3 --out " + d3.string()).code == 0);
  CHECK(fs::exists(d3 / "ES27+.json"));
  CHECK(fs::exists(d3 / "ES27-.json"));
}

TEST_CASE("analyze") {
  const fs::path d = scratch("analyze");
  REQUIRE(run("corpus generate --p 2 --out " + d.string()).code == 0);
  Run r = run("analyze " + (d / "D8.json").string() + " --max-degree 4");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["dims"] == json{1, 2, 3, 4, 5});
  CHECK(j["coclass"] == 1);

  r = run("analyze " + (d / "C4.json").string());
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["powerful"] == true);
  CHECK(j["omega_extendible"] == true);

  // D8 fails the dimension-level abelian-shape check, so --strict exits 1
  CHECK(run("analyze " + (d / "D8.json").string() + " --strict").code == 1);

  std::ofstream(d / "malformed.json") << "{\"p\": 2, \"ngens\": ";
  CHECK(run("analyze " + (d / "malformed.json").string()).code == 2);
  CHECK(run("analyze " + (d / "missing.json").string()).code == 2);
  CHECK(run("analyze").code == 2);
}

TEST_CASE("tower, cohomology and bounds subcommands") {
  const fs::path d = scratch("sub");
  REQUIRE(run("corpus generate --p 2 --out " + d.string()).code == 0);
  Run r = run("tower " + (d / "C8.json").string() + " --rank-override 1");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["index_exp"] == 3);
  CHECK(j["bound_exp"] == 3);

  r = run("cohomology " + (d / "Q8.json").string() + " --max-degree 4 --bar 2");
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["dims"] == json{1, 2, 2, 1, 1});
  CHECK(j["bar_dims"] == json{1, 2, 2});

  r = run("bounds --p 2 --r 2 --n 3 --i 8");
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["gt_bound"] == 24310);
  CHECK(j["tower_index_bound_exp"] == 8);
  CHECK(j["order_dim_bound"] == 45);
}

TEST_CASE("verify: determinism across threads and error isolation") {
  const fs::path d = scratch("verify");
  fs::create_directories(d);
  CHECK(run("verify --builtin 3 --max-degree 6 --threads 1 --out " + (d / "a.json").string() +
            " --csv " + (d / "a.csv").string())
            .code == 0);
  CHECK(run("verify --builtin 3 --max-degree 6 --threads 4 --out " + (d / "b.json").string() +
            " --csv " + (d / "b.csv").string())
            .code == 0);
  CHECK(slurp(d / "a.json") == slurp(d / "b.json"));
  CHECK(slurp(d / "a.csv") == slurp(d / "b.csv"));
  const std::string csv = slurp(d / "a.csv");
  CHECK(csv.rfind("name,p,order_exp,check,verdict,witness\n", 0) == 0);
  CHECK(csv.find("ES27+,3,3,COHOMCHAR-3,pass") != std::string::npos);

  // a presentation whose pc series is not normal
  const fs::path c = scratch("badcorpus");
  REQUIRE(run("corpus generate --p 3 --out " + c.string()).code == 0);
  json g = json::parse(slurp(c / "C3^2.json"));
  g["comm"] = json::array({json{{"j", 2}, {"i", 1}, {"w", json{1, 0}}}});
  std::ofstream(c / "C3^2.json") << g.dump();
  const Run r = run("verify " + c.string() + " --max-degree 4 --format csv");
  CHECK(r.code == 1);
  CHECK(r.out.find("C3^2,3,2,TOWER-THM4,fail,\"error:") != std::string::npos);
  CHECK(r.out.find("C9,3,2,TOWER-THM4,pass") != std::string::npos);
}
