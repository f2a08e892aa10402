#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "rokhlin/catalog.hpp"
#include "rokhlin/cli.hpp"

using namespace rokhlin;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string classify_catalog_json() {
  std::vector<std::string> args{"classify"};
  for (const catalog::Entry& e : catalog::entries()) args.push_back("catalog:" + e.name);
  args.push_back("--json");
  Run r = run(args);
  REQUIRE(r.code == 0);
  return r.out;
}

}  // namespace

TEST_CASE("classify exit codes") {
  CHECK(run({"classify", "catalog:loch-ness"}).code == 0);
  CHECK(run({"classify", "catalog:loch-ness", "catalog:flute", "--jobs", "2"}).code == 0);
  Run broken = run({"classify", "surface { genus: 0, ends: omega(pt }"});
  CHECK(broken.code == 1);
  CHECK(broken.err.find("expected") != std::string::npos);
  Run invariant = run({"classify", "surface { genus: 0, ends: pt@np }"});
  CHECK(invariant.code == 1);
  // outside the decidable fragment the verdict is honest and the exit code says so
  CHECK(run({"classify", "omega(cantor)"}).code == 2);
  CHECK(run({"classify", "catalog:no-such-thing"}).code == 1);
}

TEST_CASE("inline expressions are accepted anywhere a path is") {
  Run r = run({"classify", "expr:surface { genus: 0, ends: omega(pt) }"});
  CHECK(r.code == 0);
  CHECK(r.out.find("rokhlin=true") != std::string::npos);
  // a bare end-space expression gets its genus from the flags
  CHECK(run({"classify", "pt@np"}).out.find("rokhlin=true") != std::string::npos);
  CHECK(run({"eq", "omega(pt)", "sum(pt, omega(pt))"}).out.find("equal") == 0);
  CHECK(run({"eq", "omega(pt)", "omega(omega(pt))"}).out.find("not-equal") == 0);
}

TEST_CASE("order verb") {
  Run r = run({"order", "catalog:flute", "limit", "isolated"});
  CHECK(r.code == 0);
  CHECK(r.out.find("isolated precedes limit: true") != std::string::npos);
  CHECK(run({"order", "catalog:flute", "isolated", "limit"}).out.find("false") !=
        std::string::npos);
}

TEST_CASE("witness and jep verbs") {
  CHECK(run({"witness", "catalog:loch-ness", "dense", "5"}).code == 0);
  CHECK(run({"witness", "catalog:double-flute", "swap", "6"}).code == 0);
  CHECK(run({"witness", "catalog:sphere", "dense", "3"}).code == 1);
  CHECK(run({"jep", "catalog:flute", "swap:0,1", "swap:1,2"}).code == 0);
  CHECK(run({"jep", "catalog:loch-ness"}).code == 0);
  CHECK(run({"jep", "catalog:flute", "swap:0,1", "limit-swap"}).code == 1);
}

TEST_CASE("file inputs") {
  std::string path = "cli_test_input.srf";
  {
    std::ofstream f(path);
    f << "surface { genus: inf, ends: pt@np }\n";
  }
  Run r = run({"classify", path});
  CHECK(r.code == 0);
  CHECK(r.out.find("rokhlin=true") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("json reports are byte-identical across runs and match the golden file") {
  std::string first = classify_catalog_json();
  std::string second = classify_catalog_json();
  CHECK(first == second);

  std::ifstream g(std::string(ROKHLIN_SOURCE_DIR) + "/tests/golden/catalog_classify.json");
  REQUIRE(g.good());
  std::stringstream buf;
  buf << g.rdbuf();
  CHECK(first == buf.str());
}

TEST_CASE("timings are opt-in so reports stay stable") {
  Run with = run({"classify", "catalog:flute", "--json", "--timings"});
  CHECK(with.out.find("timings") != std::string::npos);
  Run without = run({"classify", "catalog:flute", "--json"});
  CHECK(without.out.find("timings") == std::string::npos);
}

TEST_CASE("catalog listing includes the named surfaces") {
  Run r = run({"catalog"});
  CHECK(r.code == 0);
  for (const char* name : {"sphere", "plane", "loch-ness", "flute", "cantor-tree",
                           "blooming-cantor-tree", "ladder", "spotted-plane"})
    CHECK(r.out.find(name) != std::string::npos);
}

TEST_CASE("the depth budget env var sets the default") {
  setenv("ROKHLIN_DEPTH", "2", 1);
  Run shallow = run({"classify", "catalog:flute"});
  CHECK(shallow.code == 0);  // still enough depth for the flute
  unsetenv("ROKHLIN_DEPTH");
}
