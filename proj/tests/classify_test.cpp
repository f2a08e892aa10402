#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rokhlin/catalog.hpp"
#include "rokhlin/classify.hpp"
#include "rokhlin/gen.hpp"
#include "test_util.hpp"

using namespace rokhlin;
using namespace rokhlin::classify;
using testutil::S;

namespace {

Verdict of(const std::string& name) {
  auto s = catalog::lookup(name);
  REQUIRE(s.has_value());
  return classify::classify(*s);
}

}  // namespace

TEST_CASE("catalog verdicts match the classification theorem") {
  struct Row {
    const char* name;
    Tri rokhlin;
    Reason reason;
  };
  const Row rows[] = {
      {"sphere", Tri::True, Reason::Sphere},
      {"plane", Tri::True, Reason::UniqueMaxSelfSimilar},
      {"loch-ness", Tri::True, Reason::UniqueMaxSelfSimilar},
      {"flute", Tri::True, Reason::UniqueMaxSelfSimilar},
      {"nonplanar-flute", Tri::True, Reason::UniqueMaxSelfSimilar},
      {"spotted-plane", Tri::True, Reason::UniqueMaxSelfSimilar},
      {"spotted-loch-ness", Tri::True, Reason::UniqueMaxSelfSimilar},
      {"cantor-tree", Tri::False, Reason::CantorMaximalSet},
      {"blooming-cantor-tree", Tri::False, Reason::CantorMaximalSet},
      {"spotted-cantor-tree", Tri::False, Reason::CantorMaximalSet},
      {"ladder", Tri::False, Reason::DoublyPointed},
      {"spotted-ladder", Tri::False, Reason::DoublyPointed},
      {"double-flute", Tri::False, Reason::DoublyPointed},
      {"double-nonplanar-flute", Tri::False, Reason::DoublyPointed},
      {"annulus", Tri::False, Reason::DoublyPointed},
      {"three-punctured-sphere", Tri::False, Reason::FinitePlanarNondisplaceable},
      {"torus", Tri::False, Reason::CompactNontrivial},
      {"genus-3-flute", Tri::False, Reason::FinitePositiveGenus},
  };
  for (const Row& r : rows) {
    Verdict v = of(r.name);
    CAPTURE(r.name);
    CHECK(v.rokhlin == r.rokhlin);
    CHECK(v.reason == r.reason);
  }
}

TEST_CASE("trivial mapping class groups: exactly the sphere and the plane") {
  for (const catalog::Entry& e : catalog::entries()) {
    auto s = catalog::lookup(e.name);
    bool expect = e.name == "sphere" || e.name == "plane";
    CAPTURE(e.name);
    CHECK(trivial_mcg(*s) == expect);
    CHECK(comeager_verdict(*s) == expect);
    CHECK(classify::classify(*s).comeagerClass == expect);
  }
  // the spotted plane is the flute in disguise, not the plane
  CHECK(!trivial_mcg(*catalog::lookup("spotted-plane")));
}

TEST_CASE("verdict invariants") {
  std::mt19937_64 rng(77);
  gen::Options opt;
  opt.maxDepth = 4;
  opt.decidableFragment = true;
  for (int i = 0; i < 80; ++i) {
    SurfaceDesc s = gen::random_surface(rng, opt);
    Verdict v = classify::classify(s);
    Verdict v2 = classify::classify(s);
    CHECK(v.rokhlin == v2.rokhlin);  // deterministic
    CHECK(v.reason == v2.reason);
    CHECK(v.comeagerClass == v.trivialMcg);
    if (v.rokhlin == Tri::True) {
      CHECK((v.reason == Reason::Sphere || v.reason == Reason::UniqueMaxSelfSimilar));
      // genus gate
      if (s.ends.kind != Kind::Empty) CHECK(s.genus.k != GenusSpec::K::Finite);
      // dense does not mean comeager unless trivial
      if (!v.trivialMcg) CHECK(!v.comeagerClass);
    }
    if (v.rokhlin == Tri::False) CHECK(v.reason != Reason::Sphere);
  }
}

TEST_CASE("undecidable inputs exist and are reported as such") {
  // a perfect member as the sole Omega payload sits outside the decidable
  // fragment: the engine must answer honestly
  SurfaceDesc s = S("surface { genus: 0, ends: omega(cantor) }");
  Verdict v = classify::classify(s);
  CHECK(v.rokhlin == Tri::Undecidable);
  CHECK(v.reason == Reason::Undecided);
}

TEST_CASE("planar finite-end refinement") {
  CHECK(classify::classify(S("surface { genus: 0, ends: 4 * pt }")).reason ==
        Reason::FinitePlanarNondisplaceable);
  CHECK(classify::classify(S("surface { genus: 0, ends: 2 * pt }")).reason ==
        Reason::DoublyPointed);
  // the infinite-genus three-ended surface is multi-maximal, not finite-planar
  CHECK(classify::classify(S("surface { genus: inf, ends: 3 * pt@np }")).reason ==
        Reason::MultiMaximal);
}
