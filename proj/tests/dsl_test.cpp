#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rokhlin/gen.hpp"
#include "test_util.hpp"

using namespace rokhlin;
using testutil::P;
using testutil::S;

TEST_CASE("named surfaces parse to the expected trees") {
  SurfaceDesc loch = S("surface { genus: inf, ends: pt@np }");
  CHECK(loch.genus.k == GenusSpec::K::Infinite);
  CHECK(loch.ends == Expr::pt(Flag::NonPlanar));

  SurfaceDesc flute = S("surface { genus: 0, ends: omega(pt) }");
  CHECK(flute.genus.k == GenusSpec::K::Zero);
  CHECK(flute.ends == Expr::omega({Expr::pt()}, Flag::Planar));

  SurfaceDesc sphere = S("surface { genus: 0, ends: none }");
  CHECK(sphere.ends.kind == Kind::Empty);

  SurfaceDesc torus = S("surface{genus:1,ends:none}");
  CHECK(torus.genus.k == GenusSpec::K::Finite);
  CHECK(torus.genus.n == 1);
}

TEST_CASE("flag and genus contradictions are invariant errors with paths") {
  CHECK_THROWS_AS(S("surface { genus: 0, ends: pt@np }"), dsl::InvariantError);
  CHECK_THROWS_AS(S("surface { genus: inf, ends: pt }"), dsl::InvariantError);
  CHECK_THROWS_AS(S("surface { genus: inf, ends: none }"), dsl::InvariantError);
  try {
    S("surface { genus: 0, ends: sum(pt, pt@np) }");
    FAIL("expected InvariantError");
  } catch (const dsl::InvariantError& e) {
    CHECK(e.path == "ends");
  }
}

TEST_CASE("the closed nonplanar set forces omega limit flags") {
  // a limit approached by nonplanar ends must itself be nonplanar
  CHECK_THROWS_AS(P("omega(pt@np)"), dsl::InvariantError);
  CHECK_NOTHROW(P("omega(pt@np)@np"));
  // a nonplanar limit over planar members is a real surface
  CHECK_NOTHROW(S("surface { genus: inf, ends: omega(pt)@np }"));
}

TEST_CASE("structural invariants of the grammar") {
  CHECK_THROWS_AS(P("omega(pt, pt)"), dsl::InvariantError);  // duplicate members
  CHECK_NOTHROW(P("omega(pt, pt@np)@np"));
  CHECK_THROWS_AS(P("sum(pt)"), dsl::SyntaxError);  // sum needs two parts
}

TEST_CASE("syntax errors carry positions and expectations") {
  try {
    S("surface { genus: 0, ends: omega(pt }");
    FAIL("expected SyntaxError");
  } catch (const dsl::SyntaxError& e) {
    CHECK(e.line == 1);
    CHECK(e.col > 30);
    CHECK(e.expected.find(")") != std::string::npos);
  }
  CHECK_THROWS_AS(S("surfac { genus: 0, ends: none }"), dsl::SyntaxError);
  CHECK_THROWS_AS(S("surface { genus: x, ends: none }"), dsl::SyntaxError);
  CHECK_THROWS_AS(S(""), dsl::SyntaxError);
}

TEST_CASE("sugar") {
  CHECK(P("2 * pt") == Expr::sum({Expr::pt(), Expr::pt()}));
  CHECK(P("1 * pt") == Expr::pt());
  CHECK(P("3*pt") == P("sum(pt, pt, pt)"));
  CHECK_THROWS_AS(P("0 * pt"), dsl::SyntaxError);
  // multiplicities nest inside sums
  CHECK(P("sum(2 * pt, omega(pt))").kids.size() == 2);
}

TEST_CASE("rendering matches the examples") {
  CHECK(dsl::render_surface(SurfaceDesc{GenusSpec::zero(), Expr::cantor()}) ==
        "surface { genus: 0, ends: cantor }");
  CHECK(dsl::render_surface(SurfaceDesc{GenusSpec::infinite(), Expr::pt(Flag::NonPlanar)}) ==
        "surface { genus: inf, ends: pt@np }");
  CHECK(dsl::render_expr(P("omega(pt, cantor)@np")) == "omega(pt, cantor)@np");
}

TEST_CASE("round trip law on generated trees") {
  std::mt19937_64 rng(7);
  gen::Options opt;
  opt.maxDepth = 5;
  for (int i = 0; i < 1000; ++i) {
    SurfaceDesc s = gen::random_surface(rng, opt);
    SurfaceDesc back = S(dsl::render_surface(s));
    CHECK(back == s);
  }
}

TEST_CASE("rejection totality: arbitrary byte soup never crashes") {
  std::mt19937_64 rng(11);
  int accepted = 0;
  for (int i = 0; i < 1000; ++i) {
    std::string junk = gen::random_garbage(rng);
    try {
      SurfaceDesc s = dsl::parse_surface(junk);
      (void)s;
      ++accepted;
    } catch (const dsl::SyntaxError&) {
    } catch (const dsl::InvariantError&) {
    }
  }
  CHECK(accepted < 1000);  // garbage is overwhelmingly rejected
}
