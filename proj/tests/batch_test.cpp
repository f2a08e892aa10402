#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rokhlin/batch.hpp"
#include "rokhlin/gen.hpp"
#include "test_util.hpp"

using namespace rokhlin;

TEST_CASE("parallel classify agrees with the serial reference") {
  std::mt19937_64 rng(5);
  gen::Options opt;
  opt.maxDepth = 4;
  opt.decidableFragment = true;
  std::vector<SurfaceDesc> xs;
  for (int i = 0; i < 120; ++i) xs.push_back(gen::random_surface(rng, opt));

  batch::Options bopt;
  std::vector<classify::Verdict> par = batch::classify_many(xs, bopt);
  std::vector<classify::Verdict> ser = batch::classify_many_serial(xs);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CAPTURE(dsl::render_surface(xs[i]));
    CHECK(par[i].rokhlin == ser[i].rokhlin);
    CHECK(par[i].reason == ser[i].reason);
    CHECK(par[i].comeagerClass == ser[i].comeagerClass);
  }
}

TEST_CASE("parallel homeo agrees with the serial reference") {
  std::mt19937_64 rng(6);
  gen::Options opt;
  opt.maxDepth = 4;
  std::vector<std::pair<Expr, Expr>> pairs;
  for (int i = 0; i < 150; ++i) {
    Expr a = gen::random_expr(rng, opt);
    if (i % 3 == 0)
      pairs.emplace_back(a, gen::denormalize(rng, a, 2));
    else
      pairs.emplace_back(a, gen::random_expr(rng, opt));
  }
  batch::Options bopt;
  CHECK(batch::homeo_many(pairs, bopt) == batch::homeo_many_serial(pairs));
}

TEST_CASE("parallel leq tables agree with the serial reference") {
  std::mt19937_64 rng(7);
  gen::Options opt;
  opt.maxDepth = 4;
  opt.decidableFragment = true;
  batch::Options bopt;
  for (int i = 0; i < 25; ++i) {
    Expr e = gen::random_expr(rng, opt);
    batch::LeqTable par = batch::leq_table(e, bopt);
    batch::LeqTable ser = batch::leq_table_serial(e);
    CAPTURE(dsl::render_expr(e));
    CHECK(par.cells == ser.cells);
    CHECK(par.classes.size() == ser.classes.size());
  }
}

TEST_CASE("batch runs are deterministic across repetition") {
  std::mt19937_64 rng(8);
  gen::Options opt;
  opt.maxDepth = 4;
  opt.decidableFragment = true;
  std::vector<SurfaceDesc> xs;
  for (int i = 0; i < 60; ++i) xs.push_back(gen::random_surface(rng, opt));
  batch::Options bopt;
  bopt.jobs = 3;
  std::vector<classify::Verdict> a = batch::classify_many(xs, bopt);
  std::vector<classify::Verdict> b = batch::classify_many(xs, bopt);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].rokhlin == b[i].rokhlin);
    CHECK(a[i].reason == b[i].reason);
  }
}
