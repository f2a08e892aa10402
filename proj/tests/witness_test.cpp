#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "rokhlin/catalog.hpp"
#include "rokhlin/witness.hpp"
#include "test_util.hpp"

using namespace rokhlin;
using namespace rokhlin::witness;
using testutil::S;

TEST_CASE("cantor pairing round trips and starts at the origin") {
  CHECK(cantor_pair(0, 0) == 0);
  for (std::uint64_t n = 0; n < 500; ++n) {
    auto [i, j] = cantor_unpair(n);
    CHECK(cantor_pair(i, j) == n);
  }
}

TEST_CASE("word enumeration is length-lex and invertible") {
  CHECK(word_at(4, 0).empty());
  CHECK(word_at(4, 1) == std::vector<int>{0});
  CHECK(word_at(4, 4) == std::vector<int>{3});
  CHECK(word_at(4, 5) == std::vector<int>{0, 0});
  for (int k : {1, 2, 4, 6})
    for (std::uint64_t j = 0; j < 200; ++j) CHECK(word_index(k, word_at(k, j)) == j);
}

TEST_CASE("loch ness dense schedule: compact genus pieces, first entry R_1 with empty word") {
  DenseSchedule sch = dense_element_schedule(*catalog::lookup("loch-ness"), 3);
  CHECK(sch.genusPieces);
  CHECK(sch.unitChunk.kind == Kind::Empty);
  CHECK(!sch.designChoice);  // exactly the compact R_g catalog
  REQUIRE(sch.entries.size() == 3);
  CHECK(sch.entries[0].piece.genus == 1);
  CHECK(sch.entries[0].piece.chunkUnits == 0);
  CHECK(sch.entries[0].word.empty());
  CHECK(sch.entries[0].piece.alphabet == 4);  // 2g+2
}

TEST_CASE("flute dense schedule: one planar piece with one puncture chunk, empty word") {
  DenseSchedule sch = dense_element_schedule(*catalog::lookup("flute"), 1);
  CHECK(!sch.genusPieces);
  CHECK(sch.unitChunk == Expr::pt());
  REQUIRE(sch.entries.size() == 1);
  CHECK(sch.entries[0].piece.genus == 0);
  CHECK(sch.entries[0].piece.chunkUnits == 1);
  CHECK(sch.entries[0].word.empty());
  CHECK(sch.designChoice);
}

TEST_CASE("dense schedule regions are pairwise disjoint and march outward") {
  DenseSchedule sch = dense_element_schedule(*catalog::lookup("loch-ness"), 25);
  for (std::size_t i = 0; i < sch.entries.size(); ++i) {
    CHECK(sch.entries[i].regionLo < sch.entries[i].regionHi);
    for (std::size_t j = i + 1; j < sch.entries.size(); ++j) {
      bool disjoint = sch.entries[i].regionHi <= sch.entries[j].regionLo ||
                      sch.entries[j].regionHi <= sch.entries[i].regionLo;
      CHECK(disjoint);
    }
  }
}

TEST_CASE("dense schedule enumeration hits every small piece-word pair within the bound") {
  // every (genus <= 2, |word| <= 2) pair must appear by the pairing bound
  std::uint64_t bound = 0;
  for (std::uint64_t g = 1; g <= 2; ++g) {
    int k = static_cast<int>(2 * g + 2);
    std::uint64_t words = 1 + static_cast<std::uint64_t>(k) +
                          static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(k);
    for (std::uint64_t j = 0; j < words; ++j) bound = std::max(bound, cantor_pair(g - 1, j));
  }
  DenseSchedule sch =
      dense_element_schedule(*catalog::lookup("loch-ness"), static_cast<int>(bound) + 1);
  std::set<std::pair<int, std::uint64_t>> seen;
  for (const DenseEntry& e : sch.entries)
    seen.insert({e.piece.genus, word_index(e.piece.alphabet, e.word)});
  for (int g = 1; g <= 2; ++g) {
    int k = 2 * g + 2;
    std::uint64_t words = 1 + static_cast<std::uint64_t>(k) +
                          static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(k);
    for (std::uint64_t j = 0; j < words; ++j) {
      CAPTURE(g);
      CAPTURE(j);
      CHECK(seen.count({g, j}) == 1);
    }
  }
}

TEST_CASE("dense schedule gates") {
  CHECK_THROWS_WITH_AS(dense_element_schedule(*catalog::lookup("sphere"), 3),
                       doctest::Contains("TrivialGroup"), WitnessError);
  CHECK_THROWS_WITH_AS(dense_element_schedule(*catalog::lookup("plane"), 3),
                       doctest::Contains("TrivialGroup"), WitnessError);
  CHECK_THROWS_WITH_AS(dense_element_schedule(*catalog::lookup("cantor-tree"), 3),
                       doctest::Contains("NotRokhlin"), WitnessError);
  CHECK_THROWS_WITH_AS(dense_element_schedule(*catalog::lookup("ladder"), 3),
                       doctest::Contains("NotRokhlin"), WitnessError);
}

TEST_CASE("swap schedules on the doubly pointed catalog surfaces") {
  for (const char* name :
       {"double-flute", "double-nonplanar-flute", "spotted-ladder", "ladder"}) {
    CAPTURE(name);
    SwapSchedule sch = end_swap_schedule(*catalog::lookup(name), 6);
    CHECK(sch.rows.size() == 6);
    CHECK(verify_swap_schedule(sch));
    CHECK(sch.residual.v == endspace::HomeoV::Equal);
  }
}

TEST_CASE("ladder swap is degenerate: empty rows, swap closed by the residual pairing") {
  SwapSchedule sch = end_swap_schedule(*catalog::lookup("ladder"), 6);
  for (const SwapRow& r : sch.rows) {
    CHECK(!r.vReleased);
    CHECK(!r.wReleased);
    CHECK(r.f.empty());
    CHECK(r.g.empty());
  }
  CHECK(sch.vRounds == 0);
  CHECK(sch.wRounds == 0);
}

TEST_CASE("double flute swap pairs puncture blocks across the sides") {
  SwapSchedule sch = end_swap_schedule(*catalog::lookup("double-flute"), 3);
  REQUIRE(sch.rows.size() == 3);
  for (const SwapRow& r : sch.rows) {
    CHECK(r.vReleased);
    CHECK(r.wReleased);
    REQUIRE(r.f.size() == 1);
    REQUIRE(r.g.size() == 1);
    CHECK(r.f[0].piece == Expr::pt());
    CHECK(check_embed_cert(r.f[0].cert, r.f[0].piece, testutil::P("omega(pt)")));
  }
  CHECK(verify_swap_schedule(sch));
}

TEST_CASE("swap schedule gates and failures") {
  CHECK_THROWS_WITH_AS(end_swap_schedule(*catalog::lookup("cantor-tree"), 3),
                       doctest::Contains("NotDoublyPointed"), WitnessError);
  CHECK_THROWS_WITH_AS(end_swap_schedule(*catalog::lookup("flute"), 3),
                       doctest::Contains("NotDoublyPointed"), WitnessError);
  // two maximal ends of different stable types cannot be exchanged
  CHECK_THROWS_WITH_AS(
      end_swap_schedule(S("surface { genus: inf, ends: sum(pt@np, omega(pt)@np) }"), 3),
      doctest::Contains("EmbedSearchFailed"), WitnessError);
}

TEST_CASE("the schedule verifier rejects tampered schedules") {
  SwapSchedule sch = end_swap_schedule(*catalog::lookup("double-flute"), 3);
  REQUIRE(verify_swap_schedule(sch));

  SwapSchedule bad = sch;
  bad.rows[1].f[0].bandLo += 1;  // hole in the consumption ledger
  CHECK(!verify_swap_schedule(bad));

  bad = sch;
  bad.rows[0].vRound = 1;  // native round out of order
  CHECK(!verify_swap_schedule(bad));

  bad = sch;
  bad.rows[2].g[0].piece = testutil::P("pt@np");  // component mismatch
  CHECK(!verify_swap_schedule(bad));

  bad = sch;
  bad.rows[0].f[0].cert.pairs[0].target[0] = endspace::sel_omega_tail(99);  // leaves the band
  CHECK(!verify_swap_schedule(bad));

  bad = sch;
  bad.vRounds += 1;  // frontier mismatch
  CHECK(!verify_swap_schedule(bad));
}
