#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rokhlin/classify.hpp"
#include "rokhlin/core.hpp"
#include "rokhlin/endspace.hpp"

namespace rokhlin::witness {

struct WitnessError : std::runtime_error {
  std::string code;  // TrivialGroup | NotRokhlin | NotDoublyPointed | EmbedSearchFailed
  WitnessError(std::string code_, const std::string& msg)
      : std::runtime_error(code_ + ": " + msg), code(std::move(code_)) {}
};

// ---- dense-element support schedule ----

std::uint64_t cantor_pair(std::uint64_t i, std::uint64_t j);
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t n);

/// j-th word over an alphabet of k symbols, in length-then-lex order
/// (j = 0 is the empty word).
std::vector<int> word_at(int k, std::uint64_t j);
std::uint64_t word_index(int k, const std::vector<int>& w);

struct DensePiece {
  int genus = 0;        // handles consumed by the piece
  int chunkUnits = 0;   // attached copies of the unit chunk
  int alphabet = 0;     // generator symbols t1..tk
};

struct DenseEntry {
  std::uint64_t index = 0;
  DensePiece piece;
  std::vector<int> word;
  // disjoint resource interval along the neighborhood chain toward the
  // maximal end; entry n occupies chain level n
  std::uint64_t regionLo = 0, regionHi = 0;
};

struct DenseSchedule {
  SurfaceDesc surface;
  bool genusPieces = false;  // infinite genus: compact handle pieces available
  Expr unitChunk;            // Empty when no non-maximal type has infinite multiplicity
  std::vector<DenseEntry> entries;
  std::string pairing = "cantor";
  bool designChoice = false;  // piece catalog beyond the Loch Ness case
};

DensePiece dense_piece_type(bool genusPieces, bool chunkPieces, std::uint64_t typeIndex);

/// First N entries of the support schedule of a mapping class with dense
/// conjugacy class: disjoint regions marching toward the maximal end, each
/// carrying one entry of a diagonal enumeration of (piece type, word).
DenseSchedule dense_element_schedule(const SurfaceDesc& s, int count, int depthBudget = 6);

// ---- end-swap back-and-forth schedule ----

struct SwapPlacement {
  Expr piece;                // released clopen component
  endspace::EmbedCert cert;  // piece -> opposite side's part, inside the claimed band
  long bandLo = 0, bandLen = 0;
};

struct SwapRow {
  int stage = 0;
  bool vReleased = false;  // one native round of the V side released this stage
  long vRound = -1;
  bool wReleased = false;
  long wRound = -1;
  std::vector<SwapPlacement> f;  // V components placed into W
  std::vector<SwapPlacement> g;  // W components placed into V
};

struct SwapSchedule {
  SurfaceDesc surface;
  int depth = 0;
  int vPartIndex = -1;          // top-level part holding mu1 (complement side)
  int wPartIndex = -1;          // top-level part holding mu2
  std::vector<int> junkParts;   // non-maximal parts, swept with the first V stage
  std::vector<SwapRow> rows;
  endspace::HomeoResult residual;  // stable(mu1) vs stable(mu2), must be Equal
  long vRounds = 0, wRounds = 0;   // consumption frontiers after `depth` stages
};

/// Stagewise back-and-forth schedule exchanging the two maximal ends of a
/// doubly-pointed end space. Each stage releases one native round per side
/// and places it into fresh rounds on the opposite side with verified
/// embedding certificates.
SwapSchedule end_swap_schedule(const SurfaceDesc& s, int depth, int depthBudget = 6);

/// Re-derives the stagewise partition identities and re-checks every
/// placement certificate.
bool verify_swap_schedule(const SwapSchedule& sch);

}  // namespace rokhlin::witness
