#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rokhlin/core.hpp"
#include "rokhlin/order.hpp"

namespace rokhlin::classify {

enum class Tri : std::uint8_t { True, False, Undecidable };
const char* tri_name(Tri t);

enum class Reason : std::uint8_t {
  Sphere,
  UniqueMaxSelfSimilar,
  CompactNontrivial,
  FinitePositiveGenus,
  FinitePlanarNondisplaceable,
  DoublyPointed,
  CantorMaximalSet,
  NotSelfSimilar,
  MultiMaximal,
  Undecided
};
const char* reason_name(Reason r);

struct Verdict {
  Tri rokhlin = Tri::Undecidable;
  bool comeagerClass = false;
  bool trivialMcg = false;
  std::optional<order::MaximalClass> maximal;  // absent for closed surfaces
  order::Tri selfSimilar = order::Tri::Unknown;
  Reason reason = Reason::Undecided;
  std::vector<std::string> evidence;
  std::vector<endspace::EmbedCert> certificates;  // self-similarity witnesses
  std::vector<std::string> axioms;
};

/// Decide the Rokhlin property: true exactly for the sphere and for
/// non-compact surfaces of zero or infinite genus whose end space is
/// self-similar with a unique maximal end. Reason codes diagnose failures.
Verdict classify(const SurfaceDesc& s, int depthBudget = 6);

/// True exactly for the sphere and the plane.
bool trivial_mcg(const SurfaceDesc& s);

/// A comeager conjugacy class exists iff the mapping class group is trivial.
bool comeager_verdict(const SurfaceDesc& s);

}  // namespace rokhlin::classify
