#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rokhlin/core.hpp"
#include "rokhlin/endspace.hpp"

namespace rokhlin::order {

enum class LocKind : std::uint8_t {
  IsolatedAtom,
  OmegaLimit,
  CantorPoint,
  CantorOfBasePoint,
  InsideAttachedCopy
};
const char* loc_kind_name(LocKind k);

/// A point-sort within an expression tree: the path of child indices to the
/// node realizing it, plus the sort of point at that node.
struct EndLocator {
  std::vector<int> path;
  LocKind kind = LocKind::IsolatedAtom;
  bool operator==(const EndLocator&) const = default;
};

/// One point-sort with its stable neighborhood type (the homeomorphism type
/// of every sufficiently small basic clopen neighborhood) and the number of
/// ends realizing it.
struct EndType {
  EndLocator loc;
  Expr stable;
  Flag flag = Flag::Planar;
  Count mult;
};

/// Enumerate every point-sort of e, one entry per structural position.
std::vector<EndType> end_types(const Expr& e);

/// Point-sorts of the normal form of e, merged by canonical stable type.
/// Locators reference the normalized expression; up to two representative
/// locators are kept per class.
struct EndTypeClass {
  Expr stable;  // canonical
  Flag flag = Flag::Planar;
  Count mult;
  std::vector<EndLocator> reps;
};
std::vector<EndTypeClass> end_type_classes(const Expr& e);

enum class LeqV : std::uint8_t { True, False, Unknown };
struct LeqResult {
  LeqV v = LeqV::Unknown;
  std::optional<endspace::EmbedCert> cert;  // for True
  std::string detail;
};

/// Mann-Rafi preorder on end types: y precedes x when the stable
/// neighborhood type of y clopen-embeds into the stable neighborhood type
/// of x (stability of bases reduces the definition to one query).
LeqResult leq(const Expr& stableY, const Expr& stableX, int depthBudget = 6);

struct MaximalClass {
  enum class K : std::uint8_t { Singleton, Pair, CantorSet, Other } k = K::Other;
  std::vector<EndTypeClass> reps;  // maximal type representatives
  Count points;                    // ends realizing a maximal type
  bool undecided = false;          // an order query came back Unknown
  std::string note;
};
const char* maximal_kind_name(MaximalClass::K k);

/// Maximal types under the preorder, classified by the number of maximal
/// ends: one, two, a Cantor set of mutually comparable ends, or anything
/// else. `undecided` marks classifications blocked by Unknown comparisons.
MaximalClass maximal_set(const Expr& e, int depthBudget = 6);

enum class Tri : std::uint8_t { True, False, Unknown };
struct SelfSimilarResult {
  Tri v = Tri::Unknown;
  std::string evidence;  // which case fired, or the witnessing partition
  std::vector<std::string> axioms;
  std::optional<endspace::EmbedCert> cert;
};

SelfSimilarResult is_self_similar(const Expr& e, int depthBudget = 6);

}  // namespace rokhlin::order
