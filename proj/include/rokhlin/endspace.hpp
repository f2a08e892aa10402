#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rokhlin/core.hpp"

namespace rokhlin::endspace {

// Axiom tags surfaced in evidence objects and reports.
inline constexpr const char* kAxiomCountableCensus = "countable-profile-completeness";
inline constexpr const char* kAxiomCantorOf = "cantorof-invariance";

struct RewriteDepthExceeded : std::runtime_error {
  RewriteDepthExceeded(std::size_t steps)
      : std::runtime_error("rewrite trace exceeded " + std::to_string(steps) +
                           " steps; rule cycle suspected") {}
};

/// Rewrite-irreducible form plus the applied rule trace.
/// Rules:
///   R1  Sum flattening (nested sums, empty parts, unary unwrap)
///   R2  Sum/Omega child sorting by the fixed structural order
///   R3  Omega(Sum(..)) members split into the component set, duplicates dropped
///   R4  Omega member dropped when its point-type census is absorbed by the
///       remaining members
///   R5  Sum part dropped when its point-type census is absorbed by the other
///       parts (every type already present with infinite multiplicity)
///   R6  duplicate Cantor / CantorOf parts of a Sum collapse to one
/// Every rule preserves the homeomorphism type of the space.
struct NormalForm {
  Expr expr;
  std::vector<std::string> rewriteTrace;
};

NormalForm normalize(const Expr& e, std::size_t maxSteps = 20000);

/// Set of non-isolated points of e, computed structurally.
Expr cb_derivative(const Expr& e);

/// Point-type census: multiset of canonical stable-neighborhood types with
/// the cardinality of ends realizing each. Input must be in normal form
/// (subterms of a normal form are their own canonical stable types).
struct CensusEntry {
  Expr stable;
  Count mult;
  bool operator==(const CensusEntry&) const = default;
};
using Census = std::vector<CensusEntry>;  // sorted by structural order on stable
Census census_of_normal(const Expr& normalExpr);
Census census_of(const Expr& e);  // normalizes first

Flag type_flag(const Expr& stable);    // flag of the point a stable type describes
int countable_rank(const Expr& stable);  // CB rank of a countable stable type

enum class KernelKind : std::uint8_t { None, PlanarCantorLike, NonPlanarCantorLike, Mixed };
const char* kernel_name(KernelKind k);

struct Level {
  Ordinal rank;
  Count planar;
  Count nonplanar;
  bool operator==(const Level&) const = default;
};

/// Decorated Cantor-Bendixson profile: per-level isolated counts by flag,
/// the perfect-kernel class, and the point-type census decoration.
struct CBProfile {
  std::vector<Level> levels;
  KernelKind kernel = KernelKind::None;
  Expr kernelExpr;  // derivative fixpoint, normalized (meaningful when kernel != None)
  Census census;
  bool countable = true;
  std::optional<Ordinal> ordinalType;  // w^rank * n + 1 for countable non-empty terms

  bool operator==(const CBProfile& o) const {
    return levels == o.levels && kernel == o.kernel && kernelExpr == o.kernelExpr &&
           census == o.census;
  }
};

CBProfile cb_profile(const Expr& e);

enum class HomeoV : std::uint8_t { Equal, NotEqual, Unknown };
struct HomeoResult {
  HomeoV v = HomeoV::Unknown;
  std::string detail;                // route taken or separating invariant
  std::vector<std::string> axioms;   // engine axioms the answer relies on
};

/// Sound three-valued homeomorphism test. Equal comes from normal-form
/// identity or, for countable terms, census agreement (axiom-flagged);
/// NotEqual only from a separating invariant; otherwise Unknown.
HomeoResult homeo_eq(const Expr& a, const Expr& b);

// ---- clopen pieces and embedding certificates ----

/// One selector step into a canonical clopen decomposition. Indices are
/// relative to the current piece; OmegaTail(k) drops the first k copies of
/// every member and keeps the limit (a tail is homeomorphic to the whole).
struct PieceSel {
  enum class K : std::uint8_t { SumPart, OmegaCopy, OmegaTail, CantorHalf, CantorOfCopy };
  K k;
  int member = 0;     // OmegaCopy: member index
  int index = 0;      // OmegaCopy: copy ordinal; OmegaTail: k; CantorOfCopy: node ordinal
  std::string bits;   // CantorHalf: dyadic address

  bool operator==(const PieceSel&) const = default;
};
using PiecePath = std::vector<PieceSel>;

PieceSel sel_sum_part(int i);
PieceSel sel_omega_copy(int member, int ordinal);
PieceSel sel_omega_tail(int k);
PieceSel sel_cantor_half(std::string bits);
PieceSel sel_cantor_of_copy(int n);

std::optional<Expr> resolve_piece(const Expr& root, const PiecePath& path);
bool pieces_disjoint(const Expr& root, const PiecePath& p, const PiecePath& q);
std::string piece_str(const PiecePath& p);

struct EmbedPair {
  PiecePath source;  // piece of A
  PiecePath target;  // piece of B, homeomorphic to the source piece
  std::string route;
  bool operator==(const EmbedPair&) const = default;
};

/// Witness that A is homeomorphic to a finite disjoint union of clopen
/// pieces of B: source pieces partition A, target pieces are pairwise
/// disjoint and clopen in B, each pair is a homeomorphism.
struct EmbedCert {
  Expr source;
  Expr target;
  std::vector<EmbedPair> pairs;
  std::vector<std::string> axioms;
};

enum class EmbedV : std::uint8_t { Yes, No, Unknown };
struct EmbedResult {
  EmbedV v = EmbedV::Unknown;
  std::optional<EmbedCert> cert;  // present when v == Yes
  std::string detail;
};

EmbedResult clopen_embeds(const Expr& a, const Expr& b, int depthBudget = 6);
bool check_embed_cert(const EmbedCert& cert, const Expr& a, const Expr& b);

}  // namespace rokhlin::endspace
