#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "rokhlin/core.hpp"
#include "rokhlin/endspace.hpp"

namespace rokhlin::jepcheck {

struct JepError : std::runtime_error {
  std::string code;  // TypeMismatch | NotCompactlySupported | NotGated | EmbedSearchFailed
  JepError(std::string code_, const std::string& msg)
      : std::runtime_error(code_ + ": " + msg), code(std::move(code_)) {}
};

struct MapPair {
  endspace::PiecePath from;
  endspace::PiecePath to;
  bool operator==(const MapPair&) const = default;
};

/// A compactly supported symbolic homeomorphism of an end space: a
/// type-preserving bijection between canonical pieces whose union (the
/// support) lies in the complement of a basic neighborhood of the maximal
/// end; identity outside the support.
struct SymbolicMap {
  Expr space;  // normalized
  std::vector<MapPair> pairs;
  long supportBound = 0;  // every referenced copy ordinal is < supportBound
};

/// Validate a piece pairing into a SymbolicMap. Pieces must be fresh-copy
/// pieces (never tails or the whole space), the from/to piece sets must
/// coincide, and each pair must relate homeomorphic pieces.
SymbolicMap make_symbolic_map(const Expr& e, const std::vector<MapPair>& pairs);

/// Witness of one joint-embedding instance: a pushdown neighborhood B
/// (the tail from `tailIndex`), an embedding g of the complement region
/// into B, and the product description h = h1 . (g h2 g^-1) with disjoint
/// supports.
struct JepCertificate {
  Expr space;
  long tailIndex = 0;
  endspace::EmbedCert g;          // complement region -> inside the tail
  std::vector<MapPair> h1;        // echo of m1
  std::vector<MapPair> conjugate; // m2 transported by g
  std::vector<std::string> axioms;
};

/// The expression of the complement of the tail neighborhood: k fresh
/// copies of every member. Empty when k == 0 or the space has no copies.
Expr complement_region(const Expr& e, long k);

JepCertificate joint_realize(const Expr& e, const SymbolicMap& m1, const SymbolicMap& m2,
                             int depthBudget = 6);

bool verify_certificate(const JepCertificate& c, const Expr& e, const SymbolicMap& m1,
                        const SymbolicMap& m2);

}  // namespace rokhlin::jepcheck
