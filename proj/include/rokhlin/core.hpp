#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rokhlin {

enum class Flag : std::uint8_t { Planar, NonPlanar };

inline const char* flag_name(Flag f) { return f == Flag::Planar ? "planar" : "nonplanar"; }

// Constructor tags of the end-space grammar. The enum order is the primary
// key of the structural total order used for sorting and canonical forms.
enum class Kind : std::uint8_t { Empty, Pt, Sum, Omega, Cantor, CantorOf };

const char* kind_name(Kind k);

/// One term of the end-space grammar.
///
/// Pt(f)        - a single isolated end carrying flag f.
/// Sum(parts)   - finite disjoint union, >= 2 non-Empty parts.
/// Omega(S, f)  - one-point compactification of countably many interleaved
///                copies of each member of S; the added limit carries flag f.
/// Cantor(f)    - a Cantor set of ends, all carrying flag f.
/// CantorOf(E)  - a Cantor set with a copy of E attached at every node of an
///                infinite binary tree, so every Cantor point is a limit of
///                copies of E.
///
/// `flag` is meaningful for Pt and Cantor (point flag) and Omega (limit
/// flag); it is ignored elsewhere. The flag of CantorOf kernel points is
/// derived, see kernel_flag().
struct Expr {
  Kind kind = Kind::Empty;
  Flag flag = Flag::Planar;
  std::vector<Expr> kids;

  bool operator==(const Expr&) const = default;

  static Expr empty() { return Expr{}; }
  static Expr pt(Flag f = Flag::Planar) { return Expr{Kind::Pt, f, {}}; }
  static Expr sum(std::vector<Expr> parts) { return Expr{Kind::Sum, Flag::Planar, std::move(parts)}; }
  static Expr omega(std::vector<Expr> members, Flag limit = Flag::Planar) {
    return Expr{Kind::Omega, limit, std::move(members)};
  }
  static Expr cantor(Flag f = Flag::Planar) { return Expr{Kind::Cantor, f, {}}; }
  static Expr cantor_of(Expr base) { return Expr{Kind::CantorOf, Flag::Planar, {std::move(base)}}; }

  bool is(Kind k) const { return kind == k; }
};

/// Fixed total order on terms: by constructor tag, then flag, then arity,
/// then recursively on children. Any fixed total order gives confluent
/// sorting; this one keeps simple terms first.
std::strong_ordering structural_order(const Expr& a, const Expr& b);
bool structural_less(const Expr& a, const Expr& b);

bool contains_nonplanar_atom(const Expr& e);
bool is_countable(const Expr& e);  // no Cantor / CantorOf anywhere
bool is_finite_set(const Expr& e); // Empty, Pt, or Sum of Pt: finitely many ends
std::size_t finite_size(const Expr& e);
std::size_t node_count(const Expr& e);
int term_depth(const Expr& e);

/// Flag of the Cantor kernel points of CantorOf(base): nonplanar exactly
/// when the base contains a nonplanar atom (the nonplanar set is closed).
Flag kernel_flag(const Expr& base);

std::string expr_key(const Expr& e); // compact stable key, used for memo tables

/// Cardinality of a class of ends: a natural number, countably infinite,
/// or continuum.
struct Count {
  enum class Cls : std::uint8_t { Finite, Omega, Continuum };
  Cls cls = Cls::Finite;
  std::uint64_t n = 0;

  static Count finite(std::uint64_t k) { return Count{Cls::Finite, k}; }
  static Count omega() { return Count{Cls::Omega, 0}; }
  static Count continuum() { return Count{Cls::Continuum, 0}; }

  bool operator==(const Count&) const = default;
  bool is_zero() const { return cls == Cls::Finite && n == 0; }
  bool infinite() const { return cls != Cls::Finite; }

  Count plus(const Count& o) const;
  Count times_omega() const;  // 0 stays 0; finite>0 and omega give omega
  bool leq(const Count& o) const;
  std::string str() const;  // "3" | "w" | "c"
};

/// Ordinal in base-omega normal form with finite exponents and coefficients:
/// sum of w^e * c terms, exponents strictly decreasing. Grammar nesting is
/// finite, so every rank arising here is a natural number; the notation is
/// kept for ordinal-type reporting (w^rank * n + 1).
struct Ordinal {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> terms;

  static Ordinal nat(std::uint32_t k) {
    Ordinal o;
    if (k > 0) o.terms.push_back({0, k});
    return o;
  }
  static Ordinal omega_pow(std::uint32_t e, std::uint32_t c = 1) {
    Ordinal o;
    if (c > 0) o.terms.push_back({e, c});
    return o;
  }

  bool operator==(const Ordinal&) const = default;
  std::strong_ordering operator<=>(const Ordinal&) const = default;

  Ordinal plus(const Ordinal& o) const;  // ordinal addition (left absorption)
  std::string str() const;
};

struct GenusSpec {
  enum class K : std::uint8_t { Zero, Finite, Infinite };
  K k = K::Zero;
  std::uint32_t n = 0;  // only for Finite, n >= 1

  static GenusSpec zero() { return {K::Zero, 0}; }
  static GenusSpec finite(std::uint32_t g) { return {K::Finite, g}; }
  static GenusSpec infinite() { return {K::Infinite, 0}; }

  bool operator==(const GenusSpec&) const = default;
  std::string str() const;
};

/// Full homeomorphism invariant of a borderless orientable 2-manifold:
/// genus plus the end-space term (Empty for closed surfaces).
struct SurfaceDesc {
  GenusSpec genus;
  Expr ends;

  bool operator==(const SurfaceDesc&) const = default;
};

struct InvariantViolation {
  std::string path;  // "ends", "ends.0.1", ...
  std::string rule;
};

std::optional<InvariantViolation> check_expr(const Expr& e, const std::string& path = "ends");
std::optional<InvariantViolation> check_surface(const SurfaceDesc& s);

}  // namespace rokhlin
