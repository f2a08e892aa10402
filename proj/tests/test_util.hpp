#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "rokhlin/core.hpp"
#include "rokhlin/dsl.hpp"
#include "rokhlin/endspace.hpp"

namespace testutil {

using namespace rokhlin;

inline Expr P(const std::string& s) { return dsl::parse_ends(s); }
inline SurfaceDesc S(const std::string& s) { return dsl::parse_surface(s); }

// ---- independent oracles (no cb_derivative iteration involved) ----

/// CB rank of a countable expression, by direct structural recursion.
inline int rank_oracle(const Expr& e) {
  switch (e.kind) {
    case Kind::Pt: return 0;
    case Kind::Sum: {
      int r = 0;
      for (const Expr& k : e.kids) r = std::max(r, rank_oracle(k));
      return r;
    }
    case Kind::Omega: {
      int r = 0;
      for (const Expr& k : e.kids) r = std::max(r, rank_oracle(k));
      return r + 1;
    }
    default: return 0;
  }
}

/// Count of rank-r points by flag, by direct recursion: a point's rank is
/// the derivative level at which it becomes isolated.
inline std::pair<Count, Count> iso_oracle(const Expr& e, int r) {
  switch (e.kind) {
    case Kind::Empty:
    case Kind::Cantor:
      return {Count::finite(0), Count::finite(0)};
    case Kind::Pt:
      if (r != 0) return {Count::finite(0), Count::finite(0)};
      return e.flag == Flag::Planar ? std::pair{Count::finite(1), Count::finite(0)}
                                    : std::pair{Count::finite(0), Count::finite(1)};
    case Kind::Sum: {
      Count p = Count::finite(0), n = Count::finite(0);
      for (const Expr& k : e.kids) {
        auto [kp, kn] = iso_oracle(k, r);
        p = p.plus(kp);
        n = n.plus(kn);
      }
      return {p, n};
    }
    case Kind::Omega: {
      Count p = Count::finite(0), n = Count::finite(0);
      for (const Expr& k : e.kids) {
        auto [kp, kn] = iso_oracle(k, r);
        p = p.plus(kp.times_omega());
        n = n.plus(kn.times_omega());
      }
      if (r == rank_oracle(e)) {
        auto one = Count::finite(1);
        if (e.flag == Flag::Planar) p = p.plus(one);
        else n = n.plus(one);
      }
      return {p, n};
    }
    case Kind::CantorOf: {
      auto [bp, bn] = iso_oracle(e.kids[0], r);
      return {bp.times_omega(), bn.times_omega()};
    }
  }
  return {Count::finite(0), Count::finite(0)};
}

// ---- finite approximation trees ----
// Materialize every Omega with `copies` copies of each member and compare
// canonical shapes. The shape of the limit-point subspace of e must match
// the shape of the full approximation of its derivative.

inline std::vector<std::string> approx_shape(const Expr& e, int copies);

inline std::string shape_node(Flag f, std::vector<std::string> kids) {
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  s += f == Flag::Planar ? 'p' : 'n';
  for (const std::string& k : kids) s += k;
  s += ")";
  return s;
}

inline std::vector<std::string> approx_shape(const Expr& e, int copies) {
  switch (e.kind) {
    case Kind::Pt:
      return {shape_node(e.flag, {})};
    case Kind::Sum: {
      std::vector<std::string> out;
      for (const Expr& k : e.kids)
        for (std::string& s : approx_shape(k, copies)) out.push_back(std::move(s));
      return out;
    }
    case Kind::Omega: {
      std::vector<std::string> kids;
      for (const Expr& m : e.kids) {
        std::vector<std::string> one = approx_shape(m, copies);
        for (int c = 0; c < copies; ++c) {
          std::string merged;
          std::vector<std::string> sorted = one;
          std::sort(sorted.begin(), sorted.end());
          for (const std::string& s : sorted) merged += s;
          kids.push_back("[" + merged + "]");  // one clopen copy
        }
      }
      return {shape_node(e.flag, std::move(kids))};
    }
    default:
      return {};
  }
}

inline std::vector<std::string> limit_shape(const Expr& e, int copies) {
  switch (e.kind) {
    case Kind::Pt:
      return {};
    case Kind::Sum: {
      std::vector<std::string> out;
      for (const Expr& k : e.kids)
        for (std::string& s : limit_shape(k, copies)) out.push_back(std::move(s));
      return out;
    }
    case Kind::Omega: {
      std::vector<std::string> kids;
      for (const Expr& m : e.kids) {
        std::vector<std::string> one = limit_shape(m, copies);
        if (one.empty()) continue;
        for (int c = 0; c < copies; ++c) {
          std::string merged;
          std::vector<std::string> sorted = one;
          std::sort(sorted.begin(), sorted.end());
          for (const std::string& s : sorted) merged += s;
          kids.push_back("[" + merged + "]");
        }
      }
      return {shape_node(e.flag, std::move(kids))};
    }
    default:
      return {};
  }
}

inline std::string shape_str(std::vector<std::string> parts) {
  std::sort(parts.begin(), parts.end());
  std::string s;
  for (const std::string& p : parts) s += p;
  return s;
}

}  // namespace testutil
