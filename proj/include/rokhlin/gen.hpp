#pragma once

#include <random>
#include <string>

#include "rokhlin/core.hpp"

namespace rokhlin::gen {

struct Options {
  int maxDepth = 4;
  bool allowUncountable = true;
  bool allowNonplanar = true;
  // keep perfect parts out of Omega member sets and CantorOf payloads, so
  // every order comparison stays inside the decidable fragment
  bool decidableFragment = false;
};

/// Random valid end-space expression (never Empty).
Expr random_expr(std::mt19937_64& rng, const Options& opt);

/// Random valid surface description; genus is derived from the flags.
SurfaceDesc random_surface(std::mt19937_64& rng, const Options& opt);

/// Apply `steps` random homeomorphism-preserving inverse rewrites
/// (regrouping, member splitting, absorbable-part insertion, duplication).
/// The result rewrites back to normalize(e) by construction.
Expr denormalize(std::mt19937_64& rng, const Expr& e, int steps);

/// Random byte/token soup for parser robustness fuzzing.
std::string random_garbage(std::mt19937_64& rng);

}  // namespace rokhlin::gen
