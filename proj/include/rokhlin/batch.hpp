#pragma once

#include <utility>
#include <vector>

#include "rokhlin/classify.hpp"
#include "rokhlin/core.hpp"
#include "rokhlin/endspace.hpp"
#include "rokhlin/order.hpp"

namespace rokhlin::batch {

struct Options {
  int jobs = 0;  // 0 = OpenMP default
  int depthBudget = 6;
};

// Data-parallel kernels over independent items, with serial reference
// implementations kept for testing. The engine is pure, so parallel and
// serial paths must agree elementwise.

std::vector<classify::Verdict> classify_many(const std::vector<SurfaceDesc>& xs,
                                             const Options& opt);
std::vector<classify::Verdict> classify_many_serial(const std::vector<SurfaceDesc>& xs,
                                                    int depthBudget = 6);

std::vector<endspace::HomeoV> homeo_many(const std::vector<std::pair<Expr, Expr>>& pairs,
                                         const Options& opt);
std::vector<endspace::HomeoV> homeo_many_serial(const std::vector<std::pair<Expr, Expr>>& pairs);

/// Full pairwise order table over the end-type classes of one expression:
/// cell (i, j) answers stable_i <= stable_j.
struct LeqTable {
  std::vector<order::EndTypeClass> classes;
  std::vector<order::LeqV> cells;  // row-major, classes.size()^2
};
LeqTable leq_table(const Expr& e, const Options& opt);
LeqTable leq_table_serial(const Expr& e, int depthBudget = 6);

}  // namespace rokhlin::batch
