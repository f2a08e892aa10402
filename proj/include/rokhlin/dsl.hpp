#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "rokhlin/core.hpp"

namespace rokhlin::dsl {

struct SyntaxError : std::runtime_error {
  int line;
  int col;
  std::string expected;
  SyntaxError(int line_, int col_, std::string expected_)
      : std::runtime_error("syntax error at " + std::to_string(line_) + ":" + std::to_string(col_) +
                           ", expected " + expected_),
        line(line_),
        col(col_),
        expected(std::move(expected_)) {}
};

struct InvariantError : std::runtime_error {
  std::string path;
  std::string rule;
  InvariantError(std::string path_, std::string rule_)
      : std::runtime_error("invariant violation at " + path_ + ": " + rule_),
        path(std::move(path_)),
        rule(std::move(rule_)) {}
};

/// Parse the full surface form:
///   surface { genus: <0|n|inf>, ends: <none|expr> }
/// Throws SyntaxError with position or InvariantError with path.
SurfaceDesc parse_surface(std::string_view text);

/// Parse a bare end-space expression ("omega(pt)@np", "none", ...).
Expr parse_ends(std::string_view text);

std::string render_surface(const SurfaceDesc& s);
std::string render_expr(const Expr& e);

}  // namespace rokhlin::dsl
