#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rokhlin/core.hpp"

namespace rokhlin::catalog {

struct Entry {
  std::string name;
  std::string text;  // surface form, parseable by dsl::parse_surface
  std::string summary;
};

const std::vector<Entry>& entries();
std::optional<SurfaceDesc> lookup(const std::string& name);

}  // namespace rokhlin::catalog
