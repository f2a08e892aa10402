#include "rokhlin/catalog.hpp"

#include "rokhlin/dsl.hpp"

namespace rokhlin::catalog {

const std::vector<Entry>& entries() {
  static const std::vector<Entry> k = {
      {"sphere", "surface { genus: 0, ends: none }", "the 2-sphere"},
      {"plane", "surface { genus: 0, ends: pt }", "the plane"},
      {"annulus", "surface { genus: 0, ends: 2 * pt }", "the open annulus"},
      {"torus", "surface { genus: 1, ends: none }", "the torus"},
      {"three-punctured-sphere", "surface { genus: 0, ends: 3 * pt }",
       "sphere minus three points"},
      {"loch-ness", "surface { genus: inf, ends: pt@np }",
       "one-ended infinite-genus surface"},
      {"flute", "surface { genus: 0, ends: omega(pt) }",
       "plane minus an infinite closed discrete set"},
      {"nonplanar-flute", "surface { genus: inf, ends: omega(pt@np)@np }",
       "flute whose isolated ends and limit end all carry genus"},
      {"spotted-loch-ness", "surface { genus: inf, ends: omega(pt)@np }",
       "Loch Ness monster with a puncture sequence marching to its end"},
      {"genus-3-flute", "surface { genus: 3, ends: omega(pt) }", "flute with three handles"},
      {"cantor-tree", "surface { genus: 0, ends: cantor }", "sphere minus a Cantor set"},
      {"blooming-cantor-tree", "surface { genus: inf, ends: cantor@np }",
       "Cantor tree with handles accumulating at every end"},
      {"spotted-cantor-tree", "surface { genus: 0, ends: cantor_of(pt) }",
       "Cantor tree with an isolated puncture at every node"},
      {"ladder", "surface { genus: inf, ends: 2 * pt@np }",
       "two-ended infinite-genus surface"},
      {"spotted-ladder", "surface { genus: inf, ends: 2 * omega(pt)@np }",
       "ladder with puncture sequences marching to both ends"},
      {"double-flute", "surface { genus: 0, ends: 2 * omega(pt) }",
       "two flute ends back to back"},
      {"double-nonplanar-flute", "surface { genus: inf, ends: 2 * omega(pt@np)@np }",
       "two nonplanar flute ends back to back"},
      {"spotted-plane", "surface { genus: 0, ends: sum(pt, omega(pt)) }",
       "plane with a discrete spot set; same surface as the flute"},
  };
  return k;
}

std::optional<SurfaceDesc> lookup(const std::string& name) {
  for (const Entry& e : entries())
    if (e.name == name) return dsl::parse_surface(e.text);
  return std::nullopt;
}

}  // namespace rokhlin::catalog
