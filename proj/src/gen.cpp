#include "rokhlin/gen.hpp"

#include <algorithm>
#include <functional>

#include "rokhlin/endspace.hpp"

namespace rokhlin::gen {

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Flag pick_flag(std::mt19937_64& rng, const Options& opt) {
  return (opt.allowNonplanar && pick(rng, 0, 2) == 0) ? Flag::NonPlanar : Flag::Planar;
}

// restore the closed-nonplanar-set invariant bottom-up; repairing flags can
// merge members, so re-deduplicate as well
void repair_flags(Expr& e) {
  for (Expr& k : e.kids) repair_flags(k);
  if (e.kind == Kind::Omega) {
    for (const Expr& m : e.kids)
      if (contains_nonplanar_atom(m)) e.flag = Flag::NonPlanar;
    std::vector<Expr> dedup;
    for (Expr& m : e.kids)
      if (std::find(dedup.begin(), dedup.end(), m) == dedup.end()) dedup.push_back(std::move(m));
    e.kids = std::move(dedup);
  }
}

Expr gen_rec(std::mt19937_64& rng, const Options& opt, int depth, bool insideOmega) {
  bool atLeaf = depth >= opt.maxDepth;
  int roll = pick(rng, 0, 99);
  bool uncountableOk = opt.allowUncountable && !(opt.decidableFragment && insideOmega);

  if (atLeaf || roll < 40) {
    if (uncountableOk && !atLeaf && roll < 8) return Expr::cantor(pick_flag(rng, opt));
    return Expr::pt(pick_flag(rng, opt));
  }
  if (roll < 65) {  // Omega
    int members = pick(rng, 1, 3);
    std::vector<Expr> ms;
    for (int i = 0; i < members; ++i) {
      Expr m = gen_rec(rng, opt, depth + 1, true);
      if (std::find(ms.begin(), ms.end(), m) == ms.end()) ms.push_back(std::move(m));
    }
    return Expr::omega(std::move(ms), pick_flag(rng, opt));
  }
  if (roll < 85) {  // Sum
    int parts = pick(rng, 2, 3);
    std::vector<Expr> ps;
    for (int i = 0; i < parts; ++i) ps.push_back(gen_rec(rng, opt, depth + 1, insideOmega));
    return Expr::sum(std::move(ps));
  }
  if (uncountableOk && roll < 93) return Expr::cantor(pick_flag(rng, opt));
  if (uncountableOk) {
    if (opt.decidableFragment) return Expr::cantor_of(Expr::pt(pick_flag(rng, opt)));
    Options inner = opt;
    inner.allowUncountable = false;  // countable payload keeps CantorOf tame
    return Expr::cantor_of(gen_rec(rng, inner, depth + 1, true));
  }
  return Expr::pt(pick_flag(rng, opt));
}

}  // namespace

Expr random_expr(std::mt19937_64& rng, const Options& opt) {
  Expr e = gen_rec(rng, opt, 1, false);
  repair_flags(e);
  return e;
}

SurfaceDesc random_surface(std::mt19937_64& rng, const Options& opt) {
  if (pick(rng, 0, 9) == 0) {
    // occasionally a closed surface
    return SurfaceDesc{pick(rng, 0, 1) ? GenusSpec::zero() : GenusSpec::finite(
                                             static_cast<std::uint32_t>(pick(rng, 1, 4))),
                       Expr::empty()};
  }
  Expr ends = random_expr(rng, opt);
  GenusSpec g = contains_nonplanar_atom(ends)
                    ? GenusSpec::infinite()
                    : (pick(rng, 0, 2) == 0 ? GenusSpec::finite(
                                                  static_cast<std::uint32_t>(pick(rng, 1, 3)))
                                            : GenusSpec::zero());
  return SurfaceDesc{g, std::move(ends)};
}

namespace {

// collect mutable node pointers in preorder
void collect(Expr& e, std::vector<Expr*>& out) {
  out.push_back(&e);
  for (Expr& k : e.kids) collect(k, out);
}

// a stable type of e realized with infinite multiplicity, if any
std::optional<Expr> absorbable_type(std::mt19937_64& rng, const Expr& e) {
  endspace::Census c = endspace::census_of(e);
  std::vector<Expr> cands;
  for (const endspace::CensusEntry& en : c)
    if (en.mult.infinite() && en.mult.cls != Count::Cls::Continuum) cands.push_back(en.stable);
  if (cands.empty()) return std::nullopt;
  return cands[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(cands.size()) - 1))];
}

}  // namespace

Expr denormalize(std::mt19937_64& rng, const Expr& start, int steps) {
  Expr e = start;
  for (int s = 0; s < steps; ++s) {
    std::vector<Expr*> nodes;
    collect(e, nodes);
    Expr* n = nodes[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(nodes.size()) - 1))];
    switch (pick(rng, 0, 4)) {
      case 0: {  // inverse R1: group two adjacent parts of a Sum
        if (n->kind == Kind::Sum && n->kids.size() >= 3) {
          int i = pick(rng, 0, static_cast<int>(n->kids.size()) - 2);
          Expr grouped = Expr::sum({n->kids[static_cast<std::size_t>(i)],
                                    n->kids[static_cast<std::size_t>(i) + 1]});
          n->kids.erase(n->kids.begin() + i, n->kids.begin() + i + 2);
          n->kids.insert(n->kids.begin() + i, std::move(grouped));
        }
        break;
      }
      case 1: {  // inverse R2: shuffle children
        if ((n->kind == Kind::Sum || n->kind == Kind::Omega) && n->kids.size() >= 2)
          std::shuffle(n->kids.begin(), n->kids.end(), rng);
        break;
      }
      case 2: {  // inverse R3: merge two Omega members into a Sum member
        if (n->kind == Kind::Omega && n->kids.size() >= 2) {
          Expr merged = Expr::sum({n->kids[0], n->kids[1]});
          n->kids.erase(n->kids.begin(), n->kids.begin() + 2);
          n->kids.insert(n->kids.begin(), std::move(merged));
        }
        break;
      }
      case 3: {  // inverse R4/R5: insert an absorbable piece
        if (n->kind == Kind::Omega) {
          if (auto t = absorbable_type(rng, *n)) {
            if (std::find(n->kids.begin(), n->kids.end(), *t) == n->kids.end())
              n->kids.push_back(std::move(*t));
          }
        } else if (n->kind == Kind::Sum) {
          if (auto t = absorbable_type(rng, *n)) n->kids.push_back(std::move(*t));
        }
        break;
      }
      case 4: {  // inverse R6: duplicate a perfect part of a Sum
        if (n->kind == Kind::Sum) {
          for (const Expr& k : n->kids)
            if (k.kind == Kind::Cantor || k.kind == Kind::CantorOf) {
              n->kids.push_back(k);
              break;
            }
        }
        break;
      }
    }
    repair_flags(e);
  }
  return e;
}

std::string random_garbage(std::mt19937_64& rng) {
  static const char* tokens[] = {"surface", "genus",  "ends", "{",   "}",  ":",    ",",
                                 "omega",   "cantor", "pt",   "sum", "(",  ")",    "*",
                                 "@np",     "@p",     "inf",  "0",   "17", "none", "cantor_of"};
  std::string out;
  int mode = pick(rng, 0, 2);
  int len = pick(rng, 0, 60);
  for (int i = 0; i < len; ++i) {
    if (mode == 0) {
      out += static_cast<char>(pick(rng, 1, 255));
    } else {
      out += tokens[pick(rng, 0, static_cast<int>(std::size(tokens)) - 1)];
      out += pick(rng, 0, 3) == 0 ? "" : " ";
    }
  }
  return out;
}

}  // namespace rokhlin::gen
