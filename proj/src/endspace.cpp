#include "rokhlin/endspace.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "rokhlin/dsl.hpp"

namespace rokhlin::endspace {

namespace {

Count count_mul(const Count& a, const Count& b) {
  if (a.is_zero() || b.is_zero()) return Count::finite(0);
  if (a.cls == Count::Cls::Continuum || b.cls == Count::Cls::Continuum) return Count::continuum();
  if (a.cls == Count::Cls::Omega || b.cls == Count::Cls::Omega) return Count::omega();
  return Count::finite(a.n * b.n);
}

void census_add(std::map<std::string, CensusEntry>& acc, const Expr& stable, const Count& mult) {
  if (mult.is_zero()) return;
  std::string key = expr_key(stable);
  auto it = acc.find(key);
  if (it == acc.end())
    acc.emplace(std::move(key), CensusEntry{stable, mult});
  else
    it->second.mult = it->second.mult.plus(mult);
}

void census_walk(const Expr& e, const Count& factor, std::map<std::string, CensusEntry>& acc) {
  switch (e.kind) {
    case Kind::Empty:
      return;
    case Kind::Pt:
      census_add(acc, e, factor);
      return;
    case Kind::Sum:
      for (const Expr& k : e.kids) census_walk(k, factor, acc);
      return;
    case Kind::Omega: {
      census_add(acc, e, factor);  // the limit end
      Count f = count_mul(factor, Count::omega());
      for (const Expr& m : e.kids) census_walk(m, f, acc);
      return;
    }
    case Kind::Cantor:
      census_add(acc, e, count_mul(factor, Count::continuum()));
      return;
    case Kind::CantorOf: {
      census_add(acc, e, count_mul(factor, Count::continuum()));  // kernel points
      census_walk(e.kids[0], count_mul(factor, Count::omega()), acc);
      return;
    }
  }
}

Census census_from_map(std::map<std::string, CensusEntry>&& acc) {
  Census out;
  out.reserve(acc.size());
  for (auto& [k, v] : acc) out.push_back(std::move(v));
  std::sort(out.begin(), out.end(), [](const CensusEntry& x, const CensusEntry& y) {
    return structural_less(x.stable, y.stable);
  });
  return out;
}

const Count* census_lookup(const Census& c, const Expr& stable) {
  for (const CensusEntry& e : c)
    if (e.stable == stable) return &e.mult;
  return nullptr;
}

// ---- normalization ----

struct NormCtx {
  std::vector<std::string>* trace;
  std::size_t steps = 0;
  std::size_t maxSteps = 20000;
  std::unordered_map<std::string, Census> censusMemo;

  void note(const char* rule, const std::string& path) {
    if (++steps > maxSteps) throw RewriteDepthExceeded(maxSteps);
    if (trace) trace->push_back(std::string(rule) + "@" + path);
  }

  const Census& census(const Expr& normal) {
    std::string key = expr_key(normal);
    auto it = censusMemo.find(key);
    if (it != censusMemo.end()) return it->second;
    std::map<std::string, CensusEntry> acc;
    census_walk(normal, Count::finite(1), acc);
    return censusMemo.emplace(std::move(key), census_from_map(std::move(acc))).first->second;
  }
};

// X is absorbed by a host census when every point type of X already occurs
// there with infinite multiplicity at least as large.
bool census_absorbs(const Census& host, const Census& x) {
  for (const CensusEntry& e : x) {
    const Count* m = census_lookup(host, e.stable);
    if (!m || !m->infinite() || !e.mult.leq(*m)) return false;
  }
  return true;
}

Census merge_census(const std::vector<const Census*>& parts, bool omega_scale) {
  std::map<std::string, CensusEntry> acc;
  for (const Census* c : parts)
    for (const CensusEntry& e : *c)
      census_add(acc, e.stable, omega_scale ? e.mult.times_omega() : e.mult);
  return census_from_map(std::move(acc));
}

Expr normalize_rec(Expr e, NormCtx& cx, const std::string& path) {
  for (std::size_t i = 0; i < e.kids.size(); ++i)
    e.kids[i] = normalize_rec(std::move(e.kids[i]), cx, path + "." + std::to_string(i));

  bool changed = true;
  while (changed) {
    changed = false;

    if (e.kind == Kind::Sum) {
      bool messy = std::any_of(e.kids.begin(), e.kids.end(), [](const Expr& k) {
        return k.kind == Kind::Empty || k.kind == Kind::Sum;
      });
      if (messy) {
        std::vector<Expr> flat;
        for (Expr& k : e.kids) {
          if (k.kind == Kind::Empty) continue;
          if (k.kind == Kind::Sum)
            for (Expr& g : k.kids) flat.push_back(std::move(g));
          else
            flat.push_back(std::move(k));
        }
        e.kids = std::move(flat);
        cx.note("R1", path);
        changed = true;
        continue;
      }

      // R5/R6: drop a part whose census the remaining parts absorb.
      for (std::size_t i = 0; i < e.kids.size() && e.kids.size() >= 2; ++i) {
        std::vector<const Census*> others;
        for (std::size_t j = 0; j < e.kids.size(); ++j)
          if (j != i) others.push_back(&cx.census(e.kids[j]));
        Census merged = merge_census(others, false);
        if (census_absorbs(merged, cx.census(e.kids[i]))) {
          bool dup = (e.kids[i].kind == Kind::Cantor || e.kids[i].kind == Kind::CantorOf) &&
                     std::count(e.kids.begin(), e.kids.end(), e.kids[i]) >= 2;
          cx.note(dup ? "R6" : "R5", path);
          e.kids.erase(e.kids.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          break;
        }
      }
      if (changed) continue;

      if (e.kids.empty()) {
        e = Expr::empty();
        cx.note("R1", path);
        continue;
      }
      if (e.kids.size() == 1) {
        Expr only = std::move(e.kids[0]);
        e = std::move(only);
        cx.note("R1", path);
        changed = true;
        continue;
      }
      if (!std::is_sorted(e.kids.begin(), e.kids.end(), structural_less)) {
        std::sort(e.kids.begin(), e.kids.end(), structural_less);
        cx.note("R2", path);
        changed = true;
        continue;
      }
    }

    if (e.kind == Kind::Omega) {
      bool hasSum = std::any_of(e.kids.begin(), e.kids.end(),
                                [](const Expr& k) { return k.kind == Kind::Sum; });
      bool hasDup = false;
      for (std::size_t i = 0; i < e.kids.size() && !hasDup; ++i)
        for (std::size_t j = i + 1; j < e.kids.size(); ++j)
          if (e.kids[i] == e.kids[j]) hasDup = true;
      if (hasSum || hasDup) {
        std::vector<Expr> members;
        for (Expr& k : e.kids) {
          if (k.kind == Kind::Sum)
            for (Expr& g : k.kids) members.push_back(std::move(g));
          else
            members.push_back(std::move(k));
        }
        std::vector<Expr> dedup;
        for (Expr& m : members)
          if (std::find(dedup.begin(), dedup.end(), m) == dedup.end()) dedup.push_back(std::move(m));
        e.kids = std::move(dedup);
        cx.note("R3", path);
        changed = true;
        continue;
      }

      // R4: a member is redundant when the other members jointly realize all
      // of its point types omega-fold.
      if (e.kids.size() >= 2) {
        for (std::size_t i = 0; i < e.kids.size(); ++i) {
          std::vector<const Census*> others;
          for (std::size_t j = 0; j < e.kids.size(); ++j)
            if (j != i) others.push_back(&cx.census(e.kids[j]));
          Census merged = merge_census(others, true);
          const Census& mine = cx.census(e.kids[i]);
          bool drop = true;
          for (const CensusEntry& entry : mine) {
            const Count* m = census_lookup(merged, entry.stable);
            if (!m || !entry.mult.times_omega().leq(*m)) {
              drop = false;
              break;
            }
          }
          if (drop) {
            cx.note("R4", path);
            e.kids.erase(e.kids.begin() + static_cast<std::ptrdiff_t>(i));
            changed = true;
            break;
          }
        }
        if (changed) continue;
      }

      if (!std::is_sorted(e.kids.begin(), e.kids.end(), structural_less)) {
        std::sort(e.kids.begin(), e.kids.end(), structural_less);
        cx.note("R2", path);
        changed = true;
        continue;
      }
    }
  }
  return e;
}

}  // namespace

NormalForm normalize(const Expr& e, std::size_t maxSteps) {
  NormalForm nf;
  NormCtx cx;
  cx.trace = &nf.rewriteTrace;
  cx.maxSteps = maxSteps;
  nf.expr = normalize_rec(e, cx, "e");
  return nf;
}

Expr cb_derivative(const Expr& e) {
  switch (e.kind) {
    case Kind::Empty:
    case Kind::Pt:
      return Expr::empty();
    case Kind::Sum: {
      std::vector<Expr> parts;
      for (const Expr& k : e.kids) {
        Expr d = cb_derivative(k);
        if (d.kind != Kind::Empty) parts.push_back(std::move(d));
      }
      if (parts.empty()) return Expr::empty();
      if (parts.size() == 1) return std::move(parts[0]);
      return Expr::sum(std::move(parts));
    }
    case Kind::Omega: {
      std::vector<Expr> members;
      for (const Expr& m : e.kids) {
        Expr d = cb_derivative(m);
        if (d.kind == Kind::Empty) continue;
        if (std::find(members.begin(), members.end(), d) == members.end())
          members.push_back(std::move(d));
      }
      if (members.empty()) return Expr::pt(e.flag);
      return Expr::omega(std::move(members), e.flag);
    }
    case Kind::Cantor:
      return e;
    case Kind::CantorOf: {
      Expr d = cb_derivative(e.kids[0]);
      if (d.kind == Kind::Empty) return Expr::cantor(kernel_flag(e.kids[0]));
      return Expr::cantor_of(std::move(d));
    }
  }
  return Expr::empty();
}

Census census_of_normal(const Expr& normalExpr) {
  std::map<std::string, CensusEntry> acc;
  census_walk(normalExpr, Count::finite(1), acc);
  return census_from_map(std::move(acc));
}

Census census_of(const Expr& e) { return census_of_normal(normalize(e).expr); }

Flag type_flag(const Expr& stable) {
  switch (stable.kind) {
    case Kind::Pt:
    case Kind::Cantor:
    case Kind::Omega:
      return stable.flag;
    case Kind::CantorOf:
      return kernel_flag(stable.kids[0]);
    default:
      return Flag::Planar;
  }
}

int countable_rank(const Expr& stable) {
  switch (stable.kind) {
    case Kind::Empty:
      return -1;
    case Kind::Pt:
      return 0;
    case Kind::Sum: {
      int r = -1;
      for (const Expr& k : stable.kids) r = std::max(r, countable_rank(k));
      return r;
    }
    case Kind::Omega: {
      int r = 0;
      for (const Expr& k : stable.kids) r = std::max(r, countable_rank(k));
      return r + 1;
    }
    case Kind::Cantor:
    case Kind::CantorOf:
      return -1;
  }
  return -1;
}

const char* kernel_name(KernelKind k) {
  switch (k) {
    case KernelKind::None: return "none";
    case KernelKind::PlanarCantorLike: return "planar-cantor";
    case KernelKind::NonPlanarCantorLike: return "nonplanar-cantor";
    case KernelKind::Mixed: return "mixed";
  }
  return "?";
}

namespace {

std::pair<Count, Count> isolated_counts(const Expr& e) {
  switch (e.kind) {
    case Kind::Empty:
    case Kind::Cantor:
      return {Count::finite(0), Count::finite(0)};
    case Kind::Pt:
      return e.flag == Flag::Planar ? std::pair{Count::finite(1), Count::finite(0)}
                                    : std::pair{Count::finite(0), Count::finite(1)};
    case Kind::Sum: {
      Count p = Count::finite(0), n = Count::finite(0);
      for (const Expr& k : e.kids) {
        auto [kp, kn] = isolated_counts(k);
        p = p.plus(kp);
        n = n.plus(kn);
      }
      return {p, n};
    }
    case Kind::Omega: {
      Count p = Count::finite(0), n = Count::finite(0);
      for (const Expr& k : e.kids) {
        auto [kp, kn] = isolated_counts(k);
        p = p.plus(kp.times_omega());
        n = n.plus(kn.times_omega());
      }
      return {p, n};
    }
    case Kind::CantorOf: {
      auto [bp, bn] = isolated_counts(e.kids[0]);
      return {bp.times_omega(), bn.times_omega()};
    }
  }
  return {Count::finite(0), Count::finite(0)};
}

// Flag presence among the points of a derivative fixpoint.
void kernel_flag_presence(const Expr& e, bool& planar, bool& np) {
  switch (e.kind) {
    case Kind::Empty:
      return;
    case Kind::Pt:
    case Kind::Cantor:
      (e.flag == Flag::Planar ? planar : np) = true;
      return;
    case Kind::Sum:
      for (const Expr& k : e.kids) kernel_flag_presence(k, planar, np);
      return;
    case Kind::Omega:
      (e.flag == Flag::Planar ? planar : np) = true;
      for (const Expr& k : e.kids) kernel_flag_presence(k, planar, np);
      return;
    case Kind::CantorOf:
      (kernel_flag(e.kids[0]) == Flag::Planar ? planar : np) = true;
      kernel_flag_presence(e.kids[0], planar, np);
      return;
  }
}

}  // namespace

CBProfile cb_profile(const Expr& e) {
  CBProfile p;
  Expr cur = normalize(e).expr;
  p.census = census_of_normal(cur);
  p.countable = is_countable(cur);

  std::uint32_t level = 0;
  std::uint32_t topLevel = 0;
  Count topPlanar = Count::finite(0), topNp = Count::finite(0);
  while (true) {
    auto [pl, np] = isolated_counts(cur);
    if (!pl.is_zero() || !np.is_zero()) {
      p.levels.push_back(Level{Ordinal::nat(level), pl, np});
      topLevel = level;
      topPlanar = pl;
      topNp = np;
    }
    Expr next = normalize(cb_derivative(cur)).expr;
    if (next == cur) break;
    cur = std::move(next);
    if (++level > 4096) throw std::logic_error("derivative iteration failed to stabilize");
  }

  p.kernelExpr = cur;
  if (cur.kind == Kind::Empty)
    p.kernel = KernelKind::None;
  else if (cur == Expr::cantor(Flag::Planar))
    p.kernel = KernelKind::PlanarCantorLike;
  else if (cur == Expr::cantor(Flag::NonPlanar))
    p.kernel = KernelKind::NonPlanarCantorLike;
  else
    p.kernel = KernelKind::Mixed;

  if (p.countable && !p.levels.empty()) {
    std::uint32_t n = static_cast<std::uint32_t>(topPlanar.n + topNp.n);
    p.ordinalType = topLevel == 0 ? Ordinal::nat(n)
                                  : Ordinal::omega_pow(topLevel, n).plus(Ordinal::nat(1));
  }
  return p;
}

namespace {

bool contains_cantor_of(const Expr& e) {
  if (e.kind == Kind::CantorOf) return true;
  return std::any_of(e.kids.begin(), e.kids.end(), contains_cantor_of);
}

std::string level_str(const std::vector<Level>& ls) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (i) os << ", ";
    os << "(" << ls[i].rank.str() << ": " << ls[i].planar.str() << "p," << ls[i].nonplanar.str()
       << "np)";
  }
  os << "]";
  return os.str();
}

Census countable_slice(const Census& c) {
  Census out;
  for (const CensusEntry& e : c)
    if (is_countable(e.stable)) out.push_back(e);
  return out;
}

std::string census_diff_detail(const Census& a, const Census& b) {
  for (const CensusEntry& e : a) {
    const Count* m = census_lookup(b, e.stable);
    if (!m || !(*m == e.mult))
      return "type " + dsl::render_expr(e.stable) + " has multiplicity " + e.mult.str() +
             " vs " + (m ? m->str() : "0");
  }
  for (const CensusEntry& e : b)
    if (!census_lookup(a, e.stable))
      return "type " + dsl::render_expr(e.stable) + " has multiplicity 0 vs " + e.mult.str();
  return "censuses differ";
}

}  // namespace

HomeoResult homeo_eq(const Expr& a, const Expr& b) {
  HomeoResult r;
  Expr na = normalize(a).expr;
  Expr nb = normalize(b).expr;
  if (contains_cantor_of(na) || contains_cantor_of(nb)) r.axioms.push_back(kAxiomCantorOf);

  if (na == nb) {
    r.v = HomeoV::Equal;
    r.detail = "normal forms coincide";
    return r;
  }

  CBProfile pa = cb_profile(na);
  CBProfile pb = cb_profile(nb);

  if (!(pa.levels == pb.levels)) {
    r.v = HomeoV::NotEqual;
    r.detail = "isolated-point levels differ: " + level_str(pa.levels) + " vs " +
               level_str(pb.levels);
    if (pa.ordinalType && pb.ordinalType)
      r.detail += " (ordinal types " + pa.ordinalType->str() + " vs " + pb.ordinalType->str() + ")";
    return r;
  }

  bool ka = pa.kernel != KernelKind::None, kb = pb.kernel != KernelKind::None;
  if (ka != kb) {
    r.v = HomeoV::NotEqual;
    r.detail = "perfect-kernel presence differs";
    return r;
  }
  if (ka) {
    bool ap = false, an = false, bp = false, bn = false;
    kernel_flag_presence(pa.kernelExpr, ap, an);
    kernel_flag_presence(pb.kernelExpr, bp, bn);
    if (ap != bp || an != bn) {
      r.v = HomeoV::NotEqual;
      r.detail = "kernel flag content differs (" + std::string(kernel_name(pa.kernel)) + " vs " +
                 kernel_name(pb.kernel) + ")";
      return r;
    }
  }

  if (pa.countable && pb.countable) {
    r.axioms.push_back(kAxiomCountableCensus);
    if (pa.census == pb.census) {
      r.v = HomeoV::Equal;
      r.detail = "countable terms with equal decorated profiles";
    } else {
      r.v = HomeoV::NotEqual;
      r.detail = "decorated census separates: " + census_diff_detail(pa.census, pb.census);
    }
    return r;
  }

  Census sa = countable_slice(pa.census), sb = countable_slice(pb.census);
  if (!(sa == sb)) {
    r.v = HomeoV::NotEqual;
    r.detail = "countable point-type slice separates: " + census_diff_detail(sa, sb);
    r.axioms.push_back(kAxiomCountableCensus);
    return r;
  }

  r.v = HomeoV::Unknown;
  r.detail = "uncountable pair not separated by profile invariants";
  return r;
}

// ---- piece algebra ----

PieceSel sel_sum_part(int i) { return PieceSel{PieceSel::K::SumPart, 0, i, {}}; }
PieceSel sel_omega_copy(int member, int ordinal) {
  return PieceSel{PieceSel::K::OmegaCopy, member, ordinal, {}};
}
PieceSel sel_omega_tail(int k) { return PieceSel{PieceSel::K::OmegaTail, 0, k, {}}; }
PieceSel sel_cantor_half(std::string bits) {
  return PieceSel{PieceSel::K::CantorHalf, 0, 0, std::move(bits)};
}
PieceSel sel_cantor_of_copy(int n) { return PieceSel{PieceSel::K::CantorOfCopy, 0, n, {}}; }

namespace {

std::string heap_addr(int n) {
  // binary address of node n in an infinite binary tree, root first
  std::string raw;
  unsigned v = static_cast<unsigned>(n) + 1;
  while (v > 1) {
    raw += static_cast<char>('0' + (v & 1));
    v >>= 1;
  }
  return std::string(raw.rbegin(), raw.rend());
}

struct Tok {
  enum class T : std::uint8_t { Part, Copy, KCopy } t;
  int a = 0;
  long b = 0;
  std::string addr;
  bool operator==(const Tok&) const = default;
};

struct CanonPath {
  std::vector<Tok> toks;
  enum class Mark : std::uint8_t { Whole, Tail, Half } mark = Mark::Whole;
  long tail = 0;
  std::string bits;
  const Expr* piece = nullptr;
};

std::optional<CanonPath> canonize(const Expr& root, const PiecePath& path) {
  CanonPath cp;
  const Expr* cur = &root;
  long tailOff = 0;
  std::string bits;
  for (const PieceSel& s : path) {
    switch (s.k) {
      case PieceSel::K::SumPart:
        if (cur->kind != Kind::Sum || s.index < 0 ||
            static_cast<std::size_t>(s.index) >= cur->kids.size())
          return std::nullopt;
        cp.toks.push_back(Tok{Tok::T::Part, 0, s.index, {}});
        cur = &cur->kids[static_cast<std::size_t>(s.index)];
        break;
      case PieceSel::K::OmegaCopy:
        if (cur->kind != Kind::Omega || s.member < 0 ||
            static_cast<std::size_t>(s.member) >= cur->kids.size() || s.index < 0)
          return std::nullopt;
        cp.toks.push_back(Tok{Tok::T::Copy, s.member, tailOff + s.index, {}});
        cur = &cur->kids[static_cast<std::size_t>(s.member)];
        tailOff = 0;
        break;
      case PieceSel::K::OmegaTail:
        if (cur->kind != Kind::Omega || s.index < 0) return std::nullopt;
        tailOff += s.index;
        break;
      case PieceSel::K::CantorHalf:
        if ((cur->kind != Kind::Cantor && cur->kind != Kind::CantorOf) || s.bits.empty())
          return std::nullopt;
        for (char c : s.bits)
          if (c != '0' && c != '1') return std::nullopt;
        bits += s.bits;
        break;
      case PieceSel::K::CantorOfCopy:
        if (cur->kind != Kind::CantorOf || s.index < 0) return std::nullopt;
        cp.toks.push_back(Tok{Tok::T::KCopy, 0, 0, bits + heap_addr(s.index)});
        cur = &cur->kids[0];
        bits.clear();
        tailOff = 0;
        break;
    }
  }
  if (tailOff > 0) {
    cp.mark = CanonPath::Mark::Tail;
    cp.tail = tailOff;
  } else if (!bits.empty()) {
    cp.mark = CanonPath::Mark::Half;
    cp.bits = bits;
  }
  cp.piece = cur;
  return cp;
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.size() >= prefix.size() && std::equal(prefix.begin(), prefix.end(), s.begin());
}

// Does the ending piece of P (its mark) miss the continuation of Q?
bool mark_disjoint_from(const CanonPath& p, const CanonPath& q, std::size_t i) {
  if (p.mark == CanonPath::Mark::Whole) return false;
  if (i < q.toks.size()) {
    const Tok& t = q.toks[i];
    if (p.mark == CanonPath::Mark::Tail) return t.t == Tok::T::Copy && t.b < p.tail;
    return t.t == Tok::T::KCopy && !starts_with(t.addr, p.bits);
  }
  // both end at the same node
  if (q.mark == CanonPath::Mark::Whole) return false;
  if (p.mark == CanonPath::Mark::Tail || q.mark == CanonPath::Mark::Tail)
    return false;  // two tails always share the limit
  return !starts_with(p.bits, q.bits) && !starts_with(q.bits, p.bits);
}

bool canon_disjoint(const CanonPath& p, const CanonPath& q) {
  std::size_t i = 0;
  while (i < p.toks.size() && i < q.toks.size()) {
    if (p.toks[i] == q.toks[i]) {
      ++i;
      continue;
    }
    if (p.toks[i].t != q.toks[i].t) return false;  // malformed mix, be strict
    return true;  // same constructor, different coordinates: disjoint pieces
  }
  if (i == p.toks.size()) return mark_disjoint_from(p, q, i);
  return mark_disjoint_from(q, p, i);
}

}  // namespace

std::optional<Expr> resolve_piece(const Expr& root, const PiecePath& path) {
  auto cp = canonize(root, path);
  if (!cp) return std::nullopt;
  return *cp->piece;
}

bool pieces_disjoint(const Expr& root, const PiecePath& p, const PiecePath& q) {
  auto cp = canonize(root, p), cq = canonize(root, q);
  if (!cp || !cq) return false;
  return canon_disjoint(*cp, *cq);
}

std::string piece_str(const PiecePath& p) {
  std::ostringstream os;
  if (p.empty()) return "whole";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) os << "/";
    const PieceSel& s = p[i];
    switch (s.k) {
      case PieceSel::K::SumPart: os << "part" << s.index; break;
      case PieceSel::K::OmegaCopy: os << "copy" << s.member << ":" << s.index; break;
      case PieceSel::K::OmegaTail: os << "tail" << s.index; break;
      case PieceSel::K::CantorHalf: os << "half" << s.bits; break;
      case PieceSel::K::CantorOfCopy: os << "node" << s.index; break;
    }
  }
  return os.str();
}

// ---- embedding search ----

namespace {

struct EmbCtx {
  std::unordered_map<std::string, EmbedResult> memo;
  std::set<std::string> axioms;
};

void prefix_targets(EmbedCert& cert, const PieceSel& sel) {
  for (EmbedPair& p : cert.pairs) p.target.insert(p.target.begin(), sel);
}

void prefix_sources(EmbedCert& cert, const PieceSel& sel) {
  for (EmbedPair& p : cert.pairs) p.source.insert(p.source.begin(), sel);
}

int max_countable_rank(const Census& c) {
  int r = -1;
  for (const CensusEntry& e : c)
    if (is_countable(e.stable)) r = std::max(r, countable_rank(e.stable));
  return r;
}

// nonempty and without isolated points
bool is_perfect(const Expr& e) {
  switch (e.kind) {
    case Kind::Empty:
    case Kind::Pt:
      return false;
    case Kind::Cantor:
      return true;
    case Kind::Sum:
    case Kind::Omega:
      return std::all_of(e.kids.begin(), e.kids.end(), is_perfect);
    case Kind::CantorOf:
      return is_perfect(e.kids[0]);
  }
  return false;
}

// A perfect clopen subset avoiding a copy-accumulation point must live in
// finitely many copies; one that meets such a point swallows whole copies.
bool has_perfect_piece(const Expr& e) {
  switch (e.kind) {
    case Kind::Empty:
    case Kind::Pt:
      return false;
    case Kind::Cantor:
      return true;
    case Kind::Sum:
      return std::any_of(e.kids.begin(), e.kids.end(), has_perfect_piece);
    case Kind::Omega:
      return is_perfect(e) || std::any_of(e.kids.begin(), e.kids.end(), has_perfect_piece);
    case Kind::CantorOf:
      return is_perfect(e.kids[0]) || has_perfect_piece(e.kids[0]);
  }
  return false;
}

std::optional<std::string> obstruction(const Expr& na, const Expr& nb, const CBProfile& pa,
                                       const CBProfile& pb) {
  if (is_perfect(na) && !has_perfect_piece(nb))
    return "source is perfect but the target has no perfect clopen piece";
  bool anp = false, apl = false, bnp = false, bpl = false;
  for (const CensusEntry& e : pa.census) (type_flag(e.stable) == Flag::Planar ? apl : anp) = true;
  for (const CensusEntry& e : pb.census) (type_flag(e.stable) == Flag::Planar ? bpl : bnp) = true;
  if (anp && !bnp) return "nonplanar ends in source, none in target";
  if (apl && !bpl) return "planar ends in source, none in target";
  if (!pa.levels.empty() && pb.levels.empty()) return "source has isolated ends, target is perfect";
  if (pa.kernel != KernelKind::None && pb.kernel == KernelKind::None)
    return "source has a perfect part, target is countable";
  if (pa.kernel != KernelKind::None) {
    bool kap = false, kan = false, kbp = false, kbn = false;
    kernel_flag_presence(pa.kernelExpr, kap, kan);
    kernel_flag_presence(pb.kernelExpr, kbp, kbn);
    if (kan && !kbn) return "nonplanar perfect part in source, none in target";
    if (kap && !kbp) return "planar perfect part in source, none in target";
  }
  int ra = max_countable_rank(pa.census), rb = max_countable_rank(pb.census);
  if (ra > rb) return "rank obstruction: source rank " + std::to_string(ra) + " exceeds target rank " +
                      std::to_string(rb);
  for (const CensusEntry& e : pa.census) {
    if (!is_countable(e.stable)) continue;
    const Count* m = census_lookup(pb.census, e.stable);
    if (!m || !e.mult.leq(*m))
      return "point-type domination fails at " + dsl::render_expr(e.stable) + " (" + e.mult.str() +
             " vs " + (m ? m->str() : "0") + ")";
  }
  return std::nullopt;
}

EmbedResult embed_rec(const Expr& a, const Expr& b, int depth, EmbCtx& cx, bool allowWholeHomeo);

// Distribute the parts of a normalized Sum among fresh copies of Omega
// members, with at most one part taking the tail.
std::optional<EmbedCert> distribute_into_omega(const Expr& a, const Expr& b, int depth, EmbCtx& cx) {
  const std::size_t n = a.kids.size(), m = b.kids.size();
  std::vector<std::vector<std::optional<EmbedCert>>> intoMember(
      n, std::vector<std::optional<EmbedCert>>(m));
  std::vector<std::optional<EmbedCert>> intoTail(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      EmbedResult r = embed_rec(a.kids[i], b.kids[j], depth - 1, cx, true);
      if (r.v == EmbedV::Yes) intoMember[i][j] = std::move(r.cert);
    }
  }
  // Prefer member placements; fall back to one tail placement.
  std::vector<long> choice(n, -1);
  long tailPart = -1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      if (intoMember[i][j]) {
        choice[i] = static_cast<long>(j);
        break;
      }
    if (choice[i] >= 0) continue;
    if (tailPart < 0) {
      EmbedResult r = embed_rec(a.kids[i], b, depth - 1, cx, true);
      if (r.v == EmbedV::Yes) {
        intoTail[i] = std::move(r.cert);
        tailPart = static_cast<long>(i);
        continue;
      }
    }
    return std::nullopt;
  }

  EmbedCert cert;
  cert.source = a;
  cert.target = b;
  std::vector<int> ctr(m, 0);
  int used = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (static_cast<long>(i) == tailPart) continue;
    EmbedCert inner = *intoMember[i][static_cast<std::size_t>(choice[i])];
    int ord = ctr[static_cast<std::size_t>(choice[i])]++;
    used = std::max(used, ord + 1);
    prefix_targets(inner, sel_omega_copy(static_cast<int>(choice[i]), ord));
    prefix_sources(inner, sel_sum_part(static_cast<int>(i)));
    for (EmbedPair& p : inner.pairs) cert.pairs.push_back(std::move(p));
  }
  if (tailPart >= 0) {
    EmbedCert inner = *intoTail[static_cast<std::size_t>(tailPart)];
    prefix_targets(inner, sel_omega_tail(used));
    prefix_sources(inner, sel_sum_part(static_cast<int>(tailPart)));
    for (EmbedPair& p : inner.pairs) cert.pairs.push_back(std::move(p));
  }
  return cert;
}

// Distribute the parts of a normalized Sum among the parts of a Sum target.
std::optional<EmbedCert> distribute_into_sum(const Expr& a, const Expr& b, int depth, EmbCtx& cx) {
  const std::size_t n = a.kids.size(), m = b.kids.size();
  if (n > 8 || m > 8) return std::nullopt;
  std::vector<std::vector<char>> feas(n, std::vector<char>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      feas[i][j] = embed_rec(a.kids[i], b.kids[j], depth - 1, cx, true).v == EmbedV::Yes;

  std::vector<int> assign(n, -1);
  std::optional<EmbedCert> found;

  auto verify = [&]() -> bool {
    EmbedCert cert;
    cert.source = a;
    cert.target = b;
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<std::size_t> group;
      for (std::size_t i = 0; i < n; ++i)
        if (assign[i] == static_cast<int>(j)) group.push_back(i);
      if (group.empty()) continue;
      EmbedCert inner;
      if (group.size() == 1) {
        EmbedResult r = embed_rec(a.kids[group[0]], b.kids[j], depth - 1, cx, true);
        if (r.v != EmbedV::Yes) return false;
        inner = *r.cert;
        prefix_sources(inner, sel_sum_part(static_cast<int>(group[0])));
      } else {
        std::vector<Expr> parts;
        for (std::size_t i : group) parts.push_back(a.kids[i]);
        // skip the whole-homeo shortcut so sources stay per-part
        EmbedResult r = embed_rec(Expr::sum(std::move(parts)), b.kids[j], depth - 1, cx, false);
        if (r.v != EmbedV::Yes) return false;
        inner = *r.cert;
        for (EmbedPair& p : inner.pairs) {
          if (p.source.empty() || p.source.front().k != PieceSel::K::SumPart) return false;
          p.source.front().index = static_cast<int>(group[static_cast<std::size_t>(p.source.front().index)]);
        }
      }
      prefix_targets(inner, sel_sum_part(static_cast<int>(j)));
      for (EmbedPair& p : inner.pairs) cert.pairs.push_back(std::move(p));
    }
    found = std::move(cert);
    return true;
  };

  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == n) return verify();
    for (std::size_t j = 0; j < m; ++j) {
      if (!feas[i][j]) continue;
      assign[i] = static_cast<int>(j);
      if (rec(i + 1)) return true;
    }
    assign[i] = -1;
    return false;
  };
  if (rec(0)) return found;
  return std::nullopt;
}

EmbedResult embed_rec(const Expr& a, const Expr& b, int depth, EmbCtx& cx, bool allowWholeHomeo) {
  if (a.kind == Kind::Empty) {
    EmbedCert c;
    c.source = a;
    c.target = b;
    return EmbedResult{EmbedV::Yes, std::move(c), "empty source"};
  }

  std::string key = expr_key(a) + "|" + expr_key(b) + (allowWholeHomeo ? "|h" : "|n");
  if (auto it = cx.memo.find(key); it != cx.memo.end() && it->second.v != EmbedV::Unknown)
    return it->second;

  if (allowWholeHomeo) {
    HomeoResult h = homeo_eq(a, b);
    for (const std::string& ax : h.axioms) cx.axioms.insert(ax);
    if (h.v == HomeoV::Equal) {
      EmbedCert c;
      c.source = a;
      c.target = b;
      c.pairs.push_back(EmbedPair{{}, {}, "homeo: " + h.detail});
      EmbedResult r{EmbedV::Yes, std::move(c), "whole piece"};
      cx.memo[key] = r;
      return r;
    }
  }

  CBProfile pa = cb_profile(a), pb = cb_profile(b);
  if (auto obs = obstruction(a, b, pa, pb)) {
    EmbedResult r{EmbedV::No, std::nullopt, *obs};
    cx.memo[key] = r;
    return r;
  }

  if (depth <= 0) return EmbedResult{EmbedV::Unknown, std::nullopt, "depth budget exhausted"};

  auto yes = [&](EmbedCert c, std::string detail) {
    c.source = a;
    c.target = b;
    EmbedResult r{EmbedV::Yes, std::move(c), std::move(detail)};
    cx.memo[key] = r;
    return r;
  };

  switch (b.kind) {
    case Kind::Sum: {
      for (std::size_t j = 0; j < b.kids.size(); ++j) {
        EmbedResult r = embed_rec(a, b.kids[j], depth - 1, cx, true);
        if (r.v == EmbedV::Yes) {
          EmbedCert c = *r.cert;
          prefix_targets(c, sel_sum_part(static_cast<int>(j)));
          return yes(std::move(c), "inside part " + std::to_string(j));
        }
      }
      if (a.kind == Kind::Sum) {
        if (auto c = distribute_into_sum(a, b, depth, cx))
          return yes(std::move(*c), "distributed across parts");
      }
      break;
    }
    case Kind::Omega: {
      if (a.kind == Kind::Sum) {
        if (auto c = distribute_into_omega(a, b, depth, cx))
          return yes(std::move(*c), "distributed into copies and tail");
      } else {
        for (std::size_t j = 0; j < b.kids.size(); ++j) {
          EmbedResult r = embed_rec(a, b.kids[j], depth - 1, cx, true);
          if (r.v == EmbedV::Yes) {
            EmbedCert c = *r.cert;
            prefix_targets(c, sel_omega_copy(static_cast<int>(j), 0));
            return yes(std::move(c), "inside one copy of member " + std::to_string(j));
          }
        }
      }
      break;
    }
    case Kind::CantorOf: {
      cx.axioms.insert(kAxiomCantorOf);
      if (a.kind == Kind::Sum) {
        const std::size_t n = a.kids.size();
        EmbedCert cert;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
          EmbedResult r = embed_rec(a.kids[i], b, depth - 1, cx, true);
          if (r.v != EmbedV::Yes) {
            ok = false;
            break;
          }
          EmbedCert inner = *r.cert;
          std::string prefix(i, '1');
          if (i + 1 < n) prefix += '0';
          prefix_targets(inner, sel_cantor_half(prefix));
          prefix_sources(inner, sel_sum_part(static_cast<int>(i)));
          for (EmbedPair& p : inner.pairs) cert.pairs.push_back(std::move(p));
        }
        if (ok) return yes(std::move(cert), "distributed across dyadic halves");
      } else {
        EmbedResult r = embed_rec(a, b.kids[0], depth - 1, cx, true);
        if (r.v == EmbedV::Yes) {
          EmbedCert c = *r.cert;
          prefix_targets(c, sel_cantor_of_copy(0));
          return yes(std::move(c), "inside one attached copy");
        }
      }
      break;
    }
    case Kind::Pt:
    case Kind::Empty: {
      EmbedResult r{EmbedV::No, std::nullopt, "target has no proper pieces to host the source"};
      cx.memo[key] = r;
      return r;
    }
    case Kind::Cantor:
      break;
  }

  return EmbedResult{EmbedV::Unknown, std::nullopt,
                     "no embedding found within the depth budget"};
}

}  // namespace

EmbedResult clopen_embeds(const Expr& a, const Expr& b, int depthBudget) {
  Expr na = normalize(a).expr;
  Expr nb = normalize(b).expr;
  EmbCtx cx;
  EmbedResult r = embed_rec(na, nb, depthBudget, cx, true);
  if (r.v == EmbedV::Yes) {
    r.cert->source = na;
    r.cert->target = nb;
    r.cert->axioms.assign(cx.axioms.begin(), cx.axioms.end());
  }
  return r;
}

namespace {

bool covers(const Expr& e, std::vector<PiecePath> paths);

bool covers_grouped_sum(const Expr& e, std::vector<PiecePath>& paths) {
  std::vector<std::vector<PiecePath>> groups(e.kids.size());
  for (PiecePath& p : paths) {
    if (p.front().k != PieceSel::K::SumPart) return false;
    int i = p.front().index;
    if (i < 0 || static_cast<std::size_t>(i) >= e.kids.size()) return false;
    PiecePath rest(p.begin() + 1, p.end());
    groups[static_cast<std::size_t>(i)].push_back(std::move(rest));
  }
  for (std::size_t i = 0; i < e.kids.size(); ++i)
    if (!covers(e.kids[i], std::move(groups[i]))) return false;
  return true;
}

bool covers_omega(const Expr& e, std::vector<PiecePath>& paths) {
  long K = -1;
  std::vector<PiecePath> tailRests;
  std::vector<std::vector<std::vector<PiecePath>>> copies;  // [member][ordinal]
  copies.resize(e.kids.size());
  for (PiecePath& p : paths) {
    const PieceSel& s = p.front();
    PiecePath rest(p.begin() + 1, p.end());
    if (s.k == PieceSel::K::OmegaTail) {
      if (K >= 0 && K != s.index) return false;
      K = s.index;
      tailRests.push_back(std::move(rest));
    } else if (s.k == PieceSel::K::OmegaCopy) {
      auto& mem = copies[static_cast<std::size_t>(s.member)];
      if (static_cast<std::size_t>(s.index) >= mem.size())
        mem.resize(static_cast<std::size_t>(s.index) + 1);
      mem[static_cast<std::size_t>(s.index)].push_back(std::move(rest));
    } else {
      return false;
    }
  }
  if (K < 0) return false;  // the limit is never covered by copies alone
  bool tailWhole = tailRests.size() == 1 && tailRests[0].empty();
  if (!tailWhole && !covers(e, std::move(tailRests))) return false;
  for (std::size_t m = 0; m < e.kids.size(); ++m) {
    auto& mem = copies[m];
    if (static_cast<long>(mem.size()) < K) mem.resize(static_cast<std::size_t>(K));
    for (long c = 0; c < K; ++c)
      if (!covers(e.kids[m], std::move(mem[static_cast<std::size_t>(c)]))) return false;
    for (std::size_t c = static_cast<std::size_t>(K); c < mem.size(); ++c)
      if (!mem[c].empty()) return false;  // already inside the tail: overlap
  }
  return true;
}

struct HalfTrieEntry {
  std::string bits;
  PiecePath rest;
};

bool covers_halves(const Expr& e, std::vector<HalfTrieEntry> entries) {
  for (HalfTrieEntry& h : entries) {
    if (h.bits.empty()) {
      if (entries.size() != 1) return false;
      if (h.rest.empty()) return true;
      std::vector<PiecePath> rest;
      rest.push_back(std::move(h.rest));
      return covers(e, std::move(rest));
    }
  }
  std::vector<HalfTrieEntry> zero, one;
  for (HalfTrieEntry& h : entries) {
    char c = h.bits.front();
    h.bits.erase(h.bits.begin());
    (c == '0' ? zero : one).push_back(std::move(h));
  }
  if (zero.empty() || one.empty()) return false;
  return covers_halves(e, std::move(zero)) && covers_halves(e, std::move(one));
}

bool covers(const Expr& e, std::vector<PiecePath> paths) {
  for (const PiecePath& p : paths)
    if (p.empty()) return paths.size() == 1;
  if (paths.empty()) return false;
  switch (e.kind) {
    case Kind::Sum:
      return covers_grouped_sum(e, paths);
    case Kind::Omega:
      return covers_omega(e, paths);
    case Kind::Cantor:
    case Kind::CantorOf: {
      std::vector<HalfTrieEntry> entries;
      for (PiecePath& p : paths) {
        if (p.front().k != PieceSel::K::CantorHalf) return false;
        HalfTrieEntry h;
        h.bits = p.front().bits;
        h.rest.assign(p.begin() + 1, p.end());
        entries.push_back(std::move(h));
      }
      return covers_halves(e, std::move(entries));
    }
    default:
      return false;
  }
}

}  // namespace

bool check_embed_cert(const EmbedCert& cert, const Expr& a, const Expr& b) {
  Expr na = normalize(a).expr;
  Expr nb = normalize(b).expr;
  if (!(cert.source == na) || !(cert.target == nb)) return false;

  std::vector<PiecePath> sources;
  for (const EmbedPair& p : cert.pairs) {
    auto src = resolve_piece(na, p.source);
    auto tgt = resolve_piece(nb, p.target);
    if (!src || !tgt) return false;
    if (homeo_eq(*src, *tgt).v != HomeoV::Equal) return false;
    sources.push_back(p.source);
  }
  for (std::size_t i = 0; i < cert.pairs.size(); ++i)
    for (std::size_t j = i + 1; j < cert.pairs.size(); ++j) {
      if (!pieces_disjoint(nb, cert.pairs[i].target, cert.pairs[j].target)) return false;
      if (!pieces_disjoint(na, cert.pairs[i].source, cert.pairs[j].source)) return false;
    }
  if (na.kind == Kind::Empty) return cert.pairs.empty();
  return covers(na, std::move(sources));
}

}  // namespace rokhlin::endspace
