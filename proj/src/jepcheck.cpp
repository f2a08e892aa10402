#include "rokhlin/jepcheck.hpp"

#include <algorithm>

#include "rokhlin/dsl.hpp"
#include "rokhlin/order.hpp"

namespace rokhlin::jepcheck {

using endspace::EmbedCert;
using endspace::EmbedPair;
using endspace::HomeoV;
using endspace::PiecePath;
using endspace::PieceSel;

namespace {

bool is_copy_piece(const PiecePath& p) {
  return !p.empty() && p.front().k == PieceSel::K::OmegaCopy;
}

long top_ordinal(const PiecePath& p) { return p.front().index; }

std::string path_list(const std::vector<MapPair>& pairs) {
  std::string s;
  for (const MapPair& mp : pairs)
    s += "(" + endspace::piece_str(mp.from) + " -> " + endspace::piece_str(mp.to) + ") ";
  return s;
}

}  // namespace

SymbolicMap make_symbolic_map(const Expr& e, const std::vector<MapPair>& pairs) {
  SymbolicMap m;
  m.space = endspace::normalize(e).expr;
  m.pairs = pairs;
  m.supportBound = 0;

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (const PiecePath* p : {&pairs[i].from, &pairs[i].to}) {
      if (!is_copy_piece(*p))
        throw JepError("NotCompactlySupported",
                       "piece " + endspace::piece_str(*p) +
                           " meets every neighborhood of the maximal end");
      if (!endspace::resolve_piece(m.space, *p))
        throw JepError("NotCompactlySupported",
                       "piece " + endspace::piece_str(*p) + " does not resolve in " +
                           dsl::render_expr(m.space));
      m.supportBound = std::max(m.supportBound, top_ordinal(*p) + 1);
    }
    auto a = endspace::resolve_piece(m.space, pairs[i].from);
    auto b = endspace::resolve_piece(m.space, pairs[i].to);
    endspace::HomeoResult h = endspace::homeo_eq(*a, *b);
    if (h.v != HomeoV::Equal)
      throw JepError("TypeMismatch", "pair " + std::to_string(i) + " relates " +
                                         dsl::render_expr(*a) + " and " + dsl::render_expr(*b) +
                                         ": " + h.detail);
  }

  // the support pieces must partition: pairwise disjoint sources, and the
  // target pieces must be the same set (a permutation of the support)
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j)
      if (!endspace::pieces_disjoint(m.space, pairs[i].from, pairs[j].from))
        throw JepError("NotBijective", "overlapping support pieces " +
                                           endspace::piece_str(pairs[i].from) + " and " +
                                           endspace::piece_str(pairs[j].from));
  std::vector<PiecePath> froms, tos;
  for (const MapPair& mp : pairs) {
    froms.push_back(mp.from);
    tos.push_back(mp.to);
  }
  auto key = [](const PiecePath& p) { return endspace::piece_str(p); };
  std::sort(froms.begin(), froms.end(),
            [&](const PiecePath& a, const PiecePath& b) { return key(a) < key(b); });
  std::sort(tos.begin(), tos.end(),
            [&](const PiecePath& a, const PiecePath& b) { return key(a) < key(b); });
  if (froms != tos)
    throw JepError("NotBijective",
                   "the pairing is not a permutation of its support: " + path_list(pairs));
  return m;
}

Expr complement_region(const Expr& e, long k) {
  if (e.kind != Kind::Omega || k <= 0) return Expr::empty();
  std::vector<Expr> parts;
  for (const Expr& m : e.kids) {
    bool perfect = m.kind == Kind::Cantor || m.kind == Kind::CantorOf;
    long copies = perfect ? 1 : k;  // duplicate perfect parts collapse anyway
    for (long c = 0; c < copies; ++c) parts.push_back(m);
  }
  if (parts.size() == 1) return parts[0];
  std::sort(parts.begin(), parts.end(), structural_less);
  return Expr::sum(std::move(parts));
}

JepCertificate joint_realize(const Expr& e, const SymbolicMap& m1, const SymbolicMap& m2,
                             int depthBudget) {
  Expr n = endspace::normalize(e).expr;
  if (!(m1.space == n) || !(m2.space == n))
    throw JepError("NotGated", "the symbolic maps live on a different end space");

  order::MaximalClass ms = order::maximal_set(n, depthBudget);
  if (ms.k != order::MaximalClass::K::Singleton)
    throw JepError("NotGated", "end space does not have a unique maximal end (" +
                                   std::string(order::maximal_kind_name(ms.k)) + ")");
  order::SelfSimilarResult ss = order::is_self_similar(n, depthBudget);
  if (ss.v != order::Tri::True)
    throw JepError("NotGated", "end space not verified self-similar: " + ss.evidence);

  JepCertificate cert;
  cert.space = n;
  cert.tailIndex = std::max(m1.supportBound, m2.supportBound);
  cert.h1 = m1.pairs;
  cert.axioms = ss.axioms;

  Expr comp = complement_region(n, cert.tailIndex);
  cert.g.source = comp;
  cert.g.target = n;
  if (comp.kind != Kind::Empty) {
    if (!(endspace::normalize(comp).expr == comp))
      throw JepError("EmbedSearchFailed", "complement region did not normalize to itself");
    // the pushdown embedding: part by part into fresh copies inside the tail
    std::vector<Expr> parts = comp.kind == Kind::Sum ? comp.kids : std::vector<Expr>{comp};
    std::vector<int> ctr(n.kids.size(), 0);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      bool placed = false;
      for (std::size_t m = 0; m < n.kids.size() && !placed; ++m) {
        if (!(parts[i] == n.kids[m])) continue;
        EmbedPair pr;
        if (comp.kind == Kind::Sum) pr.source.push_back(endspace::sel_sum_part(static_cast<int>(i)));
        pr.target.push_back(endspace::sel_omega_tail(cert.tailIndex));
        pr.target.push_back(endspace::sel_omega_copy(static_cast<int>(m), ctr[m]++));
        pr.route = "copy shift";
        cert.g.pairs.push_back(std::move(pr));
        placed = true;
      }
      if (!placed)
        throw JepError("EmbedSearchFailed",
                       "no tail placement for region part " + dsl::render_expr(parts[i]) +
                           " at depth budget " + std::to_string(depthBudget));
    }
  }

  for (const MapPair& mp : m2.pairs) {
    MapPair moved;
    moved.from.push_back(endspace::sel_omega_tail(cert.tailIndex));
    moved.from.insert(moved.from.end(), mp.from.begin(), mp.from.end());
    moved.to.push_back(endspace::sel_omega_tail(cert.tailIndex));
    moved.to.insert(moved.to.end(), mp.to.begin(), mp.to.end());
    cert.conjugate.push_back(std::move(moved));
  }
  return cert;
}

bool verify_certificate(const JepCertificate& c, const Expr& e, const SymbolicMap& m1,
                        const SymbolicMap& m2) {
  Expr n = endspace::normalize(e).expr;
  if (!(c.space == n) || !(m1.space == n) || !(m2.space == n)) return false;
  if (c.tailIndex < m1.supportBound || c.tailIndex < m2.supportBound) return false;
  if (c.h1 != m1.pairs) return false;

  // conjugate must be exactly m2 pushed past the tail index
  if (c.conjugate.size() != m2.pairs.size()) return false;
  for (std::size_t i = 0; i < m2.pairs.size(); ++i) {
    PiecePath f{endspace::sel_omega_tail(c.tailIndex)};
    f.insert(f.end(), m2.pairs[i].from.begin(), m2.pairs[i].from.end());
    PiecePath t{endspace::sel_omega_tail(c.tailIndex)};
    t.insert(t.end(), m2.pairs[i].to.begin(), m2.pairs[i].to.end());
    if (!(c.conjugate[i].from == f) || !(c.conjugate[i].to == t)) return false;
  }

  // the pushdown embedding must check, and must land inside the tail
  Expr comp = complement_region(n, c.tailIndex);
  if (!(c.g.source == comp) || !(c.g.target == n)) return false;
  if (comp.kind == Kind::Empty) {
    if (!c.g.pairs.empty()) return false;
  } else {
    if (!check_embed_cert(c.g, comp, n)) return false;
    for (const EmbedPair& pr : c.g.pairs) {
      if (pr.target.empty() || pr.target.front().k != PieceSel::K::OmegaTail ||
          pr.target.front().index < c.tailIndex)
        return false;
    }
  }

  // supports verifiably disjoint: every m1 piece references copies below the
  // tail index, every conjugate piece sits inside the tail
  auto pieces_of = [](const std::vector<MapPair>& pairs) {
    std::vector<PiecePath> out;
    for (const MapPair& mp : pairs) {
      out.push_back(mp.from);
      out.push_back(mp.to);
    }
    return out;
  };
  for (const PiecePath& p : pieces_of(c.h1)) {
    if (!is_copy_piece(p) || top_ordinal(p) >= c.tailIndex) return false;
    if (!endspace::resolve_piece(n, p)) return false;
  }
  for (const PiecePath& p : pieces_of(c.conjugate)) {
    if (p.empty() || p.front().k != PieceSel::K::OmegaTail || p.front().index != c.tailIndex)
      return false;
    if (!endspace::resolve_piece(n, p)) return false;
  }
  for (const PiecePath& a : pieces_of(c.h1))
    for (const PiecePath& b : pieces_of(c.conjugate))
      if (!endspace::pieces_disjoint(n, a, b)) return false;

  // both maps must still be type-preserving piece pairings
  auto good_map = [&](const std::vector<MapPair>& pairs) {
    for (const MapPair& mp : pairs) {
      auto a = endspace::resolve_piece(n, mp.from);
      auto b = endspace::resolve_piece(n, mp.to);
      if (!a || !b) return false;
      if (endspace::homeo_eq(*a, *b).v != HomeoV::Equal) return false;
    }
    return true;
  };
  if (!good_map(m1.pairs) || !good_map(m2.pairs)) return false;

  // commutation is syntactic: with disjoint supports the product description
  // reads the same in either order; check the two composition tables agree
  // on every involved piece
  auto image = [&](const std::vector<MapPair>& pairs, const PiecePath& p) -> PiecePath {
    for (const MapPair& mp : pairs)
      if (mp.from == p) return mp.to;
    return p;
  };
  std::vector<PiecePath> domain;
  for (const MapPair& mp : c.h1) domain.push_back(mp.from);
  for (const MapPair& mp : c.conjugate) domain.push_back(mp.from);
  for (const PiecePath& p : domain) {
    PiecePath order1 = image(c.h1, image(c.conjugate, p));
    PiecePath order2 = image(c.conjugate, image(c.h1, p));
    if (!(order1 == order2)) return false;
  }
  return true;
}

}  // namespace rokhlin::jepcheck
