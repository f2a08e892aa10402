#include "rokhlin/witness.hpp"

#include <algorithm>

#include "rokhlin/dsl.hpp"
#include "rokhlin/order.hpp"

namespace rokhlin::witness {

using endspace::EmbedCert;
using endspace::EmbedPair;
using endspace::EmbedV;
using endspace::HomeoV;

std::uint64_t cantor_pair(std::uint64_t i, std::uint64_t j) {
  std::uint64_t s = i + j;
  return s * (s + 1) / 2 + j;
}

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t n) {
  std::uint64_t s = 0;
  while ((s + 1) * (s + 2) / 2 <= n) ++s;
  std::uint64_t j = n - s * (s + 1) / 2;
  return {s - j, j};
}

std::vector<int> word_at(int k, std::uint64_t j) {
  std::uint64_t levelSize = 1, len = 0;
  while (j >= levelSize) {
    j -= levelSize;
    ++len;
    levelSize *= static_cast<std::uint64_t>(k);
  }
  std::vector<int> w(len, 0);
  for (std::size_t p = len; p-- > 0;) {
    w[p] = static_cast<int>(j % static_cast<std::uint64_t>(k));
    j /= static_cast<std::uint64_t>(k);
  }
  return w;
}

std::uint64_t word_index(int k, const std::vector<int>& w) {
  std::uint64_t base = 0, levelSize = 1;
  for (std::size_t l = 0; l < w.size(); ++l) {
    base += levelSize;
    levelSize *= static_cast<std::uint64_t>(k);
  }
  std::uint64_t off = 0;
  for (int d : w) off = off * static_cast<std::uint64_t>(k) + static_cast<std::uint64_t>(d);
  return base + off;
}

DensePiece dense_piece_type(bool genusPieces, bool chunkPieces, std::uint64_t typeIndex) {
  DensePiece p;
  if (genusPieces && chunkPieces) {
    auto [a, b] = cantor_unpair(typeIndex);
    p.genus = static_cast<int>(a);
    p.chunkUnits = static_cast<int>(b) + 1;
  } else if (genusPieces) {
    p.genus = static_cast<int>(typeIndex) + 1;  // the compact R_g catalog
  } else {
    p.chunkUnits = static_cast<int>(typeIndex) + 1;
  }
  p.alphabet = (p.genus > 0 ? 2 * p.genus + 2 : 0) + p.chunkUnits;
  return p;
}

DenseSchedule dense_element_schedule(const SurfaceDesc& s, int count, int depthBudget) {
  if (classify::trivial_mcg(s))
    throw WitnessError("TrivialGroup", "no nontrivial schedule exists for " +
                                           dsl::render_surface(s));
  classify::Verdict v = classify::classify(s, depthBudget);
  if (v.rokhlin != classify::Tri::True)
    throw WitnessError("NotRokhlin", "no dense conjugacy class: " +
                                         std::string(classify::reason_name(v.reason)));
  if (count < 1) throw WitnessError("NotRokhlin", "count must be >= 1");

  DenseSchedule sch;
  sch.surface = s;
  sch.genusPieces = s.genus.k == GenusSpec::K::Infinite;

  // unit chunk: the structurally smallest non-maximal type realized by
  // infinitely many ends
  order::MaximalClass ms = order::maximal_set(s.ends, depthBudget);
  std::vector<order::EndTypeClass> classes = order::end_type_classes(s.ends);
  sch.unitChunk = Expr::empty();
  for (const order::EndTypeClass& c : classes) {
    if (!c.mult.infinite()) continue;
    bool isMaximal = false;
    for (const order::EndTypeClass& m : ms.reps)
      if (m.stable == c.stable) isMaximal = true;
    if (isMaximal) continue;
    if (sch.unitChunk.kind == Kind::Empty || structural_less(c.stable, sch.unitChunk))
      sch.unitChunk = c.stable;
  }
  bool chunks = sch.unitChunk.kind != Kind::Empty;
  if (!sch.genusPieces && !chunks)
    throw WitnessError("NotRokhlin", "no piece catalog available for this surface");
  sch.designChoice = !(sch.genusPieces && !chunks);  // anything beyond the compact R_g case

  std::uint64_t cursor = 0;
  for (int n = 0; n < count; ++n) {
    auto [i, j] = cantor_unpair(static_cast<std::uint64_t>(n));
    DenseEntry e;
    e.index = static_cast<std::uint64_t>(n);
    e.piece = dense_piece_type(sch.genusPieces, chunks, i);
    e.word = word_at(e.piece.alphabet, j);
    std::uint64_t span =
        static_cast<std::uint64_t>(e.piece.genus) + static_cast<std::uint64_t>(e.piece.chunkUnits);
    e.regionLo = cursor;
    e.regionHi = cursor + span;
    cursor = e.regionHi;
    sch.entries.push_back(std::move(e));
  }
  return sch;
}

// ---- end-swap schedule ----

namespace {

struct Side {
  Expr part;                   // Omega part holding the maximal end, or an atom
  std::vector<Expr> roundComponents;  // one copy of each Omega member; empty for atoms
  long next = 0;               // consumption frontier in rounds
};

// Place one component into the opposite side's part: the target must be a
// fresh copy of some member, never the tail or the whole.
std::optional<SwapPlacement> place_component(const Expr& piece, const Expr& oppositePart,
                                             long& frontier, int depthBudget) {
  if (oppositePart.kind != Kind::Omega) return std::nullopt;
  for (std::size_t m = 0; m < oppositePart.kids.size(); ++m) {
    endspace::EmbedResult r = endspace::clopen_embeds(piece, oppositePart.kids[m], depthBudget);
    if (r.v != EmbedV::Yes) continue;
    SwapPlacement pl;
    pl.piece = piece;
    pl.bandLo = frontier;
    pl.bandLen = 1;
    pl.cert = std::move(*r.cert);
    for (EmbedPair& pr : pl.cert.pairs) {
      pr.target.insert(pr.target.begin(), endspace::sel_omega_copy(static_cast<int>(m), 0));
      pr.target.insert(pr.target.begin(), endspace::sel_omega_tail(pl.bandLo));
    }
    pl.cert.target = oppositePart;
    frontier += pl.bandLen;
    return pl;
  }
  return std::nullopt;
}

}  // namespace

SwapSchedule end_swap_schedule(const SurfaceDesc& s, int depth, int depthBudget) {
  if (depth < 1) throw WitnessError("NotDoublyPointed", "depth must be >= 1");
  order::MaximalClass ms = order::maximal_set(s.ends, depthBudget);
  if (ms.k != order::MaximalClass::K::Pair)
    throw WitnessError("NotDoublyPointed",
                       "maximal set is " + std::string(order::maximal_kind_name(ms.k)) +
                           ", need exactly two maximal ends");

  // locate the two maximal ends among the top-level parts
  std::vector<order::EndLocator> locs;
  for (const order::EndTypeClass& c : ms.reps)
    for (const order::EndLocator& l : c.reps) locs.push_back(l);
  if (locs.size() > 2) locs.resize(2);
  if (locs.size() != 2) throw WitnessError("NotDoublyPointed", "could not locate the maximal pair");

  Expr n = endspace::normalize(s.ends).expr;
  SwapSchedule sch;
  sch.surface = s;
  sch.depth = depth;
  if (n.kind != Kind::Sum)
    throw WitnessError("NotDoublyPointed", "doubly pointed end spaces are top-level sums");
  auto top = [&](const order::EndLocator& l) { return l.path.empty() ? -1 : l.path.front(); };
  sch.vPartIndex = top(locs[0]);
  sch.wPartIndex = top(locs[1]);
  if (sch.vPartIndex < 0 || sch.wPartIndex < 0 || sch.vPartIndex == sch.wPartIndex)
    throw WitnessError("NotDoublyPointed", "maximal ends do not sit in distinct parts");
  for (int i = 0; i < static_cast<int>(n.kids.size()); ++i)
    if (i != sch.vPartIndex && i != sch.wPartIndex) sch.junkParts.push_back(i);

  const Expr& pv = n.kids[static_cast<std::size_t>(sch.vPartIndex)];
  const Expr& pw = n.kids[static_cast<std::size_t>(sch.wPartIndex)];

  sch.residual = endspace::homeo_eq(pv, pw);
  if (sch.residual.v != HomeoV::Equal)
    throw WitnessError("EmbedSearchFailed",
                       "stage 1: the two maximal sides are not homeomorphic: " +
                           sch.residual.detail);

  Side V{pv, {}, 0}, W{pw, {}, 0};
  if (pv.kind == Kind::Omega) V.roundComponents = pv.kids;
  if (pw.kind == Kind::Omega) W.roundComponents = pw.kids;

  for (int stage = 1; stage <= depth; ++stage) {
    SwapRow row;
    row.stage = stage;

    std::vector<Expr> vComponents;
    if (stage == 1)
      for (int j : sch.junkParts) vComponents.push_back(n.kids[static_cast<std::size_t>(j)]);
    if (!V.roundComponents.empty()) {
      row.vReleased = true;
      row.vRound = V.next++;
      for (const Expr& c : V.roundComponents) vComponents.push_back(c);
    }
    for (const Expr& c : vComponents) {
      auto pl = place_component(c, W.part, W.next, depthBudget);
      if (!pl)
        throw WitnessError("EmbedSearchFailed", "stage " + std::to_string(stage) +
                                                    ": no placement for V component " +
                                                    dsl::render_expr(c));
      row.f.push_back(std::move(*pl));
    }

    std::vector<Expr> wComponents;
    if (!W.roundComponents.empty()) {
      row.wReleased = true;
      row.wRound = W.next++;
      for (const Expr& c : W.roundComponents) wComponents.push_back(c);
    }
    for (const Expr& c : wComponents) {
      auto pl = place_component(c, V.part, V.next, depthBudget);
      if (!pl)
        throw WitnessError("EmbedSearchFailed", "stage " + std::to_string(stage) +
                                                    ": no placement for W component " +
                                                    dsl::render_expr(c));
      row.g.push_back(std::move(*pl));
    }

    sch.rows.push_back(std::move(row));
  }
  sch.vRounds = V.next;
  sch.wRounds = W.next;
  return sch;
}

bool verify_swap_schedule(const SwapSchedule& sch) {
  Expr n = endspace::normalize(sch.surface.ends).expr;
  if (n.kind != Kind::Sum) return false;
  if (sch.vPartIndex < 0 || static_cast<std::size_t>(sch.vPartIndex) >= n.kids.size()) return false;
  if (sch.wPartIndex < 0 || static_cast<std::size_t>(sch.wPartIndex) >= n.kids.size()) return false;
  const Expr& pv = n.kids[static_cast<std::size_t>(sch.vPartIndex)];
  const Expr& pw = n.kids[static_cast<std::size_t>(sch.wPartIndex)];

  // the sides must close up to a homeomorphism of the residual neighborhoods
  if (endspace::homeo_eq(pv, pw).v != HomeoV::Equal) return false;

  long vNext = 0, wNext = 0;
  int stage = 0;
  for (const SwapRow& row : sch.rows) {
    if (row.stage != ++stage) return false;

    // expected V components this stage
    std::vector<Expr> vComponents;
    if (stage == 1)
      for (int j : sch.junkParts) {
        if (j < 0 || static_cast<std::size_t>(j) >= n.kids.size()) return false;
        vComponents.push_back(n.kids[static_cast<std::size_t>(j)]);
      }
    if (row.vReleased) {
      if (pv.kind != Kind::Omega || row.vRound != vNext++) return false;
      for (const Expr& c : pv.kids) vComponents.push_back(c);
    } else if (pv.kind == Kind::Omega) {
      return false;  // a native round was skipped
    }
    if (row.f.size() != vComponents.size()) return false;
    for (std::size_t i = 0; i < row.f.size(); ++i) {
      const SwapPlacement& pl = row.f[i];
      if (!(pl.piece == vComponents[i])) return false;
      if (pl.bandLo != wNext || pl.bandLen < 1) return false;
      wNext += pl.bandLen;
      if (!check_embed_cert(pl.cert, pl.piece, pw)) return false;
      for (const EmbedPair& pr : pl.cert.pairs) {
        // banded targets: tail(bandLo) then a fresh copy inside the band
        if (pr.target.size() < 2) return false;
        if (pr.target[0].k != endspace::PieceSel::K::OmegaTail ||
            pr.target[0].index != pl.bandLo)
          return false;
        if (pr.target[1].k != endspace::PieceSel::K::OmegaCopy ||
            pr.target[1].index >= pl.bandLen)
          return false;
      }
    }

    std::vector<Expr> wComponents;
    if (row.wReleased) {
      if (pw.kind != Kind::Omega || row.wRound != wNext++) return false;
      for (const Expr& c : pw.kids) wComponents.push_back(c);
    } else if (pw.kind == Kind::Omega) {
      return false;
    }
    if (row.g.size() != wComponents.size()) return false;
    for (std::size_t i = 0; i < row.g.size(); ++i) {
      const SwapPlacement& pl = row.g[i];
      if (!(pl.piece == wComponents[i])) return false;
      if (pl.bandLo != vNext || pl.bandLen < 1) return false;
      vNext += pl.bandLen;
      if (!check_embed_cert(pl.cert, pl.piece, pv)) return false;
      for (const EmbedPair& pr : pl.cert.pairs) {
        if (pr.target.size() < 2) return false;
        if (pr.target[0].k != endspace::PieceSel::K::OmegaTail ||
            pr.target[0].index != pl.bandLo)
          return false;
        if (pr.target[1].k != endspace::PieceSel::K::OmegaCopy ||
            pr.target[1].index >= pl.bandLen)
          return false;
      }
    }
  }
  return vNext == sch.vRounds && wNext == sch.wRounds && stage == sch.depth;
}

}  // namespace rokhlin::witness
