#include "rokhlin/order.hpp"

#include <algorithm>
#include <map>

#include "rokhlin/dsl.hpp"

namespace rokhlin::order {

using endspace::EmbedV;
using endspace::HomeoV;

const char* loc_kind_name(LocKind k) {
  switch (k) {
    case LocKind::IsolatedAtom: return "isolated";
    case LocKind::OmegaLimit: return "limit";
    case LocKind::CantorPoint: return "cantor";
    case LocKind::CantorOfBasePoint: return "base";
    case LocKind::InsideAttachedCopy: return "attached";
  }
  return "?";
}

namespace {

void walk(const Expr& e, std::vector<int>& path, const Count& factor, bool attached,
          std::vector<EndType>& out) {
  auto wrap = [&](LocKind k) { return attached ? LocKind::InsideAttachedCopy : k; };
  switch (e.kind) {
    case Kind::Empty:
      return;
    case Kind::Pt:
      out.push_back(EndType{EndLocator{path, wrap(LocKind::IsolatedAtom)}, e, e.flag, factor});
      return;
    case Kind::Sum:
      for (std::size_t i = 0; i < e.kids.size(); ++i) {
        path.push_back(static_cast<int>(i));
        walk(e.kids[i], path, factor, attached, out);
        path.pop_back();
      }
      return;
    case Kind::Omega: {
      out.push_back(EndType{EndLocator{path, wrap(LocKind::OmegaLimit)}, e, e.flag, factor});
      Count f = factor.times_omega();
      for (std::size_t i = 0; i < e.kids.size(); ++i) {
        path.push_back(static_cast<int>(i));
        walk(e.kids[i], path, f, attached, out);
        path.pop_back();
      }
      return;
    }
    case Kind::Cantor:
      out.push_back(
          EndType{EndLocator{path, wrap(LocKind::CantorPoint)}, e, e.flag, Count::continuum()});
      return;
    case Kind::CantorOf: {
      out.push_back(EndType{EndLocator{path, wrap(LocKind::CantorOfBasePoint)}, e,
                            kernel_flag(e.kids[0]), Count::continuum()});
      path.push_back(0);
      walk(e.kids[0], path, factor.times_omega(), true, out);
      path.pop_back();
      return;
    }
  }
}

}  // namespace

std::vector<EndType> end_types(const Expr& e) {
  std::vector<EndType> out;
  std::vector<int> path;
  walk(e, path, Count::finite(1), false, out);
  return out;
}

std::vector<EndTypeClass> end_type_classes(const Expr& e) {
  Expr n = endspace::normalize(e).expr;
  std::vector<EndType> raw = end_types(n);
  std::map<std::string, EndTypeClass> byKey;
  std::vector<std::string> keyOrder;
  for (EndType& t : raw) {
    std::string key = expr_key(t.stable);
    auto it = byKey.find(key);
    if (it == byKey.end()) {
      keyOrder.push_back(key);
      byKey.emplace(std::move(key), EndTypeClass{t.stable, t.flag, t.mult, {t.loc}});
    } else {
      it->second.mult = it->second.mult.plus(t.mult);
      if (it->second.reps.size() < 2) it->second.reps.push_back(t.loc);
    }
  }
  std::vector<EndTypeClass> out;
  out.reserve(keyOrder.size());
  for (const std::string& k : keyOrder) out.push_back(std::move(byKey.at(k)));
  return out;
}

LeqResult leq(const Expr& stableY, const Expr& stableX, int depthBudget) {
  endspace::EmbedResult r = endspace::clopen_embeds(stableY, stableX, depthBudget);
  switch (r.v) {
    case EmbedV::Yes:
      return LeqResult{LeqV::True, std::move(r.cert), std::move(r.detail)};
    case EmbedV::No:
      return LeqResult{LeqV::False, std::nullopt, std::move(r.detail)};
    case EmbedV::Unknown:
      return LeqResult{LeqV::Unknown, std::nullopt, std::move(r.detail)};
  }
  return LeqResult{};
}

const char* maximal_kind_name(MaximalClass::K k) {
  switch (k) {
    case MaximalClass::K::Singleton: return "singleton";
    case MaximalClass::K::Pair: return "pair";
    case MaximalClass::K::CantorSet: return "cantor-set";
    case MaximalClass::K::Other: return "other";
  }
  return "?";
}

MaximalClass maximal_set(const Expr& e, int depthBudget) {
  std::vector<EndTypeClass> classes = end_type_classes(e);
  const std::size_t n = classes.size();
  MaximalClass out;

  // pairwise order table; diagonal is reflexively true
  std::vector<std::vector<LeqV>> below(n, std::vector<LeqV>(n, LeqV::Unknown));
  bool anyUnknown = false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        below[i][j] = LeqV::True;
        continue;
      }
      below[i][j] = leq(classes[i].stable, classes[j].stable, depthBudget).v;
      if (below[i][j] == LeqV::Unknown) anyUnknown = true;
    }

  if (anyUnknown) {
    out.k = MaximalClass::K::Other;
    out.undecided = true;
    out.note = "an order comparison returned Unknown";
    return out;
  }

  std::vector<std::size_t> maximal;
  for (std::size_t i = 0; i < n; ++i) {
    bool isMax = true;
    for (std::size_t j = 0; j < n && isMax; ++j) {
      if (i == j) continue;
      if (below[i][j] == LeqV::True && below[j][i] == LeqV::False) isMax = false;
    }
    if (isMax) maximal.push_back(i);
  }

  Count pts = Count::finite(0);
  for (std::size_t i : maximal) {
    out.reps.push_back(classes[i]);
    pts = pts.plus(classes[i].mult);
  }
  out.points = pts;

  if (pts == Count::finite(1)) {
    out.k = MaximalClass::K::Singleton;
    return out;
  }
  if (pts == Count::finite(2)) {
    out.k = MaximalClass::K::Pair;
    return out;
  }
  if (pts == Count::continuum()) {
    bool cantorKinds = true, comparable = true;
    for (std::size_t a = 0; a < maximal.size(); ++a) {
      Kind k = classes[maximal[a]].stable.kind;
      if (k != Kind::Cantor && k != Kind::CantorOf) cantorKinds = false;
      for (std::size_t b = a + 1; b < maximal.size(); ++b)
        if (below[maximal[a]][maximal[b]] != LeqV::True ||
            below[maximal[b]][maximal[a]] != LeqV::True)
          comparable = false;
    }
    if (cantorKinds && comparable) {
      out.k = MaximalClass::K::CantorSet;
      out.note = "maximal ends form a Cantor space of mutually comparable ends";
      return out;
    }
  }
  out.k = MaximalClass::K::Other;
  out.note = "maximal ends: " + pts.str() + " points across " + std::to_string(maximal.size()) +
             " type(s)";
  return out;
}

SelfSimilarResult is_self_similar(const Expr& e, int depthBudget) {
  SelfSimilarResult out;
  MaximalClass ms = maximal_set(e, depthBudget);
  if (ms.undecided) {
    out.v = Tri::Unknown;
    out.evidence = "maximal set undecided: " + ms.note;
    return out;
  }
  switch (ms.k) {
    case MaximalClass::K::Singleton: {
      endspace::EmbedResult r = endspace::clopen_embeds(e, ms.reps[0].stable, depthBudget);
      if (r.v == EmbedV::Yes) {
        out.v = Tri::True;
        out.evidence =
            "unique maximal end; the whole space embeds into its stable neighborhood type";
        out.cert = std::move(r.cert);
        out.axioms = out.cert->axioms;
      } else if (r.v == EmbedV::No) {
        out.v = Tri::False;
        out.evidence = "partition {stable neighborhood of the maximal end, complement}: neither "
                       "piece admits a copy (" +
                       r.detail + ")";
      } else {
        out.v = Tri::Unknown;
        out.evidence = "embedding query exhausted its budget: " + r.detail;
      }
      return out;
    }
    case MaximalClass::K::Pair: {
      out.v = Tri::False;
      std::string t1 = dsl::render_expr(ms.reps[0].stable);
      std::string t2 = dsl::render_expr(ms.reps.size() > 1 ? ms.reps[1].stable : ms.reps[0].stable);
      out.evidence = "doubly pointed: the two-piece clopen partition separating the maximal ends (" +
                     t1 + " | " + t2 + ") leaves no piece with a copy of the whole";
      return out;
    }
    case MaximalClass::K::CantorSet: {
      for (const EndTypeClass& c : ms.reps) {
        endspace::EmbedResult r = endspace::clopen_embeds(e, c.stable, depthBudget);
        if (r.v == EmbedV::No) {
          out.v = Tri::False;
          out.evidence = "a basic clopen piece of maximal type " + dsl::render_expr(c.stable) +
                         " admits no copy: " + r.detail;
          return out;
        }
        if (r.v == EmbedV::Unknown) {
          out.v = Tri::Unknown;
          out.evidence = "embedding into maximal piece undecided: " + r.detail;
          return out;
        }
        if (!out.cert) out.cert = std::move(r.cert);
      }
      out.v = Tri::True;
      out.evidence = "Cantor maximal set; every basic piece holding a maximal end admits a copy";
      if (out.cert) out.axioms = out.cert->axioms;
      return out;
    }
    case MaximalClass::K::Other: {
      out.v = Tri::False;
      out.evidence = "partition isolating " + std::to_string(ms.reps.size()) +
                     " maximal type(s) (" + ms.points.str() +
                     " maximal ends) leaves no piece with a copy of the whole";
      return out;
    }
  }
  return out;
}

}  // namespace rokhlin::order
