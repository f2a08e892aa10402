#include "rokhlin/classify.hpp"

#include "rokhlin/dsl.hpp"
#include "rokhlin/endspace.hpp"

namespace rokhlin::classify {

const char* tri_name(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    case Tri::Undecidable: return "undecidable";
  }
  return "?";
}

const char* reason_name(Reason r) {
  switch (r) {
    case Reason::Sphere: return "Sphere";
    case Reason::UniqueMaxSelfSimilar: return "UniqueMaxSelfSimilar";
    case Reason::CompactNontrivial: return "CompactNontrivial";
    case Reason::FinitePositiveGenus: return "FinitePositiveGenus";
    case Reason::FinitePlanarNondisplaceable: return "FinitePlanarNondisplaceable";
    case Reason::DoublyPointed: return "DoublyPointed";
    case Reason::CantorMaximalSet: return "CantorMaximalSet";
    case Reason::NotSelfSimilar: return "NotSelfSimilar";
    case Reason::MultiMaximal: return "MultiMaximal";
    case Reason::Undecided: return "Undecided";
  }
  return "?";
}

bool trivial_mcg(const SurfaceDesc& s) {
  if (s.genus.k != GenusSpec::K::Zero) return false;
  if (s.ends.kind == Kind::Empty) return true;  // the sphere
  return endspace::normalize(s.ends).expr == Expr::pt(Flag::Planar);  // the plane
}

bool comeager_verdict(const SurfaceDesc& s) { return trivial_mcg(s); }

Verdict classify(const SurfaceDesc& s, int depthBudget) {
  Verdict v;
  v.trivialMcg = trivial_mcg(s);
  v.comeagerClass = v.trivialMcg;

  if (s.ends.kind == Kind::Empty) {
    if (s.genus.k == GenusSpec::K::Zero) {
      v.rokhlin = Tri::True;
      v.reason = Reason::Sphere;
      v.evidence.push_back("closed genus-0 surface: the 2-sphere, trivial group");
    } else {
      v.rokhlin = Tri::False;
      v.reason = Reason::CompactNontrivial;
      v.evidence.push_back("closed surface of positive genus: discrete nontrivial group");
    }
    return v;
  }

  if (s.genus.k == GenusSpec::K::Finite) {
    v.rokhlin = Tri::False;
    v.reason = Reason::FinitePositiveGenus;
    v.evidence.push_back(
        "positive finite genus: a compact genus-" + std::to_string(s.genus.n) +
        " subsurface is non-displaceable");
    return v;
  }

  order::MaximalClass ms = order::maximal_set(s.ends, depthBudget);
  v.maximal = ms;
  if (ms.undecided) {
    v.rokhlin = Tri::Undecidable;
    v.reason = Reason::Undecided;
    v.evidence.push_back("maximal set undecided: " + ms.note);
    return v;
  }

  switch (ms.k) {
    case order::MaximalClass::K::Singleton: {
      order::SelfSimilarResult ss = order::is_self_similar(s.ends, depthBudget);
      v.selfSimilar = ss.v;
      v.axioms.insert(v.axioms.end(), ss.axioms.begin(), ss.axioms.end());
      if (ss.cert) v.certificates.push_back(*ss.cert);
      if (ss.v == order::Tri::True) {
        v.rokhlin = Tri::True;
        v.reason = Reason::UniqueMaxSelfSimilar;
        v.evidence.push_back("self-similar end space with a unique maximal end; genus " +
                             s.genus.str());
      } else if (ss.v == order::Tri::False) {
        v.rokhlin = Tri::False;
        v.reason = Reason::NotSelfSimilar;
        v.evidence.push_back(ss.evidence);
      } else {
        v.rokhlin = Tri::Undecidable;
        v.reason = Reason::Undecided;
        v.evidence.push_back(ss.evidence);
      }
      break;
    }
    case order::MaximalClass::K::Pair: {
      order::SelfSimilarResult ss = order::is_self_similar(s.ends, depthBudget);
      v.selfSimilar = ss.v;
      v.rokhlin = Tri::False;
      v.reason = Reason::DoublyPointed;
      v.evidence.push_back("exactly two maximal ends; the stabilizer of one is a proper open "
                           "normal subgroup");
      break;
    }
    case order::MaximalClass::K::CantorSet: {
      order::SelfSimilarResult ss = order::is_self_similar(s.ends, depthBudget);
      v.selfSimilar = ss.v;
      v.axioms.insert(v.axioms.end(), ss.axioms.begin(), ss.axioms.end());
      if (ss.cert) v.certificates.push_back(*ss.cert);
      v.rokhlin = Tri::False;
      v.reason = Reason::CantorMaximalSet;
      v.evidence.push_back("the maximal ends form a Cantor space");
      break;
    }
    case order::MaximalClass::K::Other: {
      v.selfSimilar = order::is_self_similar(s.ends, depthBudget).v;
      v.rokhlin = Tri::False;
      v.reason = Reason::MultiMaximal;
      v.evidence.push_back(ms.note);
      break;
    }
  }

  // Planar surfaces with finitely many isolated ends (except the plane and
  // the open annulus) carry a compact non-displaceable subsurface.
  if (v.rokhlin == Tri::False && s.genus.k == GenusSpec::K::Zero && is_finite_set(s.ends) &&
      finite_size(s.ends) >= 3) {
    v.reason = Reason::FinitePlanarNondisplaceable;
    v.evidence.push_back("planar surface with " + std::to_string(finite_size(s.ends)) +
                         " isolated ends: finite-planar non-displaceable family");
  }
  return v;
}

}  // namespace rokhlin::classify
