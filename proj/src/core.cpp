#include "rokhlin/core.hpp"

#include <algorithm>
#include <sstream>

namespace rokhlin {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Empty: return "empty";
    case Kind::Pt: return "pt";
    case Kind::Sum: return "sum";
    case Kind::Omega: return "omega";
    case Kind::Cantor: return "cantor";
    case Kind::CantorOf: return "cantor_of";
  }
  return "?";
}

std::strong_ordering structural_order(const Expr& a, const Expr& b) {
  if (auto c = a.kind <=> b.kind; c != 0) return c;
  if (auto c = a.flag <=> b.flag; c != 0) return c;
  if (auto c = a.kids.size() <=> b.kids.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (auto c = structural_order(a.kids[i], b.kids[i]); c != 0) return c;
  return std::strong_ordering::equal;
}

bool structural_less(const Expr& a, const Expr& b) {
  return structural_order(a, b) == std::strong_ordering::less;
}

bool contains_nonplanar_atom(const Expr& e) {
  switch (e.kind) {
    case Kind::Empty: return false;
    case Kind::Pt:
    case Kind::Cantor: return e.flag == Flag::NonPlanar;
    case Kind::Omega:
      if (e.flag == Flag::NonPlanar) return true;
      [[fallthrough]];
    case Kind::Sum:
    case Kind::CantorOf:
      return std::any_of(e.kids.begin(), e.kids.end(),
                         [](const Expr& k) { return contains_nonplanar_atom(k); });
  }
  return false;
}

bool is_countable(const Expr& e) {
  if (e.kind == Kind::Cantor || e.kind == Kind::CantorOf) return false;
  return std::all_of(e.kids.begin(), e.kids.end(), [](const Expr& k) { return is_countable(k); });
}

bool is_finite_set(const Expr& e) {
  if (e.kind == Kind::Empty || e.kind == Kind::Pt) return true;
  if (e.kind != Kind::Sum) return false;
  return std::all_of(e.kids.begin(), e.kids.end(), [](const Expr& k) { return is_finite_set(k); });
}

std::size_t finite_size(const Expr& e) {
  if (e.kind == Kind::Pt) return 1;
  std::size_t s = 0;
  for (const Expr& k : e.kids) s += finite_size(k);
  return s;
}

std::size_t node_count(const Expr& e) {
  std::size_t s = 1;
  for (const Expr& k : e.kids) s += node_count(k);
  return s;
}

int term_depth(const Expr& e) {
  int d = 0;
  for (const Expr& k : e.kids) d = std::max(d, term_depth(k));
  return d + 1;
}

Flag kernel_flag(const Expr& base) {
  return contains_nonplanar_atom(base) ? Flag::NonPlanar : Flag::Planar;
}

static void key_rec(const Expr& e, std::string& out) {
  out += static_cast<char>('A' + static_cast<int>(e.kind));
  out += e.flag == Flag::NonPlanar ? 'n' : 'p';
  out += '(';
  for (const Expr& k : e.kids) key_rec(k, out);
  out += ')';
}

std::string expr_key(const Expr& e) {
  std::string out;
  out.reserve(node_count(e) * 4);
  key_rec(e, out);
  return out;
}

Count Count::plus(const Count& o) const {
  if (cls == Cls::Continuum || o.cls == Cls::Continuum) return continuum();
  if (cls == Cls::Omega || o.cls == Cls::Omega) return omega();
  return finite(n + o.n);
}

Count Count::times_omega() const {
  if (is_zero()) return finite(0);
  if (cls == Cls::Continuum) return continuum();
  return omega();
}

bool Count::leq(const Count& o) const {
  auto r = [](const Count& c) { return c.cls == Cls::Finite ? 0 : c.cls == Cls::Omega ? 1 : 2; };
  if (r(*this) != r(o)) return r(*this) < r(o);
  if (cls == Cls::Finite) return n <= o.n;
  return true;
}

std::string Count::str() const {
  switch (cls) {
    case Cls::Finite: return std::to_string(n);
    case Cls::Omega: return "w";
    case Cls::Continuum: return "c";
  }
  return "?";
}

Ordinal Ordinal::plus(const Ordinal& o) const {
  if (o.terms.empty()) return *this;
  Ordinal r;
  std::uint32_t cut = o.terms.front().first;
  for (auto& t : terms) {
    if (t.first > cut) r.terms.push_back(t);
    else if (t.first == cut) {
      r.terms.push_back({cut, t.second + o.terms.front().second});
      for (std::size_t i = 1; i < o.terms.size(); ++i) r.terms.push_back(o.terms[i]);
      return r;
    } else break;
  }
  for (auto& t : o.terms) r.terms.push_back(t);
  return r;
}

std::string Ordinal::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : terms) {
    if (!first) os << "+";
    first = false;
    if (e == 0) {
      os << c;
    } else {
      os << "w";
      if (e > 1) os << "^" << e;
      if (c > 1) os << "*" << c;
    }
  }
  return os.str();
}

std::string GenusSpec::str() const {
  switch (k) {
    case K::Zero: return "0";
    case K::Finite: return std::to_string(n);
    case K::Infinite: return "inf";
  }
  return "?";
}

static std::optional<InvariantViolation> check_expr_rec(const Expr& e, const std::string& path,
                                                        bool top) {
  switch (e.kind) {
    case Kind::Empty:
      if (!top) return InvariantViolation{path, "Empty is only allowed as the whole end set"};
      return std::nullopt;
    case Kind::Pt:
    case Kind::Cantor:
      return std::nullopt;
    case Kind::Sum: {
      if (e.kids.size() < 2) return InvariantViolation{path, "Sum needs at least 2 parts"};
      for (std::size_t i = 0; i < e.kids.size(); ++i) {
        if (e.kids[i].kind == Kind::Empty)
          return InvariantViolation{path + "." + std::to_string(i), "Sum children must be non-Empty"};
        if (auto v = check_expr_rec(e.kids[i], path + "." + std::to_string(i), false)) return v;
      }
      return std::nullopt;
    }
    case Kind::Omega: {
      if (e.kids.empty()) return InvariantViolation{path, "Omega needs at least 1 member"};
      for (std::size_t i = 0; i < e.kids.size(); ++i) {
        if (e.kids[i].kind == Kind::Empty)
          return InvariantViolation{path + "." + std::to_string(i), "Omega members must be non-Empty"};
        if (auto v = check_expr_rec(e.kids[i], path + "." + std::to_string(i), false)) return v;
        for (std::size_t j = i + 1; j < e.kids.size(); ++j)
          if (e.kids[i] == e.kids[j])
            return InvariantViolation{path + "." + std::to_string(j),
                                      "Omega member set must be duplicate-free"};
      }
      // Nonplanar ends are closed: a limit approached by nonplanar ends is
      // itself nonplanar.
      if (e.flag == Flag::Planar)
        for (const Expr& m : e.kids)
          if (contains_nonplanar_atom(m))
            return InvariantViolation{path,
                                      "Omega limit flag must be nonplanar when a member contains a "
                                      "nonplanar atom"};
      return std::nullopt;
    }
    case Kind::CantorOf: {
      if (e.kids.size() != 1) return InvariantViolation{path, "CantorOf takes exactly one base"};
      if (e.kids[0].kind == Kind::Empty)
        return InvariantViolation{path + ".0", "CantorOf base must be non-Empty"};
      return check_expr_rec(e.kids[0], path + ".0", false);
    }
  }
  return std::nullopt;
}

std::optional<InvariantViolation> check_expr(const Expr& e, const std::string& path) {
  return check_expr_rec(e, path, true);
}

std::optional<InvariantViolation> check_surface(const SurfaceDesc& s) {
  if (auto v = check_expr(s.ends)) return v;
  bool np = contains_nonplanar_atom(s.ends);
  if (s.genus.k == GenusSpec::K::Infinite && !np)
    return InvariantViolation{"ends", "infinite genus requires a nonplanar-flagged atom"};
  if (s.genus.k != GenusSpec::K::Infinite && np)
    return InvariantViolation{"ends", "nonplanar atom requires infinite genus"};
  if (s.ends.kind == Kind::Empty && s.genus.k == GenusSpec::K::Infinite)
    return InvariantViolation{"ends", "empty end set requires finite genus"};
  if (s.genus.k == GenusSpec::K::Finite && s.genus.n == 0)
    return InvariantViolation{"genus", "finite genus spelled with n >= 1; use 0 for genus zero"};
  return std::nullopt;
}

}  // namespace rokhlin
