#include "rokhlin/dsl.hpp"

#include <cctype>
#include <sstream>

namespace rokhlin::dsl {

namespace {

struct Lexer {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
      if (text[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  void bump(std::size_t k = 1) {
    for (std::size_t i = 0; i < k && pos < text.size(); ++i) {
      if (text[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  }

  [[noreturn]] void fail(const std::string& expected) { throw SyntaxError(line, col, expected); }

  void expect(char c) {
    if (peek() != c) fail(std::string("'") + c + "'");
    bump();
  }

  bool try_char(char c) {
    if (peek() == c) {
      bump();
      return true;
    }
    return false;
  }

  std::string word() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
      bump();
    }
    return std::string(text.substr(start, pos - start));
  }

  void expect_word(const std::string& w) {
    skip_ws();
    int l = line, c = col;
    std::string got = word();
    if (got != w) throw SyntaxError(l, c, "'" + w + "'");
  }

  std::uint64_t integer() {
    skip_ws();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      fail("an integer");
    std::uint64_t v = 0;
    int digits = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
      if (++digits > 9) fail("a smaller integer");
      bump();
    }
    return v;
  }
};

struct Parser {
  Lexer lx;

  Flag flag_suffix() {
    if (lx.try_char('@')) {
      std::string w = lx.word();
      if (w == "np") return Flag::NonPlanar;
      if (w == "p") return Flag::Planar;
      lx.fail("'@np' or '@p'");
    }
    return Flag::Planar;
  }

  Expr expr() {
    lx.skip_ws();
    char c = lx.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      int l = lx.line, co = lx.col;
      std::uint64_t n = lx.integer();
      lx.expect('*');
      Expr body = expr();
      if (n == 0) throw SyntaxError(l, co, "a positive multiplier");
      if (n == 1) return body;
      std::vector<Expr> parts;
      parts.reserve(n);
      for (std::uint64_t i = 0; i < n; ++i) parts.push_back(body);
      return Expr::sum(std::move(parts));
    }
    int l = lx.line, co = lx.col;
    std::string w = lx.word();
    if (w == "pt") return Expr::pt(flag_suffix());
    if (w == "cantor") return Expr::cantor(flag_suffix());
    if (w == "cantor_of") {
      lx.expect('(');
      Expr base = expr();
      lx.expect(')');
      return Expr::cantor_of(std::move(base));
    }
    if (w == "omega") {
      lx.expect('(');
      std::vector<Expr> members;
      members.push_back(expr());
      while (lx.try_char(',')) members.push_back(expr());
      lx.expect(')');
      return Expr::omega(std::move(members), flag_suffix());
    }
    if (w == "sum") {
      lx.expect('(');
      std::vector<Expr> parts;
      parts.push_back(expr());
      lx.expect(',');
      parts.push_back(expr());
      while (lx.try_char(',')) parts.push_back(expr());
      lx.expect(')');
      return Expr::sum(std::move(parts));
    }
    throw SyntaxError(l, co, "'pt', 'omega', 'cantor', 'cantor_of', 'sum' or INTEGER '*'");
  }

  Expr ends() {
    lx.skip_ws();
    std::size_t save = lx.pos;
    int sl = lx.line, sc = lx.col;
    if (std::isalpha(static_cast<unsigned char>(lx.peek()))) {
      std::string w = lx.word();
      if (w == "none") return Expr::empty();
      lx.pos = save;
      lx.line = sl;
      lx.col = sc;
    }
    return expr();
  }

  GenusSpec genus() {
    lx.skip_ws();
    if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
      std::uint64_t n = lx.integer();
      if (n == 0) return GenusSpec::zero();
      return GenusSpec::finite(static_cast<std::uint32_t>(n));
    }
    int l = lx.line, c = lx.col;
    std::string w = lx.word();
    if (w == "inf") return GenusSpec::infinite();
    throw SyntaxError(l, c, "'0', INTEGER or 'inf'");
  }

  SurfaceDesc surface() {
    lx.expect_word("surface");
    lx.expect('{');
    lx.expect_word("genus");
    lx.expect(':');
    GenusSpec g = genus();
    lx.expect(',');
    lx.expect_word("ends");
    lx.expect(':');
    Expr e = ends();
    lx.expect('}');
    if (!lx.eof()) lx.fail("end of input");
    return SurfaceDesc{g, std::move(e)};
  }
};

void render_expr_rec(const Expr& e, std::ostream& os) {
  auto flag_suffix = [&](Flag f) {
    if (f == Flag::NonPlanar) os << "@np";
  };
  switch (e.kind) {
    case Kind::Empty:
      os << "none";
      return;
    case Kind::Pt:
      os << "pt";
      flag_suffix(e.flag);
      return;
    case Kind::Cantor:
      os << "cantor";
      flag_suffix(e.flag);
      return;
    case Kind::CantorOf:
      os << "cantor_of(";
      render_expr_rec(e.kids[0], os);
      os << ")";
      return;
    case Kind::Omega: {
      os << "omega(";
      for (std::size_t i = 0; i < e.kids.size(); ++i) {
        if (i) os << ", ";
        render_expr_rec(e.kids[i], os);
      }
      os << ")";
      flag_suffix(e.flag);
      return;
    }
    case Kind::Sum: {
      bool uniform = true;
      for (const Expr& k : e.kids)
        if (!(k == e.kids[0])) uniform = false;
      if (uniform && e.kids.size() >= 2) {
        os << e.kids.size() << " * ";
        render_expr_rec(e.kids[0], os);
        return;
      }
      os << "sum(";
      for (std::size_t i = 0; i < e.kids.size(); ++i) {
        if (i) os << ", ";
        render_expr_rec(e.kids[i], os);
      }
      os << ")";
      return;
    }
  }
}

}  // namespace

SurfaceDesc parse_surface(std::string_view text) {
  Parser p{Lexer{text}};
  SurfaceDesc s = p.surface();
  if (auto v = check_surface(s)) throw InvariantError(v->path, v->rule);
  return s;
}

Expr parse_ends(std::string_view text) {
  Parser p{Lexer{text}};
  Expr e = p.ends();
  if (!p.lx.eof()) p.lx.fail("end of input");
  if (auto v = check_expr(e)) throw InvariantError(v->path, v->rule);
  return e;
}

std::string render_expr(const Expr& e) {
  std::ostringstream os;
  render_expr_rec(e, os);
  return os.str();
}

std::string render_surface(const SurfaceDesc& s) {
  std::ostringstream os;
  os << "surface { genus: " << s.genus.str() << ", ends: ";
  render_expr_rec(s.ends, os);
  os << " }";
  return os.str();
}

}  // namespace rokhlin::dsl
