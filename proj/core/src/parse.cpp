#include "dgsw/parse.hpp"

#include <cctype>
#include <sstream>

namespace dgsw {

namespace {

enum class Tok { Name, Int, Sym, End };

struct Lexer {
  const std::string& s;
  std::size_t pos = 0;
  int line = 1, col = 1;

  Tok kind = Tok::End;
  std::string text;
  int tline = 1, tcol = 1;

  explicit Lexer(const std::string& src) : s(src) { advance(); }

  [[noreturn]] void err(const std::string& msg) const {
    throw ParseError(msg, tline, tcol);
  }

  void bump() {
    if (pos < s.size() && s[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void advance() {
    while (pos < s.size()) {
      char c = s[pos];
      if (c == '#') {
        while (pos < s.size() && s[pos] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
    tline = line;
    tcol = col;
    if (pos >= s.size()) {
      kind = Tok::End;
      text.clear();
      return;
    }
    char c = s[pos];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      text.clear();
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) ||
              s[pos] == '_' || s[pos] == '\'')) {
        text.push_back(s[pos]);
        bump();
      }
      kind = Tok::Name;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      text.clear();
      while (pos < s.size() &&
             std::isdigit(static_cast<unsigned char>(s[pos]))) {
        text.push_back(s[pos]);
        bump();
      }
      kind = Tok::Int;
    } else {
      text = std::string(1, c);
      bump();
      kind = Tok::Sym;
    }
  }

  bool is(Tok k, const std::string& t) const { return kind == k && text == t; }
  bool sym(const std::string& t) const { return is(Tok::Sym, t); }

  void expect_sym(const std::string& t) {
    if (!sym(t)) err("expected '" + t + "'");
    advance();
  }

  std::string expect_name(const std::string& what) {
    if (kind != Tok::Name) err("expected " + what);
    std::string n = text;
    advance();
    return n;
  }

  int expect_int() {
    bool neg = false;
    if (sym("-")) {
      neg = true;
      advance();
    }
    if (kind != Tok::Int) err("expected integer");
    int v = std::stoi(text);
    advance();
    return neg ? -v : v;
  }
};

// expr   := term (('+'|'-') term)*
// term   := factor ('*' factor)*
// factor := primary ('^' INT)*
// primary:= INT ('/' INT)? | NAME | '(' expr ')' | '-' primary
Poly parse_expr(Lexer& lx, const Cdga* alg);

Poly parse_primary(Lexer& lx, const Cdga* alg) {
  if (lx.sym("(")) {
    lx.advance();
    Poly p = parse_expr(lx, alg);
    lx.expect_sym(")");
    return p;
  }
  if (lx.kind == Tok::Int) {
    Integer num(lx.text);
    lx.advance();
    if (lx.sym("/")) {
      lx.advance();
      if (lx.kind != Tok::Int) lx.err("expected denominator");
      Integer den(lx.text);
      lx.advance();
      if (den == 0) lx.err("zero denominator");
      return Poly(alg, Rational(num, den));
    }
    return Poly(alg, Rational(num));
  }
  if (lx.kind == Tok::Name) {
    int g = alg->find(lx.text);
    if (g < 0) lx.err("unknown name '" + lx.text + "'");
    lx.advance();
    return alg->var(g);
  }
  lx.err("expected expression");
}

Poly parse_factor(Lexer& lx, const Cdga* alg) {
  if (lx.sym("-")) {
    lx.advance();
    return -parse_factor(lx, alg);
  }
  Poly base = parse_primary(lx, alg);
  while (lx.sym("^")) {
    lx.advance();
    if (lx.kind != Tok::Int) lx.err("expected exponent");
    int e = std::stoi(lx.text);
    lx.advance();
    Poly r = base.alg() ? base.alg()->one() : Poly(alg, Rational(1));
    for (int k = 0; k < e; ++k) r = r * base;
    base = r;
  }
  return base;
}

Poly parse_term(Lexer& lx, const Cdga* alg) {
  Poly p = parse_factor(lx, alg);
  while (lx.sym("*")) {
    lx.advance();
    p = p * parse_factor(lx, alg);
  }
  return p;
}

Poly parse_expr(Lexer& lx, const Cdga* alg) {
  Poly p = parse_term(lx, alg);
  while (lx.sym("+") || lx.sym("-")) {
    bool minus = lx.sym("-");
    lx.advance();
    Poly t = parse_term(lx, alg);
    p = minus ? p - t : p + t;
  }
  return p;
}

}  // namespace

CdgaPtr parse_presentation(const std::string& text) {
  Lexer lx(text);
  if (!lx.is(Tok::Name, "field")) lx.err("expected 'field Q;' header");
  lx.advance();
  if (!lx.is(Tok::Name, "Q")) lx.err("only field Q is supported");
  lx.advance();
  lx.expect_sym(";");

  auto alg = Cdga::make();
  bool seen_diff = false;
  while (lx.kind != Tok::End) {
    if (lx.is(Tok::Name, "gen")) {
      if (seen_diff) lx.err("generator declared after differential lines");
      lx.advance();
      int nline = lx.tline, ncol = lx.tcol;
      std::string name = lx.expect_name("generator name");
      if (alg->find(name) >= 0)
        throw ParseError("duplicate generator '" + name + "'", nline, ncol);
      lx.expect_sym(":");
      int degree = lx.expect_int();
      if (degree > 0) lx.err("generator degree must be <= 0");
      std::optional<int> weight;
      if (lx.is(Tok::Name, "weight")) {
        lx.advance();
        int w = lx.expect_int();
        if (w < 0) lx.err("weight must be >= 0");
        weight = w;
      }
      lx.expect_sym(";");
      alg->add_generator(name, degree, weight);
    } else if (lx.is(Tok::Name, "D")) {
      seen_diff = true;
      lx.advance();
      std::string name = lx.expect_name("generator name");
      int g = alg->find(name);
      if (g < 0) lx.err("forward reference: unknown generator '" + name + "'");
      lx.expect_sym("=");
      Poly value = parse_expr(lx, alg.get());
      lx.expect_sym(";");
      alg->set_diff(g, std::move(value));
    } else {
      lx.err("expected 'gen' or 'D' declaration");
    }
  }
  return alg;
}

std::string print_monomial(const Cdga* alg, const Monomial& m) {
  if (m.is_unit()) return "1";
  std::string out;
  for (auto& [g, e] : m.factors) {
    if (!out.empty()) out += "*";
    out += alg->gen(g).name;
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

std::string print_poly(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto& [m, c] : p.terms()) {
    Rational a = c;
    if (out.empty()) {
      if (a < 0) {
        out += "-";
        a = -a;
      }
    } else {
      out += a < 0 ? " - " : " + ";
      if (a < 0) a = -a;
    }
    if (m.is_unit()) {
      out += to_string(a);
    } else {
      if (a != 1) out += to_string(a) + "*";
      out += print_monomial(p.alg(), m);
    }
  }
  return out;
}

std::string print_presentation(const Cdga& alg) {
  std::ostringstream out;
  out << "field Q;\n";
  for (int i = 0; i < alg.size(); ++i) {
    const Generator& g = alg.gen(i);
    out << "gen " << g.name << " : " << g.degree;
    if (g.weight) out << " weight " << *g.weight;
    out << ";\n";
  }
  for (int i = 0; i < alg.size(); ++i) {
    if (alg.diff(i).is_zero()) continue;
    out << "D " << alg.gen(i).name << " = " << print_poly(alg.diff(i))
        << ";\n";
  }
  return out.str();
}

Poly parse_poly(const std::string& text, const Cdga* alg) {
  Lexer lx(text);
  Poly p = parse_expr(lx, alg);
  if (lx.kind != Tok::End) lx.err("trailing input after expression");
  return p;
}

}  // namespace dgsw
