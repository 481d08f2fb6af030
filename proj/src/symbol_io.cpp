#include "nct/symbol_io.hpp"

#include <cctype>

namespace nct {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  SymbolExpr parse() {
    SymbolExpr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  SymbolExpr expr() {
    skip_ws();
    int sign = 1;
    if (peek() == '+' || peek() == '-') sign = (get() == '-') ? -1 : 1;
    SymbolExpr acc = term().scaled(GaussRat(sign));
    for (;;) {
      skip_ws();
      if (peek() == '+' || peek() == '-') {
        sign = (get() == '-') ? -1 : 1;
        acc += term().scaled(GaussRat(sign));
      } else {
        return acc;
      }
    }
  }

  SymbolExpr term() {
    SymbolExpr acc = factor();
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        get();
        acc = nc_mul(acc, factor());
      } else {
        return acc;
      }
    }
  }

  SymbolExpr factor() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      get();
      SymbolExpr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return ident();
    fail("unexpected character");
    return SymbolExpr();
  }

  SymbolExpr number() {
    long n = integer();
    skip_ws();
    if (peek() == '/') {
      get();
      long d = integer();
      return SymbolExpr(ScalarPoly(GaussRat(rat(n, d))));
    }
    return SymbolExpr(ScalarPoly(GaussRat(n)));
  }

  SymbolExpr ident() {
    std::string name;
    while (std::isalnum(static_cast<unsigned char>(peek()))) name += get();
    if (name == "I") return SymbolExpr(ScalarPoly(GaussRat::imag_unit()));
    if (name == "tt") return SymbolExpr(ScalarPoly::tau_abs2());
    if (name == "t1") return var_factor(Var::T1);
    if (name == "t2") return var_factor(Var::T2);
    if (name == "x1") return var_factor(Var::X1);
    if (name == "x2") return var_factor(Var::X2);
    if (name == "r") return var_factor(Var::R);
    if (name == "k") return SymbolExpr::atom(Atom::k(opt_exp()));
    if (name == "b0") return SymbolExpr::atom(Atom::b0(opt_exp()));
    if (name == "d1" || name == "d2" || name == "d1d2") return d_letter(name);
    fail("unknown identifier '" + name + "'");
    return SymbolExpr();
  }

  SymbolExpr var_factor(Var v) { return SymbolExpr(ScalarPoly::var(v, opt_exp())); }

  // d1 / d2 / d1d2, each with optional ^n on the d's, applied to (k) or (k^2).
  SymbolExpr d_letter(std::string head) {
    int a = 0, b = 0;
    if (head == "d1d2") {
      a = b = 1;
    } else if (head == "d1") {
      a = 1;
      skip_ws();
      if (peek() == '^') {
        a = opt_exp();
        skip_ws();
        if (peek() == 'd') {  // d1^i d2^j
          get();
          if (get() != '2') fail("expected d2");
          b = opt_exp();
        }
      } else if (peek() == 'd') {
        get();
        if (get() != '2') fail("expected d2");
        b = opt_exp();
      }
    } else {  // d2
      b = opt_exp();
    }
    expect('(');
    expect('k');
    skip_ws();
    bool squared = false;
    if (peek() == '^') {
      get();
      if (integer() != 2) fail("only k or k^2 under a derivative");
      squared = true;
    }
    expect(')');
    if (!squared) return SymbolExpr::atom(Atom::dk(a, b));
    // Grouped letters expand on parse: d^m(k^2) via the derivation rules.
    SymbolExpr e = SymbolExpr::atom(Atom::k(2));
    for (int i = 0; i < a; ++i) e = delta(1, e);
    for (int i = 0; i < b; ++i) e = delta(2, e);
    return e;
  }

  int opt_exp() {
    skip_ws();
    if (peek() != '^') return 1;
    get();
    return static_cast<int>(integer());
  }

  long integer() {
    skip_ws();
    int sign = 1;
    if (peek() == '-') {
      get();
      sign = -1;
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected number");
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) v = v * 10 + (get() - '0');
    return sign * v;
  }

  void skip_ws() {
    while (pos_ < s_.size() &&
           std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }
  void expect(char c) {
    skip_ws();
    if (get() != c) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_));
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

SymbolExpr parse_symbol_expr(const std::string& text) { return Parser(text).parse(); }

namespace {

std::string grouped_word_str(const Word& w, std::size_t dk_pos) {
  // Prints w with the DK letter at dk_pos shown as d(k^2), its leading k
  // already absorbed.
  std::string s;
  auto app = [&s](const std::string& p) {
    if (!s.empty()) s += "*";
    s += p;
  };
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Atom& a = w[i];
    if (i == dk_pos) {
      std::string d;
      if (a.a) d += "d1";
      if (a.b) d += "d2";
      app(d + "(k^2)");
      continue;
    }
    if (i + 1 == dk_pos && a.kind == Atom::Kind::Kpow) {
      if (a.a > 1) app("k^" + std::to_string(a.a - 1));
      continue;  // one k absorbed into the grouped letter
    }
    app(word_str(Word{a}));
  }
  return s;
}

}  // namespace

std::string print_grouped_k2(const SymbolExpr& e) {
  std::map<Word, ScalarPoly> rest(e.terms().begin(), e.terms().end());
  std::string out;
  auto emit = [&out](const std::string& line) {
    if (!out.empty()) out += " + ";
    out += line;
  };
  auto poly_str = [](const ScalarPoly& p, const std::string& wtext) {
    std::string s;
    for (const auto& [m, g] : p.terms()) {
      if (!s.empty()) s += " + ";
      s += g.str();
      std::string ms = m.str();
      if (ms != "1") s += "*" + ms;
      s += "*" + wtext;
    }
    return s;
  };
  while (!rest.empty()) {
    auto [w, c] = *rest.begin();
    rest.erase(rest.begin());
    bool grouped = false;
    for (std::size_t i = 0; i + 1 < w.size() && !grouped; ++i) {
      if (w[i].kind != Atom::Kind::Kpow || w[i].a < 1) continue;
      if (w[i + 1].kind != Atom::Kind::DK || w[i + 1].a + w[i + 1].b != 1)
        continue;
      // Sibling word: the absorbed k moved to the other side of the letter.
      Word sib(w.begin(), w.begin() + i);
      if (w[i].a > 1) sib.push_back(Atom::k(w[i].a - 1));
      sib.push_back(w[i + 1]);
      sib.push_back(Atom::k(1));
      sib.insert(sib.end(), w.begin() + i + 2, w.end());
      sib = canon(sib);
      auto it = rest.find(sib);
      if (it != rest.end() && it->second == c) {
        rest.erase(it);
        emit(poly_str(c, grouped_word_str(w, i + 1)));
        grouped = true;
      }
    }
    if (!grouped) emit(poly_str(c, word_str(w)));
  }
  return out.empty() ? "0" : out;
}

}  // namespace nct
