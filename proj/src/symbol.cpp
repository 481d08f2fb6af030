#include "nct/symbol.hpp"

namespace nct {

Word canon(const Word& w) {
  Word out;
  std::size_t i = 0;
  while (i < w.size()) {
    if (w[i].kind == Atom::Kind::DK) {
      out.push_back(w[i]);
      ++i;
      continue;
    }
    // Maximal run of commuting k/b0 atoms.
    long kexp = 0, b0exp = 0;
    while (i < w.size() && w[i].kind != Atom::Kind::DK) {
      if (w[i].kind == Atom::Kind::Kpow)
        kexp += w[i].a;
      else
        b0exp += w[i].a;
      ++i;
    }
    if (b0exp > 0) out.push_back(Atom::b0(static_cast<int>(b0exp)));
    if (kexp != 0) out.push_back(Atom::k(static_cast<int>(kexp)));
  }
  return out;
}

int word_b0_total(const Word& w) {
  int j = 0;
  for (const Atom& a : w)
    if (a.kind == Atom::Kind::B0pow) j += a.a;
  return j;
}

std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (const Atom& a : w) {
    if (!s.empty()) s += "*";
    switch (a.kind) {
      case Atom::Kind::Kpow:
        s += "k";
        if (a.a != 1) s += "^" + std::to_string(a.a);
        break;
      case Atom::Kind::DK: {
        if (a.a) {
          s += "d1";
          if (a.a > 1) s += "^" + std::to_string(a.a);
        }
        if (a.b) {
          s += "d2";
          if (a.b > 1) s += "^" + std::to_string(a.b);
        }
        s += "(k)";
        break;
      }
      case Atom::Kind::B0pow:
        s += "b0";
        if (a.a != 1) s += "^" + std::to_string(a.a);
        break;
    }
  }
  return s;
}

SymbolExpr SymbolExpr::atom(Atom a, ScalarPoly c) {
  SymbolExpr e;
  e.add(Word{a}, c);
  return e;
}

SymbolExpr SymbolExpr::word(Word w, ScalarPoly c) {
  SymbolExpr e;
  e.add(w, c);
  return e;
}

void SymbolExpr::add(const Word& w, const ScalarPoly& c) {
  if (c.is_zero()) return;
  Word cw = canon(w);
  auto it = terms_.find(cw);
  if (it == terms_.end()) {
    terms_.emplace(std::move(cw), c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ScalarPoly SymbolExpr::coeff(const Word& w) const {
  auto it = terms_.find(canon(w));
  return it == terms_.end() ? ScalarPoly() : it->second;
}

SymbolExpr& SymbolExpr::operator+=(const SymbolExpr& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

SymbolExpr& SymbolExpr::operator-=(const SymbolExpr& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

SymbolExpr SymbolExpr::scaled(const ScalarPoly& c) const {
  SymbolExpr out;
  for (const auto& [w, x] : terms_) out.add(w, x * c);
  return out;
}

SymbolExpr SymbolExpr::scaled(const GaussRat& c) const {
  SymbolExpr out;
  for (const auto& [w, x] : terms_) out.add(w, x.scaled(c));
  return out;
}

std::string SymbolExpr::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [w, c] : terms_) {
    for (const auto& [m, g] : c.terms()) {
      if (!s.empty()) s += " + ";
      s += g.str();
      std::string ms = m.str();
      if (ms != "1") s += "*" + ms;
      if (!w.empty()) s += "*" + word_str(w);
    }
  }
  return s;
}

SymbolExpr nc_mul(const SymbolExpr& x, const SymbolExpr& y) {
  SymbolExpr out;
  for (const auto& [wx, cx] : x.terms())
    for (const auto& [wy, cy] : y.terms()) {
      Word w = wx;
      w.insert(w.end(), wy.begin(), wy.end());
      out.add(w, cx * cy);
    }
  return out;
}

SymbolExpr dk_expr(int a, int b) { return SymbolExpr::atom(Atom::dk(a, b)); }

SymbolExpr leading_symbol() {
  return SymbolExpr::atom(Atom::k(2), ScalarPoly::xi_form());
}

namespace {

// delta_j of k^2 as the expanded pair k d(k) + d(k) k.
SymbolExpr delta_k2(int j) {
  Atom d = (j == 1) ? Atom::dk(1, 0) : Atom::dk(0, 1);
  SymbolExpr e;
  e.add(Word{Atom::k(1), d}, ScalarPoly::one());
  e.add(Word{d, Atom::k(1)}, ScalarPoly::one());
  return e;
}

// delta_j of the leading symbol: (xi form) * (k d(k) + d(k) k).
SymbolExpr delta_A2(int j) {
  return delta_k2(j).scaled(ScalarPoly::xi_form());
}

// xi_i partial of the leading symbol: linear form times k^2.
SymbolExpr dxi_A2(int i) {
  return SymbolExpr::atom(Atom::k(2), ScalarPoly::xi_form().dxi(i));
}

// -b0 X b0, the inner derivative of a single b0.
SymbolExpr sandwich_b0(const SymbolExpr& x) {
  SymbolExpr b = SymbolExpr::atom(Atom::b0(1));
  return nc_mul(b, nc_mul(x, b)).scaled(GaussRat(-1));
}

// Derivative of one atom under a map sending b0 -> -b0 inner b0 and
// DK(a,b) -> bump, k^n -> Leibniz chain.  `inner` is delta_A2 or dxi_A2;
// `bump` is null for xi-partials (DK atoms are xi-free).
SymbolExpr derive_atom(const Atom& at, const SymbolExpr& inner, const Atom* bump) {
  SymbolExpr out;
  switch (at.kind) {
    case Atom::Kind::DK:
      if (bump) out += SymbolExpr::atom(*bump);
      return out;
    case Atom::Kind::Kpow: {
      if (!bump) return out;  // k is xi-free
      int n = at.a;
      if (n > 0) {
        for (int i = 0; i < n; ++i) {
          Word w;
          if (i) w.push_back(Atom::k(i));
          w.push_back(*bump);
          if (n - 1 - i) w.push_back(Atom::k(n - 1 - i));
          out.add(w, ScalarPoly::one());
        }
      } else {
        int m = -n;
        for (int i = 0; i < m; ++i) {
          Word w{Atom::k(i - m), *bump, Atom::k(-1 - i)};
          out.add(w, ScalarPoly(GaussRat(-1)));
        }
      }
      return out;
    }
    case Atom::Kind::B0pow: {
      SymbolExpr db0 = sandwich_b0(inner);
      for (int i = 0; i < at.a; ++i) {
        SymbolExpr piece = db0;
        if (i) piece = nc_mul(SymbolExpr::atom(Atom::b0(i)), piece);
        if (at.a - 1 - i)
          piece = nc_mul(piece, SymbolExpr::atom(Atom::b0(at.a - 1 - i)));
        out += piece;
      }
      return out;
    }
  }
  return out;
}

SymbolExpr derive_word(const Word& w, const ScalarPoly& c, const SymbolExpr& inner,
                       const Atom* bump) {
  SymbolExpr out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    SymbolExpr mid = derive_atom(w[i], inner, bump);
    if (mid.is_zero()) continue;
    SymbolExpr piece = mid;
    if (i) {
      Word pre(w.begin(), w.begin() + i);
      piece = nc_mul(SymbolExpr::word(pre), piece);
    }
    if (i + 1 < w.size()) {
      Word post(w.begin() + i + 1, w.end());
      piece = nc_mul(piece, SymbolExpr::word(post));
    }
    out += piece.scaled(c);
  }
  return out;
}

}  // namespace

SymbolExpr delta(int j, const SymbolExpr& x) {
  Atom bump = (j == 1) ? Atom::dk(1, 0) : Atom::dk(0, 1);
  // DK atoms bump their multi-index instead of inserting a new letter.
  SymbolExpr out;
  SymbolExpr inner = delta_A2(j);
  for (const auto& [w, c] : x.terms()) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      SymbolExpr mid;
      if (w[i].kind == Atom::Kind::DK) {
        mid = SymbolExpr::atom(Atom::dk(w[i].a + (j == 1 ? 1 : 0),
                                        w[i].b + (j == 2 ? 1 : 0)));
      } else {
        mid = derive_atom(w[i], inner, &bump);
      }
      if (mid.is_zero()) continue;
      if (i) mid = nc_mul(SymbolExpr::word(Word(w.begin(), w.begin() + i)), mid);
      if (i + 1 < w.size())
        mid = nc_mul(mid, SymbolExpr::word(Word(w.begin() + i + 1, w.end())));
      out += mid.scaled(c);
    }
  }
  return out;
}

SymbolExpr dxi(int i, const SymbolExpr& x) {
  SymbolExpr out;
  SymbolExpr inner = dxi_A2(i);
  for (const auto& [w, c] : x.terms()) {
    // Coefficient part.
    ScalarPoly dc = c.dxi(i);
    if (!dc.is_zero()) out += SymbolExpr::word(w, dc);
    // b0 letters.
    out += derive_word(w, c, inner, nullptr);
  }
  return out;
}

SymbolExpr star(const SymbolExpr& x) {
  SymbolExpr out;
  for (const auto& [w, c] : x.terms()) {
    Word rw(w.rbegin(), w.rend());
    int sign = 1;
    for (const Atom& a : rw)
      if (a.kind == Atom::Kind::DK && (a.a + a.b) % 2 != 0) sign = -sign;
    out.add(rw, c.conj().scaled(GaussRat(sign)));
  }
  return out;
}

SymbolExpr reduce_b0(const SymbolExpr& x) {
  SymbolExpr out;
  std::vector<std::pair<Word, ScalarPoly>> work(x.terms().begin(), x.terms().end());
  while (!work.empty()) {
    auto [w, c] = std::move(work.back());
    work.pop_back();
    // Leftmost commuting block with b0 >= 1 and k^2 available.
    std::size_t pos = w.size();
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i].kind == Atom::Kind::B0pow && w[i + 1].kind == Atom::Kind::Kpow &&
          w[i + 1].a >= 2) {
        pos = i;
        break;
      }
    }
    if (pos == w.size()) {
      out.add(w, c);
      continue;
    }
    auto [quot, rem] = c.divmod_xi_form();
    if (quot.is_zero()) {
      out.add(w, c);
      continue;
    }
    if (!rem.is_zero()) out.add(w, rem);
    // form * b0^j k^n -> b0^{j-1} k^{n-2} - b0^j k^{n-2}
    int j = w[pos].a, n = w[pos + 1].a;
    Word head(w.begin(), w.begin() + pos);
    Word tail(w.begin() + pos + 2, w.end());
    auto emit = [&](int jj, int nn, const ScalarPoly& cc, bool neg) {
      Word nw = head;
      if (jj) nw.push_back(Atom::b0(jj));
      if (nn) nw.push_back(Atom::k(nn));
      nw.insert(nw.end(), tail.begin(), tail.end());
      work.emplace_back(canon(nw), neg ? -cc : cc);
    };
    emit(j - 1, n - 2, quot, false);
    emit(j, n - 2, quot, true);
  }
  return out;
}

namespace {

struct BlockWord {
  std::vector<Atom> letters;                 // DK atoms
  std::vector<std::pair<int, int>> blocks;   // (b0 exp, k exp), letters+1 of them
};

BlockWord split_blocks(const Word& w) {
  BlockWord out;
  out.blocks.emplace_back(0, 0);
  for (const Atom& a : w) {
    switch (a.kind) {
      case Atom::Kind::B0pow: out.blocks.back().first += a.a; break;
      case Atom::Kind::Kpow: out.blocks.back().second += a.a; break;
      case Atom::Kind::DK:
        out.letters.push_back(a);
        out.blocks.emplace_back(0, 0);
        break;
    }
  }
  return out;
}

// (A2 + 1)^m expanded: sum_a binom(m, a) form^a k^{2a}.
std::vector<std::pair<ScalarPoly, int>> resolvent_base_power(int m) {
  std::vector<std::pair<ScalarPoly, int>> out;
  ScalarPoly form = ScalarPoly::xi_form();
  mpz_class binom = 1;
  ScalarPoly fa = ScalarPoly::one();
  for (int a = 0; a <= m; ++a) {
    if (a > 0) {
      binom *= (m - a + 1);
      binom /= a;
      fa = fa * form;
    }
    out.emplace_back(fa.scaled(GaussRat(mpq_class(binom))), 2 * a);
  }
  return out;
}

}  // namespace

SymbolExpr b0_quotient_numerator(const SymbolExpr& x) {
  // Common denominator exponents per (skeleton, position).
  std::map<std::vector<Atom>, std::vector<int>> maxj;
  std::vector<std::pair<BlockWord, ScalarPoly>> parsed;
  for (const auto& [w, c] : x.terms()) {
    BlockWord bw = split_blocks(w);
    auto& jj = maxj[bw.letters];
    if (jj.empty()) jj.assign(bw.blocks.size(), 0);
    for (std::size_t i = 0; i < bw.blocks.size(); ++i)
      jj[i] = std::max(jj[i], bw.blocks[i].first);
    parsed.emplace_back(std::move(bw), c);
  }
  SymbolExpr out;
  for (const auto& [bw, c] : parsed) {
    const auto& jj = maxj[bw.letters];
    // Expand the deficit power of (A2 + 1) in every block.
    std::vector<std::pair<Word, ScalarPoly>> acc = {{Word{}, c}};
    for (std::size_t i = 0; i < bw.blocks.size(); ++i) {
      auto expansion = resolvent_base_power(jj[i] - bw.blocks[i].first);
      std::vector<std::pair<Word, ScalarPoly>> next;
      for (const auto& [w0, c0] : acc)
        for (const auto& [cf, ke] : expansion) {
          Word w = w0;
          int kexp = bw.blocks[i].second + ke;
          if (kexp) w.push_back(Atom::k(kexp));
          if (i < bw.letters.size()) w.push_back(bw.letters[i]);
          next.emplace_back(std::move(w), c0 * cf);
        }
      acc = std::move(next);
    }
    for (auto& [w, cc] : acc) out.add(w, cc);
  }
  return out;
}

bool symbol_zero_mod_b0(const SymbolExpr& x) {
  return b0_quotient_numerator(x).is_zero();
}

int order_of(const Word& w, const ScalarMono& m) {
  return m.xi_degree() - 2 * word_b0_total(w);
}

int order_of(const SymbolExpr& x) {
  bool have = false;
  int ord = 0;
  for (const auto& [w, c] : x.terms())
    for (const auto& [m, g] : c.terms()) {
      int o = order_of(w, m);
      if (!have) {
        ord = o;
        have = true;
      } else if (o != ord) {
        throw MixedDegree("expression is not order-homogeneous");
      }
    }
  return ord;
}

SymbolExpr extract_order(const SymbolExpr& x, int n) {
  SymbolExpr out;
  for (const auto& [w, c] : x.terms()) {
    ScalarPoly keep;
    for (const auto& [m, g] : c.terms())
      if (order_of(w, m) == n) keep.add_term(m, g);
    if (!keep.is_zero()) out.add(w, keep);
  }
  return out;
}

}  // namespace nct
