#include "nct/reduce.hpp"

#include <algorithm>

namespace nct {

std::vector<TrigTerm> polar_substitute(const SymbolExpr& x) {
  // x1^a expands via (r c - r (t1/t2) s)^a, x2^b via ((r/t2) s)^b where
  // c, s are the cosine and sine of the integration angle.
  std::vector<TrigTerm> out;
  std::map<std::pair<int, int>, ScalarPoly> bucket;  // (p, q) -> coeff
  for (const auto& [w, poly] : x.terms()) {
    bucket.clear();
    for (const auto& [mono, g] : poly.terms()) {
      int a = mono.x1, b = mono.x2;
      ScalarMono base = mono;
      base.x1 = 0;
      base.x2 = 0;
      base.r += a + b;
      base.t2 -= b;
      // binomial expansion of (c - (t1/t2) s)^a
      mpz_class binom = 1;
      for (int i = 0; i <= a; ++i) {
        if (i > 0) {
          binom *= (a - i + 1);
          binom /= i;
        }
        ScalarMono m = base;
        m.t1 += i;
        m.t2 -= i;
        GaussRat c = g * GaussRat(mpq_class(binom));
        if (i % 2 == 1) c = -c;
        ScalarPoly p;
        p.add_term(m, c);
        auto key = std::make_pair(a - i, b + i);
        auto it = bucket.find(key);
        if (it == bucket.end())
          bucket.emplace(key, p);
        else
          it->second += p;
      }
    }
    for (auto& [pq, c] : bucket) {
      if (c.is_zero()) continue;
      out.push_back(TrigTerm{std::move(c), pq.first, pq.second, w});
    }
  }
  return out;
}

namespace {

// Integral of cos^p sin^q over a period, in units of pi: zero for odd p or
// q, else 2 (p-1)!!(q-1)!!/(p+q)!!.
mpq_class wallis_over_pi(int p, int q) {
  if (p % 2 || q % 2) return 0;
  auto dfact = [](int n) {
    mpz_class f = 1;
    for (int i = n; i > 1; i -= 2) f *= i;
    return f;
  };
  mpq_class v(2 * dfact(p - 1) * dfact(q - 1), dfact(p + q));
  v.canonicalize();
  return v;
}

}  // namespace

AngularResult angular_integrate(const std::vector<TrigTerm>& ts) {
  AngularResult res;
  for (const TrigTerm& t : ts) {
    mpq_class w = wallis_over_pi(t.cosp, t.sinq);
    if (w == 0) continue;
    res.expr.add(t.word, t.coeff.scaled(GaussRat(w)));
  }
  for (const auto& [w, c] : res.expr.terms())
    if (c.min_t2_exponent() < 0)
      throw ResidualTau2("negative t2 power survived the angular integral: " +
                         word_str(w));
  return res;
}

std::string ModWordLetter::str() const {
  std::string inner = word_str(base);
  if (q2 == 0) return "(" + inner + ")";
  std::string e = (q2 % 2 == 0) ? std::to_string(q2 / 2)
                                : std::to_string(q2) + "/2";
  return "D^{" + e + "}(" + inner + ")";
}

std::string RadialTerm::str() const {
  std::string s = coeff.str() + " * ";
  if (!two_var) {
    s += "D" + std::to_string(m) + left.str();
  } else {
    s += "D" + std::to_string(m) + std::to_string(mp) + "(" + left.str() +
         right.str() + ")";
  }
  return s;
}

void ModularExpr::add(RadialTerm t) {
  if (t.coeff.is_zero()) return;
  for (RadialTerm& u : terms) {
    if (u.two_var == t.two_var && u.m == t.m && u.mp == t.mp &&
        u.left == t.left && u.right == t.right) {
      u.coeff += t.coeff;
      return;
    }
  }
  terms.push_back(std::move(t));
}

std::string ModularExpr::str() const {
  std::string s;
  for (const RadialTerm& t : terms) {
    if (t.coeff.is_zero()) continue;
    if (!s.empty()) s += "\n";
    s += t.str();
  }
  return s;
}

namespace {

struct ParsedWord {
  // Alternating blocks and letters: blocks[0] L[0] blocks[1] L[1] ... ;
  // block = (b0 exponent, k exponent).
  std::vector<std::pair<int, int>> blocks;
  std::vector<Atom> letters;
};

ParsedWord parse_word(const Word& w) {
  ParsedWord p;
  p.blocks.emplace_back(0, 0);
  for (const Atom& a : w) {
    switch (a.kind) {
      case Atom::Kind::B0pow: p.blocks.back().first += a.a; break;
      case Atom::Kind::Kpow: p.blocks.back().second += a.a; break;
      case Atom::Kind::DK:
        p.letters.push_back(a);
        p.blocks.emplace_back(0, 0);
        break;
    }
  }
  return p;
}

Word conjugated(const Word& base, int q2) {
  // Delta^{q2/2}(base) spelled out: k^{-q2} base k^{q2}.
  if (q2 == 0) return base;
  Word w;
  w.push_back(Atom::k(-q2));
  w.insert(w.end(), base.begin(), base.end());
  w.push_back(Atom::k(q2));
  return canon(w);
}

ModWordLetter merge_letters(const ModWordLetter& a, const ModWordLetter& b) {
  // Delta^{qa}(A) Delta^{qb}(B) = Delta^{qb}( Delta^{qa-qb}(A) B ).
  Word w = conjugated(a.base, a.q2 - b.q2);
  w.insert(w.end(), b.base.begin(), b.base.end());
  return ModWordLetter{b.q2, canon(w)};
}

[[noreturn]] void mismatch(const Word& w, const std::string& why) {
  throw PatternMismatch("cannot normalize " + word_str(w) + ": " + why);
}

}  // namespace

LemmaPattern delta_twist_normalize(const Word& w, int upow) {
  ParsedWord p = parse_word(w);
  const int nl = static_cast<int>(p.letters.size());
  if (nl < 1 || nl > 2) mismatch(w, "expected one or two derivative letters");
  const int nb = static_cast<int>(p.blocks.size());

  // Identify the b0 groups.
  std::vector<int> groups;
  for (int i = 0; i < nb; ++i)
    if (p.blocks[i].first > 0) groups.push_back(i);
  if (groups.empty() || groups.front() != 0 || groups.back() != nb - 1)
    mismatch(w, "word does not start and end with b0 groups");
  if (p.blocks.back().first != 1) mismatch(w, "trailing b0 group must be simple");

  std::vector<ModWordLetter> letters(nl);
  for (int i = 0; i < nl; ++i) letters[i] = ModWordLetter{0, Word{p.letters[i]}};

  if (static_cast<int>(groups.size()) == 2) {
    // Single sandwich: gather every k power to the left of the letters.
    int slot = p.blocks[0].second;
    for (int i = 1; i < nb; ++i) {
      int a = p.blocks[i].second;
      if (a == 0) continue;
      for (int l = i - 1; l >= 0; --l) letters[l].q2 += a;
      slot += a;
    }
    int m = p.blocks[0].first - 1;
    if (m != upow) mismatch(w, "u power does not match the b0 group");
    int deficit = 2 * m + 2 - slot;
    if (deficit != nl) mismatch(w, "k-power bookkeeping failed");
    // Borrow one k from the left of each letter.
    for (int l = 0; l < nl; ++l) {
      Word nb2;
      nb2.push_back(Atom::k(-1));
      nb2.insert(nb2.end(), letters[l].base.begin(), letters[l].base.end());
      letters[l].base = canon(nb2);
      for (int j = 0; j < l; ++j) letters[j].q2 += 1;
    }
    ModWordLetter merged = letters[0];
    if (nl == 2) merged = merge_letters(letters[0], letters[1]);
    return LemmaPattern{false, m, 0, std::move(merged), {}};
  }

  if (static_cast<int>(groups.size()) != 3 || nl != 2)
    mismatch(w, "unsupported b0 group layout");
  // Layout: block0 L0 block1 L1 block2.
  int m = p.blocks[0].first;
  int mp = p.blocks[1].first;
  if (upow != m + mp - 1) mismatch(w, "u power does not match the b0 groups");
  // Gather k's into the middle slot (right of letter 0).
  int slot = p.blocks[1].second;
  if (p.blocks[0].second) {
    letters[0].q2 -= p.blocks[0].second;
    slot += p.blocks[0].second;
  }
  if (p.blocks[2].second) {
    letters[1].q2 += p.blocks[2].second;
    slot += p.blocks[2].second;
  }
  int deficit = 2 * (m + mp) - slot;
  if (deficit != 2) mismatch(w, "k-power bookkeeping failed");
  // Letter 0 donates one k rightward, letter 1 one leftward.
  letters[0].base.push_back(Atom::k(-1));
  letters[0].base = canon(letters[0].base);
  {
    Word nb2;
    nb2.push_back(Atom::k(-1));
    nb2.insert(nb2.end(), letters[1].base.begin(), letters[1].base.end());
    letters[1].base = canon(nb2);
  }
  return LemmaPattern{true, m, mp, std::move(letters[0]), std::move(letters[1])};
}

ModularExpr radial_integrate(const AngularResult& a) {
  ModularExpr out;
  out.pi_factor = a.pi_factor;
  for (const auto& [w, poly] : a.expr.terms()) {
    // The radial power must be uniform across the coefficient.
    int rexp = -1;
    for (const auto& [m, g] : poly.terms()) {
      if (rexp == -1) rexp = m.r;
      if (m.r != rexp)
        throw PatternMismatch("mixed radial powers on " + word_str(w));
    }
    if (rexp < 0 || rexp % 2)
      throw PatternMismatch("odd radial power on " + word_str(w));
    LemmaPattern pat = delta_twist_normalize(w, rexp / 2);
    ScalarPoly tau_part;
    for (const auto& [m, g] : poly.terms()) {
      ScalarMono mm = m;
      mm.r = 0;
      tau_part.add_term(mm, g);
    }
    RadialTerm t;
    t.coeff = tau_part.scaled(GaussRat::frac(1, 2));  // u = r^2
    t.two_var = pat.two_var;
    t.m = pat.m;
    t.mp = pat.mp;
    t.left = pat.left;
    t.right = pat.right;
    out.add(std::move(t));
  }
  std::erase_if(out.terms, [](const RadialTerm& t) { return t.coeff.is_zero(); });
  return out;
}

namespace {

// Splits a tau-only coefficient into the four prefactor classes.
std::map<CoeffClass, mpq_class> classify_coeff(const ScalarPoly& c,
                                               const std::string& ctx) {
  ScalarPoly rest = c;
  std::map<CoeffClass, mpq_class> out;
  GaussRat t2sq = rest.coeff(ScalarMono{.t2 = 2});
  if (!t2sq.is_zero()) {
    if (t2sq.im != 0) throw UnmatchedTarget("complex |tau|^2 class in " + ctx);
    out[CoeffClass::TauAbs2] = t2sq.re;
    rest -= ScalarPoly::tau_abs2().scaled(t2sq);
  }
  for (const auto& [m, g] : rest.terms()) {
    if (m.x1 || m.x2 || m.r) throw UnmatchedTarget("non-tau coefficient in " + ctx);
    if (m.t1 == 0 && m.t2 == 0) {
      if (g.im != 0) throw UnmatchedTarget("complex scalar class in " + ctx);
      out[CoeffClass::One] += g.re;
    } else if (m.t1 == 1 && m.t2 == 0) {
      if (g.im != 0) throw UnmatchedTarget("complex tau1 class in " + ctx);
      out[CoeffClass::Tau1] += g.re;
    } else if (m.t1 == 0 && m.t2 == 1) {
      if (g.re != 0) throw UnmatchedTarget("real tau2 class in " + ctx);
      out[CoeffClass::ITau2] += g.im;
    } else {
      throw UnmatchedTarget("unexpected tau monomial in " + ctx);
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = (it->second == 0) ? out.erase(it) : std::next(it);
  return out;
}

struct SlotTarget {
  SlotKind slot;
  int i, j;
  int extra_q2;  // outer Delta power absorbed into the function
};

int dk_index(const Atom& a) {
  if (a.a == 1 && a.b == 0) return 1;
  if (a.a == 0 && a.b == 1) return 2;
  return 0;
}

std::optional<SlotTarget> classify_one(const ModWordLetter& l) {
  const Word& b = l.base;
  if (b.size() == 2 && b[0] == Atom::k(-1) && b[1].kind == Atom::Kind::DK &&
      b[1].a + b[1].b == 2) {
    int i = b[1].a >= 1 ? 1 : 2;
    int j = b[1].b >= 1 ? 2 : 1;
    if (b[1].a == 2) j = 1;
    if (b[1].b == 2) i = 2;
    return SlotTarget{SlotKind::OneLinear, i, j, l.q2};
  }
  if (b.size() == 3 && b[0] == Atom::k(-2) && b[1].kind == Atom::Kind::DK &&
      b[2].kind == Atom::Kind::DK && dk_index(b[1]) && dk_index(b[2])) {
    return SlotTarget{SlotKind::OneBilinear, dk_index(b[1]), dk_index(b[2]), l.q2};
  }
  return std::nullopt;
}

}  // namespace

GroupedModular collect_to_basis(const ModularExpr& m) {
  GroupedModular out;
  out.pi_factor = m.pi_factor;
  for (const RadialTerm& t : m.terms) {
    if (t.coeff.is_zero()) continue;
    std::array<int, 4> kernel{};
    GroupedKey key;
    if (!t.two_var) {
      auto tgt = classify_one(t.left);
      if (!tgt) throw UnmatchedTarget("unrecognized one-variable letter " +
                                      t.left.str());
      key = GroupedKey{CoeffClass::One, tgt->slot, tgt->i, tgt->j};
      kernel = {t.m, 0, tgt->extra_q2, 0};
    } else {
      const Word& lb = t.left.base;
      const Word& rb = t.right.base;
      bool okl = lb.size() == 2 && lb[0].kind == Atom::Kind::DK &&
                 dk_index(lb[0]) && lb[1] == Atom::k(-1);
      bool okr = rb.size() == 2 && rb[0] == Atom::k(-1) &&
                 rb[1].kind == Atom::Kind::DK && dk_index(rb[1]);
      if (!okl || !okr)
        throw UnmatchedTarget("unrecognized two-variable letters " +
                              t.left.str() + t.right.str());
      key = GroupedKey{CoeffClass::One, SlotKind::TwoVar, dk_index(lb[0]),
                       dk_index(rb[1])};
      kernel = {t.m, t.mp, t.left.q2, t.right.q2};
    }
    auto classes = classify_coeff(t.coeff, t.str());
    for (const auto& [cls, mult] : classes) {
      GroupedKey k = key;
      k.cls = cls;
      DCombo& combo = out.slots[k];
      combo[kernel] += mult;
      if (combo[kernel] == 0) combo.erase(kernel);
    }
  }
  for (auto it = out.slots.begin(); it != out.slots.end();)
    it = it->second.empty() ? out.slots.erase(it) : std::next(it);
  return out;
}

std::string coeff_class_str(CoeffClass c) {
  switch (c) {
    case CoeffClass::One: return "1";
    case CoeffClass::Tau1: return "t1";
    case CoeffClass::TauAbs2: return "|tau|^2";
    case CoeffClass::ITau2: return "I*t2";
  }
  return "?";
}

std::string slot_str(const GroupedKey& k) {
  std::string s = coeff_class_str(k.cls) + " * ";
  auto d = [](int i) { return "d" + std::to_string(i); };
  switch (k.slot) {
    case SlotKind::OneLinear:
      s += "f(D)(k^-1*" + d(k.i) + d(k.j) + "(k))";
      break;
    case SlotKind::OneBilinear:
      s += "f(D)(k^-2*" + d(k.i) + "(k)*" + d(k.j) + "(k))";
      break;
    case SlotKind::TwoVar:
      s += "F(D1,D2)((" + d(k.i) + "(k)*k^-1)(k^-1*" + d(k.j) + "(k)))";
      break;
  }
  return s;
}

}  // namespace nct
