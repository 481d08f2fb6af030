#include "nct/scalar_poly.hpp"

namespace nct {

std::string ScalarMono::str() const {
  std::string s;
  auto app = [&s](const char* name, int e) {
    if (e == 0) return;
    if (!s.empty()) s += "*";
    s += name;
    if (e != 1) s += "^" + std::to_string(e);
  };
  app("t1", t1);
  app("t2", t2);
  app("x1", x1);
  app("x2", x2);
  app("r", r);
  return s.empty() ? "1" : s;
}

ScalarPoly ScalarPoly::var(Var v, int exp) {
  ScalarMono m;
  switch (v) {
    case Var::T1: m.t1 = exp; break;
    case Var::T2: m.t2 = exp; break;
    case Var::X1: m.x1 = exp; break;
    case Var::X2: m.x2 = exp; break;
    case Var::R: m.r = exp; break;
  }
  ScalarPoly p;
  p.add_term(m, GaussRat(1));
  return p;
}

ScalarPoly ScalarPoly::tau_abs2() {
  ScalarPoly p;
  p.add_term({.t1 = 2}, GaussRat(1));
  p.add_term({.t2 = 2}, GaussRat(1));
  return p;
}

ScalarPoly ScalarPoly::xi_form() {
  ScalarPoly p;
  p.add_term({.x1 = 2}, GaussRat(1));
  p.add_term({.x1 = 1, .x2 = 1, .t1 = 1}, GaussRat(2));
  p.add_term({.x2 = 2, .t1 = 2}, GaussRat(1));
  p.add_term({.x2 = 2, .t2 = 2}, GaussRat(1));
  return p;
}

void ScalarPoly::add_term(const ScalarMono& m, GaussRat c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, std::move(c));
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ScalarPoly& ScalarPoly::operator+=(const ScalarPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ScalarPoly& ScalarPoly::operator-=(const ScalarPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

ScalarPoly operator*(const ScalarPoly& a, const ScalarPoly& b) {
  ScalarPoly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma.times(mb), ca * cb);
  return out;
}

ScalarPoly operator-(const ScalarPoly& a) {
  ScalarPoly out;
  for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, -c);
  return out;
}

ScalarPoly ScalarPoly::scaled(const GaussRat& c) const {
  ScalarPoly out;
  if (c.is_zero()) return out;
  for (const auto& [m, x] : terms_) out.terms_.emplace(m, x * c);
  return out;
}

ScalarPoly ScalarPoly::conj() const {
  ScalarPoly out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, c.conj());
  return out;
}

ScalarPoly ScalarPoly::dxi(int i) const {
  ScalarPoly out;
  for (const auto& [m, c] : terms_) {
    ScalarMono d = m;
    int e = (i == 1) ? m.x1 : m.x2;
    if (e == 0) continue;
    if (i == 1)
      d.x1 -= 1;
    else
      d.x2 -= 1;
    out.add_term(d, c * GaussRat(e));
  }
  return out;
}

GaussRat ScalarPoly::coeff(const ScalarMono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussRat(0) : it->second;
}

bool ScalarPoly::xi_homogeneous() const {
  if (terms_.empty()) return true;
  int d = terms_.begin()->first.xi_degree();
  for (const auto& [m, c] : terms_)
    if (m.xi_degree() != d) return false;
  return true;
}

int ScalarPoly::xi_degree() const {
  if (terms_.empty()) return 0;
  if (!xi_homogeneous()) throw MixedDegree("coefficient is not xi-homogeneous");
  return terms_.begin()->first.xi_degree();
}

int ScalarPoly::min_t2_exponent() const {
  int m = 0;
  for (const auto& [mono, c] : terms_) m = std::min(m, mono.t2);
  return m;
}

namespace {

template <typename C>
C pow_i(const C& base, int e) {
  C acc = C(1.0);
  C b = base;
  int n = e < 0 ? -e : e;
  for (int i = 0; i < n; ++i) acc = acc * b;
  if (e < 0) acc = C(1.0) / acc;
  return acc;
}

}  // namespace

std::complex<double> ScalarPoly::eval_d(const std::complex<double> vals[5]) const {
  std::complex<double> acc = 0.0;
  for (const auto& [m, c] : terms_) {
    std::complex<double> v = c.to_complex();
    if (m.t1) v *= pow_i(vals[0], m.t1);
    if (m.t2) {
      if (m.t2 < 0 && vals[1] == std::complex<double>(0.0))
        throw DivisionByZero("t2 = 0 with negative exponent");
      v *= pow_i(vals[1], m.t2);
    }
    if (m.x1) v *= pow_i(vals[2], m.x1);
    if (m.x2) v *= pow_i(vals[3], m.x2);
    if (m.r) v *= pow_i(vals[4], m.r);
    acc += v;
  }
  return acc;
}

namespace {

MpComplex mp_pow(const MpComplex& base, int e) {
  MpComplex acc(MpReal(1));
  MpComplex b = base;
  int n = e < 0 ? -e : e;
  for (int i = 0; i < n; ++i) acc = acc * b;
  if (e < 0) acc = MpComplex(MpReal(1)) / acc;
  return acc;
}

}  // namespace

MpComplex ScalarPoly::eval_mp(const MpComplex vals[5]) const {
  auto to_mp = [](const mpq_class& q) {
    return MpReal(q.get_num().get_str()) / MpReal(q.get_den().get_str());
  };
  MpComplex acc;
  for (const auto& [m, c] : terms_) {
    MpComplex v(to_mp(c.re), to_mp(c.im));
    if (m.t1) v = v * mp_pow(vals[0], m.t1);
    if (m.t2) {
      if (m.t2 < 0 && vals[1].re == 0 && vals[1].im == 0)
        throw DivisionByZero("t2 = 0 with negative exponent");
      v = v * mp_pow(vals[1], m.t2);
    }
    if (m.x1) v = v * mp_pow(vals[2], m.x1);
    if (m.x2) v = v * mp_pow(vals[3], m.x2);
    if (m.r) v = v * mp_pow(vals[4], m.r);
    acc = acc + v;
  }
  return acc;
}

std::pair<ScalarPoly, ScalarPoly> ScalarPoly::divmod_xi_form() const {
  ScalarPoly quot;
  ScalarPoly rest = *this;
  ScalarPoly form = xi_form();
  for (;;) {
    int dmax = -1;
    for (const auto& [m, c] : rest.terms_) dmax = std::max(dmax, m.x1);
    if (dmax < 2) break;
    ScalarPoly top;  // monomials of maximal x1-degree, with x1^dmax removed
    for (const auto& [m, c] : rest.terms_)
      if (m.x1 == dmax) {
        ScalarMono mm = m;
        mm.x1 -= 2;
        top.add_term(mm, c);
      }
    quot += top;
    rest -= form * top;
  }
  return {quot, rest};
}

std::string ScalarPoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += c.str();
    std::string ms = m.str();
    if (ms != "1") s += "*" + ms;
  }
  return s;
}

}  // namespace nct
