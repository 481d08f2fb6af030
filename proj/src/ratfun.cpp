#include "nct/ratfun.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace nct {

namespace {

mpq_class content_of(const std::map<Poly4::Key, mpq_class>& terms) {
  mpz_class g = 0, l = 1;
  for (const auto& [k, c] : terms) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  }
  if (g == 0) return 1;
  mpq_class q(g, l);
  q.canonicalize();
  return q;
}

}  // namespace

Poly4 Poly4::constant(const mpq_class& c) {
  Poly4 p;
  p.add_term({0, 0, 0, 0}, c);
  return p;
}

Poly4 Poly4::gen(int which, int exp) {
  Poly4 p;
  Key k{0, 0, 0, 0};
  k[which] = exp;
  p.add_term(k, 1);
  return p;
}

void Poly4::add_term(const Key& k, const mpq_class& c) {
  if (c == 0) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly4& Poly4::operator+=(const Poly4& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

Poly4& Poly4::operator-=(const Poly4& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

Poly4 operator*(const Poly4& a, const Poly4& b) {
  Poly4 out;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      Poly4::Key k{ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2], ka[3] + kb[3]};
      out.add_term(k, ca * cb);
    }
  return out;
}

Poly4 Poly4::subst(const std::array<Poly4, 4>& gens) const {
  // Power caches per generator.
  std::array<std::vector<Poly4>, 4> pows;
  for (int g = 0; g < 4; ++g) pows[g].push_back(Poly4::constant(1));
  auto power = [&](int g, int e) -> const Poly4& {
    while (static_cast<int>(pows[g].size()) <= e)
      pows[g].push_back(pows[g].back() * gens[g]);
    return pows[g][e];
  };
  Poly4 out;
  for (const auto& [k, c] : terms_) {
    Poly4 t = Poly4::constant(c);
    for (int g = 0; g < 4; ++g)
      if (k[g]) t = t * power(g, k[g]);
    out += t;
  }
  return out;
}

void Poly4::strip_content() {
  if (terms_.empty()) return;
  mpq_class c = content_of(terms_);
  if (c != 1)
    for (auto& [k, x] : terms_) x /= c;
}

std::string Poly4::str() const {
  if (terms_.empty()) return "0";
  static const char* names[4] = {"su", "sv", "lu", "lv"};
  std::string s;
  for (const auto& [k, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += c.get_str();
    for (int g = 0; g < 4; ++g)
      if (k[g]) {
        s += std::string("*") + names[g];
        if (k[g] != 1) s += "^" + std::to_string(k[g]);
      }
  }
  return s;
}

RatFun::RatFun(Poly4 n, Poly4 d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_.is_zero()) throw std::domain_error("zero denominator");
  if (num_.is_zero()) {
    den_ = Poly4::constant(1);
    return;
  }
  // Cancel a common monomial factor.
  Poly4::Key mins{INT32_MAX, INT32_MAX, INT32_MAX, INT32_MAX};
  auto scan = [&mins](const Poly4& p) {
    for (const auto& [k, c] : p.terms())
      for (int g = 0; g < 4; ++g) mins[g] = std::min(mins[g], k[g]);
  };
  scan(num_);
  scan(den_);
  bool shift = false;
  for (int g = 0; g < 4; ++g) shift |= mins[g] != 0;
  if (shift) {
    auto shifted = [&mins](const Poly4& p) {
      Poly4 out;
      for (const auto& [k, c] : p.terms())
        out.add_term({k[0] - mins[0], k[1] - mins[1], k[2] - mins[2], k[3] - mins[3]},
                     c);
      return out;
    };
    num_ = shifted(num_);
    den_ = shifted(den_);
  }
  // Scale both sides by the denominator content; keep its lead positive.
  mpq_class c = content_of(den_.terms());
  if (den_.terms().begin()->second < 0) c = -c;
  if (c != 1) {
    Poly4 n2, d2;
    for (const auto& [k, x] : num_.terms()) n2.add_term(k, x / c);
    for (const auto& [k, x] : den_.terms()) d2.add_term(k, x / c);
    num_ = std::move(n2);
    den_ = std::move(d2);
  }
}

RatFun RatFun::constant(const mpq_class& c) {
  return RatFun(Poly4::constant(c), Poly4::constant(1));
}

RatFun RatFun::es(int exp) {
  if (exp >= 0) return RatFun(Poly4::gen(0, exp), Poly4::constant(1));
  return RatFun(Poly4::constant(1), Poly4::gen(0, -exp));
}
RatFun RatFun::et(int exp) {
  if (exp >= 0) return RatFun(Poly4::gen(1, exp), Poly4::constant(1));
  return RatFun(Poly4::constant(1), Poly4::gen(1, -exp));
}
RatFun RatFun::s() { return RatFun(Poly4::gen(2), Poly4::constant(1)); }
RatFun RatFun::t() { return RatFun(Poly4::gen(3), Poly4::constant(1)); }

RatFun RatFun::operator+(const RatFun& o) const {
  return RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
RatFun RatFun::operator-(const RatFun& o) const {
  return RatFun(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
RatFun RatFun::operator*(const RatFun& o) const {
  return RatFun(num_ * o.num_, den_ * o.den_);
}
RatFun RatFun::operator/(const RatFun& o) const {
  if (o.num_.is_zero()) throw std::domain_error("division by zero function");
  return RatFun(num_ * o.den_, den_ * o.num_);
}
RatFun RatFun::operator-() const {
  return RatFun(Poly4::constant(-1) * num_, den_);
}

RatFun RatFun::pow(int e) const {
  RatFun acc = RatFun::constant(1);
  RatFun b = e >= 0 ? *this : RatFun::constant(1) / *this;
  for (int i = 0; i < std::abs(e); ++i) acc = acc * b;
  return acc;
}

bool RatFun::equal(const RatFun& o) const {
  if (num_ == o.num_ && den_ == o.den_) return true;
  return num_ * o.den_ == o.num_ * den_;
}

RatFun RatFun::subst_s_to_s_plus_t() const {
  std::array<Poly4, 4> gens = {Poly4::gen(0) * Poly4::gen(1), Poly4::gen(1),
                               Poly4::gen(2) + Poly4::gen(3), Poly4::gen(3)};
  return RatFun(num_.subst(gens), den_.subst(gens));
}

RatFun RatFun::swap_st() const {
  std::array<Poly4, 4> gens = {Poly4::gen(1), Poly4::gen(0), Poly4::gen(3),
                               Poly4::gen(2)};
  return RatFun(num_.subst(gens), den_.subst(gens));
}

std::string RatFun::str() const {
  return "(" + num_.str() + ") / (" + den_.str() + ")";
}

RatFun half_power_uv(int a2, int b2) {
  return RatFun::es(a2) * RatFun::et(b2);
}

// ---------------------------------------------------------------------------
// Evaluation.

namespace {

MpReal to_mp(const mpq_class& q) {
  return MpReal(q.get_num().get_str()) / MpReal(q.get_den().get_str());
}

struct Series {
  std::vector<MpReal> c;  // c[0] + c[1] x + ...
  explicit Series(int order) : c(order + 1, MpReal(0)) {}
};

Series smul(const Series& a, const Series& b) {
  int n = static_cast<int>(a.c.size()) - 1;
  Series out(n);
  for (int i = 0; i <= n; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; i + j <= n; ++j) out.c[i + j] += a.c[i] * b.c[j];
  }
  return out;
}

// exp(scale * x) * pre as a truncated series.
Series exp_series(const MpReal& pre, const MpReal& scale, int order) {
  Series s(order);
  MpReal term = pre;
  s.c[0] = term;
  for (int n = 1; n <= order; ++n) {
    term = term * scale / n;
    s.c[n] = term;
  }
  return s;
}

Series const_series(const MpReal& v, int order) {
  Series s(order);
  s.c[0] = v;
  return s;
}

Series linear_series(const MpReal& c0, const MpReal& c1, int order) {
  Series s(order);
  s.c[0] = c0;
  if (order >= 1) s.c[1] = c1;
  return s;
}

Series eval_poly_series(const Poly4& p, const std::array<Series, 4>& gens,
                        int order) {
  std::array<std::vector<Series>, 4> pows;
  for (int g = 0; g < 4; ++g) pows[g].push_back(const_series(MpReal(1), order));
  auto power = [&](int g, int e) -> const Series& {
    while (static_cast<int>(pows[g].size()) <= e)
      pows[g].push_back(smul(pows[g].back(), gens[g]));
    return pows[g][e];
  };
  Series out(order);
  for (const auto& [k, c] : p.terms()) {
    Series t = const_series(to_mp(c), order);
    for (int g = 0; g < 4; ++g)
      if (k[g]) t = smul(t, power(g, k[g]));
    for (int i = 0; i <= order; ++i) out.c[i] += t.c[i];
  }
  return out;
}

MpReal eval_series_quotient(const Series& n, const Series& d, const MpReal& x) {
  int order = static_cast<int>(d.c.size()) - 1;
  MpReal dmax = 0;
  for (const auto& v : d.c) dmax = std::max(dmax, MpReal(abs(v)));
  if (dmax == 0) throw std::domain_error("zero denominator series");
  MpReal nmax = 0;
  for (const auto& v : n.c) nmax = std::max(nmax, MpReal(abs(v)));
  long prec_bits = static_cast<long>(MpReal::default_precision() * 3.33);
  MpReal tiny = ldexp(MpReal(1), static_cast<int>(-(prec_bits - 40)));
  int v0 = 0;
  while (v0 <= order && abs(d.c[v0]) <= tiny * dmax) ++v0;
  if (v0 > order) throw std::domain_error("denominator series vanishes");
  for (int i = 0; i < v0; ++i)
    if (nmax != 0 && abs(n.c[i]) > tiny * nmax * 1e6)
      throw std::domain_error("non-removable singularity");
  int qn = order - v0;
  std::vector<MpReal> q(qn + 1, MpReal(0));
  for (int j = 0; j <= qn; ++j) {
    MpReal acc = (v0 + j <= order) ? n.c[v0 + j] : MpReal(0);
    for (int i = 1; i <= j; ++i)
      if (v0 + i <= order) acc -= d.c[v0 + i] * q[j - i];
    q[j] = acc / d.c[v0];
  }
  MpReal val = 0;
  for (int j = qn; j >= 0; --j) val = val * x + q[j];
  return val;
}

// -------- exact bivariate series (corner zone) --------

struct Poly2 {
  std::map<std::pair<int, int>, mpq_class> t;
  void add(int i, int j, const mpq_class& c) {
    if (c == 0) return;
    auto key = std::make_pair(i, j);
    auto it = t.find(key);
    if (it == t.end())
      t.emplace(key, c);
    else {
      it->second += c;
      if (it->second == 0) t.erase(it);
    }
  }
};

Poly2 p2_mul(const Poly2& a, const Poly2& b, int order) {
  Poly2 out;
  for (const auto& [ka, ca] : a.t)
    for (const auto& [kb, cb] : b.t) {
      int i = ka.first + kb.first, j = ka.second + kb.second;
      if (i + j > order) continue;
      out.add(i, j, ca * cb);
    }
  return out;
}

Poly2 p2_exp_half(int var, int order) {  // exp(x/2), x = s (var 0) or t (var 1)
  Poly2 out;
  mpq_class c = 1;
  for (int n = 0; n <= order; ++n) {
    if (n > 0) c /= (2 * n);
    out.add(var == 0 ? n : 0, var == 0 ? 0 : n, c);
  }
  return out;
}

Poly2 p2_from_poly4(const Poly4& p, int order) {
  std::array<Poly2, 4> gen;
  gen[0] = p2_exp_half(0, order);
  gen[1] = p2_exp_half(1, order);
  gen[2].add(1, 0, 1);
  gen[3].add(0, 1, 1);
  std::array<std::vector<Poly2>, 4> pows;
  for (int g = 0; g < 4; ++g) {
    Poly2 one;
    one.add(0, 0, 1);
    pows[g].push_back(one);
  }
  auto power = [&](int g, int e) -> const Poly2& {
    while (static_cast<int>(pows[g].size()) <= e)
      pows[g].push_back(p2_mul(pows[g].back(), gen[g], order));
    return pows[g][e];
  };
  Poly2 out;
  for (const auto& [k, c] : p.terms()) {
    Poly2 t;
    t.add(0, 0, c);
    for (int g = 0; g < 4; ++g)
      if (k[g]) t = p2_mul(t, power(g, k[g]), order);
    for (const auto& [kk, cc] : t.t) out.add(kk.first, kk.second, cc);
  }
  return out;
}

// Homogeneous components as dense univariate polys: H(s,t) of degree d is
// stored as coefficients of s^i t^{d-i}.
using UniQ = std::vector<mpq_class>;

std::map<int, UniQ> homogeneous_parts(const Poly2& p) {
  std::map<int, UniQ> parts;
  for (const auto& [k, c] : p.t) {
    int d = k.first + k.second;
    UniQ& u = parts[d];
    if (static_cast<int>(u.size()) < d + 1) u.resize(d + 1, 0);
    u[k.first] += c;
  }
  for (auto it = parts.begin(); it != parts.end();) {
    bool zero = true;
    for (const auto& c : it->second)
      if (c != 0) zero = false;
    it = zero ? parts.erase(it) : std::next(it);
  }
  return parts;
}

// Exact division of univariate rationals polynomials; throws on remainder.
UniQ uni_divide(const UniQ& a, const UniQ& b) {
  int db = static_cast<int>(b.size()) - 1;
  while (db >= 0 && b[db] == 0) --db;
  if (db < 0) throw std::domain_error("division by zero polynomial");
  UniQ r = a;
  int da = static_cast<int>(r.size()) - 1;
  while (da >= 0 && (da >= static_cast<int>(r.size()) || r[da] == 0)) --da;
  UniQ q(std::max(0, da - db) + 1, 0);
  for (int d = da; d >= db; --d) {
    if (d >= static_cast<int>(r.size()) || r[d] == 0) continue;
    mpq_class f = r[d] / b[db];
    q[d - db] = f;
    for (int i = 0; i <= db; ++i) r[d - db + i] -= f * b[i];
  }
  for (const auto& c : r)
    if (c != 0) throw std::domain_error("inexact homogeneous division");
  return q;
}

// Divide homogeneous A (degree da) by homogeneous B (degree db) exactly.
UniQ homo_divide(const UniQ& a, int da, const UniQ& b, int db) {
  UniQ q = uni_divide(a, b);
  q.resize(da - db + 1, 0);
  return q;
}

MpReal eval_corner(const Poly4& num, const Poly4& den, const MpReal& s,
                   const MpReal& t, int order) {
  int work = order + 6;
  Poly2 n2 = p2_from_poly4(num, work);
  Poly2 d2 = p2_from_poly4(den, work);
  auto np = homogeneous_parts(n2);
  auto dp = homogeneous_parts(d2);
  if (dp.empty()) throw std::domain_error("zero denominator series");
  int d0 = dp.begin()->first;
  for (const auto& [deg, u] : np)
    if (deg < d0) throw std::domain_error("non-removable singularity at corner");
  // Solve D * Q = N degree by degree.
  std::map<int, UniQ> qp;
  for (int j = 0; j + d0 <= work; ++j) {
    UniQ rhs(d0 + j + 1, 0);
    if (auto it = np.find(d0 + j); it != np.end()) rhs = it->second;
    rhs.resize(d0 + j + 1, 0);
    for (int i = 1; i <= j; ++i) {
      auto dit = dp.find(d0 + i);
      auto qit = qp.find(j - i);
      if (dit == dp.end() || qit == qp.end()) continue;
      // rhs -= D_{d0+i} * Q_{j-i}
      for (std::size_t a = 0; a < dit->second.size(); ++a)
        for (std::size_t b = 0; b < qit->second.size(); ++b)
          rhs[a + b] -= dit->second[a] * qit->second[b];
    }
    qp[j] = homo_divide(rhs, d0 + j, dp.begin()->second, d0);
  }
  MpReal val = 0;
  std::vector<MpReal> spow(work + 1), tpow(work + 1);
  spow[0] = 1;
  tpow[0] = 1;
  for (int i = 1; i <= work; ++i) {
    spow[i] = spow[i - 1] * s;
    tpow[i] = tpow[i - 1] * t;
  }
  for (const auto& [deg, u] : qp)
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i] == 0) continue;
      val += to_mp(u[i]) * spow[i] * tpow[deg - i];
    }
  return val;
}

MpReal eval_direct(const Poly4& p, const MpReal& es, const MpReal& et,
                   const MpReal& s, const MpReal& t) {
  int maxe[4] = {0, 0, 0, 0};
  for (const auto& [k, c] : p.terms())
    for (int g = 0; g < 4; ++g) maxe[g] = std::max(maxe[g], k[g]);
  std::array<std::vector<MpReal>, 4> pows;
  const MpReal base[4] = {es, et, s, t};
  for (int g = 0; g < 4; ++g) {
    pows[g].resize(maxe[g] + 1);
    pows[g][0] = 1;
    for (int e = 1; e <= maxe[g]; ++e) pows[g][e] = pows[g][e - 1] * base[g];
  }
  MpReal acc = 0;
  for (const auto& [k, c] : p.terms())
    acc += to_mp(c) * pows[0][k[0]] * pows[1][k[1]] * pows[2][k[2]] * pows[3][k[3]];
  return acc;
}

struct PrecisionGuard {
  unsigned saved;
  explicit PrecisionGuard(unsigned digits) : saved(MpReal::default_precision()) {
    MpReal::default_precision(digits);
  }
  ~PrecisionGuard() { MpReal::default_precision(saved); }
};

}  // namespace

MpReal eval_st(const RatFun& f, const MpReal& s_in, const MpReal& t_in,
               const EvalConfig& cfg) {
  unsigned digits = std::max(cfg.precision, 33u) + 30;
  PrecisionGuard guard(digits);
  // mpfr results inherit operand precision; lift the inputs to the working
  // precision or every derived quantity stays at the caller's.
  MpReal s = s_in, t = t_in;
  s.precision(digits);
  t.precision(digits);
  double sd = std::abs(s.convert_to<double>());
  double td = std::abs(t.convert_to<double>());
  double wd = std::abs((s + t).convert_to<double>());
  double eps = cfg.singular_radius;
  int order = std::max(cfg.taylor_order, 6);

  if (sd <= 4 * eps && td <= 4 * eps)
    return eval_corner(f.num(), f.den(), s, t, order);

  int norder = std::max(order, 40);  // numeric series are cheap
  if (sd < eps || td < eps || wd < eps) {
    std::array<Series, 4> gens = {Series(norder), Series(norder), Series(norder),
                                  Series(norder)};
    MpReal x;
    if (sd < eps) {
      x = s;
      gens[0] = exp_series(MpReal(1), MpReal(0.5), norder);
      gens[1] = const_series(exp(t / 2), norder);
      gens[2] = linear_series(MpReal(0), MpReal(1), norder);
      gens[3] = const_series(t, norder);
    } else if (td < eps) {
      x = t;
      gens[0] = const_series(exp(s / 2), norder);
      gens[1] = exp_series(MpReal(1), MpReal(0.5), norder);
      gens[2] = const_series(s, norder);
      gens[3] = linear_series(MpReal(0), MpReal(1), norder);
    } else {
      x = s + t;  // expand in w = s + t at fixed t
      gens[0] = exp_series(exp(-t / 2), MpReal(0.5), norder);
      gens[1] = const_series(exp(t / 2), norder);
      gens[2] = linear_series(-t, MpReal(1), norder);
      gens[3] = const_series(t, norder);
    }
    Series n = eval_poly_series(f.num(), gens, norder);
    Series d = eval_poly_series(f.den(), gens, norder);
    return eval_series_quotient(n, d, x);
  }

  MpReal es = exp(s / 2), et = exp(t / 2);
  MpReal dv = eval_direct(f.den(), es, et, s, t);
  if (dv == 0) throw std::domain_error("denominator vanished off singular sets");
  return eval_direct(f.num(), es, et, s, t) / dv;
}

MpReal eval_uv(const RatFun& f, const MpReal& u, const MpReal& v,
               const EvalConfig& cfg) {
  unsigned digits = std::max(cfg.precision, 33u) + 30;
  PrecisionGuard guard(digits);
  if (u <= 0 || v <= 0) throw std::domain_error("eval_uv needs positive u, v");
  MpReal uu = u, vv = v;
  uu.precision(digits);
  vv.precision(digits);
  return eval_st(f, MpReal(log(uu)), MpReal(log(vv)), cfg);
}

MpReal eval_one_var(const RatFun& f, const MpReal& s, const EvalConfig& cfg) {
  return eval_st(f, s, MpReal(1), cfg);
}

}  // namespace nct
