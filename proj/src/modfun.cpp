#include "nct/modfun.hpp"

#include <cmath>

namespace nct {

namespace {

RatFun C(long n) { return RatFun::from_long(n); }
RatFun Cq(long n, long d) { return RatFun::constant(rat(n, d)); }

// Rational-view shorthands: u = es^2, v = et^2, log u = s, log v = t.
RatFun U() { return RatFun::es(2); }
RatFun V() { return RatFun::et(2); }
RatFun SQU() { return RatFun::es(1); }
RatFun SQV() { return RatFun::et(1); }
RatFun LU() { return RatFun::s(); }
RatFun LV() { return RatFun::t(); }

}  // namespace

RatFun mf_Lm(int m) {
  // (-1)^m (u-1)^{-(m+1)} (log u - sum_{j=1}^m (-1)^{j+1} (u-1)^j / j)
  RatFun um1 = U() - C(1);
  RatFun inner = LU();
  for (int j = 1; j <= m; ++j) {
    RatFun term = um1.pow(j) * Cq(j % 2 == 1 ? 1 : -1, j);
    inner = inner - term;
  }
  RatFun sign = C(m % 2 == 0 ? 1 : -1);
  return sign * inner / um1.pow(m + 1);
}

RatFun mf_Dmm(int m, int mp) {
  RatFun u = U(), v = V(), lu = LU(), lv = LV();
  RatFun iu = C(1) / u;           // 1/u
  RatFun l1u = -lu;               // log(1/u)
  if (m == 1 && mp == 1) {
    RatFun num = (v - C(1)) * l1u - (iu - C(1)) * lv;
    RatFun den = (iu - C(1)) * (v - C(1)) * (v - iu);
    return num / den;
  }
  if (m == 2 && mp == 2) {
    RatFun num =
        u * ((v - C(1)) *
                 ((iu - C(1)) * (iu - v) * (C(1) + iu * iu - (C(1) + iu) * v) +
                  (iu * C(3) - C(1) - C(2) * v) * (v - C(1)) * l1u * iu) -
             (iu - C(1)).pow(3) * lv * iu);
    RatFun den = (iu - C(1)).pow(3) * (iu - v).pow(2) * (v - C(1)).pow(2);
    return num / den;
  }
  if (m == 1 && mp == 2) {
    RatFun num = (v - C(1)).pow(2) * l1u +
                 (iu - C(1)) * ((iu - v) * (v - C(1)) - (iu - C(1)) * lv);
    RatFun den = (iu - C(1)).pow(2) * (iu - v) * (v - C(1)).pow(2);
    return num / den;
  }
  if (m == 2 && mp == 1) {
    RatFun num = u * ((v - C(1)) * ((iu - C(1)) * (iu - v) +
                                    (C(1) - C(2) * iu + v) * l1u * iu) +
                      (iu - C(1)).pow(2) * lv * iu);
    RatFun den = (iu - C(1)).pow(2) * (iu - v).pow(2) * (v - C(1));
    return num / den;
  }
  if (m == 3 && mp == 1) {
    RatFun num =
        u * u *
        ((v - C(1)) * ((iu - C(1)) * (iu - v) *
                           (C(5) * iu * iu + v - C(3) * (C(1) + v) * iu) -
                       C(2) *
                           (C(1) + C(3) * iu * iu + v + v * v -
                            C(3) * (C(1) + v) * iu) *
                           l1u * iu * iu) +
         C(2) * (iu - C(1)).pow(3) * lv * iu * iu);
    RatFun den = C(2) * (iu - C(1)).pow(3) * (iu - v).pow(3) * (v - C(1));
    return num / den;
  }
  throw UnknownFunction("D_{m,m'} pair not registered");
}

RatFun mf_phi_half() { return (SQU() - C(1)) / LU(); }
RatFun mf_phi_a() { return (U() - SQU()) / LU(); }
RatFun mf_psi() { return (C(1) / SQU() - C(1)) / LU(); }

RatFun mf_gfun() {
  RatFun squv = SQU() * SQV();
  RatFun luv = LU() + LV();
  return C(4) * ((squv - C(1)) * LU() - (SQU() - C(1)) * luv) /
         (LV() * LU() * luv);
}

bool normal_equal(const RatFun& a, const RatFun& b) { return a.equal(b); }

namespace {

RatFun assembled_f1() {
  RatFun l0 = mf_Lm(0), l1 = mf_Lm(1), l2 = mf_Lm(2);
  return C(-2) * l2 * SQU() - C(2) * l2 + l1 * SQU() + C(3) * l1 - l0;
}

RatFun assembled_f2() { return C(-4) * mf_Lm(2) + C(4) * mf_Lm(1); }

RatFun assembled_g1() {
  RatFun l1 = mf_Lm(1), l2 = mf_Lm(2);
  return C(-2) * l2 * SQU() - C(2) * l2 + C(2) * l1 * SQU() + C(2) * l1;
}

RatFun closed_f1() {
  RatFun u = U(), squ = SQU(), lu = LU();
  RatFun num = squ * (C(2) - C(2) * u + (C(1) + u) * lu);
  RatFun den = (squ - C(1)).pow(3) * (squ + C(1)).pow(2);
  return -num / den;
}

RatFun closed_f2() {
  RatFun u = U(), lu = LU();
  return C(2) * (u * u - C(1) - C(2) * u * lu) / (u - C(1)).pow(3);
}

RatFun closed_g1() {
  RatFun u = U(), squ = SQU(), lu = LU();
  return (u * u - C(1) - C(2) * u * lu) /
         ((squ - C(1)).pow(3) * (squ + C(1)).pow(2));
}

// Delta-twist monomial in half powers: u^{a2/2} v^{b2/2}.
RatFun tw(int a2, int b2) { return half_power_uv(a2, b2); }

// c * D_{m,m'}(u,v) * u^{a2/2} v^{b2/2}
struct DTerm {
  int c, m, mp, a2, b2;
};

RatFun combo_flat(const std::vector<DTerm>& v) {
  RatFun acc;
  for (const DTerm& t : v)
    acc = acc + C(t.c) * mf_Dmm(t.m, t.mp) * tw(t.a2, t.b2);
  return acc;
}

EvalParts combo_parts(const std::vector<DTerm>& v) {
  EvalParts p;
  for (const DTerm& t : v)
    p.push_back({mpq_class(t.c), {mf_Dmm(t.m, t.mp) * tw(t.a2, t.b2)}});
  return p;
}

const std::vector<DTerm>& combo_F() {
  static const std::vector<DTerm> v = {
      {2, 2, 2, -2, 1},  {2, 2, 2, -2, 0},  {2, 2, 2, -3, 1},
      {2, 2, 2, -3, 0},  {4, 3, 1, -4, 1},  {4, 3, 1, -4, 0},
      {4, 3, 1, -5, 1},  {4, 3, 1, -5, 0},  {-2, 1, 2, -1, 1},
      {-2, 1, 2, -1, 0}, {-4, 2, 1, -2, 1}, {-6, 2, 1, -2, 0},
      {-6, 2, 1, -3, 1}, {-8, 2, 1, -3, 0}, {2, 1, 1, -1, 1},
      {4, 1, 1, -1, 0}};
  return v;
}

RatFun assembled_F() { return combo_flat(combo_F()); }

RatFun closed_F() {
  RatFun u = U(), v = V(), squ = SQU(), sqv = SQV(), lu = LU(), lv = LV();
  RatFun p1 = -(((u * v - C(1)) *
                 (C(1) + squ * (C(-1) - sqv - (squ + u - C(2)) * v +
                                u * v * sqv))) /
                ((squ - C(1)) * (sqv - C(1))));
  RatFun p2 = (squ * sqv *
               (u - C(1) - squ + u * (C(2) * u - squ - C(2)) * sqv +
                u * (squ + u - C(1)) * v + RatFun::es(5) * v * sqv) *
               lu) /
              ((squ - C(1)).pow(2) * (squ + C(1)));
  RatFun p3 = (sqv *
               (C(1) - squ * sqv *
                           (v - C(1) - sqv + u * v * (v + sqv - C(1)) +
                            squ * (sqv + C(2) * v - C(2)))) *
               lv) /
              ((sqv - C(1)).pow(2) * (sqv + C(1)));
  return C(2) * u * (p1 + p2 + p3) / (u * v - C(1)).pow(3);
}

const std::vector<DTerm>& combo_G() {
  static const std::vector<DTerm> v = {
      {2, 2, 2, -2, 1},  {2, 2, 2, -2, 0},  {2, 2, 2, -3, 1},
      {2, 2, 2, -3, 0},  {4, 3, 1, -4, 1},  {4, 3, 1, -4, 0},
      {4, 3, 1, -5, 1},  {4, 3, 1, -5, 0},  {-4, 2, 1, -2, 1},
      {-4, 2, 1, -2, 0}, {-4, 2, 1, -3, 1}, {-4, 2, 1, -3, 0},
      {-1, 1, 2, 0, 1},  {-1, 1, 2, -1, 1}, {-1, 1, 2, -1, 0},
      {-1, 1, 2, 0, 0},  {-1, 2, 1, -3, 1}, {-1, 2, 1, -2, 1},
      {-1, 2, 1, -3, 0}, {-1, 2, 1, -2, 0}, {-1, 2, 1, -2, 0},
      {-1, 2, 1, -2, 1}, {-1, 2, 1, -3, 0}, {-1, 2, 1, -3, 1},
      {1, 1, 1, -1, 1},  {1, 1, 1, 0, 1},  {1, 1, 1, -1, 0},
      {1, 1, 1, 0, 0}};
  return v;
}

RatFun assembled_G() { return combo_flat(combo_G()); }

RatFun closed_G() {
  RatFun u = U(), v = V(), squ = SQU(), sqv = SQV(), lu = LU(), lv = LV();
  RatFun num =
      squ *
      (u * (v - C(1)).pow(2) * (u * v * (u * (C(4) + v) - C(4)) - C(1)) * (-lu) +
       (u - C(1)) *
           ((C(1) + u * (v - C(2))) * (v - C(1)) * (u * v - C(1)) *
                (u * v + C(1)) +
            (u - C(1)) * v * (u * (v * (C(4) + u * v) - C(4)) - C(1)) * lv));
  RatFun den = (squ - C(1)).pow(2) * (squ + C(1)) * (sqv - C(1)).pow(2) *
               (sqv + C(1)) * (u * v - C(1)).pow(3);
  return -num / den;
}

const std::vector<DTerm>& combo_L() {
  static const std::vector<DTerm> v = {
      {-1, 1, 2, -1, 1}, {-1, 1, 2, 0, 1},  {-1, 1, 2, -1, 0},
      {-1, 1, 2, 0, 0},  {-1, 2, 1, -3, 1}, {-1, 2, 1, -2, 1},
      {-1, 2, 1, -3, 0}, {-1, 2, 1, -2, 0}, {1, 2, 1, -2, 0},
      {1, 2, 1, -2, 1},  {1, 2, 1, -3, 0},  {1, 2, 1, -3, 1},
      {1, 1, 1, -1, 1},  {1, 1, 1, 0, 1},   {1, 1, 1, -1, 0},
      {1, 1, 1, 0, 0}};
  return v;
}

RatFun assembled_L() { return combo_flat(combo_L()); }

RatFun closed_L() {
  RatFun u = U(), v = V(), squ = SQU(), sqv = SQV(), lu = LU(), lv = LV();
  RatFun num = squ * (u * (v - C(1)).pow(2) * (-lu) +
                      (u - C(1)) * ((v - C(1)) * (u * v - C(1)) +
                                    (v - u * v) * lv));
  RatFun den = (squ - C(1)).pow(2) * (squ + C(1)) * (sqv - C(1)).pow(2) *
               (sqv + C(1)) * (u * v - C(1));
  return num / den;
}

// Exponential-view hyperbolic shorthands built from es = e^{s/2}.
RatFun cosh_s() { return (RatFun::es(2) + RatFun::es(-2)) * Cq(1, 2); }
RatFun cosh_t() { return (RatFun::et(2) + RatFun::et(-2)) * Cq(1, 2); }
RatFun sinh_s() { return (RatFun::es(2) - RatFun::es(-2)) * Cq(1, 2); }
RatFun sinh_t() { return (RatFun::et(2) - RatFun::et(-2)) * Cq(1, 2); }
RatFun sinh_half_s() { return (RatFun::es(1) - RatFun::es(-1)) * Cq(1, 2); }
RatFun sinh_half_t() { return (RatFun::et(1) - RatFun::et(-1)) * Cq(1, 2); }
RatFun sinh_half_st() {
  return (RatFun::es(1) * RatFun::et(1) - RatFun::es(-1) * RatFun::et(-1)) *
         Cq(1, 2);
}
RatFun cosh_half_st() {
  return (RatFun::es(1) * RatFun::et(1) + RatFun::es(-1) * RatFun::et(-1)) *
         Cq(1, 2);
}
RatFun sinh_st() {
  return (RatFun::es(2) * RatFun::et(2) - RatFun::es(-2) * RatFun::et(-2)) *
         Cq(1, 2);
}

RatFun assembled_K() { return C(-2) * closed_f1() * mf_phi_half(); }

RatFun closed_K() {
  // 2 e^{x/2} (2 + e^x (x - 2) + x) / ((e^x - 1)^2 x)
  RatFun ex = RatFun::es(2), exh = RatFun::es(1), x = LU();
  return C(2) * exh * (C(2) + ex * (x - C(2)) + x) / ((ex - C(1)).pow(2) * x);
}

RatFun assembled_S() { return C(-2) * closed_g1() * mf_phi_half(); }

RatFun closed_S() {
  RatFun ex = RatFun::es(2), exh = RatFun::es(1), x = LU();
  RatFun num = C(-4) * ex * (sinh_s() - x);
  RatFun den = (exh - C(1)).pow(2) * (exh + C(1)).pow(2) * x;
  return num / den;
}

RatFun phi_half_t() { return mf_phi_half().swap_st(); }

RatFun assembled_H() {
  RatFun f1st = closed_f1().subst_s_to_s_plus_t();
  RatFun f2st = closed_f2().subst_s_to_s_plus_t();
  return C(-2) * f1st * mf_gfun() - C(4) * f2st * mf_phi_a() * phi_half_t() +
         C(4) * closed_F() * mf_psi() * phi_half_t();
}

RatFun h_core() {
  RatFun s = LU(), t = LV(), st = LU() + LV();
  RatFun num = -t * st * cosh_s() + s * st * cosh_t() -
               (s - t) * (st + sinh_s() + sinh_t() - sinh_st());
  RatFun den = s * t * st * sinh_half_s() * sinh_half_t() *
               sinh_half_st().pow(2);
  return num / den;
}

RatFun closed_H() { return -h_core(); }

RatFun assembled_T() {
  RatFun g1st = closed_g1().subst_s_to_s_plus_t();
  RatFun g2st = closed_f2().subst_s_to_s_plus_t();  // g2 == f2
  return C(-2) * g1st * mf_gfun() - C(4) * g2st * mf_phi_a() * phi_half_t() +
         C(4) * closed_G() * mf_psi() * phi_half_t();
}

RatFun closed_T() { return -cosh_half_st() * h_core(); }

RatFun assembled_W() {
  return C(4) * closed_L() * mf_psi() * phi_half_t();
}

RatFun closed_W() {
  RatFun s = LU(), t = LV();
  RatFun num = -s - t + t * cosh_s() + s * cosh_t() + sinh_s() + sinh_t() -
               sinh_st();
  RatFun den = s * t * sinh_half_s() * sinh_half_t() * sinh_half_st();
  return num / den;
}

RatFun closed_R1() {
  // (1/2 - sinh(x/2)/x) / sinh^2(x/4), with sinh^2(x/4) = (cosh(x/2)-1)/2.
  RatFun x = LU();
  RatFun shx2 = (RatFun::es(1) - RatFun::es(-1)) * Cq(1, 2);
  RatFun chx2 = (RatFun::es(1) + RatFun::es(-1)) * Cq(1, 2);
  return (Cq(1, 2) - shx2 / x) / ((chx2 - C(1)) * Cq(1, 2));
}

RatFun closed_R1g() {
  RatFun x = LU();
  RatFun shx2 = (RatFun::es(1) - RatFun::es(-1)) * Cq(1, 2);
  RatFun chx2 = (RatFun::es(1) + RatFun::es(-1)) * Cq(1, 2);
  return (Cq(1, 2) + shx2 / x) / ((chx2 + C(1)) * Cq(1, 2));
}

RatFun closed_R2() { return -(C(1) + cosh_half_st()) * h_core(); }
RatFun closed_R2g() { return -(C(1) - cosh_half_st()) * h_core(); }

}  // namespace

DCombo printed_combo(const std::string& name) {
  DCombo out;
  auto add = [&out](int c, int m, int mp, int a2, int b2) {
    auto key = std::array<int, 4>{m, mp, a2, b2};
    out[key] += c;
    if (out[key] == 0) out.erase(key);
  };
  if (name == "F" || name == "G" || name == "L") {
    const auto& v = name == "F" ? combo_F() : (name == "G" ? combo_G() : combo_L());
    for (const DTerm& t : v) add(t.c, t.m, t.mp, t.a2, t.b2);
    return out;
  }
  if (name == "f1") {
    add(-2, 2, 0, 1, 0);
    add(-2, 2, 0, 0, 0);
    add(1, 1, 0, 1, 0);
    add(3, 1, 0, 0, 0);
    add(-1, 0, 0, 0, 0);
    return out;
  }
  if (name == "f2" || name == "g2") {
    add(-4, 2, 0, 0, 0);
    add(4, 1, 0, 0, 0);
    return out;
  }
  if (name == "g1") {
    add(-2, 2, 0, 1, 0);
    add(-2, 2, 0, 0, 0);
    add(2, 1, 0, 1, 0);
    add(2, 1, 0, 0, 0);
    return out;
  }
  throw UnknownFunction("no printed combination for " + name);
}

RatFun combo_flatten(const DCombo& combo) {
  RatFun acc;
  for (const auto& [k, c] : combo) {
    RatFun kern = k[1] == 0 ? mf_Lm(k[0]) : mf_Dmm(k[0], k[1]);
    acc = acc + RatFun::constant(c) * kern * half_power_uv(k[2], k[3]);
  }
  return acc;
}

std::string combo_str(const DCombo& combo) {
  std::string out;
  auto halfpow = [](const char* v, int e2) {
    if (e2 == 0) return std::string();
    std::string s = std::string("*") + v + "^";
    if (e2 % 2 == 0) return s + std::to_string(e2 / 2);
    return s + std::to_string(e2) + "/2";
  };
  for (const auto& [k, c] : combo) {
    if (!out.empty()) out += " + ";
    out += c.get_str() + "*";
    out += k[1] == 0 ? "L" + std::to_string(k[0])
                     : "D" + std::to_string(k[0]) + std::to_string(k[1]);
    out += halfpow("u", k[2]);
    out += halfpow("v", k[3]);
  }
  return out.empty() ? "0" : out;
}

MpReal eval_assembled(const ModFunEntry& e, const MpReal& s, const MpReal& t,
                      const EvalConfig& cfg) {
  if (e.parts.empty()) {
    if (!e.assembled) throw UnknownFunction("no assembled form");
    return eval_st(*e.assembled, s, t, cfg);
  }
  MpReal acc = 0;
  for (const auto& [c, factors] : e.parts) {
    MpReal v = MpReal(c.get_num().get_str()) / MpReal(c.get_den().get_str());
    for (const RatFun& f : factors) v *= eval_st(f, s, t, cfg);
    acc += v;
  }
  return acc;
}

namespace {

EvalParts parts_H(int gsign) {
  // gsign +1: functions half (f-family, F); -1 marker unused.
  (void)gsign;
  return {
      {mpq_class(-2), {closed_f1().subst_s_to_s_plus_t(), mf_gfun()}},
      {mpq_class(-4),
       {closed_f2().subst_s_to_s_plus_t(), mf_phi_a(), phi_half_t()}},
      {mpq_class(4), {closed_F(), mf_psi(), phi_half_t()}}};
}

EvalParts parts_T() {
  return {
      {mpq_class(-2), {closed_g1().subst_s_to_s_plus_t(), mf_gfun()}},
      {mpq_class(-4),
       {closed_f2().subst_s_to_s_plus_t(), mf_phi_a(), phi_half_t()}},
      {mpq_class(4), {closed_G(), mf_psi(), phi_half_t()}}};
}

EvalParts parts_concat(EvalParts a, const EvalParts& b, const mpq_class& scale) {
  for (auto [c, fs] : b) a.push_back({c * scale, fs});
  return a;
}

}  // namespace

ModFunRegistry::ModFunRegistry() {
  auto put1 = [this](const std::string& n, RatFun closed,
                     std::optional<RatFun> asm_ = std::nullopt,
                     EvalParts parts = {}) {
    entries_[n] =
        ModFunEntry{std::move(closed), std::move(asm_), 1, std::move(parts)};
  };
  auto put2 = [this](const std::string& n, RatFun closed,
                     std::optional<RatFun> asm_ = std::nullopt,
                     EvalParts parts = {}) {
    entries_[n] =
        ModFunEntry{std::move(closed), std::move(asm_), 2, std::move(parts)};
  };

  put1("L0", mf_Lm(0));
  put1("L1", mf_Lm(1));
  put1("L2", mf_Lm(2));
  put2("D11", mf_Dmm(1, 1));
  put2("D22", mf_Dmm(2, 2));
  put2("D12", mf_Dmm(1, 2));
  put2("D21", mf_Dmm(2, 1));
  put2("D31", mf_Dmm(3, 1));
  put1("f1", closed_f1(), assembled_f1());
  put1("f2", closed_f2(), assembled_f2());
  put1("g1", closed_g1(), assembled_g1());
  put1("g2", closed_f2(), assembled_f2());
  put2("F", closed_F(), assembled_F(), combo_parts(combo_F()));
  put2("G", closed_G(), assembled_G(), combo_parts(combo_G()));
  put2("L", closed_L(), assembled_L(), combo_parts(combo_L()));
  put2("g", mf_gfun());
  RatFun ak = assembled_K(), as = assembled_S();
  RatFun ah = assembled_H(), at = assembled_T();
  put1("K", closed_K(), ak);
  put1("S", closed_S(), as);
  put2("H", closed_H(), ah, parts_H(1));
  put2("T", closed_T(), at, parts_T());
  put2("W", closed_W(), assembled_W());
  put1("R1", closed_R1(), ak + as);
  put2("R2", closed_R2(), ah + at, parts_concat(parts_H(1), parts_T(), 1));
  put1("R1g", closed_R1g(), ak - as);
  put2("R2g", closed_R2g(), ah - at, parts_concat(parts_H(1), parts_T(), -1));
}

const ModFunRegistry& ModFunRegistry::instance() {
  static ModFunRegistry reg;
  return reg;
}

const ModFunEntry& ModFunRegistry::get(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw UnknownFunction("no such function: " + name);
  return it->second;
}

std::vector<std::string> ModFunRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [n, e] : entries_) out.push_back(n);
  return out;
}

// ---------------------------------------------------------------------------
// Quadrature of the defining integrals.

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double tol,
                        int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double h = b - a;
  double whole = h / 6.0 * (fa + 4 * fm + fb);
  double left = h / 12.0 * (fa + 4 * flm + fm);
  double right = h / 12.0 * (fm + 4 * frm + fb);
  double err = left + right - whole;
  if (depth <= 0 || std::abs(err) < 15 * tol)
    return left + right + err / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, tol / 2, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, tol / 2, depth - 1);
}

double integrate_halfline(const std::function<double(double)>& g, double tol) {
  // x = y/(1-y) maps [0,1) to [0,inf); integrand g(x) dx = g(x) /(1-y)^2 dy.
  auto f = [&g](double y) {
    if (y >= 1.0) return 0.0;
    double x = y / (1.0 - y);
    double w = 1.0 / ((1.0 - y) * (1.0 - y));
    return g(x) * w;
  };
  double a = 0.0, b = 1.0 - 1e-12;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return adaptive_simpson(f, a, b, fa, fm, fb, tol, 48);
}

}  // namespace

double quad_Lm(int m, double u, double abs_tol) {
  auto g = [m, u](double x) {
    return std::pow(x, m) / std::pow(x + 1.0, m + 1) / (x * u + 1.0);
  };
  return integrate_halfline(g, abs_tol);
}

double quad_Dmm(int m, int mp, double u, double v, double abs_tol) {
  auto g = [m, mp, u, v](double x) {
    return 1.0 / std::pow(x / u + 1.0, m) * std::pow(x, m + mp - 1) /
           std::pow(x + 1.0, mp) / (x * v + 1.0);
  };
  return integrate_halfline(g, abs_tol);
}

std::function<double(double)> modfun_eval1(const RatFun& f, EvalConfig cfg) {
  return [f, cfg](double lambda) {
    MpReal s = log(MpReal(lambda));
    return eval_one_var(f, s, cfg).convert_to<double>();
  };
}

std::function<double(double, double)> modfun_eval2(const RatFun& f,
                                                   EvalConfig cfg) {
  return [f, cfg](double lu, double lv) {
    MpReal s = log(MpReal(lu));
    MpReal t = log(MpReal(lv));
    return eval_st(f, s, t, cfg).convert_to<double>();
  };
}

}  // namespace nct
