#include "nct/logform.hpp"

namespace nct {

void LogBasisExpr::add(const LogKey& k, const RatFun& f) {
  auto it = terms.find(k);
  if (it == terms.end())
    terms.emplace(k, f);
  else
    it->second = it->second + f;
}

ResolvedSlots resolve_grouped(const GroupedModular& g, Half half) {
  const auto& reg = ModFunRegistry::instance();
  ResolvedSlots out;
  for (const auto& [key, combo] : g.slots) {
    const char* name = nullptr;
    int mult = 1;
    switch (key.slot) {
      case SlotKind::OneLinear:
        name = half == Half::Functions ? "f1" : "g1";
        if (key.i != key.j) mult = 2;  // d1d2 and d2d1 merge on one letter
        break;
      case SlotKind::OneBilinear:
        name = half == Half::Functions ? "f2" : "g2";
        break;
      case SlotKind::TwoVar:
        if (key.cls == CoeffClass::ITau2) {
          name = "L";
          mult = (key.i == 1 && key.j == 2) ? -1 : 1;
        } else {
          name = half == Half::Functions ? "F" : "G";
        }
        break;
    }
    DCombo want = printed_combo(name);
    if (mult != 1)
      for (auto& [k, c] : want) c *= mult;
    if (combo == want) {
      out.emplace(key, reg.get(name).closed * RatFun::from_long(mult));
    } else {
      out.emplace(key, combo_flatten(combo));
    }
  }
  return out;
}

LogBasisExpr k_to_log(const ResolvedSlots& slots) {
  LogBasisExpr out;
  RatFun minus_one = RatFun::from_long(-1);
  RatFun phi_half_t = mf_phi_half().swap_st();
  for (const auto& [key, fun] : slots) {
    switch (key.slot) {
      case SlotKind::OneLinear: {
        // k^-1 didj(k) = 2 (D^{1/2}-1)/logD (didj log k)
        //              + g(D1,D2)(dj di) + g(D1,D2)(di dj), on log k.
        int i = std::min(key.i, key.j), j = std::max(key.i, key.j);
        out.add(LogKey{key.cls, LogTargetKind::Linear, i, j},
                minus_one * fun * RatFun::from_long(2) * mf_phi_half());
        RatFun fst = fun.subst_s_to_s_plus_t();
        RatFun bil = minus_one * fst * mf_gfun();
        if (key.i == key.j) {
          out.add(LogKey{key.cls, LogTargetKind::Bilinear, key.i, key.i},
                  bil * RatFun::from_long(2));
        } else {
          out.add(LogKey{key.cls, LogTargetKind::Bilinear, key.j, key.i}, bil);
          out.add(LogKey{key.cls, LogTargetKind::Bilinear, key.i, key.j}, bil);
        }
        break;
      }
      case SlotKind::OneBilinear: {
        // k^-2 di(k) dj(k) = 4 (D-D^{1/2})/logD (di log k)
        //                      (D^{1/2}-1)/logD (dj log k).
        RatFun fst = fun.subst_s_to_s_plus_t();
        out.add(LogKey{key.cls, LogTargetKind::Bilinear, key.i, key.j},
                minus_one * fst * RatFun::from_long(4) * mf_phi_a() * phi_half_t);
        break;
      }
      case SlotKind::TwoVar: {
        // (di(k)k^-1) = -2 (D^{-1/2}-1)/logD (di log k),
        // (k^-1 dj(k)) =  2 (D^{1/2}-1)/logD (dj log k).
        out.add(LogKey{key.cls, LogTargetKind::Bilinear, key.i, key.j},
                minus_one * fun * RatFun::from_long(-4) * mf_psi() * phi_half_t);
        break;
      }
    }
  }
  for (auto it = out.terms.begin(); it != out.terms.end();)
    it = it->second.is_zero() ? out.terms.erase(it) : std::next(it);
  return out;
}

LogBasisExpr assemble_curvature(const LogBasisExpr& functions,
                                const LogBasisExpr& forms, bool graded) {
  LogBasisExpr out = functions;
  for (const auto& [k, f] : forms.terms)
    out.add(k, graded ? -f : f);
  for (auto it = out.terms.begin(); it != out.terms.end();)
    it = it->second.is_zero() ? out.terms.erase(it) : std::next(it);
  return out;
}

namespace {

const RatFun& find_term(const LogBasisExpr& e, const LogKey& k,
                        const char* what) {
  auto it = e.terms.find(k);
  if (it == e.terms.end())
    throw UnmatchedTarget(std::string("missing curvature slot: ") + what);
  return it->second;
}

}  // namespace

CurvatureView curvature_view(const LogBasisExpr& e) {
  CurvatureView v;
  v.r1 = find_term(e, {CoeffClass::One, LogTargetKind::Linear, 1, 1}, "d1^2");
  const RatFun& lin22 =
      find_term(e, {CoeffClass::TauAbs2, LogTargetKind::Linear, 2, 2}, "d2^2");
  const RatFun& lin12 =
      find_term(e, {CoeffClass::Tau1, LogTargetKind::Linear, 1, 2}, "d1d2");
  if (!v.r1.equal(lin22) || !(v.r1 * RatFun::from_long(2)).equal(lin12))
    throw UnmatchedTarget("linear slots do not share the R1 function");

  v.r2 = find_term(e, {CoeffClass::One, LogTargetKind::Bilinear, 1, 1}, "d1 d1");
  const RatFun& b22 = find_term(
      e, {CoeffClass::TauAbs2, LogTargetKind::Bilinear, 2, 2}, "d2 d2");
  const RatFun& b12 =
      find_term(e, {CoeffClass::Tau1, LogTargetKind::Bilinear, 1, 2}, "d1 d2");
  const RatFun& b21 =
      find_term(e, {CoeffClass::Tau1, LogTargetKind::Bilinear, 2, 1}, "d2 d1");
  if (!v.r2.equal(b22) || !v.r2.equal(b12) || !v.r2.equal(b21))
    throw UnmatchedTarget("bilinear slots do not share the R2 function");

  auto it12 = e.terms.find({CoeffClass::ITau2, LogTargetKind::Bilinear, 1, 2});
  auto it21 = e.terms.find({CoeffClass::ITau2, LogTargetKind::Bilinear, 2, 1});
  if (it12 != e.terms.end() || it21 != e.terms.end()) {
    if (it12 == e.terms.end() || it21 == e.terms.end())
      throw UnmatchedTarget("lone antisymmetric W slot");
    if (!it12->second.equal(-(it21->second)))
      throw UnmatchedTarget("W slots are not antisymmetric");
    v.w = -it12->second;
    v.has_w = true;
  }
  return v;
}

}  // namespace nct
