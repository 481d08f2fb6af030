#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nct/ratfun.hpp"

namespace nct {

struct UnknownFunction : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact combination table: key (m, m', a2, b2) stands for
/// D_{m,m'}(u,v) u^{a2/2} v^{b2/2} (two-variable) or, with m' = 0, for
/// L_m(u) u^{a2/2}.  The collected pipeline output and the printed
/// combination definitions live in this form; flattening to a single
/// rational function is reserved for the one-time closed-form identities.
using DCombo = std::map<std::array<int, 4>, mpq_class>;

DCombo printed_combo(const std::string& name);  // f1 f2 g1 g2 F G L
RatFun combo_flatten(const DCombo& combo);
std::string combo_str(const DCombo& combo);

/// Linear combination of products of small rational functions; the faithful
/// numeric reading of an assembled definition (the flattened RatFun is kept
/// for exact identity checking but its coefficients grow too large for
/// floating evaluation).
using EvalParts = std::vector<std::pair<mpq_class, std::vector<RatFun>>>;

/// One- and two-variable modular functions: the pipeline-assembled
/// combination (when one exists) and the closed form, both exact.
struct ModFunEntry {
  RatFun closed;
  std::optional<RatFun> assembled;
  int vars = 1;
  EvalParts parts;  // empty: evaluate `assembled` directly
};

MpReal eval_assembled(const ModFunEntry& e, const MpReal& s, const MpReal& t,
                      const EvalConfig& cfg);

class ModFunRegistry {
 public:
  static const ModFunRegistry& instance();
  const ModFunEntry& get(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  ModFunRegistry();
  std::map<std::string, ModFunEntry> entries_;
};

/// Modified logarithm of weight m (closed form).
RatFun mf_Lm(int m);

/// Two-variable rearrangement kernels; supported (m, m') pairs are the five
/// the pipeline needs.
RatFun mf_Dmm(int m, int mp);

// One-variable building blocks in the s-slot.
RatFun mf_phi_half();  // (e^{x/2}-1)/x
RatFun mf_phi_a();     // (e^x-e^{x/2})/x
RatFun mf_psi();       // (e^{-x/2}-1)/x
RatFun mf_gfun();      // g(u,v) of the log-derivative identity

bool normal_equal(const RatFun& a, const RatFun& b);

/// Defining-integral quadrature (adaptive Simpson after mapping to [0,1]).
double quad_Lm(int m, double u, double abs_tol = 1e-11);
double quad_Dmm(int m, int mp, double u, double v, double abs_tol = 1e-11);

/// Double-precision evaluators for the matrix-side modular calculus.
std::function<double(double)> modfun_eval1(const RatFun& f, EvalConfig cfg = {});
std::function<double(double, double)> modfun_eval2(const RatFun& f,
                                                   EvalConfig cfg = {});

}  // namespace nct
