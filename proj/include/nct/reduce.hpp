#pragma once

#include <optional>
#include <vector>

#include "nct/modfun.hpp"
#include "nct/symbol.hpp"

namespace nct {

struct ResidualTau2 : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PatternMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnmatchedTarget : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One summand after the polar change of variables: coefficient in (r, tau),
/// a cos^p sin^q angular factor, and the untouched word.
struct TrigTerm {
  ScalarPoly coeff;
  int cosp = 0;
  int sinq = 0;
  Word word;
};

/// Substitutes x1 -> r cos - r (t1/t2) sin, x2 -> (r/t2) sin.  b0 atoms are
/// reinterpreted against the radial form r^2 k^2 + 1 from here on.
std::vector<TrigTerm> polar_substitute(const SymbolExpr& x);

/// Angular integral over a full period.  Coefficients of the result are in
/// units of pi (flagged), the r/t2 Jacobian is not multiplied in, and any
/// surviving negative t2 power raises ResidualTau2.
struct AngularResult {
  SymbolExpr expr;
  bool pi_factor = true;
};
AngularResult angular_integrate(const std::vector<TrigTerm>& ts);

/// Delta^{q2/2}(base); base is a word over {Kpow, DK} only.
struct ModWordLetter {
  int q2 = 0;
  Word base;
  friend bool operator==(const ModWordLetter&, const ModWordLetter&) = default;
  friend auto operator<=>(const ModWordLetter&, const ModWordLetter&) = default;
  std::string str() const;
};

/// Lemma pattern of one radial term: either D_m applied to a single letter
/// or D_{m,m'} applied to a product of two letters.
struct RadialTerm {
  ScalarPoly coeff;  // tau-only; already includes the 1/2 from u = r^2
  bool two_var = false;
  int m = 0, mp = 0;
  ModWordLetter left, right;  // one-variable terms use `left` only
  std::string str() const;
};

struct ModularExpr {
  std::vector<RadialTerm> terms;
  bool pi_factor = true;
  void add(RadialTerm t);  // merges equal patterns
  std::string str() const;
};

/// Normal form of one angular word against the rearrangement lemmas;
/// exposed for tests.  `upow` is the u-power carried by the term.
struct LemmaPattern {
  bool two_var = false;
  int m = 0, mp = 0;
  ModWordLetter left, right;
};
LemmaPattern delta_twist_normalize(const Word& w, int upow);

ModularExpr radial_integrate(const AngularResult& a);

/// Collected basis form: per tau-prefactor class and derivative slot the
/// accumulated modular function.
enum class SlotKind { OneLinear, OneBilinear, TwoVar };
enum class CoeffClass { One, Tau1, TauAbs2, ITau2 };

struct GroupedKey {
  CoeffClass cls;
  SlotKind slot;
  int i = 1, j = 1;
  friend auto operator<=>(const GroupedKey&, const GroupedKey&) = default;
};

struct GroupedModular {
  std::map<GroupedKey, DCombo> slots;
  bool pi_factor = true;
};

GroupedModular collect_to_basis(const ModularExpr& m);

std::string coeff_class_str(CoeffClass c);
std::string slot_str(const GroupedKey& k);

}  // namespace nct
