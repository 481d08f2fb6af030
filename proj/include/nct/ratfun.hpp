#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>

#include "nct/scalar_poly.hpp"  // MpReal

namespace nct {

/// Polynomial over Q in four generators.  Two readings of the same object:
/// rational view (sqrt u, sqrt v, log u, log v) and exponential view
/// (e^{s/2}, e^{t/2}, s, t); they are identified by u = e^s, v = e^t.
class Poly4 {
 public:
  using Key = std::array<int, 4>;  // exponents of (su, sv, lu, lv)

  Poly4() = default;
  static Poly4 constant(const mpq_class& c);
  static Poly4 gen(int which, int exp = 1);

  void add_term(const Key& k, const mpq_class& c);
  bool is_zero() const { return terms_.empty(); }
  const std::map<Key, mpq_class>& terms() const { return terms_; }

  Poly4& operator+=(const Poly4& o);
  Poly4& operator-=(const Poly4& o);
  friend Poly4 operator+(Poly4 a, const Poly4& b) { return a += b; }
  friend Poly4 operator-(Poly4 a, const Poly4& b) { return a -= b; }
  friend Poly4 operator*(const Poly4& a, const Poly4& b);
  friend bool operator==(const Poly4& a, const Poly4& b) {
    return a.terms_ == b.terms_;
  }

  /// Substitutes generator i by gens[i] (polynomial substitution).
  Poly4 subst(const std::array<Poly4, 4>& gens) const;

  /// Divides by the largest common monomial and the rational content.
  /// Returns the removed monomial/content (unused by most callers).
  void strip_content();

  std::string str() const;

 private:
  std::map<Key, mpq_class> terms_;
};

struct NotRational : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Quotient of Poly4's.  Written for exactness, not canonical form: equality
/// is decided by cross-multiplication.
class RatFun {
 public:
  RatFun() : num_(Poly4::constant(0)), den_(Poly4::constant(1)) {}
  RatFun(Poly4 n, Poly4 d);
  static RatFun constant(const mpq_class& c);
  static RatFun from_long(long n) { return constant(mpq_class(n)); }

  // Generators, exponential view naming: es = e^{s/2}, et = e^{t/2}.
  static RatFun es(int exp = 1);
  static RatFun et(int exp = 1);
  static RatFun s();
  static RatFun t();

  const Poly4& num() const { return num_; }
  const Poly4& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFun operator+(const RatFun& o) const;
  RatFun operator-(const RatFun& o) const;
  RatFun operator*(const RatFun& o) const;
  RatFun operator/(const RatFun& o) const;
  RatFun operator-() const;
  RatFun pow(int e) const;

  /// Exact equality as functions (cross-multiplied identity).
  bool equal(const RatFun& o) const;

  /// Substitute s -> s + t (u -> uv in the rational view); input must only
  /// use the s-slot generators.
  RatFun subst_s_to_s_plus_t() const;
  /// Swap the s-slot and t-slot generators.
  RatFun swap_st() const;

  std::string str() const;

 private:
  Poly4 num_, den_;
};

/// Half-integer monomial multiplier u^{a/2} v^{b/2} (Delta-twist absorption).
RatFun half_power_uv(int a2, int b2);

struct EvalConfig {
  unsigned precision = 40;     // decimal digits, >= 33
  double singular_radius = 1e-3;
  int taylor_order = 10;
};

/// Evaluates in the exponential view at real (s, t).  Within
/// `singular_radius` of {s=0}, {t=0}, {s+t=0} switches to series expansion
/// about the singular set (exact bivariate series at the corner).
MpReal eval_st(const RatFun& f, const MpReal& s, const MpReal& t,
               const EvalConfig& cfg);

/// Same function read in the rational view at (u, v), u, v > 0.
MpReal eval_uv(const RatFun& f, const MpReal& u, const MpReal& v,
               const EvalConfig& cfg);

MpReal eval_one_var(const RatFun& f, const MpReal& s, const EvalConfig& cfg);

}  // namespace nct
