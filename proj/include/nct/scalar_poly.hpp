#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <map>
#include <stdexcept>
#include <string>

#include "nct/rational.hpp"

namespace nct {

using MpReal = boost::multiprecision::mpfr_float;

/// Minimal complex on top of mpfr reals; just what exact-polynomial
/// evaluation needs.
struct MpComplex {
  MpReal re, im;
  MpComplex() : re(0), im(0) {}
  MpComplex(MpReal r) : re(std::move(r)), im(0) {}
  MpComplex(MpReal r, MpReal i) : re(std::move(r)), im(std::move(i)) {}

  MpComplex operator+(const MpComplex& o) const { return {re + o.re, im + o.im}; }
  MpComplex operator-(const MpComplex& o) const { return {re - o.re, im - o.im}; }
  MpComplex operator*(const MpComplex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  MpComplex operator/(const MpComplex& o) const {
    MpReal n2 = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / n2, (im * o.re - re * o.im) / n2};
  }
  MpReal abs() const { return sqrt(re * re + im * im); }
};

/// Scalar indeterminates of the coefficient ring.
enum class Var { T1, T2, X1, X2, R };

/// Exponent vector; T2 may be negative (Laurent), the rest are naturals.
struct ScalarMono {
  int x1 = 0, x2 = 0, r = 0, t1 = 0, t2 = 0;

  int grade() const { return x1 + x2 + r + t1 + t2; }
  int xi_degree() const { return x1 + x2; }

  // Graded-lex over (X1, X2, R, T1, T2).
  friend bool operator<(const ScalarMono& a, const ScalarMono& b) {
    if (a.grade() != b.grade()) return a.grade() < b.grade();
    if (a.x1 != b.x1) return a.x1 < b.x1;
    if (a.x2 != b.x2) return a.x2 < b.x2;
    if (a.r != b.r) return a.r < b.r;
    if (a.t1 != b.t1) return a.t1 < b.t1;
    return a.t2 < b.t2;
  }
  friend bool operator==(const ScalarMono& a, const ScalarMono& b) {
    return a.x1 == b.x1 && a.x2 == b.x2 && a.r == b.r && a.t1 == b.t1 &&
           a.t2 == b.t2;
  }

  ScalarMono times(const ScalarMono& o) const {
    return {x1 + o.x1, x2 + o.x2, r + o.r, t1 + o.t1, t2 + o.t2};
  }
  std::string str() const;  // "t1^2*x1" etc., "1" for the unit monomial
};

struct MissingAssignment : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DivisionByZero : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact polynomial over GaussRat; canonical (no zero coefficients).
class ScalarPoly {
 public:
  ScalarPoly() = default;
  explicit ScalarPoly(GaussRat c) { add_term({}, std::move(c)); }
  ScalarPoly(long n) { add_term({}, GaussRat(n)); }  // NOLINT

  static ScalarPoly var(Var v, int exp = 1);
  static ScalarPoly one() { return ScalarPoly(1); }
  /// t1^2 + t2^2 (the expanded |tau|^2).
  static ScalarPoly tau_abs2();
  /// x1^2 + 2 t1 x1 x2 + (t1^2+t2^2) x2^2 (the shared leading quadratic form).
  static ScalarPoly xi_form();

  void add_term(const ScalarMono& m, GaussRat c);
  bool is_zero() const { return terms_.empty(); }
  const std::map<ScalarMono, GaussRat>& terms() const { return terms_; }

  ScalarPoly& operator+=(const ScalarPoly& o);
  ScalarPoly& operator-=(const ScalarPoly& o);
  friend ScalarPoly operator+(ScalarPoly a, const ScalarPoly& b) { return a += b; }
  friend ScalarPoly operator-(ScalarPoly a, const ScalarPoly& b) { return a -= b; }
  friend ScalarPoly operator*(const ScalarPoly& a, const ScalarPoly& b);
  friend ScalarPoly operator-(const ScalarPoly& a);
  friend bool operator==(const ScalarPoly& a, const ScalarPoly& b) {
    return a.terms_ == b.terms_;
  }

  ScalarPoly scaled(const GaussRat& c) const;
  ScalarPoly conj() const;
  /// d/d(xi_i), i in {1,2}; acts on monomial exponents only.
  ScalarPoly dxi(int i) const;

  /// GaussRat coefficient at a monomial (zero if absent).
  GaussRat coeff(const ScalarMono& m) const;

  /// All monomials share the same xi-degree?  (Needed before order queries.)
  bool xi_homogeneous() const;
  int xi_degree() const;  // throws MixedDegree via logic_error if inhomogeneous
  int min_t2_exponent() const;

  std::complex<double> eval_d(const std::complex<double> vals[5]) const;
  MpComplex eval_mp(const MpComplex vals[5]) const;

  /// Quotient/remainder under division by the leading quadratic form
  /// (monic in x1), used by the b0 reduction rule.
  std::pair<ScalarPoly, ScalarPoly> divmod_xi_form() const;

  std::string str() const;

 private:
  std::map<ScalarMono, GaussRat> terms_;
};

struct MixedDegree : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace nct
