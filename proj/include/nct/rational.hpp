#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

namespace nct {

/// Exact Gaussian rational re + im*I. Components are GMP rationals kept in
/// lowest terms with positive denominator (gmp canonical form).
struct GaussRat {
  mpq_class re, im;

  GaussRat() : re(0), im(0) {}
  GaussRat(long n) : re(n), im(0) {}  // NOLINT: implicit by design
  GaussRat(mpq_class r) : re(std::move(r)), im(0) {}
  GaussRat(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRat imag_unit() { return GaussRat(mpq_class(0), mpq_class(1)); }
  static GaussRat frac(long n, long d);

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  GaussRat conj() const { return GaussRat(re, -im); }

  GaussRat& operator+=(const GaussRat& o);
  GaussRat& operator-=(const GaussRat& o);
  GaussRat& operator*=(const GaussRat& o);
  GaussRat& operator/=(const GaussRat& o);

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend GaussRat operator-(const GaussRat& a) { return GaussRat(-a.re, -a.im); }

  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re == b.re && a.im == b.im;
  }

  std::complex<double> to_complex() const {
    return {re.get_d(), im.get_d()};
  }

  /// Canonical text form: "(3)", "(-1/2)", "(2+1/3*I)", "(0-1*I)".
  std::string str() const;
};

mpq_class rat(long n, long d = 1);

}  // namespace nct
