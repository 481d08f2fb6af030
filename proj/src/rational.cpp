#include "nct/rational.hpp"

#include <stdexcept>

namespace nct {

mpq_class rat(long n, long d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

GaussRat GaussRat::frac(long n, long d) { return GaussRat(rat(n, d)); }

GaussRat& GaussRat::operator+=(const GaussRat& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussRat& GaussRat::operator-=(const GaussRat& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussRat& GaussRat::operator*=(const GaussRat& o) {
  mpq_class r = re * o.re - im * o.im;
  mpq_class i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussRat& GaussRat::operator/=(const GaussRat& o) {
  mpq_class n2 = o.re * o.re + o.im * o.im;
  if (n2 == 0) throw std::domain_error("division by zero GaussRat");
  mpq_class r = (re * o.re + im * o.im) / n2;
  mpq_class i = (im * o.re - re * o.im) / n2;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

std::string GaussRat::str() const {
  auto q = [](const mpq_class& x) { return x.get_str(); };
  if (im == 0) return "(" + q(re) + ")";
  std::string s = "(" + q(re);
  if (im > 0)
    s += "+" + q(im) + "*I";
  else
    s += "-" + q(mpq_class(-im)) + "*I";
  return s + ")";
}

}  // namespace nct
