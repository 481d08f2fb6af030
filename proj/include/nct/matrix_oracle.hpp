#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <map>
#include <random>

#include "nct/symbol.hpp"

namespace nct {

using CMat = Eigen::MatrixXcd;

/// Numeric substitution homomorphism for the word algebra.  k is positive
/// definite Hermitian; every DK atom gets an independent matrix compatible
/// with the star structure (Hermitian for even |multi-index|, skew for odd);
/// b0 is forced to the inverse of (form * k^2 + 1), so the b0 rewrite rules
/// are relations of the model rather than free choices.
class MatrixAssignment {
 public:
  enum class B0Form { XiQuadratic, RadialSquare };

  MatrixAssignment(int dim, std::uint64_t seed, B0Form form = B0Form::XiQuadratic);

  int dim() const { return dim_; }
  const CMat& k() const { return k_; }
  std::complex<double> value(Var v) const;
  void set_value(Var v, std::complex<double> x);
  /// Recompute the b0 matrix after a value change.
  void refresh();

  CMat eval(const SymbolExpr& x) const;

  /// Conjugation power Delta^{q2/2}(X) = k^{-q2} X k^{q2}.
  CMat delta_power(const CMat& x, int q2) const;

  /// One- and two-variable modular functional calculus in k's eigenbasis.
  CMat mod_apply1(const std::function<double(double)>& f, const CMat& x) const;
  CMat mod_apply2(const std::function<double(double, double)>& f, const CMat& x,
                  const CMat& y) const;

 private:
  const CMat& dk_matrix(int a, int b) const;
  CMat kpow(int n) const;

  int dim_;
  B0Form form_;
  CMat k_, kinv_, b0_;
  Eigen::VectorXd kappa_;  // eigenvalues of k
  CMat kvec_;              // eigenvectors of k
  mutable std::map<std::pair<int, int>, CMat> dk_;
  mutable std::mt19937_64 rng_;
  std::uint64_t seed_;
  std::complex<double> vals_[5];
};

double rel_err(const CMat& a, const CMat& b);

}  // namespace nct
