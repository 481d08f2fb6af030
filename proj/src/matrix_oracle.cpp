#include "nct/matrix_oracle.hpp"

#include <Eigen/Eigenvalues>

namespace nct {

namespace {

CMat random_complex(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMat m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = std::complex<double>(u(rng), u(rng));
  return m;
}

}  // namespace

MatrixAssignment::MatrixAssignment(int dim, std::uint64_t seed, B0Form form)
    : dim_(dim), form_(form), rng_(seed), seed_(seed) {
  CMat a = random_complex(dim, rng_);
  k_ = a * a.adjoint();
  k_ += CMat::Identity(dim, dim) * 0.5;  // safely positive definite
  kinv_ = k_.inverse();

  Eigen::SelfAdjointEigenSolver<CMat> es(k_);
  kappa_ = es.eigenvalues();
  kvec_ = es.eigenvectors();

  std::uniform_real_distribution<double> u(0.3, 1.7);
  for (auto& v : vals_) v = u(rng_);
  vals_[static_cast<int>(Var::T2)] = u(rng_) + 0.4;  // keep away from zero
  refresh();
}

std::complex<double> MatrixAssignment::value(Var v) const {
  return vals_[static_cast<int>(v)];
}

void MatrixAssignment::set_value(Var v, std::complex<double> x) {
  vals_[static_cast<int>(v)] = x;
}

void MatrixAssignment::refresh() {
  std::complex<double> q;
  if (form_ == B0Form::XiQuadratic) {
    q = ScalarPoly::xi_form().eval_d(vals_);
  } else {
    auto r = vals_[static_cast<int>(Var::R)];
    q = r * r;
  }
  CMat m = q * (k_ * k_) + CMat::Identity(dim_, dim_);
  Eigen::FullPivLU<CMat> lu(m);
  if (!lu.isInvertible()) throw SingularB0("b0 base matrix is singular");
  b0_ = lu.inverse();
}

const CMat& MatrixAssignment::dk_matrix(int a, int b) const {
  auto it = dk_.find({a, b});
  if (it != dk_.end()) return it->second;
  // Deterministic per atom so that instances sharing a seed agree no matter
  // which expressions they evaluate first.
  std::mt19937_64 rng(seed_ ^ (0x9e3779b97f4a7c15ULL * (a * 64 + b + 1)));
  CMat r = random_complex(dim_, rng);
  CMat m = ((a + b) % 2 == 0) ? CMat(r + r.adjoint()) : CMat(r - r.adjoint());
  return dk_.emplace(std::make_pair(a, b), std::move(m)).first->second;
}

CMat MatrixAssignment::kpow(int n) const {
  CMat acc = CMat::Identity(dim_, dim_);
  const CMat& base = n >= 0 ? k_ : kinv_;
  for (int i = 0; i < std::abs(n); ++i) acc = acc * base;
  return acc;
}

CMat MatrixAssignment::eval(const SymbolExpr& x) const {
  CMat acc = CMat::Zero(dim_, dim_);
  for (const auto& [w, c] : x.terms()) {
    CMat m = CMat::Identity(dim_, dim_);
    for (const Atom& at : w) {
      switch (at.kind) {
        case Atom::Kind::Kpow: m = m * kpow(at.a); break;
        case Atom::Kind::DK: m = m * dk_matrix(at.a, at.b); break;
        case Atom::Kind::B0pow:
          for (int i = 0; i < at.a; ++i) m = m * b0_;
          break;
      }
    }
    acc += c.eval_d(vals_) * m;
  }
  return acc;
}

CMat MatrixAssignment::delta_power(const CMat& x, int q2) const {
  return kpow(-q2) * x * kpow(q2);
}

CMat MatrixAssignment::mod_apply1(const std::function<double(double)>& f,
                                  const CMat& x) const {
  CMat xt = kvec_.adjoint() * x * kvec_;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      double lam = (kappa_(j) / kappa_(i)) * (kappa_(j) / kappa_(i));
      xt(i, j) *= f(lam);
    }
  return kvec_ * xt * kvec_.adjoint();
}

CMat MatrixAssignment::mod_apply2(const std::function<double(double, double)>& f,
                                  const CMat& x, const CMat& y) const {
  CMat xt = kvec_.adjoint() * x * kvec_;
  CMat yt = kvec_.adjoint() * y * kvec_;
  CMat zt = CMat::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      std::complex<double> s = 0.0;
      for (int l = 0; l < dim_; ++l) {
        double lu = (kappa_(l) / kappa_(i)) * (kappa_(l) / kappa_(i));
        double lv = (kappa_(j) / kappa_(l)) * (kappa_(j) / kappa_(l));
        s += f(lu, lv) * xt(i, l) * yt(l, j);
      }
      zt(i, j) = s;
    }
  return kvec_ * zt * kvec_.adjoint();
}

double rel_err(const CMat& a, const CMat& b) {
  double scale = std::max({a.norm(), b.norm(), 1e-30});
  return (a - b).norm() / scale;
}

}  // namespace nct
