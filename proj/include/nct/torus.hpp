#pragma once

#include <complex>
#include <map>
#include <vector>

#include "nct/ratfun.hpp"

namespace nct {

struct IncompatibleParams : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TruncationTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Deformation parameter theta = theta_num / grid keeps every twisted
/// product an exact grid shift.
struct TorusParams {
  long theta_num = 1;
  long grid = 1024;  // power of two
  std::complex<double> tau{0.0, 1.0};

  double tau1() const { return tau.real(); }
  double tau2() const { return tau.imag(); }
  friend bool operator==(const TorusParams&, const TorusParams&) = default;
};

/// Function of the single unitary U, sampled on the uniform circle grid.
struct CircleFun {
  std::vector<std::complex<double>> samples;

  static CircleFun zero(long grid);
  static CircleFun constant(long grid, std::complex<double> v);
  /// Sum of c_m U^m over the given modes.
  static CircleFun from_modes(long grid,
                              const std::map<long, std::complex<double>>& modes);

  long grid() const { return static_cast<long>(samples.size()); }
  CircleFun rotated(long shift) const;  // U -> e^{2 pi i shift/G} U
  std::vector<std::complex<double>> modes() const;
  double max_abs() const;
  /// Relative Fourier mass beyond grid/4 (smoothness guard).
  double tail_fraction() const;
};

CircleFun operator+(const CircleFun& a, const CircleFun& b);
CircleFun operator*(const CircleFun& a, const CircleFun& b);
CircleFun cf_scale(const CircleFun& a, std::complex<double> c);
CircleFun cf_exp(const CircleFun& a);
CircleFun cf_conj(const CircleFun& a);

/// Finitely supported family n -> g_n(U), representing sum g_n(U) V^n.
class TorusElem {
 public:
  explicit TorusElem(TorusParams p) : params_(std::move(p)) {}
  static TorusElem from_circle(const TorusParams& p, const CircleFun& f,
                               long n = 0);

  const TorusParams& params() const { return params_; }
  const std::map<long, CircleFun>& components() const { return comps_; }
  void set_component(long n, CircleFun f);
  const CircleFun* component(long n) const;
  bool empty() const { return comps_.empty(); }

  std::complex<double> trace() const;  // the (0,0) Fourier coefficient
  double max_abs() const;

 private:
  std::map<long, CircleFun> comps_;
  TorusParams params_;
};

TorusElem te_add(const TorusElem& a, const TorusElem& b);
TorusElem te_scale(const TorusElem& a, std::complex<double> c);
TorusElem te_mul(const TorusElem& a, const TorusElem& b);
TorusElem te_delta(int j, const TorusElem& a);
TorusElem te_star(const TorusElem& a);

/// f(log Delta) applied componentwise: exact pointwise multiplier
/// f(h(rot_n U) - h(U)) on the n-th component.  h must be real-valued.
TorusElem mod_apply1(const RatFun& f, const TorusElem& x, const CircleFun& h,
                     const EvalConfig& cfg = {});

/// Two-variable version acting on the factors of a product x*y.
TorusElem mod_apply2(const RatFun& f, const TorusElem& x, const TorusElem& y,
                     const CircleFun& h, const EvalConfig& cfg = {});

/// Taylor-in-ad(-h) fallback for Weyl exponents with V-modes, series order
/// `order`; guarded by a crude commutator-norm estimate.  Not used by the
/// acceptance path.
TorusElem mod_apply1_taylor(const RatFun& f, const TorusElem& x,
                            const TorusElem& h, int order = 24);

/// The curvature functionals evaluated in the torus model (theorem bracket
/// without the -pi/tau2 prefactor); log k = h/2 must depend on U only.
TorusElem curvature_numeric(const CircleFun& h, const TorusParams& p,
                            bool graded, const EvalConfig& cfg = {});

/// |t(R)| / max(1e-30, sup-norm of R over the grid).
double gauss_bonnet_check(const CircleFun& h, const TorusParams& p,
                          const EvalConfig& cfg = {});

struct HeatResult {
  double c_minus1 = 0, c0 = 0, c1 = 0;
  double flat_c_minus1 = 0, flat_c0 = 0;
};

/// Spectral side: dense per-block eigensolve of k d*d k truncated to
/// |m|, |n| <= M, small-time fit of Trace(a e^{-t Block}).  Throws
/// TruncationTooSmall when the flat calibration misses pi/tau2 by > 1%.
HeatResult heat_oracle(const CircleFun& h, const TorusParams& p,
                       const CircleFun& a, int M,
                       const std::vector<double>& t_grid);

}  // namespace nct
