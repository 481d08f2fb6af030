#pragma once

#include "nct/parametrix.hpp"
#include "nct/reduce.hpp"

namespace nct {

enum class LogTargetKind { Linear, Bilinear };

struct LogKey {
  CoeffClass cls;
  LogTargetKind kind;
  int i = 1, j = 1;
  friend auto operator<=>(const LogKey&, const LogKey&) = default;
};

/// Curvature contribution in the log-Weyl-factor basis.  Linear targets are
/// d_i d_j (log k); bilinear targets are d_i(log k) d_j(log k).  Functions
/// live in the exponential view (arguments log Delta).  The container-level
/// -pi/tau2 prefactor is metadata, never multiplied in.
struct LogBasisExpr {
  std::map<LogKey, RatFun> terms;
  bool minus_pi_over_tau2 = true;

  void add(const LogKey& k, const RatFun& f);
};

using ResolvedSlots = std::map<GroupedKey, RatFun>;

/// Combination tables resolved to rational functions; slots whose table
/// matches a printed combination use the (exact-equal) closed form so the
/// log-basis stage stays small.
ResolvedSlots resolve_grouped(const GroupedModular& g, Half half);

/// Applies the log-derivative identities to the grouped basis form and the
/// global sign of the curvature recipe.
LogBasisExpr k_to_log(const ResolvedSlots& slots);

/// Ungraded: functions + forms.  Graded: functions - forms.
LogBasisExpr assemble_curvature(const LogBasisExpr& functions,
                                const LogBasisExpr& forms, bool graded);

/// The three functions of the assembled curvature, with the structural
/// coefficient checks (shared linear function, shared bilinear function,
/// antisymmetric W pair).  `w` is reported with the ungraded-orientation
/// sign, i.e. the assembled expression carries -i tau2 W on the (1,2) slot.
struct CurvatureView {
  RatFun r1, r2, w;
  bool has_w = false;
};

CurvatureView curvature_view(const LogBasisExpr& e);

}  // namespace nct
