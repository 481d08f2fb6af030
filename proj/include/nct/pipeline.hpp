#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nct/logform.hpp"
#include "nct/parametrix.hpp"
#include "nct/reduce.hpp"
#include "nct/torus.hpp"

namespace nct {

/// Memoized stage outputs for one Laplacian half.
struct PipelineArtifacts {
  OperatorSymbol op;
  ParametrixTerms par;
  AngularResult angular;
  ModularExpr radial;
  GroupedModular grouped;
  LogBasisExpr logbasis;
};

const PipelineArtifacts& pipeline(Half half);

LogBasisExpr curvature_logbasis(bool graded);

struct CheckResult {
  std::string name;
  bool pass = false;
  double residual = 0.0;  // 0 for exact checks
  std::string detail;
};

/// Named verification suites; `seed` feeds the randomized oracles.
///   goldens      appendix spot checks (exact)
///   residual     parametrix composition residual (exact)
///   angular      angular-stage spot terms + t2 Laurent freedom (exact)
///   radial       radial-stage expected patterns (exact)
///   closedforms  assembled-vs-closed identities + limit values
///   oracle       matrix / quadrature oracles for every rewrite stage
///   gaussbonnet  numeric trace-of-curvature residuals
///   commutative  theta = 0 curvature against the flat-basis value
///   lemma51      log-derivative identities in the torus model
///   heat         spectral-side stretch check (non-gating)
std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed);

std::vector<std::string> suite_names();  // gating suites, in order
std::vector<CheckResult> verify_all(std::uint64_t seed);

/// Golden-vector tables (expression-grammar text, one expected bundle per
/// structural family).
struct GoldenBundle {
  std::string name;
  Half half;
  std::vector<std::string> lines;  // transcribed source lines
};
const std::vector<GoldenBundle>& appendix_goldens();

}  // namespace nct
