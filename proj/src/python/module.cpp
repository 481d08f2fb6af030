#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nct/pipeline.hpp"
#include "nct/symbol_io.hpp"

namespace py = pybind11;

namespace {

std::string stage_text(const std::string& half, const std::string& stage) {
  nct::Half h = half == "forms" ? nct::Half::Forms : nct::Half::Functions;
  const nct::PipelineArtifacts& a = nct::pipeline(h);
  if (stage == "symbols")
    return a.op.a2.str() + "\n" + a.op.a1.str() + "\n" + a.op.a0.str();
  if (stage == "b2") return a.par.b2.str();
  if (stage == "angular") return a.angular.expr.str();
  if (stage == "radial") return a.radial.str();
  if (stage == "grouped") {
    std::string out;
    for (const auto& [key, fun] : a.grouped.slots)
      out += nct::slot_str(key) + "\n";
    return out;
  }
  throw std::invalid_argument("unknown stage: " + stage);
}

py::list run_suite_py(const std::string& suite, std::uint64_t seed) {
  py::list out;
  for (const nct::CheckResult& c : nct::run_suite(suite, seed)) {
    py::dict d;
    d["name"] = c.name;
    d["pass"] = c.pass;
    d["residual"] = c.residual;
    d["detail"] = c.detail;
    out.append(d);
  }
  return out;
}

double modfun_eval_py(const std::string& name, double s, double t,
                      unsigned precision) {
  nct::EvalConfig cfg;
  cfg.precision = precision;
  const auto& e = nct::ModFunRegistry::instance().get(name);
  return nct::eval_st(e.closed, nct::MpReal(s), nct::MpReal(t), cfg)
      .convert_to<double>();
}

bool modfun_verify_py(const std::string& name) {
  const auto& e = nct::ModFunRegistry::instance().get(name);
  return e.assembled && nct::normal_equal(*e.assembled, e.closed);
}

py::dict curvature_py(bool graded) {
  nct::CurvatureView v = nct::curvature_view(nct::curvature_logbasis(graded));
  py::dict d;
  d["prefactor"] = "-pi/tau2";
  d["R1"] = v.r1.str();
  d["R2"] = v.r2.str();
  d["W"] = v.has_w ? v.w.str() : std::string("0");
  return d;
}

double gauss_bonnet_py(std::vector<std::pair<long, std::complex<double>>> modes,
                       long theta_num, long grid, std::complex<double> tau) {
  std::map<long, std::complex<double>> mm(modes.begin(), modes.end());
  nct::CircleFun h = nct::CircleFun::from_modes(grid, mm);
  nct::TorusParams p{theta_num, grid, tau};
  return nct::gauss_bonnet_check(h, p);
}

}  // namespace

PYBIND11_MODULE(_nctcore, m) {
  m.doc() = "curvature pipeline for the noncommutative two-torus";
  m.def("stage_text", &stage_text, py::arg("half"), py::arg("stage"),
        "expression-grammar dump of a pipeline stage");
  m.def("run_suite", &run_suite_py, py::arg("suite"), py::arg("seed") = 1,
        "run one verification suite");
  m.def("suite_names", &nct::suite_names);
  m.def("modfun_names",
        []() { return nct::ModFunRegistry::instance().names(); });
  m.def("modfun_eval", &modfun_eval_py, py::arg("name"), py::arg("s"),
        py::arg("t") = 0.0, py::arg("precision") = 40);
  m.def("modfun_verify", &modfun_verify_py, py::arg("name"));
  m.def("curvature", &curvature_py, py::arg("graded") = false);
  m.def("gauss_bonnet", &gauss_bonnet_py, py::arg("modes"),
        py::arg("theta_num") = 1, py::arg("grid") = 1024,
        py::arg("tau") = std::complex<double>(0, 1));
  m.def("parse_roundtrip", [](const std::string& s) {
    return nct::parse_symbol_expr(s).str();
  });
  m.attr("__version__") = "0.1.0";
}
