#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <iostream>

#include "nct/pipeline.hpp"
#include "nct/symbol_io.hpp"

using nlohmann::json;

namespace {

nct::Half parse_half(const std::string& s) {
  if (s == "functions") return nct::Half::Functions;
  if (s == "forms") return nct::Half::Forms;
  throw CLI::ValidationError("--half must be functions or forms");
}

json expr_to_json(const nct::SymbolExpr& e) {
  json terms = json::array();
  for (const auto& [w, poly] : e.terms())
    for (const auto& [mono, g] : poly.terms())
      terms.push_back({{"coeff", g.str()},
                       {"monomial", mono.str()},
                       {"word", nct::word_str(w)}});
  return terms;
}

json checks_to_json(const std::vector<nct::CheckResult>& checks) {
  json arr = json::array();
  for (const auto& c : checks)
    arr.push_back({{"name", c.name},
                   {"pass", c.pass},
                   {"residual", c.residual},
                   {"detail", c.detail}});
  return arr;
}

bool print_checks(const std::vector<nct::CheckResult>& checks) {
  bool all = true;
  for (const auto& c : checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) std::cout << "  [" << c.detail << "]";
    std::cout << "\n";
    all = all && c.pass;
  }
  return all;
}

json report_skeleton(std::uint64_t seed) {
  return json{{"tool", "nct"}, {"version", "0.1.0"}, {"seed", seed}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noncommutative two-torus curvature engine"};
  app.require_subcommand(1);

  bool as_json = false;
  std::uint64_t seed = 1;
  unsigned precision = 40;
  long grid = 1024;
  bool timing = false;
  app.add_flag("--json", as_json, "machine-readable output");
  app.add_option("--seed", seed, "seed for randomized oracles");
  app.add_option("--precision", precision, "working precision in digits");
  app.add_option("--grid", grid, "circle grid size (power of two)");
  app.add_flag("--timing", timing, "include wall-clock timing in reports");

  std::string half_s = "functions";
  std::string emit = "b2";
  std::string stage = "angular";
  std::string through = "grouped";
  std::string suite;
  std::string spot_check;
  std::string name;
  std::string at_s;
  std::string grid_spec;
  bool graded = false, ungraded = false, grouped_k2 = false;
  bool list_funs = false;
  std::string verify_fun, table_fun;

  auto* symbols = app.add_subcommand("symbols", "operator symbols of one half");
  symbols->add_option("--half", half_s);

  auto* parametrix = app.add_subcommand("parametrix", "resolvent expansion terms");
  parametrix->add_option("--half", half_s);
  parametrix->add_option("--emit", emit, "b0|b1|b2");
  parametrix->add_flag("--grouped-k2", grouped_k2, "group k d(k)+d(k) k pairs");

  auto* integrate = app.add_subcommand("integrate", "angular/radial stages");
  integrate->add_option("--half", half_s);
  integrate->add_option("--stage", stage, "angular|radial|grouped");

  auto* curvature = app.add_subcommand("curvature", "assembled curvature");
  curvature->add_flag("--graded", graded);
  curvature->add_flag("--ungraded", ungraded);
  curvature->add_option("--emit", emit, "coefficients|closedforms");

  auto* modfun = app.add_subcommand("modfun", "modular function registry");
  modfun->add_flag("--list", list_funs);
  modfun->add_option("--eval", name, "function name");
  modfun->add_option("--at", at_s, "point s[,t]");
  modfun->add_option("--verify", verify_fun, "assembled vs closed form");
  modfun->add_option("--table", table_fun, "tabulate on a grid");
  modfun->add_option("--grid-spec", grid_spec, "lo:hi:n[,lo:hi:n]");

  auto* verify = app.add_subcommand("verify", "verification suites");
  verify->add_option("--suite", suite, "suite name (default: all gating)");

  auto* pipe = app.add_subcommand("pipeline", "run the full pipeline");
  pipe->add_option("--half", half_s);
  pipe->add_option("--through", through,
                   "symbols|parametrix|angular|radial|grouped|logbasis");
  pipe->add_option("--spot-check", spot_check, "appendixA|appendixB");

  CLI11_PARSE(app, argc, argv);

  auto t0 = std::chrono::steady_clock::now();
  json out = report_skeleton(seed);
  int exit_code = 0;

  try {
    if (*symbols) {
      nct::Half h = parse_half(half_s);
      const auto& op = nct::pipeline(h).op;
      if (as_json) {
        out["half"] = half_s;
        out["a2"] = expr_to_json(op.a2);
        out["a1"] = expr_to_json(op.a1);
        out["a0"] = expr_to_json(op.a0);
      } else {
        std::cout << "order 2: " << op.a2.str() << "\n";
        std::cout << "order 1: " << op.a1.str() << "\n";
        std::cout << "order 0: " << op.a0.str() << "\n";
      }
    } else if (*parametrix) {
      nct::Half h = parse_half(half_s);
      const auto& par = nct::pipeline(h).par;
      const nct::SymbolExpr& e =
          emit == "b0" ? par.b0 : (emit == "b1" ? par.b1 : par.b2);
      if (as_json) {
        out["half"] = half_s;
        out["emit"] = emit;
        out["terms"] = expr_to_json(e);
        out["term_count"] = e.size();
      } else {
        std::cout << (grouped_k2 ? nct::print_grouped_k2(e) : e.str()) << "\n";
      }
    } else if (*integrate) {
      nct::Half h = parse_half(half_s);
      const auto& art = nct::pipeline(h);
      if (stage == "angular") {
        if (as_json) {
          out["stage"] = "angular";
          out["pi_factor"] = art.angular.pi_factor;
          out["terms"] = expr_to_json(art.angular.expr);
        } else {
          std::cout << "(coefficients in units of pi)\n"
                    << art.angular.expr.str() << "\n";
        }
      } else if (stage == "radial") {
        if (as_json) {
          out["stage"] = "radial";
          out["pi_factor"] = art.radial.pi_factor;
          json terms = json::array();
          for (const auto& t : art.radial.terms) terms.push_back(t.str());
          out["terms"] = terms;
        } else {
          std::cout << "(overall factor pi)\n" << art.radial.str() << "\n";
        }
      } else {
        json terms = json::array();
        for (const auto& [key, fun] : art.grouped.slots) {
          if (as_json)
            terms.push_back(
                {{"slot", nct::slot_str(key)}, {"fun", nct::combo_str(fun)}});
          else
            std::cout << nct::slot_str(key) << " = " << nct::combo_str(fun)
                      << "\n";
        }
        if (as_json) {
          out["stage"] = "grouped";
          out["terms"] = terms;
        }
      }
    } else if (*curvature) {
      bool g = graded && !ungraded;
      nct::CurvatureView v = nct::curvature_view(nct::curvature_logbasis(g));
      const auto& reg = nct::ModFunRegistry::instance();
      if (emit == "closedforms") {
        json j;
        j["R1"] = reg.get(g ? "R1g" : "R1").closed.str();
        j["R2"] = reg.get(g ? "R2g" : "R2").closed.str();
        j["W"] = reg.get("W").closed.str();
        if (as_json) {
          out["graded"] = g;
          out["closedforms"] = j;
        } else {
          std::cout << j.dump(2) << "\n";
        }
      } else {
        if (as_json) {
          out["graded"] = g;
          out["prefactor"] = "-pi/tau2";
          out["R1"] = v.r1.str();
          out["R2"] = v.r2.str();
          out["W"] = v.has_w ? v.w.str() : "0";
        } else {
          std::cout << "prefactor: -pi/tau2\nR1 = " << v.r1.str()
                    << "\nR2 = " << v.r2.str()
                    << "\nW  = " << (v.has_w ? v.w.str() : "0") << "\n";
        }
      }
    } else if (*modfun) {
      const auto& reg = nct::ModFunRegistry::instance();
      nct::EvalConfig cfg;
      cfg.precision = precision;
      if (list_funs) {
        json arr = json::array();
        for (const auto& n : reg.names()) arr.push_back(n);
        if (as_json)
          out["functions"] = arr;
        else
          for (const auto& n : reg.names()) std::cout << n << "\n";
      } else if (!verify_fun.empty()) {
        const auto& e = reg.get(verify_fun);
        bool ok = e.assembled && nct::normal_equal(*e.assembled, e.closed);
        if (as_json) {
          out["function"] = verify_fun;
          out["pass"] = ok;
        } else {
          std::cout << (ok ? "PASS" : "FAIL") << " " << verify_fun << "\n";
        }
        if (!ok) exit_code = 1;
      } else if (!name.empty()) {
        double s = 0, t = 0;
        if (auto comma = at_s.find(','); comma != std::string::npos) {
          s = std::stod(at_s.substr(0, comma));
          t = std::stod(at_s.substr(comma + 1));
        } else if (!at_s.empty()) {
          s = std::stod(at_s);
        }
        nct::MpReal v =
            nct::eval_st(reg.get(name).closed, nct::MpReal(s), nct::MpReal(t),
                         cfg);
        std::ostringstream os;
        os.precision(precision);
        os << v;
        if (as_json) {
          out["function"] = name;
          out["at"] = {s, t};
          out["value"] = os.str();
        } else {
          std::cout << os.str() << "\n";
        }
      } else if (!table_fun.empty()) {
        auto parse_axis = [](const std::string& spec) {
          double lo, hi;
          int n;
          if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3)
            throw CLI::ValidationError("--grid-spec must be lo:hi:n[,lo:hi:n]");
          return std::tuple<double, double, int>{lo, hi, n};
        };
        std::string sx = grid_spec, sy;
        if (auto comma = grid_spec.find(','); comma != std::string::npos) {
          sx = grid_spec.substr(0, comma);
          sy = grid_spec.substr(comma + 1);
        }
        auto [xlo, xhi, xn] = parse_axis(sx);
        const auto& e = reg.get(table_fun);
        json rows = json::array();
        if (e.vars == 1 || sy.empty()) {
          for (int i = 0; i < xn; ++i) {
            double s = xlo + (xhi - xlo) * i / std::max(1, xn - 1);
            double v = nct::eval_one_var(e.closed, nct::MpReal(s), cfg)
                           .convert_to<double>();
            rows.push_back({{"s", s}, {"value", v}});
          }
        } else {
          auto [ylo, yhi, yn] = parse_axis(sy);
          for (int i = 0; i < xn; ++i)
            for (int j = 0; j < yn; ++j) {
              double s = xlo + (xhi - xlo) * i / std::max(1, xn - 1);
              double t = ylo + (yhi - ylo) * j / std::max(1, yn - 1);
              double v = nct::eval_st(e.closed, nct::MpReal(s), nct::MpReal(t),
                                      cfg)
                             .convert_to<double>();
              rows.push_back({{"s", s}, {"t", t}, {"value", v}});
            }
        }
        out["function"] = table_fun;
        out["table"] = rows;
        as_json = true;  // table output is json by definition
      } else {
        throw CLI::ValidationError("modfun needs --list/--eval/--verify/--table");
      }
    } else if (*verify) {
      std::vector<nct::CheckResult> checks;
      std::vector<std::string> ran;
      if (suite.empty()) {
        checks = nct::verify_all(seed);
        ran = nct::suite_names();
      } else {
        checks = nct::run_suite(suite, seed);
        ran = {suite};
      }
      bool all = true;
      if (!as_json) all = print_checks(checks);
      else
        for (const auto& c : checks) all = all && c.pass;
      out["suites"] = ran;
      out["checks"] = checks_to_json(checks);
      json residuals = json::array();
      for (const auto& c : checks) residuals.push_back(c.residual);
      out["residuals"] = residuals;
      out["pass"] = all;
      out["params"] = {{"seed", seed}, {"precision", precision}, {"grid", grid}};
      if (!all) {
        // first failing suite index drives the exit code
        exit_code = 1;
        for (std::size_t i = 0; i < ran.size(); ++i) {
          auto r = nct::run_suite(ran[i], seed);
          bool ok = true;
          for (const auto& c : r) ok = ok && c.pass;
          if (!ok) {
            exit_code = static_cast<int>(i) + 1;
            break;
          }
        }
      }
    } else if (*pipe) {
      nct::Half h = parse_half(half_s);
      const auto& art = nct::pipeline(h);
      json stages = json::array();
      auto record = [&](const std::string& nm, std::size_t terms,
                        const std::string& text) {
        stages.push_back({{"stage", nm}, {"term_count", terms}});
        if (!as_json)
          std::cout << "== " << nm << " (" << terms << " terms)\n"
                    << text << "\n";
      };
      record("symbols", art.op.a2.size() + art.op.a1.size() + art.op.a0.size(),
             art.op.a1.str());
      if (through != "symbols") {
        record("parametrix", art.par.b2.size(),
               as_json ? "" : "(b2 suppressed; use the parametrix subcommand)");
        if (!spot_check.empty()) {
          auto checks = nct::run_suite("goldens", seed);
          bool all = true;
          for (const auto& c : checks) {
            bool relevant =
                (spot_check == "appendixA" &&
                 c.name.find("first-b2") != std::string::npos) ||
                (spot_check == "appendixB" &&
                 c.name.find("second-b2") != std::string::npos);
            if (!relevant) continue;
            all = all && c.pass;
            if (!as_json)
              std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "\n";
          }
          out["spot_check"] = {{"which", spot_check}, {"pass", all}};
          if (!all) exit_code = 1;
        }
      }
      if (through == "angular" || through == "radial" || through == "grouped" ||
          through == "logbasis") {
        record("angular", art.angular.expr.size(),
               as_json ? "" : art.angular.expr.str());
      }
      if (through == "radial" || through == "grouped" || through == "logbasis")
        record("radial", art.radial.terms.size(), as_json ? "" : art.radial.str());
      if (through == "grouped" || through == "logbasis") {
        std::string text;
        for (const auto& [key, fun] : art.grouped.slots)
          text += nct::slot_str(key) + "\n";
        record("grouped", art.grouped.slots.size(), text);
      }
      if (through == "logbasis")
        record("logbasis", art.logbasis.terms.size(), "");
      out["stages"] = stages;
      out["half"] = half_s;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  }

  if (timing) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    out["timing_ms"] = ms;  // excluded from the determinism guarantee
  }
  if (as_json) std::cout << out.dump(2) << "\n";
  return exit_code;
}
