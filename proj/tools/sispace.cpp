// sispace: command-line front end. Reads JSON scenes/operators, dispatches to
// the library, and emits deterministic JSON reports (12 significant digits,
// fixed field order). Exit codes: 0 success, 2 precondition violation, 1 I/O
// or usage error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sispace/io.hpp"

namespace {

using namespace sispace;
using io::json;

void emit(const json& j, const std::string& out_path) {
  const std::string text = io::dump(j);
  if (out_path.empty())
    std::cout << text;
  else
    io::write_text(out_path, text);
}

void flush_warnings(const WarningSink& sink) {
  for (const auto& w : sink) std::cerr << "warning: " << w.what << "\n";
}

json warnings_json(const WarningSink& sink) {
  json out = json::array();
  for (const auto& w : sink) out.push_back(w.what);
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"shift-invariant space toolkit: frame analysis, projection, "
               "convolution calculus, Fourier multipliers, periodic products, "
               "delay-differential solving and wave-front bounds"};
  app.require_subcommand(1);

  double tol_abs = tolerances().abs;
  double tol_rel = tolerances().rel;
  app.add_option("--tol-abs", tol_abs, "absolute comparison tolerance");
  app.add_option("--tol-rel", tol_rel, "relative comparison tolerance");

  std::string out_path;  // shared by all subcommands; empty = stdout

  // frame-check --scene
  auto* frame_cmd = app.add_subcommand("frame-check",
                                       "frame bounds and closedness report for "
                                       "a generator bank");
  std::string fc_scene;
  frame_cmd->add_option("--scene", fc_scene, "scene JSON")->required();
  frame_cmd->add_option("--out", out_path, "output path (default stdout)");

  // project --f --onto
  auto* proj_cmd = app.add_subcommand("project",
                                      "orthogonal projection onto the span of "
                                      "a generator bank");
  std::string pj_f, pj_onto;
  proj_cmd->add_option("--f", pj_f, "target scene JSON")->required();
  proj_cmd->add_option("--onto", pj_onto, "bank scene JSON")->required();
  proj_cmd->add_option("--out", out_path, "output path (default stdout)");

  // conv --f --g --eps
  auto* conv_cmd = app.add_subcommand("conv",
                                      "convolution of two shift-invariant "
                                      "functions with order bookkeeping");
  std::string cv_f, cv_g;
  double cv_eps = 0.1;
  conv_cmd->add_option("--f", cv_f, "left scene JSON")->required();
  conv_cmd->add_option("--g", cv_g, "right scene JSON")->required();
  conv_cmd->add_option("--eps", cv_eps, "order slack epsilon");
  conv_cmd->add_option("--out", out_path, "output path (default stdout)");

  // delta-conv --a --g --r
  auto* dconv_cmd = app.add_subcommand("delta-conv",
                                       "convolve a delta train against a "
                                       "shift-invariant function");
  std::string dc_a, dc_g;
  double dc_r = 0.0;
  dconv_cmd->add_option("--a", dc_a, "coefficient JSON")->required();
  dconv_cmd->add_option("--g", dc_g, "scene JSON")->required();
  dconv_cmd->add_option("--r", dc_r, "weight order of the train")->required();
  dconv_cmd->add_option("--out", out_path, "output path (default stdout)");

  // dde-solve --op --rhs
  auto* dde_cmd = app.add_subcommand("dde-solve",
                                     "solve T*u = h for a delay-differential "
                                     "operator T");
  std::string dd_op, dd_rhs;
  std::optional<double> dd_n;
  dde_cmd->add_option("--op", dd_op, "operator JSON")->required();
  dde_cmd->add_option("--rhs", dd_rhs, "right-hand-side scene JSON")->required();
  dde_cmd->add_option("--n", dd_n, "override the fitted symbol growth order");
  dde_cmd->add_option("--out", out_path, "output path (default stdout)");

  // multiplier --symbol --f [--force]
  auto* mult_cmd = app.add_subcommand("multiplier",
                                      "apply a Fourier multiplier after a "
                                      "Mikhlin-type admissibility check");
  std::string mu_sym, mu_f;
  bool mu_force = false;
  mult_cmd->add_option("--symbol", mu_sym, "symbol JSON")->required();
  mult_cmd->add_option("--f", mu_f, "scene JSON")->required();
  mult_cmd->add_flag("--force", mu_force, "apply even if the check fails");
  mult_cmd->add_option("--out", out_path, "output path (default stdout)");

  // product --g --f
  auto* prod_cmd = app.add_subcommand("product",
                                      "pointwise product with a periodic "
                                      "multiplier");
  std::string pr_g, pr_f;
  prod_cmd->add_option("--g", pr_g, "periodic multiplier JSON")->required();
  prod_cmd->add_option("--f", pr_f, "scene JSON")->required();
  prod_cmd->add_option("--out", out_path, "output path (default stdout)");

  // wf-bound --op conv|prod|shift|fgsi-conv --a [--b]
  auto* wf_cmd = app.add_subcommand("wf-bound",
                                    "wave-front containment bound for an "
                                    "operation on wave-front sets");
  std::string wf_op, wf_a, wf_b;
  wf_cmd->add_option("--op", wf_op, "one of conv, prod, shift, fgsi-conv")
      ->required()
      ->check(CLI::IsMember({"conv", "prod", "shift", "fgsi-conv"}));
  wf_cmd->add_option("--a", wf_a, "wave-front set JSON")->required();
  wf_cmd->add_option("--b", wf_b, "second wave-front set JSON");
  wf_cmd->add_option("--out", out_path, "output path (default stdout)");

  // pair --f --theta --s
  auto* pair_cmd = app.add_subcommand("pair",
                                      "duality pairing <F, theta> between "
                                      "order -s and order s");
  std::string pa_f, pa_theta;
  double pa_s = 0.0;
  pair_cmd->add_option("--f", pa_f, "functional scene JSON")->required();
  pair_cmd->add_option("--theta", pa_theta, "test scene JSON")->required();
  pair_cmd->add_option("--s", pa_s, "Sobolev order of the test function")
      ->required();
  pair_cmd->add_option("--out", out_path, "output path (default stdout)");

  // norms --c --p --s
  auto* norm_cmd = app.add_subcommand("norms",
                                      "weighted sequence norm of a coefficient "
                                      "file");
  std::string nm_c, nm_p = "2";
  double nm_s = 0.0;
  norm_cmd->add_option("--c", nm_c, "coefficient JSON")->required();
  norm_cmd->add_option("--p", nm_p, "1, 2 or inf")
      ->check(CLI::IsMember({"1", "2", "inf"}));
  norm_cmd->add_option("--s", nm_s, "weight order");
  norm_cmd->add_option("--out", out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  tolerances().abs = tol_abs;
  tolerances().rel = tol_rel;
  if (const char* env = std::getenv("SISPACE_THREADS")) {
    // Cap for internal data-parallel maps; 0 = auto. Currently everything runs
    // single-threaded, so the value is validated and otherwise unused.
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 0) {
      std::cerr << "error: SISPACE_THREADS must be a non-negative integer\n";
      return 1;
    }
  }

  WarningSink sink;

  if (*frame_cmd) {
    io::Scene sc = io::scene_from_json(io::load_json(fc_scene));
    ConditionAReport rep = check_condition_A(sc.f.generators, sc.f.order_s,
                                             sc.grid, &sink);
    json out{{"closedness", io::frame_report_to_json(rep.closedness)},
             {"frame", io::frame_report_to_json(rep.frame)},
             {"A", io::num(rep.frame.lower_A)},
             {"B", io::num(rep.frame.upper_B)},
             {"verdict", rep.verdict == Verdict::Consistent ? "consistent"
                         : rep.verdict == Verdict::Violated ? "violated"
                                                            : "inconclusive"},
             {"warnings", warnings_json(sink)}};
    flush_warnings(sink);
    emit(out, out_path);
  } else if (*proj_cmd) {
    io::Scene target = io::scene_from_json(io::load_json(pj_f));
    io::Scene bank = io::scene_from_json(io::load_json(pj_onto));
    ProjectionResult res = project(target.f, bank.f.generators, bank.f.order_s,
                                   bank.grid, &sink);
    json out = io::projection_to_json(res, bank.grid);
    out["warnings"] = warnings_json(sink);
    flush_warnings(sink);
    emit(out, out_path);
  } else if (*conv_cmd) {
    io::Scene f = io::scene_from_json(io::load_json(cv_f));
    io::Scene g = io::scene_from_json(io::load_json(cv_g));
    ConvolutionResult res = fgsi_convolve(f.f, g.f, cv_eps, f.grid, &sink);
    json out = io::convolution_to_json(res, f.grid);
    out["warnings"] = warnings_json(sink);
    flush_warnings(sink);
    emit(out, out_path);
  } else if (*dconv_cmd) {
    CoeffSeq a = io::coeffs_from_json(io::load_json(dc_a));
    io::Scene g = io::scene_from_json(io::load_json(dc_g));
    SIFunction res = delta_train_convolve(a, g.f, dc_r);
    emit(io::scene_to_json({res, g.grid}), out_path);
  } else if (*dde_cmd) {
    DelayDiffOperator T = io::operator_from_json(io::load_json(dd_op));
    io::Scene rhs = io::scene_from_json(io::load_json(dd_rhs));
    if (rhs.f.generators.size() != 1)
      throw PreconditionError("dde-solve needs a single-generator scene");
    EllipticityEstimate est = estimate_condition_E(T, rhs.grid, dd_n);
    DDESolution sol = dde_solve(T, rhs.f.generators[0], rhs.f.coeffs[0],
                                rhs.f.order_s, rhs.grid, &sink);
    json out{{"solution", io::scene_to_json({sol.solution, rhs.grid})},
             {"residual", io::num(sol.residual)},
             {"ellipticity", io::ellipticity_to_json(est)},
             {"warnings", warnings_json(sink)}};
    flush_warnings(sink);
    emit(out, out_path);
  } else if (*mult_cmd) {
    MultiplierSymbol a = io::multiplier_from_json(io::load_json(mu_sym));
    io::Scene f = io::scene_from_json(io::load_json(mu_f));
    MikhlinReport rep = mikhlin_check(a, f.grid, f.f.dim());
    SIFunction res = apply_multiplier(a, f.f, f.grid, mu_force, &sink);
    json out{{"result", io::scene_to_json({res, f.grid})},
             {"mikhlin", io::mikhlin_to_json(rep)},
             {"warnings", warnings_json(sink)}};
    flush_warnings(sink);
    emit(out, out_path);
  } else if (*prod_cmd) {
    PeriodicMultiplier g = io::periodic_from_json(io::load_json(pr_g));
    io::Scene f = io::scene_from_json(io::load_json(pr_f));
    SIFunction res = periodic_multiply(g, f.f, f.grid, &sink);
    json out{{"result", io::scene_to_json({res, f.grid})},
             {"warnings", warnings_json(sink)}};
    flush_warnings(sink);
    emit(out, out_path);
  } else if (*wf_cmd) {
    WFSet A = io::wfset_from_json(io::load_json(wf_a));
    WFSet res;
    res.dim = A.dim;
    if (wf_op == "shift") {
      res = wf_shift_bound(A);
    } else {
      if (wf_b.empty())
        throw PreconditionError("wf-bound --op " + wf_op + " needs --b");
      WFSet B = io::wfset_from_json(io::load_json(wf_b));
      if (wf_op == "conv")
        res = wf_conv_bound(A, B);
      else if (wf_op == "prod")
        res = wf_prod_bound(A, B);
      else
        res = wf_fgsi_conv_bound({A}, {B});
    }
    emit(io::wfset_to_json(res), out_path);
  } else if (*pair_cmd) {
    io::Scene F = io::scene_from_json(io::load_json(pa_f));
    io::Scene theta = io::scene_from_json(io::load_json(pa_theta));
    cplx v = dual_pair(F.f, theta.f, pa_s, F.grid, &sink);
    json out{{"pair", json{{"re", io::num(v.real())}, {"im", io::num(v.imag())}}},
             {"s", io::num(pa_s)},
             {"warnings", warnings_json(sink)}};
    flush_warnings(sink);
    emit(out, out_path);
  } else if (*norm_cmd) {
    CoeffSeq c = io::coeffs_from_json(io::load_json(nm_c));
    double p = nm_p == "inf" ? std::numeric_limits<double>::infinity()
                             : std::stod(nm_p);
    json out{{"norm", io::num(seq_norm(c, p, nm_s))},
             {"p", nm_p},
             {"s", io::num(nm_s)}};
    emit(out, out_path);
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const sispace::PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
