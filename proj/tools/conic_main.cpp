// conic CLI: experiment configuration, execution, and CSV/JSON reporting.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "conic/cone_json.hpp"
#include "conic/csv.hpp"
#include "conic/errors.hpp"
#include "conic/intrinsic_volumes.hpp"
#include "conic/normal_approx.hpp"
#include "conic/phase_transition.hpp"
#include "conic/projection.hpp"
#include "conic/solver.hpp"
#include "conic/special.hpp"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitSolverFailure = 3;
constexpr double kFailedToSolveThreshold = 0.1;

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    conic::write_text_file(out_path, content);
  }
}

std::string inputs_cell(const std::vector<std::pair<std::string, double>>& inputs) {
  std::string s;
  for (const auto& [k, v] : inputs) {
    if (!s.empty()) s += ';';
    s += k + "=" + conic::format_double(v);
  }
  return s;
}

// substream block bases; commands use disjoint id ranges so that reports are
// reproducible even if several commands share one seed
constexpr std::uint64_t kMomentBase = 0;
constexpr std::uint64_t kSampleVBase = 1ull << 41;
constexpr std::uint64_t kCltBase = 1ull << 42;
constexpr std::uint64_t kRecoverBase = 1ull << 43;

struct DimOptions {
  std::string cone_json;
  long long n = 100000;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out;
};

int run_dim(const DimOptions& opt) {
  const conic::ConeSpec cone = conic::cone_from_json_text(opt.cone_json);
  const conic::RngStream stream(opt.seed, kMomentBase);
  const conic::MomentEstimates est = conic::estimate_moments(cone, opt.n, stream, opt.workers);
  const conic::VarianceBounds vb = conic::variance_bounds(est, cone.ambient_dimension());
  const conic::WidthSandwich ws = conic::width_sandwich_check(est);
  json j{{"command", "dim"},
         {"cone", json::parse(conic::cone_to_json_text(cone))},
         {"seed", opt.seed},
         {"n", opt.n},
         {"delta_hat", est.delta_hat},
         {"se_delta", est.se_delta},
         {"sigma_sq_hat", est.sigma_sq_hat},
         {"se_sigma_sq", est.se_sigma_sq},
         {"tau_sq_hat", est.tau_sq_hat},
         {"se_tau_sq", est.se_tau_sq},
         {"tau_degenerate", est.tau_degenerate},
         {"v_hat", est.v_hat},
         {"se_v", est.se_v},
         {"width_hat", est.width_hat},
         {"se_width", est.se_width},
         {"variance_bounds",
          {{"v", vb.v}, {"b", vb.b}, {"lower", vb.lower}, {"upper", vb.upper}, {"v_clamped", vb.v_clamped}}},
         {"width_sandwich", {{"ok", ws.ok}, {"lower_margin", ws.lower_margin}, {"upper_margin", ws.upper_margin}}}};
  emit(opt.out, j.dump(2) + "\n");
  return 0;
}

struct IvolsOptions {
  std::string cone_json;
  bool empirical = false;
  long long n = 200000;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out;
};

int run_ivols(const IvolsOptions& opt) {
  const conic::ConeSpec cone = conic::cone_from_json_text(opt.cone_json);
  const conic::IVDistribution dist = opt.empirical
                                         ? conic::sample_V(cone, opt.n, conic::RngStream(opt.seed, kSampleVBase),
                                                           opt.workers)
                                         : conic::exact_distribution(cone);
  conic::CsvWriter csv({"j", "v_j"});
  csv.add_comment("command", opt.empirical ? "ivols-empirical" : "ivols-exact");
  csv.add_comment("cone", cone.describe());
  if (opt.empirical) {
    csv.add_comment("seed", std::to_string(opt.seed));
    csv.add_comment("n", std::to_string(opt.n));
  }
  for (int j = 0; j <= dist.d(); ++j) csv.add_row({std::to_string(j), conic::format_double(dist.prob(j))});
  emit(opt.out, csv.str());
  return 0;
}

struct ProjectOptions {
  std::string cone_json;
  std::string x_json;
  std::string out;
};

int run_project(const ProjectOptions& opt) {
  const conic::ConeSpec cone = conic::cone_from_json_text(opt.cone_json);
  json xj;
  try {
    xj = json::parse(opt.x_json);
  } catch (const json::parse_error& e) {
    throw conic::ParameterError(std::string("--x must be a JSON array: ") + e.what());
  }
  if (!xj.is_array()) throw conic::ParameterError("--x must be a JSON array");
  conic::Vec x(xj.size());
  for (std::size_t i = 0; i < xj.size(); ++i) x(static_cast<Eigen::Index>(i)) = xj[i].get<double>();
  const conic::ProjectionResult res = conic::project(cone, x);
  json j{{"command", "project"},
         {"cone", json::parse(conic::cone_to_json_text(cone))},
         {"pi_c", std::vector<double>(res.pi_c.data(), res.pi_c.data() + res.pi_c.size())},
         {"pi_polar", std::vector<double>(res.pi_polar.data(), res.pi_polar.data() + res.pi_polar.size())},
         {"dist_sq", res.dist_sq}};
  if (res.face_dim) {
    j["face_dim"] = *res.face_dim;
  } else {
    j["face_dim"] = nullptr;
  }
  emit(opt.out, j.dump(2) + "\n");
  return 0;
}

struct CltOptions {
  std::string cone_json;
  long long n = 100000;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out;
};

int run_clt(const CltOptions& opt) {
  const conic::ConeSpec cone = conic::cone_from_json_text(opt.cone_json);
  const int d = cone.ambient_dimension();
  double delta, sigma_sq;
  bool exact_moments = conic::has_exact_distribution(cone);
  json j{{"command", "clt"},
         {"cone", json::parse(conic::cone_to_json_text(cone))},
         {"seed", opt.seed},
         {"n", opt.n}};
  if (exact_moments) {
    const conic::IVDistribution ivd = conic::exact_distribution(cone);
    delta = ivd.delta();
    sigma_sq = ivd.sigma_sq();
    const std::vector<double> w = conic::sample_W(ivd, opt.n, conic::RngStream(opt.seed, kCltBase), opt.workers);
    double mean = 0.0, var = 0.0;
    for (double v : w) mean += v;
    mean /= static_cast<double>(w.size());
    for (double v : w) var += (v - mean) * (v - mean);
    var /= static_cast<double>(w.size()) - 1.0;
    j["sample_W"] = {{"mean", mean},
                     {"var", var},
                     {"kolmogorov", conic::kolmogorov_distance(conic::EmpiricalCdf(w))},
                     {"tv_bound", 2.0 * std::sqrt(sigma_sq) / delta}};
  } else {
    const conic::MomentEstimates est =
        conic::estimate_moments(cone, opt.n, conic::RngStream(opt.seed, kMomentBase), opt.workers);
    delta = est.delta_hat;
    sigma_sq = est.sigma_sq_hat;
  }
  // standardized squared projection length against the normal
  {
    std::vector<double> vals(static_cast<std::size_t>(opt.n));
    const conic::RngStream stream(opt.seed, kCltBase + (1ull << 20));
    const double sigma = std::sqrt(sigma_sq);
    for (long long i = 0; i < opt.n; ++i) {
      conic::RngStream s = stream.substream(static_cast<std::uint64_t>(i));
      conic::Vec g(d);
      for (int k = 0; k < d; ++k) g(k) = s.next_gaussian();
      vals[static_cast<std::size_t>(i)] = (conic::project_point(cone, g).squaredNorm() - delta) / sigma;
    }
    j["g_standardized"] = {{"kolmogorov", conic::kolmogorov_distance(conic::EmpiricalCdf(std::move(vals)))},
                           {"tv_bound", std::min(16.0 * std::sqrt(delta) / sigma_sq, 8.0 / std::sqrt(delta))}};
  }
  j["delta"] = delta;
  j["sigma_sq"] = sigma_sq;
  j["moments_exact"] = exact_moments;
  if (conic::supports_face_dimension(cone)) {
    const conic::CharIdentityReport rep = conic::char_identity_check(
        cone, {0.125, 0.25, 0.5}, std::min<long long>(opt.n, 100000), conic::RngStream(opt.seed, kCltBase + (1ull << 21)),
        opt.workers);
    json pts = json::array();
    for (const auto& p : rep.points)
      pts.push_back({{"t", p.t}, {"discrepancy", p.discrepancy}, {"se", p.se}});
    j["char_identity"] = {{"points", pts}, {"joint_correlation", rep.joint_correlation}};
  }
  emit(opt.out, j.dump(2) + "\n");
  return 0;
}

struct BoundsOptions {
  double delta = -1.0, tau_sq = -1.0, sigma_sq = -1.0;
  int d = 0;
  double m_shift = -1.0, mu_norm = -1.0;
  double e_dist_sq = -1.0, xi = -10.0, t_tail = -1.0;
  std::string out;
};

int run_bounds(const BoundsOptions& opt) {
  std::vector<conic::BoundReport> rows;
  auto add_value = [&](const std::string& name, std::vector<std::pair<std::string, double>> inputs, double value,
                       bool valid) {
    conic::BoundReport r;
    r.name = name;
    r.inputs = std::move(inputs);
    r.value = value;
    r.valid = valid;
    rows.push_back(std::move(r));
  };
  if (opt.delta > 1.0) add_value("h_small", {{"delta", opt.delta}}, conic::h_small(opt.delta), true);
  if (opt.delta > 0.0 && opt.tau_sq > 0.0) {
    const conic::BerryEsseenVC be = conic::berry_esseen_vc(opt.delta, opt.tau_sq);
    rows.push_back(be.simplified);
    rows.push_back(be.full);
    const conic::SmoothingParameters lb = conic::l_and_b(opt.delta, opt.tau_sq);
    add_value("smoothing_L", {{"delta", opt.delta}, {"tau_sq", opt.tau_sq}}, lb.l, true);
    add_value("smoothing_B", {{"delta", opt.delta}, {"tau_sq", opt.tau_sq}}, lb.b, true);
  }
  if (opt.delta > 0.0 && opt.sigma_sq > 0.0) rows.push_back(conic::tv_bound_projection(opt.delta, opt.sigma_sq));
  if (opt.d > 0) rows.push_back(conic::tv_bound_self_dual(opt.d));
  if (opt.m_shift >= 0.0 && opt.mu_norm >= 0.0 && opt.sigma_sq > 0.0)
    rows.push_back(conic::tv_bound_shifted(opt.m_shift, opt.mu_norm, opt.sigma_sq));
  if (opt.e_dist_sq >= 0.0 && opt.sigma_sq > 0.0) rows.push_back(conic::tv_bound_distance(opt.e_dist_sq, opt.sigma_sq));
  if (opt.e_dist_sq >= 0.0 && opt.xi < 0.5 && opt.xi > -9.0)
    add_value("concentration_laplace", {{"e_dist_sq", opt.e_dist_sq}, {"xi", opt.xi}},
              conic::concentration_laplace(opt.e_dist_sq, opt.xi), true);
  if (opt.e_dist_sq > 0.0 && opt.t_tail > 0.0) {
    add_value("concentration_tail", {{"e_dist_sq", opt.e_dist_sq}, {"t", opt.t_tail}},
              conic::concentration_tail(opt.e_dist_sq, opt.t_tail), true);
    const conic::TailPoint alt = conic::concentration_tail_alt(opt.e_dist_sq, opt.t_tail);
    add_value("concentration_tail_alt_threshold", {{"e_dist_sq", opt.e_dist_sq}, {"t", opt.t_tail}}, alt.threshold,
              true);
    add_value("concentration_tail_alt_bound", {{"e_dist_sq", opt.e_dist_sq}, {"t", opt.t_tail}}, alt.bound, true);
  }
  if (rows.empty()) throw conic::ParameterError("bounds: no evaluator has enough inputs (see --help)");
  conic::CsvWriter csv({"name", "inputs", "value", "valid"});
  csv.add_comment("command", "bounds");
  for (const auto& r : rows)
    csv.add_row({r.name, inputs_cell(r.inputs), conic::format_double(r.value), r.valid ? "1" : "0"});
  emit(opt.out, csv.str());
  return 0;
}

struct PsiOptions {
  double rho = 0.0;
  double nu = -1.0;
  std::string out;
};

int run_psi(const PsiOptions& opt) {
  json j{{"command", "psi"}, {"rho", opt.rho}};
  if (opt.nu < 0.0) {
    const conic::L1Curve c = conic::psi_l1(opt.rho);
    j["gamma"] = c.gamma_star;
    j["psi"] = c.psi;
    j["residual"] = c.residual;
    j["var_lower"] = conic::var_lower_l1(opt.rho);
  } else {
    const conic::SchattenCurve c = conic::psi_schatten(opt.rho, opt.nu);
    j["nu"] = c.nu;
    j["y"] = c.y;
    j["a_minus"] = c.a_minus;
    j["a_plus"] = c.a_plus;
    j["gamma"] = c.gamma_star;
    j["psi"] = c.psi;
    j["residual"] = c.residual;
    j["var_lower"] = conic::var_lower_schatten(opt.rho, opt.nu);
  }
  emit(opt.out, j.dump(2) + "\n");
  return 0;
}

struct PhaseOptions {
  int d = 100;
  int s = 10;
  long long trials = 200;
  std::uint64_t seed = 0;
  double t_min = -3.0, t_max = 3.0, t_step = 0.5;
  long long n_moments = 20000;
  int workers = 1;
  std::string out;
};

int run_phase(const PhaseOptions& opt) {
  std::vector<double> grid;
  for (double t = opt.t_min; t <= opt.t_max + 1e-12; t += opt.t_step) grid.push_back(t);
  if (grid.empty()) throw conic::ParameterError("phase: empty t grid");
  const conic::PhaseCurve curve =
      conic::phase_curve(opt.d, opt.s, grid, opt.trials, conic::RngStream(opt.seed, kRecoverBase), opt.workers,
                         opt.n_moments);
  conic::CsvWriter csv({"t", "m", "successes", "trials", "p_hat", "se", "phi_t", "error_budget", "failed_to_solve"});
  csv.add_comment("command", "phase");
  csv.add_comment("d", std::to_string(opt.d));
  csv.add_comment("s", std::to_string(opt.s));
  csv.add_comment("seed", std::to_string(opt.seed));
  csv.add_comment("delta_hat", conic::format_double(curve.delta_hat));
  csv.add_comment("tau_hat", conic::format_double(curve.tau_hat));
  long long failed = 0, total = 0;
  for (const conic::PhasePoint& p : curve.points) {
    failed += p.failed_to_solve;
    total += p.trials + p.failed_to_solve;
    csv.add_row({conic::format_double(p.t), std::to_string(p.m), std::to_string(p.successes), std::to_string(p.trials),
                 conic::format_double(p.p_hat), conic::format_double(p.se), conic::format_double(p.phi_t),
                 conic::format_double(p.error_budget), std::to_string(p.failed_to_solve)});
  }
  emit(opt.out, csv.str());
  if (total > 0 && static_cast<double>(failed) > kFailedToSolveThreshold * static_cast<double>(total))
    return kExitSolverFailure;
  return 0;
}

struct RecoverOptions {
  int d = 100;
  int s = 10;
  int m = 50;
  long long trials = 1;
  std::uint64_t seed = 0;
  std::string out;
};

int run_recover(const RecoverOptions& opt) {
  long long successes = 0, solved = 0, failed = 0;
  const conic::RngStream stream(opt.seed, kRecoverBase);
  for (long long i = 0; i < opt.trials; ++i) {
    switch (conic::recovery_trial(opt.d, opt.s, opt.m, stream.substream(static_cast<std::uint64_t>(i)))) {
      case conic::TrialOutcome::kSuccess:
        ++successes;
        ++solved;
        break;
      case conic::TrialOutcome::kFailure:
        ++solved;
        break;
      case conic::TrialOutcome::kFailedToSolve:
        ++failed;
        break;
    }
  }
  json j{{"command", "recover"}, {"d", opt.d},       {"s", opt.s},
         {"m", opt.m},           {"seed", opt.seed}, {"trials", opt.trials},
         {"successes", successes}, {"solved", solved}, {"failed_to_solve", failed},
         {"p_hat", solved > 0 ? static_cast<double>(successes) / static_cast<double>(solved) : 0.0}};
  emit(opt.out, j.dump(2) + "\n");
  if (static_cast<double>(failed) > kFailedToSolveThreshold * static_cast<double>(opt.trials))
    return kExitSolverFailure;
  return 0;
}

// flags override config-file values; config supplies anything not given
void merge_config(const CLI::App* sub, const std::string& config_path,
                  const std::vector<std::pair<std::string, std::function<void(const json&)>>>& setters) {
  if (config_path.empty()) return;
  std::ifstream in(config_path);
  if (!in) throw conic::ParameterError("cannot read config file: " + config_path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::parse_error& e) {
    throw conic::ParameterError(std::string("invalid config JSON: ") + e.what());
  }
  for (const auto& [key, setter] : setters) {
    const std::string flag = "--" + key;
    if (cfg.contains(key) && sub->count(flag) == 0) setter(cfg.at(key));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conic: conic intrinsic volumes, Gaussian approximations, and l1 phase transitions"};
  app.require_subcommand(1);

  DimOptions dim;
  ProjectOptions proj;
  IvolsOptions ivols;
  CltOptions clt;
  BoundsOptions bounds;
  PsiOptions psi;
  PhaseOptions phase;
  RecoverOptions recover;
  std::string config_path;

  auto* dim_cmd = app.add_subcommand("dim", "Monte Carlo statistical dimension and conic variance of a cone");
  dim_cmd->add_option("--cone", dim.cone_json, "cone JSON, e.g. '{\"kind\":\"orthant\",\"d\":100}'");
  dim_cmd->add_option("--n", dim.n, "number of Gaussian samples")->capture_default_str();
  dim_cmd->add_option("--seed", dim.seed, "RNG seed")->capture_default_str();
  dim_cmd->add_option("--workers", dim.workers, "worker threads (result is worker-count invariant)")
      ->capture_default_str();
  dim_cmd->add_option("--out", dim.out, "output path (stdout when omitted)");
  dim_cmd->add_option("--config", config_path, "JSON config file; flags override");

  auto* ivols_cmd = app.add_subcommand("ivols", "exact or empirical intrinsic-volume distribution (CSV j,v_j)");
  ivols_cmd->add_option("--cone", ivols.cone_json, "cone JSON");
  ivols_cmd->add_flag("--empirical", ivols.empirical, "sample face dimensions instead of exact coefficients");
  ivols_cmd->add_option("--n", ivols.n, "samples for --empirical")->capture_default_str();
  ivols_cmd->add_option("--seed", ivols.seed, "RNG seed")->capture_default_str();
  ivols_cmd->add_option("--workers", ivols.workers, "worker threads")->capture_default_str();
  ivols_cmd->add_option("--out", ivols.out, "output path");
  ivols_cmd->add_option("--config", config_path, "JSON config file; flags override");

  auto* project_cmd = app.add_subcommand("project", "metric projection of a point onto a cone and its polar");
  project_cmd->add_option("--cone", proj.cone_json, "cone JSON");
  project_cmd->add_option("--x", proj.x_json, "point as JSON array");
  project_cmd->add_option("--out", proj.out, "output path");

  auto* clt_cmd = app.add_subcommand("clt", "CLT diagnostics: Kolmogorov distances, W-sample, char identity");
  clt_cmd->add_option("--cone", clt.cone_json, "cone JSON");
  clt_cmd->add_option("--n", clt.n, "samples")->capture_default_str();
  clt_cmd->add_option("--seed", clt.seed, "RNG seed")->capture_default_str();
  clt_cmd->add_option("--workers", clt.workers, "worker threads")->capture_default_str();
  clt_cmd->add_option("--out", clt.out, "output path");

  auto* bounds_cmd = app.add_subcommand("bounds", "evaluate the explicit normal-approximation bounds (CSV)");
  bounds_cmd->add_option("--delta", bounds.delta, "statistical dimension");
  bounds_cmd->add_option("--tau-sq", bounds.tau_sq, "conic variance tau^2");
  bounds_cmd->add_option("--sigma-sq", bounds.sigma_sq, "variance of the squared projection length");
  bounds_cmd->add_option("--d", bounds.d, "ambient dimension (self-dual specialization)");
  bounds_cmd->add_option("--m-shift", bounds.m_shift, "m = E||mu - Pi_C(g+mu)||^2 for the shifted bound");
  bounds_cmd->add_option("--mu-norm", bounds.mu_norm, "||mu|| for the shifted bound");
  bounds_cmd->add_option("--e-dist-sq", bounds.e_dist_sq, "E d^2(g, C - mu)");
  bounds_cmd->add_option("--xi", bounds.xi, "Laplace-transform argument (< 1/2)");
  bounds_cmd->add_option("--t-tail", bounds.t_tail, "tail point for the concentration bound");
  bounds_cmd->add_option("--out", bounds.out, "output path");

  auto* psi_cmd = app.add_subcommand("psi", "l1 (and Schatten-1 with --nu) phase-transition curve values");
  psi_cmd->add_option("--rho", psi.rho, "sparsity or rank fraction in (0,1)")->required();
  psi_cmd->add_option("--nu", psi.nu, "aspect ratio m/n in (0,1]; selects the Schatten curve");
  psi_cmd->add_option("--out", psi.out, "output path");

  auto* phase_cmd = app.add_subcommand("phase", "empirical l1 recovery phase transition vs Gaussian prediction (CSV)");
  phase_cmd->add_option("--d", phase.d, "ambient dimension")->capture_default_str();
  phase_cmd->add_option("--s", phase.s, "sparsity")->capture_default_str();
  phase_cmd->add_option("--trials", phase.trials, "trials per grid point")->capture_default_str();
  phase_cmd->add_option("--seed", phase.seed, "RNG seed")->capture_default_str();
  phase_cmd->add_option("--t-min", phase.t_min, "grid start")->capture_default_str();
  phase_cmd->add_option("--t-max", phase.t_max, "grid end")->capture_default_str();
  phase_cmd->add_option("--t-step", phase.t_step, "grid step")->capture_default_str();
  phase_cmd->add_option("--n-moments", phase.n_moments, "samples for the delta/tau estimate")->capture_default_str();
  phase_cmd->add_option("--workers", phase.workers, "worker threads")->capture_default_str();
  phase_cmd->add_option("--out", phase.out, "output path");
  phase_cmd->add_option("--config", config_path, "JSON config file; flags override");

  auto* recover_cmd = app.add_subcommand("recover", "basis-pursuit recovery trials at fixed measurement count");
  recover_cmd->add_option("--d", recover.d, "ambient dimension")->capture_default_str();
  recover_cmd->add_option("--s", recover.s, "sparsity")->capture_default_str();
  recover_cmd->add_option("--m", recover.m, "measurement count")->capture_default_str();
  recover_cmd->add_option("--trials", recover.trials, "number of trials")->capture_default_str();
  recover_cmd->add_option("--seed", recover.seed, "RNG seed")->capture_default_str();
  recover_cmd->add_option("--out", recover.out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (dim_cmd->parsed()) {
      merge_config(dim_cmd, config_path,
                   {{"cone", [&](const json& v) { dim.cone_json = v.is_string() ? v.get<std::string>() : v.dump(); }},
                    {"n", [&](const json& v) { dim.n = v.get<long long>(); }},
                    {"seed", [&](const json& v) { dim.seed = v.get<std::uint64_t>(); }},
                    {"workers", [&](const json& v) { dim.workers = v.get<int>(); }},
                    {"out", [&](const json& v) { dim.out = v.get<std::string>(); }}});
      if (dim.cone_json.empty()) throw conic::ParameterError("dim: --cone (or config \"cone\") is required");
      return run_dim(dim);
    }
    if (ivols_cmd->parsed()) {
      merge_config(ivols_cmd, config_path,
                   {{"cone", [&](const json& v) { ivols.cone_json = v.is_string() ? v.get<std::string>() : v.dump(); }},
                    {"empirical", [&](const json& v) { ivols.empirical = v.get<bool>(); }},
                    {"n", [&](const json& v) { ivols.n = v.get<long long>(); }},
                    {"seed", [&](const json& v) { ivols.seed = v.get<std::uint64_t>(); }},
                    {"workers", [&](const json& v) { ivols.workers = v.get<int>(); }},
                    {"out", [&](const json& v) { ivols.out = v.get<std::string>(); }}});
      if (ivols.cone_json.empty()) throw conic::ParameterError("ivols: --cone is required");
      return run_ivols(ivols);
    }
    if (project_cmd->parsed()) {
      if (proj.cone_json.empty() || proj.x_json.empty())
        throw conic::ParameterError("project: --cone and --x are required");
      return run_project(proj);
    }
    if (clt_cmd->parsed()) {
      if (clt.cone_json.empty()) throw conic::ParameterError("clt: --cone is required");
      return run_clt(clt);
    }
    if (bounds_cmd->parsed()) return run_bounds(bounds);
    if (psi_cmd->parsed()) return run_psi(psi);
    if (phase_cmd->parsed()) {
      merge_config(phase_cmd, config_path,
                   {{"d", [&](const json& v) { phase.d = v.get<int>(); }},
                    {"s", [&](const json& v) { phase.s = v.get<int>(); }},
                    {"trials", [&](const json& v) { phase.trials = v.get<long long>(); }},
                    {"seed", [&](const json& v) { phase.seed = v.get<std::uint64_t>(); }},
                    {"t-min", [&](const json& v) { phase.t_min = v.get<double>(); }},
                    {"t-max", [&](const json& v) { phase.t_max = v.get<double>(); }},
                    {"t-step", [&](const json& v) { phase.t_step = v.get<double>(); }},
                    {"n-moments", [&](const json& v) { phase.n_moments = v.get<long long>(); }},
                    {"workers", [&](const json& v) { phase.workers = v.get<int>(); }},
                    {"out", [&](const json& v) { phase.out = v.get<std::string>(); }}});
      return run_phase(phase);
    }
    if (recover_cmd->parsed()) return run_recover(recover);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const conic::DivergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
  return kExitUsage;
}
