// dnlsgm: sampling, gauge, change-of-measure and invariance experiments for
// the periodic derivative NLS hierarchy. See README.md for the exit-code
// contract: 0 pass, 1 statistical or identity failure, 2 configuration error,
// 3 degenerate statistics, 4 divergence.
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dnls/bridge.hpp"
#include "dnls/change_of_measure.hpp"
#include "dnls/dynamics.hpp"
#include "dnls/functionals.hpp"
#include "dnls/gauge.hpp"
#include "dnls/io.hpp"
#include "dnls/measures.hpp"
#include "dnls/rng.hpp"

namespace {

using nlohmann::json;
using namespace dnls;

constexpr const char* kVersion = "1.0.0";

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitDiverged = 4;

struct Options {
  uint64_t seed = 1;
  int modes = 32;
  int samples = 2000;
  int steps = 512;
  double dt = 1e-3;
  double horizon = 1.0;
  double mass_cutoff = 2.2;
  std::string out;
  int threads = 1;
  std::string config_path;
  bool sign_flip = false;

  // subcommand-specific
  std::string measure = "nu";            // sample
  std::string equation = "gdnls_plus";   // evolve
  std::string invariance_case = "nu_dnls";
  std::string in;                        // evolve / report input
};

json options_json(const Options& o, const std::string& command) {
  return json{{"command", command},
              {"seed", o.seed},
              {"modes", o.modes},
              {"samples", o.samples},
              {"steps", o.steps},
              {"dt", o.dt},
              {"horizon", o.horizon},
              {"mass_cutoff", o.mass_cutoff},
              {"threads", o.threads},
              {"sign_flip", o.sign_flip},
              {"measure", o.measure},
              {"equation", o.equation},
              {"case", o.invariance_case},
              {"in", o.in},
              {"out", o.out}};
}

json base_report(const Options& o, const std::string& command) {
  json r;
  r["config"] = options_json(o, command);
  r["seed"] = o.seed;
  r["version"] = kVersion;
  r["format_version"] = kFormatVersion;
  return r;
}

void write_json(const json& report, const std::string& path) {
  if (path.empty()) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << report.dump(2) << "\n";
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    quoted += c;
    if (c == '"') quoted += '"';
  }
  quoted += '"';
  return quoted;
}

void write_csv(const std::vector<std::vector<std::string>>& rows, const std::string& path) {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!path.empty()) {
    file.open(path);
    if (!file) throw std::runtime_error("cannot open " + path + " for writing");
    out = &file;
  }
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) *out << ',';
      *out << csv_escape(row[i]);
    }
    *out << "\r\n";
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

MeasureConfig measure_config(const Options& o) {
  MeasureConfig cfg;
  cfg.cutoff = o.modes;
  cfg.mass_cutoff = o.mass_cutoff;
  if (o.measure == "rho") cfg.which = MeasureConfig::Which::rho;
  else if (o.measure == "nu") cfg.which = MeasureConfig::Which::nu;
  else if (o.measure == "mu") cfg.which = MeasureConfig::Which::mu;
  else throw CLI::ValidationError("--measure must be rho, nu or mu");
  return cfg;
}

// ---------------------------------------------------------------------------

int cmd_identities(const Options& o) {
  const int count = o.samples;
  const int cutoff = o.modes;
  if (count <= 0 || cutoff <= 0) throw CLI::ValidationError("need samples > 0, modes > 0");
  const GaugeSpec spec{1e9, GaugeSpec::Mode::plain};
  const int chain_sign = o.sign_flip ? -1 : +1;
  const double tol = 1e-8;

  double r_energy = 0.0, r_ham = 0.0, r_eu = 0.0, r_oo3 = 0.0, r_oo2 = 0.0, r_chain = 0.0;
  for (int i = 0; i < count; ++i) {
    SpectralField u = sample_rho_field(cutoff, o.seed, static_cast<uint64_t>(i));
    const int points = padded_resolution(cutoff);
    FieldGrids gw = gauge_grids(u, spec, points, -1);
    const Moments mw = moments(gw);
    const double e_u = energy(u);
    const double h_u = hamiltonian(u);
    r_energy = std::max(r_energy, std::abs(e_u - gauged_energy(mw)) / (1.0 + std::abs(e_u)));
    r_ham = std::max(r_ham, std::abs(h_u - gauged_hamiltonian(mw)) / (1.0 + std::abs(h_u)));

    const Moments mm = moments(u);
    const double eu_lhs =
        script_energy(mm) + 2.0 * mm.m * gauged_hamiltonian(mm) - two_pi * mm.m * mm.m * mm.m;
    r_eu = std::max(r_eu,
                    std::abs(eu_lhs - gauged_energy(mm)) / (1.0 + std::abs(gauged_energy(mm))));

    PointwiseResiduals pw = pointwise_identity_residuals(u, spec);
    const double pw_scale = 1.0 + mm.s6 / two_pi + mm.d2 / two_pi;
    r_oo3 = std::max(r_oo3, pw.cubic / pw_scale);
    r_oo2 = std::max(r_oo2, pw.deriv_sq / pw_scale);

    const double chain_scale = 1.0 + std::abs(density_exponent_pullback(mm)) +
                               0.5 * (mm.s6 + 2.0 * mm.m * mm.s4 + mm.m * mm.m * mm.s2);
    r_chain = std::max(r_chain,
                       std::abs(verify_density_algebra(u, spec, chain_sign)) / chain_scale);
  }

  std::vector<std::pair<std::string, double>> rows = {
      {"energy_equivariance", r_energy}, {"hamiltonian_equivariance", r_ham},
      {"eu_identity", r_eu},             {"pointwise_cubic", r_oo3},
      {"pointwise_deriv_sq", r_oo2},     {"density_chain", r_chain}};
  std::vector<std::vector<std::string>> csv = {{"identity", "max_residual", "tolerance", "pass"}};
  bool all_pass = true;
  for (const auto& [name, value] : rows) {
    const bool ok = value <= tol;
    all_pass = all_pass && ok;
    csv.push_back({name, fmt(value), fmt(tol), ok ? "true" : "false"});
  }
  write_csv(csv, o.out);
  return all_pass ? kExitPass : kExitFail;
}

int cmd_girsanov(const Options& o) {
  if (o.samples < 1000) {
    std::cerr << "girsanov: fewer than 1000 samples gives degenerate statistics\n";
    return kExitDegenerate;
  }
  const GaugeSpec spec{o.mass_cutoff, GaugeSpec::Mode::cutoff};
  const int sign = o.sign_flip ? -1 : +1;
  RnReport r = verify_transport(o.samples, o.steps, spec, o.seed, default_path_panel(spec), sign);

  json report = base_report(o, "girsanov");
  report["novikov"] = {{"value", r.novikov.value}, {"stderr", r.novikov.stderr_}};
  report["gauged_fraction"] = r.gauged_fraction;
  report["extreme_weight_warning"] = r.extreme_weight_warning;
  report["n_steps"] = r.n_steps;
  json obs = json::array();
  for (const PathObservablePair& p : r.observables) {
    obs.push_back({{"name", p.name},
                   {"lhs", p.lhs.value},
                   {"lhs_stderr", p.lhs.stderr_},
                   {"rhs", p.rhs.value},
                   {"rhs_stderr", p.rhs.stderr_},
                   {"sigma_gap", p.sigma_gap}});
  }
  report["observables"] = obs;
  const double novikov_gap =
      r.novikov.stderr_ > 0.0 ? std::abs(r.novikov.value - 1.0) / r.novikov.stderr_
                              : (r.novikov.value == 1.0 ? 0.0 : 1e300);
  const bool pass = r.pass && novikov_gap <= 3.0;
  report["pass"] = pass;
  report["report_kind"] = "girsanov";
  write_json(report, o.out);
  if (r.extreme_weight_warning) return kExitDegenerate;
  return pass ? kExitPass : kExitFail;
}

int cmd_cm_verify(const Options& o) {
  const int n = o.steps;
  if (n < 2) throw CLI::ValidationError("need steps >= 2");
  const double tol = 1e-10;
  double worst = 0.0;
  CounterRng rng(o.seed, 0);
  for (int trial = 0; trial < std::max(1, o.samples); ++trial) {
    std::vector<double> s(static_cast<size_t>(n) + 1), x(s.size()), k(s.size());
    s[0] = 0.0;
    for (int j = 1; j <= n; ++j) {
      s[static_cast<size_t>(j)] =
          s[static_cast<size_t>(j - 1)] + (0.5 + rng.uniform()) / static_cast<double>(n);
    }
    x[0] = 0.0;
    k[0] = 0.0;
    for (size_t j = 1; j < s.size(); ++j) {
      x[j] = x[j - 1] + std::sqrt(s[j] - s[j - 1]) * rng.normal();
      k[j] = k[j - 1] + 0.1 * rng.normal() * (s[j] - s[j - 1]);
    }
    double base = 0.0, shifted = 0.0;
    for (size_t j = 0; j + 1 < x.size(); ++j) {
      const double ds = s[j + 1] - s[j];
      const double dx = x[j + 1] - x[j];
      const double dk = k[j + 1] - k[j];
      base += dx * dx / ds;
      shifted += (dx - dk) * (dx - dk) / ds;
    }
    const double oracle = -0.5 * (shifted - base);
    const double cm = cameron_martin_log_density(x, k, s);
    worst = std::max(worst, std::abs(cm - oracle) / (1.0 + std::abs(oracle)));
  }
  std::vector<std::vector<std::string>> csv = {
      {"check", "max_residual", "tolerance", "pass"},
      {"cameron_martin_vs_gaussian_ratio", fmt(worst), fmt(tol), worst <= tol ? "true" : "false"}};
  write_csv(csv, o.out);
  return worst <= tol ? kExitPass : kExitFail;
}

int cmd_bridge_verify(const Options& o) {
  const int n = o.steps;
  if (n < 2) throw CLI::ValidationError("need steps >= 2");
  const double tol = 1e-9;
  double worst_quad = 0.0, worst_clock = 0.0;
  for (int i = 0; i < std::max(1, o.samples); ++i) {
    BridgePath p = sample_bridge(cplx(0.0, 0.0), n, o.seed, static_cast<uint64_t>(i));
    // quadratic identity: the log-weight is exactly -pi * trapezoid mass
    const double lw = rho_bridge_log_weight(p);
    worst_quad = std::max(worst_quad, std::abs(lw + (two_pi / 2.0) * path_mass(p)) /
                                          (1.0 + std::abs(lw)));
    // time-change round trip
    TimeChangedPath tc = time_change(p);
    if (!tc.near_zero) {
      std::vector<double> x = inverse_time_change(tc, p);
      for (int k = 0; k <= n; ++k) {
        worst_clock = std::max(
            worst_clock, std::abs(x[static_cast<size_t>(k)] - two_pi * k / n) / two_pi);
      }
    }
  }
  std::vector<std::vector<std::string>> csv = {
      {"check", "max_residual", "tolerance", "pass"},
      {"weight_mass_identity", fmt(worst_quad), fmt(tol),
       worst_quad <= tol ? "true" : "false"},
      {"clock_round_trip", fmt(worst_clock), fmt(tol), worst_clock <= tol ? "true" : "false"}};
  write_csv(csv, o.out);
  return (worst_quad <= tol && worst_clock <= tol) ? kExitPass : kExitFail;
}

int cmd_sample(const Options& o) {
  if (o.out.empty()) throw CLI::ValidationError("sample: --out prefix is required");
  if (o.samples <= 0) throw CLI::ValidationError("need samples > 0");
  MeasureConfig cfg = measure_config(o);
  WeightedEnsemble ens = sample_rho(cfg, o.seed, o.samples);
  if (cfg.which == MeasureConfig::Which::rho) {
    std::fill(ens.log_weights.begin(), ens.log_weights.end(), 0.0);
  }
  save_ensemble(ens, o.out);
  return kExitPass;
}

int cmd_evolve(const Options& o) {
  SolverConfig solver;
  solver.dt = o.dt;
  solver.horizon = o.horizon;
  if (o.equation == "dnls") solver.equation = Equation::dnls;
  else if (o.equation == "gdnls_plus") solver.equation = Equation::gdnls_plus;
  else if (o.equation == "gdnls_v") solver.equation = Equation::gdnls_v;
  else throw CLI::ValidationError("--equation must be dnls, gdnls_plus or gdnls_v");

  json report = base_report(o, "evolve");
  json trajectories = json::array();
  int diverged = 0;

  if (!o.in.empty()) {
    WeightedEnsemble ens = load_ensemble(o.in);
    solver.cutoff = ens.config.cutoff;
    WeightedEnsemble evolved = ens;
    for (size_t i = 0; i < ens.samples.size(); ++i) {
      auto [u_t, traj] = evolve(ens.samples[i], solver);
      evolved.samples[i] = u_t;
      if (traj.diverged) ++diverged;
      trajectories.push_back({{"index", i},
                              {"diverged", traj.diverged},
                              {"under_resolved", traj.under_resolved},
                              {"drift_mass", traj.drift_mass},
                              {"drift_hamiltonian", traj.drift_hamiltonian},
                              {"last_valid_time", traj.last_valid_time}});
    }
    if (!o.out.empty()) save_ensemble(evolved, o.out);
  } else {
    solver.cutoff = o.modes;
    SpectralField u0 = sample_rho_field(o.modes, o.seed, 0);
    auto [u_t, traj] = evolve(u0, solver);
    if (traj.diverged) ++diverged;
    trajectories.push_back({{"index", 0},
                            {"diverged", traj.diverged},
                            {"under_resolved", traj.under_resolved},
                            {"drift_mass", traj.drift_mass},
                            {"drift_hamiltonian", traj.drift_hamiltonian},
                            {"last_valid_time", traj.last_valid_time}});
  }
  report["trajectories"] = trajectories;
  report["diverged_count"] = diverged;
  report["report_kind"] = "evolve";
  write_json(report, o.out.empty() ? "" : o.out + ".report.json");
  return diverged > 0 ? kExitDiverged : kExitPass;
}

int cmd_invariance(const Options& o) {
  MeasureConfig measure;
  measure.cutoff = o.modes;
  measure.mass_cutoff = o.mass_cutoff;
  SolverConfig solver;
  solver.dt = o.dt;
  solver.horizon = o.horizon;
  InvarianceCase which;
  if (o.invariance_case == "nu_dnls") which = InvarianceCase::nu_dnls;
  else if (o.invariance_case == "mu_gdnls_plus") which = InvarianceCase::mu_gdnls_plus;
  else if (o.invariance_case == "mu_gdnls_v") which = InvarianceCase::mu_gdnls_v;
  else throw CLI::ValidationError("--case must be nu_dnls, mu_gdnls_plus or mu_gdnls_v");
  if (o.samples <= 0) throw CLI::ValidationError("need samples > 0");

  InvarianceReport r = invariance_experiment(which, measure, solver, o.seed, o.samples);

  json report = base_report(o, "invariance");
  report["max_conserved_drift"] = r.max_conserved_drift;
  report["diverged_count"] = r.diverged_count;
  report["under_resolved_count"] = r.under_resolved_count;
  report["ess"] = r.ess;
  report["pass"] = r.pass;
  report["invalid"] = r.invalid;
  json panel = json::array();
  std::vector<std::vector<std::string>> csv = {
      {"observable", "start", "start_stderr", "end", "end_stderr", "gap_sigma"}};
  for (const InvarianceObservable& obs : r.panel) {
    panel.push_back({{"name", obs.name},
                     {"start", obs.at_start.value},
                     {"start_stderr", obs.at_start.stderr_},
                     {"end", obs.at_end.value},
                     {"end_stderr", obs.at_end.stderr_},
                     {"sigma_gap", obs.gap_sigma}});
    csv.push_back({obs.name, fmt(obs.at_start.value), fmt(obs.at_start.stderr_),
                   fmt(obs.at_end.value), fmt(obs.at_end.stderr_), fmt(obs.gap_sigma)});
  }
  report["panel"] = panel;
  report["report_kind"] = "invariance";
  write_json(report, o.out.empty() ? "" : o.out + ".json");
  if (!o.out.empty()) write_csv(csv, o.out + ".csv");
  if (r.invalid) return kExitDiverged;
  // batch-means ESS measures independent information in the chain, not the
  // raw sample count; a fixed floor is the meaningful degeneracy guard
  if (r.ess < 30.0) return kExitDegenerate;
  return r.pass ? kExitPass : kExitFail;
}

int cmd_transport(const Options& o) {
  if (o.samples < 100) {
    std::cerr << "transport: fewer than 100 samples gives degenerate statistics\n";
    return kExitDegenerate;
  }
  MeasureConfig cfg;
  cfg.cutoff = o.modes;
  cfg.mass_cutoff = o.mass_cutoff;
  PushforwardReport r = pushforward_consistency(cfg, o.seed, o.samples);

  json report = base_report(o, "transport");
  report["ess_nu"] = r.ess_nu;
  report["ess_mu"] = r.ess_mu;
  report["pass"] = r.pass;
  json pairs = json::array();
  for (const ObservablePair& p : r.pairs) {
    pairs.push_back({{"name", p.name},
                     {"gauged_side", p.lhs.value},
                     {"gauged_side_stderr", p.lhs.stderr_},
                     {"direct_side", p.rhs.value},
                     {"direct_side_stderr", p.rhs.stderr_},
                     {"sigma_gap", p.sigma_gap}});
  }
  report["observables"] = pairs;
  report["report_kind"] = "transport";
  write_json(report, o.out);
  // both sides come from Metropolis chains, so the ESS is a batch-means
  // estimate of independent information, not a fraction of the sample count
  if (r.ess_nu < 30.0 || r.ess_mu < 30.0) return kExitDegenerate;
  return r.pass ? kExitPass : kExitFail;
}

int cmd_report(const Options& o) {
  if (o.in.empty()) throw CLI::ValidationError("report: --in directory is required");
  if (!std::filesystem::is_directory(o.in)) {
    throw CLI::ValidationError("report: --in is not a directory");
  }
  // rows keyed by (kind, observable): merged across files with combined stderr
  struct Cell {
    std::vector<double> values, stderrs, gaps;
  };
  std::map<std::pair<std::string, std::string>, Cell> cells;
  int files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(o.in)) {
    if (entry.path().extension() != ".json") continue;
    std::ifstream f(entry.path());
    json doc;
    try {
      doc = json::parse(f);
    } catch (const json::exception&) {
      continue;
    }
    if (!doc.contains("report_kind") || !doc.contains("observables")) continue;
    ++files;
    const std::string kind = doc["report_kind"].get<std::string>();
    for (const json& obs : doc["observables"]) {
      Cell& cell = cells[{kind, obs.at("name").get<std::string>()}];
      const char* vkey = obs.contains("lhs") ? "lhs" : "gauged_side";
      const char* skey = obs.contains("lhs") ? "lhs_stderr" : "gauged_side_stderr";
      cell.values.push_back(obs.at(vkey).get<double>());
      cell.stderrs.push_back(obs.at(skey).get<double>());
      cell.gaps.push_back(obs.at("sigma_gap").get<double>());
    }
  }
  if (files == 0) throw CLI::ValidationError("report: no report JSON files in " + o.in);

  std::vector<std::vector<std::string>> csv = {
      {"kind", "observable", "runs", "mean", "combined_stderr", "max_sigma_gap"}};
  for (const auto& [key, cell] : cells) {
    const double k = static_cast<double>(cell.values.size());
    double mean = 0.0, var = 0.0, worst = 0.0;
    for (double v : cell.values) mean += v;
    mean /= k;
    for (double s : cell.stderrs) var += s * s;
    for (double g : cell.gaps) worst = std::max(worst, g);
    csv.push_back({key.first, key.second, fmt(k), fmt(mean), fmt(std::sqrt(var) / k),
                   fmt(worst)});
  }
  write_csv(csv, o.out);
  std::cerr << "aggregated " << files << " report files, " << cells.size() << " observables\n";
  return kExitPass;
}

// ---------------------------------------------------------------------------

template <typename T>
void from_config(const json& cfg, const CLI::Option* opt, const char* key, T& value) {
  if (opt != nullptr && opt->count() > 0) return;  // flags win over the config file
  if (cfg.contains(key)) value = cfg.at(key).get<T>();
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Weighted Wiener measures, gauge transformations and invariance probes "
               "for the periodic derivative NLS"};
  app.require_subcommand(1);
  app.fallthrough();

  auto* opt_seed = app.add_option("--seed", o.seed, "RNG seed");
  auto* opt_modes = app.add_option("--modes", o.modes, "spectral cutoff N");
  auto* opt_samples = app.add_option("--samples", o.samples, "sample / trial count");
  auto* opt_steps = app.add_option("--steps", o.steps, "path discretization steps");
  auto* opt_dt = app.add_option("--dt", o.dt, "solver time step");
  auto* opt_horizon = app.add_option("--horizon", o.horizon, "solver horizon T");
  auto* opt_b = app.add_option("--mass-cutoff", o.mass_cutoff, "L2 mass cutoff B");
  auto* opt_out = app.add_option("--out", o.out, "output path or prefix");
  auto* opt_threads = app.add_option("--threads", o.threads, "worker threads (results are thread-count independent)");
  app.add_option("--config", o.config_path, "JSON config file; flags override its fields");
  auto* opt_sign = app.add_flag("--sign-flip", o.sign_flip,
                                "negate the stochastic term (negative control)");
  auto* opt_measure = app.add_option("--measure", o.measure, "rho, nu or mu (sample)");
  auto* opt_equation =
      app.add_option("--equation", o.equation, "dnls, gdnls_plus or gdnls_v (evolve)");
  auto* opt_case = app.add_option("--case", o.invariance_case,
                                  "nu_dnls, mu_gdnls_plus or mu_gdnls_v (invariance)");
  auto* opt_in = app.add_option("--in", o.in, "input prefix or directory");

  CLI::App* sub_identities = app.add_subcommand("identities", "algebraic identity suite");
  CLI::App* sub_girsanov = app.add_subcommand("girsanov", "bridge change-of-measure checks");
  CLI::App* sub_cm = app.add_subcommand("cm-verify", "discrete Cameron-Martin oracle check");
  CLI::App* sub_bridge = app.add_subcommand("bridge-verify", "discrete bridge identities");
  CLI::App* sub_sample = app.add_subcommand("sample", "draw a weighted ensemble to disk");
  CLI::App* sub_evolve = app.add_subcommand("evolve", "integrate trajectories");
  CLI::App* sub_invariance = app.add_subcommand("invariance", "measure-invariance probe");
  CLI::App* sub_transport = app.add_subcommand("transport", "field-level pushforward check");
  CLI::App* sub_report = app.add_subcommand("report", "aggregate JSON reports into CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (!o.config_path.empty()) {
      std::ifstream f(o.config_path);
      if (!f) throw std::runtime_error("cannot open config file " + o.config_path);
      json cfg = json::parse(f);  // throws on malformed JSON
      from_config(cfg, opt_seed, "seed", o.seed);
      from_config(cfg, opt_modes, "modes", o.modes);
      from_config(cfg, opt_samples, "samples", o.samples);
      from_config(cfg, opt_steps, "steps", o.steps);
      from_config(cfg, opt_dt, "dt", o.dt);
      from_config(cfg, opt_horizon, "horizon", o.horizon);
      from_config(cfg, opt_b, "mass_cutoff", o.mass_cutoff);
      from_config(cfg, opt_out, "out", o.out);
      from_config(cfg, opt_threads, "threads", o.threads);
      from_config(cfg, opt_sign, "sign_flip", o.sign_flip);
      from_config(cfg, opt_measure, "measure", o.measure);
      from_config(cfg, opt_equation, "equation", o.equation);
      from_config(cfg, opt_case, "case", o.invariance_case);
      from_config(cfg, opt_in, "in", o.in);
    }

    if (sub_identities->parsed()) return cmd_identities(o);
    if (sub_girsanov->parsed()) return cmd_girsanov(o);
    if (sub_cm->parsed()) return cmd_cm_verify(o);
    if (sub_bridge->parsed()) return cmd_bridge_verify(o);
    if (sub_sample->parsed()) return cmd_sample(o);
    if (sub_evolve->parsed()) return cmd_evolve(o);
    if (sub_invariance->parsed()) return cmd_invariance(o);
    if (sub_transport->parsed()) return cmd_transport(o);
    if (sub_report->parsed()) return cmd_report(o);
    return kExitConfig;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
