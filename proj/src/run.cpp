#include "csa/run.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "csa/config_io.hpp"
#include "csa/degree.hpp"
#include "csa/simulator.hpp"

namespace csa {

namespace {

// CSV number format: 6 significant digits, '.' decimal separator.
std::string sig6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  return out;
}

void print_alpha(std::ostream& out, const AccessMatrix& alpha) {
  for (std::size_t l = 0; l < alpha.rows(); ++l) {
    out << "alpha[" << l << "] =";
    for (std::size_t j = 0; j < alpha.cols(); ++j) out << ' ' << sig6(alpha(l, j));
    out << '\n';
  }
}

void print_evolution_summary(std::ostream& out, const SystemConfig& cfg,
                             const EvolutionResult& r) {
  out << "T      = " << sig6(r.throughput) << '\n';
  out << "P_R    = " << sig6(r.aggregate_resolution) << '\n';
  for (std::size_t l = 0; l < r.resolution_probs.size(); ++l)
    out << "P_R[" << l << "] = " << sig6(r.resolution_probs[l]) << '\n';
  for (std::size_t j = 0; j < cfg.num_slot_classes(); ++j)
    out << "beta[" << j << "] = " << sig6(expected_slot_degree(cfg, j)) << '\n';
  out << "converged = " << (r.converged ? "yes" : "no") << " (iterations "
      << r.iterations_used << ", residual " << sig6(r.residual) << ")\n";
}

void write_sweep_header(std::ostream& csv, std::size_t L, std::size_t J) {
  csv << "m_over_n,throughput,resolution_prob";
  for (std::size_t j = 0; j < J; ++j) csv << ",beta_" << j;
  for (std::size_t l = 0; l < L; ++l)
    for (std::size_t j = 0; j < J; ++j) csv << ",alpha_" << l << '_' << j;
  csv << '\n';
}

void write_sweep_row(std::ostream& csv, const SweepSample& s, std::size_t L, std::size_t J) {
  csv << sig6(1.0 + s.epsilon) << ',' << sig6(s.throughput) << ',' << sig6(s.resolution);
  for (std::size_t j = 0; j < J; ++j) csv << ',' << sig6(s.slot_degrees[j]);
  for (std::size_t l = 0; l < L; ++l)
    for (std::size_t j = 0; j < J; ++j) csv << ',' << sig6(s.alpha(l, j));
  csv << '\n';
}

void run_evolve(const RunSpec& spec, const SystemConfig& cfg, std::ostream& out) {
  const EvolutionResult r = evolve(cfg, spec.max_iter, spec.tol);
  print_evolution_summary(out, cfg, r);
  if (!spec.out_path.empty()) {
    auto csv = open_csv(spec.out_path);
    csv << "iteration";
    for (std::size_t l = 0; l < cfg.num_user_classes(); ++l) csv << ",y_" << l;
    csv << '\n';
    for (std::size_t i = 0; i < r.trajectories[0].size(); ++i) {
      csv << i;
      for (std::size_t l = 0; l < cfg.num_user_classes(); ++l)
        csv << ',' << sig6(r.trajectories[l][i]);
      csv << '\n';
    }
  }
}

void run_sweep(const RunSpec& spec, const SystemConfig& cfg, std::ostream& out) {
  const OptimizationReport report = sweep_eps(cfg, spec.eps_min, spec.eps_max, spec.eps_steps,
                                              spec.grid, spec.max_iter, spec.tol);
  out << "best M/N = " << sig6(1.0 + report.best_epsilon) << '\n';
  out << "T      = " << sig6(report.best_throughput) << '\n';
  out << "P_R    = " << sig6(report.best_resolution) << '\n';
  for (std::size_t l = 0; l < report.per_class_resolution.size(); ++l)
    out << "P_R[" << l << "] = " << sig6(report.per_class_resolution[l]) << '\n';
  {
    SystemConfig best = cfg;
    best.epsilon = report.best_epsilon;
    best.access = report.best_alpha;
    for (std::size_t j = 0; j < best.num_slot_classes(); ++j)
      out << "beta[" << j << "] = " << sig6(expected_slot_degree(best, j)) << '\n';
  }
  print_alpha(out, report.best_alpha);
  if (!spec.out_path.empty()) {
    auto csv = open_csv(spec.out_path);
    write_sweep_header(csv, cfg.num_user_classes(), cfg.num_slot_classes());
    for (const SweepSample& s : report.sweep_samples)
      write_sweep_row(csv, s, cfg.num_user_classes(), cfg.num_slot_classes());
  }
}

void run_simulate(const RunSpec& spec, const SystemConfig& cfg, std::ostream& out) {
  const TrialStats stats = run_trials(cfg, spec.num_users, spec.trials, spec.seed);
  out << "N = " << spec.num_users << ", trials = " << stats.trials << '\n';
  out << "T      = " << sig6(stats.mean_throughput) << " +/- "
      << sig6(stats.stderr_throughput) << '\n';
  out << "P_R    = " << sig6(stats.mean_resolved_fraction) << " +/- "
      << sig6(stats.stderr_resolved_fraction) << '\n';
  for (std::size_t l = 0; l < stats.mean_per_class_resolved.size(); ++l)
    out << "P_R[" << l << "] = " << sig6(stats.mean_per_class_resolved[l]) << " +/- "
        << sig6(stats.stderr_per_class_resolved[l]) << '\n';
  for (std::size_t j = 0; j < cfg.num_slot_classes(); ++j)
    out << "beta[" << j << "] = " << sig6(expected_slot_degree(cfg, j)) << '\n';
  const EvolutionResult r = evolve(cfg, spec.max_iter, spec.tol);
  out << "asymptotic T = " << sig6(r.throughput) << ", P_R = "
      << sig6(r.aggregate_resolution) << '\n';
  if (!spec.out_path.empty()) {
    auto csv = open_csv(spec.out_path);
    csv << "trial,resolved_fraction,throughput";
    for (std::size_t l = 0; l < cfg.num_user_classes(); ++l)
      csv << ",resolved_fraction_class_" << l;
    csv << ",peel_rounds\n";
    for (std::size_t t = 0; t < spec.trials; ++t) {
      const ContentionGraph g = build_graph(cfg, spec.num_users, trial_seed(spec.seed, t));
      const TrialOutcome o = peel(g);
      csv << t << ',' << sig6(o.resolved_fraction) << ',' << sig6(o.throughput);
      for (double f : o.per_class_resolved_fraction) csv << ',' << sig6(f);
      csv << ',' << o.peel_rounds << '\n';
    }
  }
}

void run_optimize(const RunSpec& spec, const SystemConfig& cfg, std::ostream& out) {
  if (spec.target_resolution) {
    const ConstrainedOptimum opt = optimize_with_resolution_floor(
        cfg, cfg.epsilon, *spec.target_resolution, spec.grid, spec.max_iter, spec.tol);
    out << "target P_R = " << sig6(*spec.target_resolution) << " at M/N = "
        << sig6(1.0 + cfg.epsilon) << '\n';
    if (!opt.feasible) {
      out << "infeasible: no grid point reaches the target resolution\n";
      return;
    }
    out << "T      = " << sig6(opt.throughput) << '\n';
    out << "P_R    = " << sig6(opt.resolution) << '\n';
    print_alpha(out, opt.alpha);
    return;
  }
  const AlphaOptimum opt =
      optimize_alpha_at_eps(cfg, cfg.epsilon, spec.grid, spec.max_iter, spec.tol);
  out << "M/N = " << sig6(1.0 + cfg.epsilon) << '\n';
  out << "T      = " << sig6(opt.throughput) << '\n';
  out << "P_R    = " << sig6(opt.resolution) << '\n';
  for (std::size_t l = 0; l < opt.per_class_resolution.size(); ++l)
    out << "P_R[" << l << "] = " << sig6(opt.per_class_resolution[l]) << '\n';
  for (std::size_t j = 0; j < opt.slot_degrees.size(); ++j)
    out << "beta[" << j << "] = " << sig6(opt.slot_degrees[j]) << '\n';
  print_alpha(out, opt.alpha);
  if (!spec.out_path.empty()) {
    auto csv = open_csv(spec.out_path);
    write_sweep_header(csv, cfg.num_user_classes(), cfg.num_slot_classes());
    SweepSample s;
    s.epsilon = cfg.epsilon;
    s.alpha = opt.alpha;
    s.throughput = opt.throughput;
    s.resolution = opt.resolution;
    s.slot_degrees = opt.slot_degrees;
    write_sweep_row(csv, s, cfg.num_user_classes(), cfg.num_slot_classes());
  }
}

void run_dump(const RunSpec& spec, const SystemConfig& cfg, std::ostream& out) {
  const std::string text = dump_config(cfg);
  if (spec.out_path.empty()) {
    out << text;
  } else {
    auto file = open_csv(spec.out_path);
    file << text;
  }
}

}  // namespace

RunMode parse_run_mode(const std::string& name) {
  if (name == "evolve") return RunMode::evolve;
  if (name == "sweep") return RunMode::sweep;
  if (name == "simulate") return RunMode::simulate;
  if (name == "optimize") return RunMode::optimize;
  if (name == "dump") return RunMode::dump;
  throw std::runtime_error("unknown mode '" + name +
                           "' (expected evolve, sweep, simulate, optimize or dump)");
}

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    if (spec.preset.empty() == spec.config_path.empty())
      throw std::runtime_error("exactly one of --preset and --config must be given");
    const SystemConfig cfg =
        spec.preset.empty() ? load_config_file(spec.config_path) : scenario_preset(spec.preset);
    validate(cfg);
    switch (spec.mode) {
      case RunMode::evolve: run_evolve(spec, cfg, out); break;
      case RunMode::sweep: run_sweep(spec, cfg, out); break;
      case RunMode::simulate: run_simulate(spec, cfg, out); break;
      case RunMode::optimize: run_optimize(spec, cfg, out); break;
      case RunMode::dump: run_dump(spec, cfg, out); break;
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace csa
