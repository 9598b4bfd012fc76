#include "synthlab/lab.hpp"

#include "synthlab/cone.hpp"
#include "synthlab/errors.hpp"
#include "synthlab/parallel.hpp"
#include "synthlab/rng.hpp"

#include <cmath>
#include <limits>

namespace synthlab {

Matrix draw_measurements(const MeasurementEnsemble& ens) {
  if (ens.m < 1 || ens.n < 1) throw DomainError("draw_measurements: dimensions must be positive");
  Generator gen(ens.seed);
  if (ens.kind == EnsembleKind::gaussian) return gen.normal_matrix(ens.m, ens.n);
  Matrix a(ens.m, ens.n);
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, j) = gen.rademacher();
  return a;
}

TrialResult run_trial(const Dictionary& dict, const CoefVector& z_ref, int m, double eta,
                      std::uint64_t noise_dir_seed, std::uint64_t ens_seed,
                      const SolverSettings& solver, EnsembleKind kind) {
  if (z_ref.sparsity() == 0) throw DomainError("run_trial: z_ref must be nonzero");
  if (m < 1) throw DomainError("run_trial: m must be positive");
  if (eta < 0.0) throw DomainError("run_trial: eta must be nonnegative");

  MeasurementEnsemble ens{kind, m, static_cast<int>(dict.n()), ens_seed};
  const Matrix a = draw_measurements(ens);
  const Matrix measured_dict = a * dict.matrix;
  const Vector x0 = dict.matrix * z_ref.entries;
  Vector y = a * x0;
  if (eta > 0.0) {
    Generator gen(noise_dir_seed);
    y += eta * gen.unit_vector(m);
  }

  TrialResult trial;
  trial.m = m;
  trial.eta = eta;
  trial.seed = ens_seed;
  BPSolution sol = solve_bp_ineq(measured_dict, y, eta, solver);
  trial.solver_converged = sol.converged;
  trial.coef_err = (z_ref.entries - sol.z.entries).norm();
  trial.sig_err = (x0 - dict.matrix * sol.z.entries).norm();
  trial.coef_success = trial.coef_err < kSuccessThreshold;
  trial.sig_success = trial.sig_err < kSuccessThreshold;
  return trial;
}

PhaseGrid run_phase_fixed(const Dictionary& dict, const CoefVector& z_ref,
                          const std::vector<int>& m_values, int trials, std::uint64_t master_seed,
                          const SolverSettings& solver, int threads,
                          std::optional<WidthEstimate> overlay, EnsembleKind kind) {
  if (m_values.empty()) throw DomainError("run_phase_fixed: empty m grid");
  if (trials < 1) throw DomainError("run_phase_fixed: trials must be positive");

  PhaseGrid grid;
  grid.m_values = m_values;
  grid.s_values = {z_ref.sparsity()};
  grid.trials_per_cell = trials;
  grid.success_counts_coef.assign(1, std::vector<int>(m_values.size(), 0));
  grid.success_counts_sig.assign(1, std::vector<int>(m_values.size(), 0));
  grid.solver_failures.assign(1, std::vector<int>(m_values.size(), 0));
  if (overlay) {
    grid.overlay = {overlay->statdim};
    grid.overlay_stderr = {overlay->stderr_};
  }

  const std::size_t total = m_values.size() * static_cast<std::size_t>(trials);
  std::vector<TrialResult> results(total);
  parallel_for(total, threads, [&](std::size_t idx) {
    const std::size_t mi = idx / static_cast<std::size_t>(trials);
    const int trial = static_cast<int>(idx % static_cast<std::size_t>(trials));
    const int m = m_values[mi];
    const std::uint64_t ens_seed =
        rng::derive(master_seed, {0xA110u, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(trial)});
    const std::uint64_t noise_seed =
        rng::derive(master_seed, {0xB220u, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(trial)});
    results[idx] = run_trial(dict, z_ref, m, 0.0, noise_seed, ens_seed, solver, kind);
  });
  for (std::size_t idx = 0; idx < total; ++idx) {
    const std::size_t mi = idx / static_cast<std::size_t>(trials);
    const TrialResult& t = results[idx];
    if (!t.solver_converged) grid.solver_failures[0][mi] += 1;
    if (t.coef_success) grid.success_counts_coef[0][mi] += 1;
    if (t.sig_success) grid.success_counts_sig[0][mi] += 1;
  }
  return grid;
}

PhaseGrid run_phase_full(const Dictionary& dict, const std::vector<int>& s_values,
                         std::uint64_t master_seed, const SolverSettings& solver,
                         const PhaseFullOptions& options) {
  if (s_values.empty()) throw DomainError("run_phase_full: empty sparsity grid");
  for (int s : s_values)
    if (s < 1 || s > dict.d()) throw DomainError("run_phase_full: sparsity out of range");
  if (options.m_values.empty()) throw DomainError("run_phase_full: empty m grid");
  const int reps = options.inner_repetitions;
  if (reps < 1 || options.trials_per_cell < reps)
    throw DomainError("run_phase_full: trials_per_cell must be at least the repetition count");
  const int signal_draws = (options.trials_per_cell + reps - 1) / reps;

  PhaseGrid grid;
  grid.m_values = options.m_values;
  grid.s_values = s_values;
  grid.trials_per_cell = signal_draws * reps;
  grid.success_counts_coef.assign(s_values.size(), std::vector<int>(options.m_values.size(), 0));
  grid.success_counts_sig.assign(s_values.size(), std::vector<int>(options.m_values.size(), 0));
  grid.solver_failures.assign(s_values.size(), std::vector<int>(options.m_values.size(), 0));
  grid.overlay.assign(s_values.size(), 0.0);
  grid.overlay_stderr.assign(s_values.size(), 0.0);

  for (std::size_t si = 0; si < s_values.size(); ++si) {
    const int s = s_values[si];
    double statdim_acc = 0.0;
    double stderr_acc = 0.0;
    for (int draw = 0; draw < signal_draws; ++draw) {
      Vector x0;
      for (std::uint64_t attempt = 0;; ++attempt) {
        Generator gen(master_seed, {0xF011u, static_cast<std::uint64_t>(s),
                                    static_cast<std::uint64_t>(draw), attempt});
        const std::vector<int> support = gen.subset(static_cast<int>(dict.d()), s);
        Vector z0 = Vector::Zero(dict.d());
        for (int idx : support) z0[idx] = gen.normal();
        x0 = dict.matrix * z0;
        if (x0.norm() > 1e-9 || attempt >= 16) break;  // redraw cancelled atom combinations
      }

      // Minimal l1 representer of the drawn signal. The returned point is
      // exactly feasible and its objective settles long before the iterate
      // does on non-singleton solution faces, so it is used regardless of the
      // convergence flag.
      const BPSolution rep = solve_bp_eq(dict.matrix, x0, solver);
      CoefVector z_l1 = rep.z;
      z_l1.rebuild_support(1e-6);
      if (z_l1.sparsity() == 0) z_l1 = rep.z;

      const PolyhedralCone cone = descent_generators(dict, z_l1);
      const std::uint64_t width_seed =
          rng::derive(master_seed, {0x41D7u, static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(draw)});
      const WidthEstimate width =
          estimate_statdim(cone, options.width_samples, width_seed, options.threads);
      statdim_acc += width.statdim;
      stderr_acc += width.stderr_ * width.stderr_;

      const std::size_t cells = options.m_values.size() * static_cast<std::size_t>(reps);
      std::vector<TrialResult> results(cells);
      parallel_for(cells, options.threads, [&](std::size_t idx) {
        const std::size_t mi = idx / static_cast<std::size_t>(reps);
        const int rep_idx = static_cast<int>(idx % static_cast<std::size_t>(reps));
        const int m = options.m_values[mi];
        const std::uint64_t ens_seed = rng::derive(
            master_seed, {0xA11Fu, static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(draw),
                          static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(rep_idx)});
        results[idx] = run_trial(dict, z_l1, m, 0.0, 0, ens_seed, solver, options.kind);
      });
      for (std::size_t idx = 0; idx < cells; ++idx) {
        const std::size_t mi = idx / static_cast<std::size_t>(reps);
        const TrialResult& t = results[idx];
        if (!t.solver_converged) grid.solver_failures[si][mi] += 1;
        if (t.coef_success) grid.success_counts_coef[si][mi] += 1;
        if (t.sig_success) grid.success_counts_sig[si][mi] += 1;
      }
    }
    grid.overlay[si] = statdim_acc / signal_draws;
    grid.overlay_stderr[si] = std::sqrt(stderr_acc) / signal_draws;
  }
  return grid;
}

NoiseSweep run_noise_sweep(const Dictionary& dict, const CoefVector& z_ref, int m,
                           const std::vector<double>& eta_values, int trials,
                           std::uint64_t master_seed, const SolverSettings& solver,
                           double m0, int threads, EnsembleKind kind) {
  if (eta_values.empty()) throw DomainError("run_noise_sweep: empty eta grid");
  if (trials < 1) throw DomainError("run_noise_sweep: trials must be positive");

  NoiseSweep sweep;
  sweep.eta_values = eta_values;
  sweep.m = m;
  sweep.m0 = m0;
  sweep.mean_coef_err.assign(eta_values.size(), 0.0);
  sweep.mean_sig_err.assign(eta_values.size(), 0.0);
  sweep.bound_sig.assign(eta_values.size(), std::numeric_limits<double>::quiet_NaN());
  sweep.trials.assign(eta_values.size(), std::vector<TrialResult>(static_cast<std::size_t>(trials)));

  const std::size_t total = eta_values.size() * static_cast<std::size_t>(trials);
  parallel_for(total, threads, [&](std::size_t idx) {
    const std::size_t ei = idx / static_cast<std::size_t>(trials);
    const int trial = static_cast<int>(idx % static_cast<std::size_t>(trials));
    const double eta = eta_values[ei];
    const std::uint64_t ens_seed =
        rng::derive(master_seed, {0xE7A0u, static_cast<std::uint64_t>(ei), static_cast<std::uint64_t>(trial)});
    const std::uint64_t noise_seed =
        rng::derive(master_seed, {0xE7A1u, static_cast<std::uint64_t>(ei), static_cast<std::uint64_t>(trial)});
    sweep.trials[ei][static_cast<std::size_t>(trial)] =
        run_trial(dict, z_ref, m, eta, noise_seed, ens_seed, solver, kind);
  });

  for (std::size_t ei = 0; ei < eta_values.size(); ++ei) {
    double coef_acc = 0.0, sig_acc = 0.0;
    for (const TrialResult& t : sweep.trials[ei]) {
      coef_acc += t.coef_err;
      sig_acc += t.sig_err;
    }
    sweep.mean_coef_err[ei] = coef_acc / trials;
    sweep.mean_sig_err[ei] = sig_acc / trials;
    if (m > m0) sweep.bound_sig[ei] = error_bound_signal(eta_values[ei], m, m0);
  }
  return sweep;
}

std::vector<double> isotonic_fit(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<double> level;
  std::vector<double> weight;
  level.reserve(n);
  weight.reserve(n);
  for (double v : values) {
    level.push_back(v);
    weight.push_back(1.0);
    while (level.size() > 1 && level[level.size() - 2] > level.back()) {
      const double w = weight[weight.size() - 2] + weight.back();
      const double merged =
          (level[level.size() - 2] * weight[weight.size() - 2] + level.back() * weight.back()) / w;
      level.pop_back();
      weight.pop_back();
      level.back() = merged;
      weight.back() = w;
    }
  }
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t block = 0; block < level.size(); ++block)
    for (int rep = 0; rep < static_cast<int>(weight[block]); ++rep) out.push_back(level[block]);
  return out;
}

double crossing_m(const std::vector<int>& m_values, const std::vector<double>& fractions) {
  if (m_values.size() != fractions.size() || m_values.empty())
    throw DomainError("crossing_m: grid size mismatch");
  const std::vector<double> smooth = isotonic_fit(fractions);
  for (std::size_t i = 0; i < smooth.size(); ++i) {
    if (smooth[i] >= 0.5) {
      if (i == 0 || smooth[i] == smooth[i - 1]) return m_values[i];
      const double t = (0.5 - smooth[i - 1]) / (smooth[i] - smooth[i - 1]);
      return m_values[i - 1] + t * (m_values[i] - m_values[i - 1]);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace synthlab
