#pragma once

#include "synthlab/dictionary.hpp"
#include "synthlab/solvers.hpp"
#include "synthlab/types.hpp"
#include "synthlab/width.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace synthlab {

/// Threshold below which a recovery error counts as exact.
inline constexpr double kSuccessThreshold = 1e-5;

Matrix draw_measurements(const MeasurementEnsemble& ens);

struct TrialResult {
  int m = 0;
  double eta = 0.0;
  std::uint64_t seed = 0;
  double coef_err = 0.0;
  double sig_err = 0.0;
  bool coef_success = false;
  bool sig_success = false;
  bool solver_converged = false;
};

/// One recovery trial: draw A, measure y = A D z_ref + eta * e with a random
/// unit noise direction, solve the noisy coefficient program on M = A D, and
/// record both errors against z_ref.
TrialResult run_trial(const Dictionary& dict, const CoefVector& z_ref, int m, double eta,
                      std::uint64_t noise_dir_seed, std::uint64_t ens_seed,
                      const SolverSettings& solver, EnsembleKind kind = EnsembleKind::gaussian);

struct PhaseGrid {
  std::vector<int> m_values;
  std::vector<int> s_values;  // single entry for fixed-coefficient runs
  // indexed [s][m]
  std::vector<std::vector<int>> success_counts_coef;
  std::vector<std::vector<int>> success_counts_sig;
  std::vector<std::vector<int>> solver_failures;
  int trials_per_cell = 0;
  std::vector<double> overlay;         // statistical dimension per s, optional
  std::vector<double> overlay_stderr;
};

/// Experiment over m for one fixed coefficient vector. Per-cell seeds are
/// derived from (master_seed, m, trial).
PhaseGrid run_phase_fixed(const Dictionary& dict, const CoefVector& z_ref,
                          const std::vector<int>& m_values, int trials, std::uint64_t master_seed,
                          const SolverSettings& solver, int threads = 1,
                          std::optional<WidthEstimate> overlay = std::nullopt,
                          EnsembleKind kind = EnsembleKind::gaussian);

struct PhaseFullOptions {
  std::vector<int> m_values;
  int trials_per_cell = 25;    // signal draws x inner repetitions
  int inner_repetitions = 5;
  int width_samples = 300;
  int threads = 1;
  EnsembleKind kind = EnsembleKind::gaussian;
};

/// Experiment over (s, m): per sparsity draw random supports and Gaussian
/// coefficients, take the minimal l1 representer of each drawn signal, run the
/// fixed experiment with few repetitions, and estimate the statistical
/// dimension of the transformed descent cone for the overlay.
PhaseGrid run_phase_full(const Dictionary& dict, const std::vector<int>& s_values,
                         std::uint64_t master_seed, const SolverSettings& solver,
                         const PhaseFullOptions& options);

struct NoiseSweep {
  std::vector<double> eta_values;
  std::vector<double> mean_coef_err;
  std::vector<double> mean_sig_err;
  std::vector<double> bound_sig;  // NaN when m <= m0
  std::vector<std::vector<TrialResult>> trials;  // indexed [eta][trial]
  double m = 0.0;
  double m0 = 0.0;
};

/// Experiment over noise levels at a fixed measurement count, with the
/// analytic signal-error bound attached whenever it applies.
NoiseSweep run_noise_sweep(const Dictionary& dict, const CoefVector& z_ref, int m,
                           const std::vector<double>& eta_values, int trials,
                           std::uint64_t master_seed, const SolverSettings& solver,
                           double m0, int threads = 1,
                           EnsembleKind kind = EnsembleKind::gaussian);

/// Pool-adjacent-violators fit: the nondecreasing sequence closest to the
/// input in least squares. Used to read phase-transition locations off noisy
/// success fractions.
std::vector<double> isotonic_fit(const std::vector<double>& values);

/// Smallest m in the grid at which the isotonic fit of the success fractions
/// reaches 0.5, linearly interpolated between grid points; NaN when the fit
/// never reaches 0.5.
double crossing_m(const std::vector<int>& m_values, const std::vector<double>& fractions);

}  // namespace synthlab
