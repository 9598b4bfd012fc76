#pragma once

#include "synthlab/dictionary.hpp"
#include "synthlab/solvers.hpp"
#include "synthlab/types.hpp"

#include <cstdint>

namespace synthlab {

/// Monte-Carlo estimate of the statistical dimension E||Pi_C(g)||^2. Each
/// sample owns a seed derived from (seed, index), so the estimate is
/// reproducible for any thread count.
WidthEstimate estimate_statdim(const PolyhedralCone& cone, int samples, std::uint64_t seed,
                               int threads = 1);

/// Statistical dimension through the split C = C_L + C_R: the lineality
/// contributes its dimension exactly, the range is sampled inside the
/// orthogonal complement. The reported standard error comes from the range
/// part only.
WidthEstimate estimate_statdim_decomposed(const ConeDecomposition& dec, int samples,
                                          std::uint64_t seed, int threads = 1);

/// Squared-width bound for the l1 descent cone at an s-sparse point in R^d:
/// 2 s log(d/s) + 2 s.
double sparse_descent_width_bound(int s, int d);

/// Critical measurement count m0 = c^2 gamma^4 (sqrt(width_sq) + u)^2 + 1.
SamplingPrediction predict_m0(double width_sq, double u, const EnsembleConstants& constants = {});
SamplingPrediction predict_m0(const WidthEstimate& width, double u,
                              const EnsembleConstants& constants = {});

/// Noise amplification of signal recovery: 2 eta / (sqrt(m-1) - sqrt(m0-1)).
/// Requires m > m0 >= 1.
double error_bound_signal(double eta, double m, double m0);

/// Same bound divided by the minimum conic singular value; requires
/// lambda_min > 0.
double error_bound_coef(double eta, double m, double m0, double lambda_min);

struct LambdaMinOptions {
  int perturbations = 20;
  double relative_eta = 1e-3;
  std::uint64_t seed = 11;
};

/// Empirical upper bound on the minimum conic singular value of D over the
/// descent cone at z: perturb the signal by a random direction of norm
/// eta_hat, re-solve the noisy program, and read the bound 2 eta_hat /
/// ||z - w|| off the recovery error. Returns the smallest bound over all
/// perturbations, or +infinity when every recovery lands back on z.
double upper_bound_lambda_min(const Dictionary& dict, const CoefVector& z,
                              const SolverSettings& solver, const LambdaMinOptions& options = {});

}  // namespace synthlab
