#include "synthlab/width.hpp"

#include "synthlab/errors.hpp"
#include "synthlab/parallel.hpp"
#include "synthlab/rng.hpp"

#include <Eigen/QR>

#include <cmath>
#include <limits>

namespace synthlab {

namespace {

WidthEstimate summarize(const std::vector<double>& values, double offset, std::uint64_t seed) {
  const int k = static_cast<int>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= k;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var = (k > 1) ? var / (k - 1) : 0.0;
  WidthEstimate est;
  est.statdim = offset + mean;
  est.stderr_ = std::sqrt(var / k);
  est.samples = k;
  est.seed = seed;
  return est;
}

}  // namespace

WidthEstimate estimate_statdim(const PolyhedralCone& cone, int samples, std::uint64_t seed,
                               int threads) {
  if (samples < 2) throw DomainError("estimate_statdim: need at least two samples");
  const Eigen::Index n = cone.ambient_dim();
  std::vector<double> values(static_cast<std::size_t>(samples));
  parallel_for(static_cast<std::size_t>(samples), threads, [&](std::size_t i) {
    Generator gen(seed, {0x57A7u, static_cast<std::uint64_t>(i)});
    const Vector g = gen.normal_vector(n);
    Vector proj;
    try {
      proj = project_cone(cone, g);
    } catch (const std::exception& e) {
      throw NumericalError("estimate_statdim: projection failed at sample " + std::to_string(i) +
                           ": " + e.what());
    }
    values[i] = proj.squaredNorm();
  });
  return summarize(values, 0.0, seed);
}

WidthEstimate estimate_statdim_decomposed(const ConeDecomposition& dec, int samples,
                                          std::uint64_t seed, int threads) {
  const double lineality = static_cast<double>(dec.lineality_dim());
  if (dec.range_cone.generator_count() == 0) {
    WidthEstimate est;
    est.statdim = lineality;
    est.stderr_ = 0.0;
    est.samples = samples;
    est.seed = seed;
    return est;
  }
  if (samples < 2) throw DomainError("estimate_statdim_decomposed: need at least two samples");

  const Eigen::Index n = dec.range_cone.ambient_dim();
  const Eigen::Index l = dec.lineality_basis.cols();
  const Eigen::Index r = n - l;

  // Orthonormal basis of the complement of the lineality space: extend the
  // basis by a full QR and keep the trailing columns.
  Matrix complement;
  if (l == 0) {
    complement = Matrix::Identity(n, n);
  } else {
    Eigen::HouseholderQR<Matrix> qr(dec.lineality_basis);
    Matrix q = qr.householderQ();
    complement = q.rightCols(r);
  }

  PolyhedralCone reduced;
  reduced.generators = complement.transpose() * dec.range_cone.generators;

  std::vector<double> values(static_cast<std::size_t>(samples));
  parallel_for(static_cast<std::size_t>(samples), threads, [&](std::size_t i) {
    Generator gen(seed, {0x57A8u, static_cast<std::uint64_t>(i)});
    const Vector g = gen.normal_vector(r);
    Vector proj;
    try {
      proj = project_cone(reduced, g);
    } catch (const std::exception& e) {
      throw NumericalError("estimate_statdim_decomposed: projection failed at sample " +
                           std::to_string(i) + ": " + e.what());
    }
    values[i] = proj.squaredNorm();
  });
  return summarize(values, lineality, seed);
}

double sparse_descent_width_bound(int s, int d) {
  if (s < 1 || s > d) throw DomainError("sparse_descent_width_bound: requires 1 <= s <= d");
  return 2.0 * s * std::log(static_cast<double>(d) / s) + 2.0 * s;
}

SamplingPrediction predict_m0(double width_sq, double u, const EnsembleConstants& constants) {
  if (width_sq < 0.0) throw DomainError("predict_m0: width_sq must be nonnegative");
  if (u < 0.0) throw DomainError("predict_m0: u must be nonnegative");
  SamplingPrediction pred;
  pred.width_sq = width_sq;
  pred.u = u;
  pred.c_const = constants.c_const;
  pred.gamma = constants.gamma;
  const double c2 = constants.c_const * constants.c_const;
  const double g4 = std::pow(constants.gamma, 4);
  const double w = std::sqrt(width_sq) + u;
  pred.m0 = c2 * g4 * w * w + 1.0;
  return pred;
}

SamplingPrediction predict_m0(const WidthEstimate& width, double u,
                              const EnsembleConstants& constants) {
  return predict_m0(std::max(0.0, width.statdim), u, constants);
}

double error_bound_signal(double eta, double m, double m0) {
  if (eta < 0.0) throw DomainError("error_bound_signal: eta must be nonnegative");
  if (!(m > m0) || m0 < 1.0) throw DomainError("error_bound_signal: bound vacuous unless m > m0 >= 1");
  return 2.0 * eta / (std::sqrt(m - 1.0) - std::sqrt(m0 - 1.0));
}

double error_bound_coef(double eta, double m, double m0, double lambda_min) {
  if (!(lambda_min > 0.0)) throw DomainError("error_bound_coef: lambda_min must be positive");
  return error_bound_signal(eta, m, m0) / lambda_min;
}

double upper_bound_lambda_min(const Dictionary& dict, const CoefVector& z,
                              const SolverSettings& solver, const LambdaMinOptions& options) {
  const Vector x = dict.matrix * z.entries;
  if (x.norm() < 1e-300) throw DomainError("upper_bound_lambda_min: D z must be nonzero");
  const double eta_hat = options.relative_eta * x.norm();
  const double floor = 10.0 * (solver.abs_tol + solver.rel_tol * std::max(1.0, z.entries.norm()));

  double best = std::numeric_limits<double>::infinity();
  int failures = 0;
  for (int p = 0; p < options.perturbations; ++p) {
    Generator gen(options.seed, {0x1A3Bu, static_cast<std::uint64_t>(p)});
    const Vector e_hat = eta_hat * gen.unit_vector(dict.n());
    BPSolution sol;
    try {
      sol = solve_bp_ineq(dict.matrix, x + e_hat, eta_hat, solver);
    } catch (const std::exception&) {
      ++failures;
      continue;
    }
    if (!sol.converged) {
      ++failures;
      continue;
    }
    const double dist = (z.entries - sol.z.entries).norm();
    if (dist >= floor) best = std::min(best, 2.0 * eta_hat / dist);
  }
  if (failures == options.perturbations)
    throw ConvergenceError("upper_bound_lambda_min: every perturbed solve failed",
                           static_cast<double>(failures));
  return best;  // +infinity when all recoveries matched z
}

}  // namespace synthlab
