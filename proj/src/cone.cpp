#include "synthlab/cone.hpp"

#include "synthlab/errors.hpp"
#include "synthlab/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace synthlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vector thresholded_sign(const Vector& z) {
  const double floor = 1e-12 * z.cwiseAbs().maxCoeff();
  Vector s = Vector::Zero(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (z[i] > floor)
      s[i] = 1.0;
    else if (z[i] < -floor)
      s[i] = -1.0;
  }
  return s;
}

}  // namespace

PolyhedralCone descent_generators(const Dictionary& dict, const CoefVector& z) {
  if (z.size() != dict.d()) throw DomainError("descent_generators: coefficient length mismatch");
  if (z.sparsity() == 0 || z.entries.cwiseAbs().maxCoeff() == 0.0)
    throw DomainError("descent_generators: z must be nonzero");

  const Vector sign_z = thresholded_sign(z.entries);
  const double s = sign_z.cwiseAbs().sum();
  const Vector v = dict.matrix * sign_z;

  const Eigen::Index d = dict.d();
  Matrix gens(dict.n(), 2 * d);
  Eigen::Index count = 0;
  const double scale = s * dict.atom_norms.maxCoeff() + v.norm();
  const double drop = 1e-12 * std::max(1.0, scale);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (double sgn : {1.0, -1.0}) {
      Vector g = sgn * s * dict.matrix.col(i) - v;
      if (g.norm() > drop) gens.col(count++) = std::move(g);
    }
  }
  PolyhedralCone cone;
  cone.generators = gens.leftCols(count);
  return cone;
}

ConeDecomposition lineality_decompose(const Dictionary& dict, const CoefVector& z,
                                      const DecomposeSettings& settings) {
  if (z.size() != dict.d()) throw DomainError("lineality_decompose: coefficient length mismatch");
  const Vector sign_z = thresholded_sign(z.entries);
  std::vector<int> support;
  for (Eigen::Index i = 0; i < sign_z.size(); ++i)
    if (sign_z[i] != 0.0) support.push_back(static_cast<int>(i));
  const int s_bar = static_cast<int>(support.size());
  if (s_bar == 0) throw DomainError("lineality_decompose: z must be nonzero");
  if (s_bar >= dict.d()) throw DomainError("lineality_decompose: range empty (s_bar >= d)");
  const Vector v = dict.matrix * sign_z;
  if ((dict.matrix * z.entries).norm() < 1e-300)
    throw DomainError("lineality_decompose: D z must be nonzero");

  // Orthonormal basis of the supported generators by modified Gram-Schmidt.
  Matrix raw(dict.n(), s_bar);
  for (int j = 0; j < s_bar; ++j) {
    const int i = support[static_cast<std::size_t>(j)];
    raw.col(j) = static_cast<double>(s_bar) * sign_z[i] * dict.matrix.col(i) - v;
  }
  double max_norm = 0.0;
  for (int j = 0; j < s_bar; ++j) max_norm = std::max(max_norm, raw.col(j).norm());
  const double rank_cut = settings.rank_tol * std::max(1.0, max_norm);

  Matrix basis(dict.n(), s_bar);
  Eigen::Index rank = 0;
  for (int j = 0; j < s_bar; ++j) {
    Vector u = raw.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index b = 0; b < rank; ++b) u -= basis.col(b).dot(u) * basis.col(b);
    const double nrm = u.norm();
    if (nrm > rank_cut) basis.col(rank++) = u / nrm;
  }

  ConeDecomposition dec;
  dec.lineality_basis = basis.leftCols(rank);

  const Eigen::Index d = dict.d();
  Matrix range(dict.n(), 2 * (d - s_bar));
  Eigen::Index count = 0;
  const double drop = settings.drop_tol * std::max(1.0, static_cast<double>(s_bar) * dict.atom_norms.maxCoeff() + v.norm());
  for (Eigen::Index i = 0; i < d; ++i) {
    if (sign_z[i] != 0.0) continue;
    for (double sgn : {1.0, -1.0}) {
      Vector g = sgn * static_cast<double>(s_bar) * dict.matrix.col(i) - v;
      Vector proj = g - dec.lineality_basis * (dec.lineality_basis.transpose() * g);
      if (proj.norm() > drop) range.col(count++) = std::move(proj);
    }
  }
  dec.range_cone.generators = range.leftCols(count);

  if (settings.compute_circumcenter && count > 0) {
    const CircumcenterResult cc = circumcenter(dec.range_cone, settings.circumcenter);
    dec.has_circumcenter = true;
    dec.circum_theta = cc.theta;
    dec.circum_alpha = cc.alpha;
  }
  return dec;
}

CoefVector maximal_representer(const Dictionary& dict, const SignalVector& x0,
                               const SolverSettings& solver, std::uint64_t seed, int solves) {
  if (x0.size() != dict.n()) throw DomainError("maximal_representer: signal dimension mismatch");
  if (x0.norm() < 1e-300) throw DomainError("maximal_representer: x0 must be nonzero");
  if (solves < 1) throw DomainError("maximal_representer: need at least one solve");

  const BPSolution plain = solve_bp_eq(dict.matrix, x0, solver);
  if (!plain.converged)
    throw ConvergenceError("maximal_representer: basis pursuit did not converge",
                           plain.primal_residual);
  const double obj = plain.objective;
  const double opt_tol = 100.0 * solver.abs_tol + solver.rel_tol * std::max(1.0, obj);
  const double tilt_mag = 1e-7 * std::max(1.0, obj);

  Vector mean = Vector::Zero(dict.d());
  for (int t = 0; t < solves; ++t) {
    Generator gen(seed, {0x6A5Du, static_cast<std::uint64_t>(t)});
    Vector tilt(dict.d());
    for (Eigen::Index i = 0; i < tilt.size(); ++i) tilt[i] = tilt_mag * (2.0 * gen.uniform() - 1.0);
    const BPSolution sol = solve_bp_eq(dict.matrix, x0, solver, &tilt);
    // Tilted solves drift along non-singleton solution sets instead of
    // settling; the objective gate below is the actual correctness check.
    if (std::abs(sol.objective - obj) > opt_tol)
      throw NumericalError("maximal_representer: tilted objective drift " +
                           std::to_string(std::abs(sol.objective - obj)));
    mean += sol.z.entries;
  }
  mean /= static_cast<double>(solves);

  // A convex combination of minimizers is again a minimizer; all of them share
  // one sign pattern, so the averaged support is the union of the observed
  // supports.
  if (std::abs(mean.lpNorm<1>() - obj) > opt_tol)
    throw NumericalError("maximal_representer: averaged objective drift");
  CoefVector result(std::move(mean));
  result.rebuild_support(1e-6);
  return result;
}

double width_bound_polyhedral(double alpha, int k) {
  if (k < 5) throw DomainError("width_bound_polyhedral: k must be at least 5");
  if (!(alpha >= 0.0) || alpha >= std::numbers::pi / 2.0)
    throw DomainError("width_bound_polyhedral: alpha must lie in [0, pi/2)");
  const double log_term = std::sqrt(2.0 * std::log(k / std::sqrt(kTwoPi)));
  return std::tan(alpha) * (log_term + 1.0 / log_term) + 1.0 / std::sqrt(kTwoPi);
}

double polytope_width_bound(int k) {
  if (k < 5) throw DomainError("polytope_width_bound: k must be at least 5");
  const double log_term = std::sqrt(2.0 * std::log(k / std::sqrt(kTwoPi)));
  return log_term + 1.0 / log_term;
}

double width_bound_gauge(int s_bar, int d, double alpha) {
  if (s_bar < 0 || s_bar > d - 3) throw DomainError("width_bound_gauge: requires s_bar <= d - 3");
  if (!(alpha >= 0.0) || alpha >= std::numbers::pi / 2.0)
    throw DomainError("width_bound_gauge: alpha must lie in [0, pi/2)");
  const double log_term = std::sqrt(2.0 * std::log(2.0 * (d - s_bar) / std::sqrt(kTwoPi)));
  const double bracket = std::tan(alpha) * (log_term + 1.0) + 1.0 / std::sqrt(kTwoPi);
  return static_cast<double>(s_bar) + bracket * bracket;
}

double sampling_bound_condition(double kappa, double width_sq) {
  if (std::isinf(kappa)) return std::numeric_limits<double>::infinity();
  if (!(kappa >= 1.0)) throw DomainError("sampling_bound_condition: kappa must be >= 1 or infinite");
  if (!(width_sq >= 0.0)) throw DomainError("sampling_bound_condition: width_sq must be nonnegative");
  return kappa * kappa * (width_sq + 1.0);
}

double coherence_circumangle_bound(int s, double mu) {
  if (s < 1) throw DomainError("coherence_circumangle_bound: s must be positive");
  if (mu < 0.0 || mu > 1.0) throw DomainError("coherence_circumangle_bound: mu must lie in [0, 1]");
  if (mu == 0.0) return static_cast<double>(s);
  if (!(s < 0.5 * (1.0 + 1.0 / mu)))
    throw DomainError("coherence_circumangle_bound: requires s < (1 + 1/mu)/2");
  const double smu = s * mu;
  const double denom = 1.0 - 2.0 * smu;
  return s * (1.0 - smu) / (denom * denom);
}

}  // namespace synthlab
