#pragma once

#include "synthlab/dictionary.hpp"
#include "synthlab/types.hpp"

#include <cstdint>
#include <optional>

namespace synthlab {

struct SolverSettings {
  int max_iters = 50000;
  double abs_tol = 1e-8;
  double rel_tol = 1e-6;
  double penalty = 1.0;          // prox scale of the splitting
  double over_relaxation = 1.5;  // in [1, 1.9]

  /// Same settings with tolerances shrunk by `factor`; used where results feed
  /// support identification rather than a 1e-5 success test.
  SolverSettings tightened(double factor = 1e-3) const {
    SolverSettings s = *this;
    s.abs_tol *= factor;
    s.rel_tol *= factor;
    return s;
  }
};

struct BPSolution {
  CoefVector z;
  double objective = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// min ||z||_1 subject to M z = y. Throws InfeasibleError when y is not in the
/// range of M (checked by least squares). `tilt` adds the linear term
/// <tilt, z> to the objective; solutions of the tilted program are used to
/// probe the solution set of the untilted one.
BPSolution solve_bp_eq(const Matrix& M, const Vector& y, const SolverSettings& settings,
                       const Vector* tilt = nullptr);

/// min ||z||_1 subject to ||M z - y||_2 <= eta. Delegates to solve_bp_eq for
/// eta = 0.
BPSolution solve_bp_ineq(const Matrix& M, const Vector& y, double eta,
                         const SolverSettings& settings, const Vector* tilt = nullptr);

struct NnlsResult {
  Vector coefficients;  // k, nonnegative
  Vector residual;      // g - R c
  double kkt_violation = 0.0;
  int iterations = 0;
};

/// min_{c >= 0} ||g - R c||_2 by the Lawson-Hanson active-set method. The
/// result satisfies the KKT certificate: c >= 0, R^T(Rc - g) >= -kkt_tol and
/// |c_i [R^T(Rc - g)]_i| <= kkt_tol, with kkt_tol = 1e-10 * max(1, ||R^T g||_inf).
NnlsResult nnls(const Matrix& R, const Vector& g);

/// Euclidean projection of g onto the cone, computed as R c from nnls.
Vector project_cone(const PolyhedralCone& cone, const Vector& g);

struct CircumcenterSettings {
  int restarts = 20;
  int subgradient_iters = 100;
  double cert_tol = 1e-9;
  double act_tol = 1e-7;
  int max_refine_iters = 20000;
  std::uint64_t seed = 0;
};

struct CircumcenterResult {
  Vector theta;  // unit axis
  double alpha = 0.0;
  double cos_alpha = 1.0;
  double certificate_gap = 0.0;  // max_i (cos_alpha - <theta, x_i>), nonpositive at optimality
  int iterations = 0;
};

/// Smallest enclosing circular cone of a pointed polyhedral cone: maximizes
/// min_i <theta, x_i> over the unit ball, generators normalized first. A
/// projected subgradient search localizes the optimum and an active-set
/// minimum-norm-point refinement certifies it: theta must be a convex
/// combination of the touching generators. Throws DomainError when the best
/// achievable cosine is <= 0 (cone not strictly pointed within tolerance) and
/// ConvergenceError when the certificate cannot be closed.
CircumcenterResult circumcenter(const PolyhedralCone& cone, const CircumcenterSettings& settings = {});

struct MinNormPoint {
  Vector point;    // X c
  Vector weights;  // simplex weights over the columns of X
  double gap = 0.0;
  int iterations = 0;
};

/// min ||X c||_2 over the simplex {c >= 0, sum c = 1} (Wolfe's method). The
/// inner step is nonnegative least squares with the affine normalization row
/// handled exactly.
MinNormPoint min_norm_point_simplex(const Matrix& X, int start_column = 0, int max_iters = 20000);

/// Heuristic check that z is the unique minimizer of min ||w||_1 s.t. Dw = Dz.
/// Returns false immediately when the supported atoms are linearly dependent;
/// otherwise compares two tilted solves and the untilted objective against z.
bool is_unique_representer(const Dictionary& dict, const CoefVector& z,
                           const SolverSettings& settings, std::uint64_t seed = 2024);

}  // namespace synthlab
