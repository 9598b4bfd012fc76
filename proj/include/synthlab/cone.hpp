#pragma once

#include "synthlab/dictionary.hpp"
#include "synthlab/solvers.hpp"
#include "synthlab/types.hpp"

#include <cstdint>

namespace synthlab {

/// Generators of the transformed l1 descent cone at z: the 2d vectors
/// {+-s d_i - D sign(z)} with s = |supp z|, zero columns dropped. Entries
/// below 1e-12 * ||z||_inf are treated as zero when taking signs.
PolyhedralCone descent_generators(const Dictionary& dict, const CoefVector& z);

struct DecomposeSettings {
  bool compute_circumcenter = true;
  CircumcenterSettings circumcenter;
  double rank_tol = 1e-10;  // relative Gram-Schmidt rank cutoff
  double drop_tol = 1e-10;  // relative cutoff for vanishing projected generators
};

/// Splits the transformed descent cone at a maximal-support representer into
/// its lineality space (spanned by the supported generators) and the projected
/// range cone, optionally with the range circumcenter. Requires |supp z| < d
/// and D z != 0; z must be a maximal-support representer for the split to be
/// exact (see maximal_representer).
ConeDecomposition lineality_decompose(const Dictionary& dict, const CoefVector& z,
                                      const DecomposeSettings& settings = {});

/// A minimal l1 representer of x0 with maximal support, found by averaging
/// several solves with tiny independent objective tilts. Throws
/// NumericalError when the tilted objectives drift apart.
CoefVector maximal_representer(const Dictionary& dict, const SignalVector& x0,
                               const SolverSettings& solver, std::uint64_t seed = 77,
                               int solves = 5);

/// Width bound for a pointed polyhedral cone with k generators inside a
/// circular cone of angle alpha:
///   tan(a) (sqrt(2 log(k/sqrt(2 pi))) + 1/sqrt(2 log(k/sqrt(2 pi)))) + 1/sqrt(2 pi).
/// Requires k >= 5 and alpha in [0, pi/2).
double width_bound_polyhedral(double alpha, int k);

/// Mean-width bound for a polytope with k >= 5 vertices in the unit ball:
///   sqrt(2 log(k/sqrt(2 pi))) + 1/sqrt(2 log(k/sqrt(2 pi))).
double polytope_width_bound(int k);

/// Squared-width bound for the transformed descent cone in terms of the
/// maximal support size, atom count and range circumangle:
///   s_bar + (tan(a) (sqrt(2 log(2(d - s_bar)/sqrt(2 pi))) + 1) + 1/sqrt(2 pi))^2.
/// Requires s_bar <= d - 3 and alpha in [0, pi/2).
double width_bound_gauge(int s_bar, int d, double alpha);

/// Condition-number transfer of a squared width through a dictionary:
/// kappa^2 (width_sq + 1); +infinity passes through.
double sampling_bound_condition(double kappa, double width_sq);

/// Coherence control of the squared range circumangle tangent:
///   s (1 - s mu) / (1 - 2 s mu)^2.
/// Requires mu = 0, or mu > 0 with s < (1 + 1/mu)/2.
double coherence_circumangle_bound(int s, double mu);

}  // namespace synthlab
