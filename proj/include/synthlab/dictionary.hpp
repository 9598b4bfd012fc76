#pragma once

#include "synthlab/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace synthlab {

/// Synthesis dictionary: an n x d matrix whose columns are the atoms.
struct Dictionary {
  Matrix matrix;
  std::string label;
  Vector atom_norms;

  Eigen::Index n() const { return matrix.rows(); }
  Eigen::Index d() const { return matrix.cols(); }
};

Dictionary make_identity(int n);

/// i.i.d. standard normal entries; columns are left unnormalized.
Dictionary make_gaussian(int n, int d, std::uint64_t seed);

/// Undecimated periodic Haar frame: all circular shifts of the detail atom at
/// each scale plus the coarsest-scale box atoms, unit-norm columns,
/// d = n * (levels + 1). Requires n to be a power of two and
/// 1 <= levels <= log2(n).
Dictionary make_haar_redundant(int n, int levels);

/// Concatenation [H1 | H2] of circular convolutions with the two-tap kernels
/// [1, 1] and [1, -1]. Columns have norm sqrt(2).
Dictionary make_conv_pair(int n);

/// Circulant matrix sampling a periodized discrete Gaussian kernel. The
/// default width makes neighboring-spike cancellation pronounced at n = 256.
Dictionary make_superres(int n, double sigma = 10.0);

/// Normalizes every atom to unit Euclidean norm.
Dictionary normalize_atoms(const Dictionary& dict);

/// Moore-Penrose pseudoinverse of the forward-difference operator on n points
/// (Neumann boundary), an n x (n-1) dictionary. Verifies the Penrose identity
/// grad * pinv * grad = grad to 1e-8 and throws NumericalError otherwise.
Dictionary make_tv_pinv(int n);

/// Forward-difference matrix with rows e_{i+1} - e_i, shape (n-1) x n.
Matrix forward_difference(int n);

/// Mutual coherence: max over atom pairs of their normalized inner product.
/// Requires d >= 2 and no zero atom.
double coherence(const Dictionary& dict);

/// Orthogonal matching pursuit with a full least-squares refit of the active
/// atoms at every step. Stops once s_max atoms are selected or the residual
/// norm drops to tol. Correlations are normalized by the atom norms.
CoefVector omp(const Dictionary& dict, const Vector& x, int s_max, double tol,
               std::vector<double>* residual_history = nullptr);

}  // namespace synthlab
