#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace synthlab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Sparse coefficient vector together with its support.
struct CoefVector {
  Vector entries;
  std::vector<int> support;  // sorted indices of the nonzero entries

  CoefVector() = default;
  explicit CoefVector(Vector values) : entries(std::move(values)) { rebuild_support(); }

  int sparsity() const { return static_cast<int>(support.size()); }
  Eigen::Index size() const { return entries.size(); }

  /// Recomputes the support from the entries. Entries whose magnitude falls
  /// below rel_tol * max|entry| are snapped to exact zero first.
  void rebuild_support(double rel_tol = 0.0) {
    support.clear();
    if (entries.size() == 0) return;
    const double floor = rel_tol > 0.0 ? rel_tol * entries.cwiseAbs().maxCoeff() : 0.0;
    for (Eigen::Index i = 0; i < entries.size(); ++i) {
      if (std::abs(entries[i]) <= floor) {
        entries[i] = 0.0;
      } else {
        support.push_back(static_cast<int>(i));
      }
    }
  }
};

using SignalVector = Vector;

/// Finitely generated cone, stored one generator per column.
struct PolyhedralCone {
  Matrix generators;  // n x k
  bool normalized = false;

  Eigen::Index ambient_dim() const { return generators.rows(); }
  Eigen::Index generator_count() const { return generators.cols(); }
};

/// Orthogonal split of a cone into its largest contained subspace and the
/// projected remainder, plus the smallest enclosing circular cone of the
/// latter when requested.
struct ConeDecomposition {
  Matrix lineality_basis;    // n x l, orthonormal columns
  PolyhedralCone range_cone; // generators orthogonal to the lineality basis
  bool has_circumcenter = false;
  Vector circum_theta;
  double circum_alpha = 0.0;

  int lineality_dim() const { return static_cast<int>(lineality_basis.cols()); }
};

/// Monte-Carlo statistical-dimension estimate.
struct WidthEstimate {
  double statdim = 0.0;
  double stderr_ = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
};

enum class EnsembleKind { gaussian, rademacher };

/// Measurement-matrix recipe. Rows are isotropic for both kinds.
struct MeasurementEnsemble {
  EnsembleKind kind = EnsembleKind::gaussian;
  int m = 0;
  int n = 0;
  std::uint64_t seed = 0;
};

/// Sub-Gaussian constants entering the sampling-rate formula. Gaussian rows
/// have c = gamma = 1; for other ensembles the constants are configuration.
struct EnsembleConstants {
  double c_const = 1.0;
  double gamma = 1.0;
};

/// Predicted critical number of measurements.
struct SamplingPrediction {
  double m0 = 1.0;
  double width_sq = 0.0;
  double u = 0.0;
  double c_const = 1.0;
  double gamma = 1.0;
};

}  // namespace synthlab
