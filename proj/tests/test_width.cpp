#include "synthlab/width.hpp"

#include "synthlab/cone.hpp"
#include "synthlab/dictionary.hpp"
#include "synthlab/errors.hpp"
#include "synthlab/rng.hpp"

#include <doctest.h>

#include <numbers>

using namespace synthlab;

namespace {

PolyhedralCone subspace_cone(int n, int dim, std::uint64_t seed) {
  Generator gen(seed);
  Matrix basis = gen.normal_matrix(n, dim);
  Eigen::HouseholderQR<Matrix> qr(basis);
  Matrix q = qr.householderQ();
  PolyhedralCone cone;
  cone.generators.resize(n, 2 * dim);
  cone.generators << q.leftCols(dim), -q.leftCols(dim);
  return cone;
}

PolyhedralCone identity_descent_cone(int d, int s, std::uint64_t seed) {
  const Dictionary dict = make_identity(d);
  Generator gen(seed);
  Vector z = Vector::Zero(d);
  const std::vector<int> support = gen.subset(d, s);
  for (int idx : support) z[idx] = gen.normal() + (gen.uniform() > 0.5 ? 1.0 : -1.0);
  return descent_generators(dict, CoefVector(z));
}

}  // namespace

TEST_CASE("statistical dimension of subspaces") {
  for (int dim : {1, 3, 6}) {
    const PolyhedralCone cone = subspace_cone(10, dim, 50 + dim);
    const WidthEstimate est = estimate_statdim(cone, 300, 7, 2);
    CHECK(std::abs(est.statdim - dim) <= 3.0 * est.stderr_);
    CHECK(est.samples == 300);
  }
}

TEST_CASE("statistical dimension of the nonnegative orthant") {
  PolyhedralCone orthant;
  orthant.generators = Matrix::Identity(20, 20);
  const WidthEstimate est = estimate_statdim(orthant, 300, 8, 2);
  CHECK(std::abs(est.statdim - 10.0) <= 3.0 * est.stderr_);
}

TEST_CASE("statistical dimension estimator is reproducible") {
  const PolyhedralCone cone = identity_descent_cone(12, 3, 9);
  const WidthEstimate a = estimate_statdim(cone, 50, 123, 1);
  const WidthEstimate b = estimate_statdim(cone, 50, 123, 2);
  CHECK(a.statdim == b.statdim);
  CHECK(a.stderr_ == b.stderr_);
  const WidthEstimate c = estimate_statdim(cone, 50, 124, 1);
  CHECK(a.statdim != c.statdim);
}

TEST_CASE("identity descent cone agrees with a high-sample oracle run") {
  const int d = 100, s = 10;
  const PolyhedralCone cone = identity_descent_cone(d, s, 31);
  const WidthEstimate est = estimate_statdim(cone, 300, 17, 2);
  const WidthEstimate oracle = estimate_statdim(cone, 3000, 1017, 2);
  const double combined = std::sqrt(est.stderr_ * est.stderr_ + oracle.stderr_ * oracle.stderr_);
  CHECK(std::abs(est.statdim - oracle.statdim) <= 3.0 * combined);
  CHECK(est.statdim < sparse_descent_width_bound(s, d));
  CHECK(sparse_descent_width_bound(s, d) == doctest::Approx(66.0517).epsilon(1e-4));
}

TEST_CASE("per-sample moreau identity within the estimator") {
  const PolyhedralCone cone = identity_descent_cone(15, 4, 77);
  Generator gen(99);
  for (int i = 0; i < 50; ++i) {
    const Vector g = gen.normal_vector(15);
    const Vector proj = project_cone(cone, g);
    CHECK(std::abs(g.squaredNorm() - proj.squaredNorm() - (g - proj).squaredNorm()) < 1e-8);
  }
}

TEST_CASE("monotone under adding generators on matched samples") {
  Generator gen(55);
  PolyhedralCone small;
  small.generators = gen.normal_matrix(8, 5);
  PolyhedralCone large;
  large.generators.resize(8, 9);
  large.generators << small.generators, gen.normal_matrix(8, 4);
  for (int i = 0; i < 40; ++i) {
    const Vector g = gen.normal_vector(8);
    CHECK(project_cone(small, g).norm() <= project_cone(large, g).norm() + 1e-8);
  }
}

TEST_CASE("decomposed estimator") {
  SUBCASE("pure subspace is exact") {
    ConeDecomposition dec;
    Generator gen(60);
    Matrix basis = gen.normal_matrix(9, 4);
    Eigen::HouseholderQR<Matrix> qr(basis);
    dec.lineality_basis = Matrix(qr.householderQ()).leftCols(4);
    dec.range_cone.generators = Matrix(9, 0);
    const WidthEstimate est = estimate_statdim_decomposed(dec, 100, 3, 1);
    CHECK(est.statdim == 4.0);
    CHECK(est.stderr_ == 0.0);
  }

  SUBCASE("consistent with the direct estimator for identity cones") {
    const int n = 14, s = 4;
    const Dictionary dict = make_identity(n);
    Generator gen(61);
    Vector z = Vector::Zero(n);
    const std::vector<int> support = gen.subset(n, s);
    for (int idx : support) z[idx] = gen.normal() + 2.0;
    DecomposeSettings settings;
    settings.compute_circumcenter = false;
    const ConeDecomposition dec = lineality_decompose(dict, CoefVector(z), settings);
    const PolyhedralCone full = descent_generators(dict, CoefVector(z));
    const WidthEstimate split = estimate_statdim_decomposed(dec, 400, 21, 2);
    const WidthEstimate direct = estimate_statdim(full, 400, 22, 2);
    const double combined =
        std::sqrt(split.stderr_ * split.stderr_ + direct.stderr_ * direct.stderr_);
    CHECK(std::abs(split.statdim - direct.statdim) <= 3.0 * combined);
  }

  SUBCASE("circular cone sanity") {
    const int n = 16;
    const double alpha = std::numbers::pi / 6.0;
    Generator gen(62);
    const Vector axis = gen.unit_vector(n);
    PolyhedralCone cone;
    cone.generators.resize(n, 200);
    for (int j = 0; j < 200; ++j) {
      Vector u = gen.normal_vector(n);
      u -= axis.dot(u) * axis;
      u.normalize();
      cone.generators.col(j) = std::cos(alpha) * axis + std::sin(alpha) * u;
    }
    ConeDecomposition dec;
    dec.lineality_basis = Matrix(n, 0);
    dec.range_cone = cone;
    const WidthEstimate est = estimate_statdim_decomposed(dec, 300, 5, 2);
    const double target = n * std::sin(alpha) * std::sin(alpha);
    CHECK(std::abs(est.statdim - target) <= 4.0 + 3.0 * est.stderr_);
  }
}

TEST_CASE("sparse descent width bound") {
  CHECK(sparse_descent_width_bound(7, 7) == doctest::Approx(14.0));
  CHECK(sparse_descent_width_bound(10, 100) == doctest::Approx(66.0517).epsilon(1e-4));
  CHECK_THROWS_AS(sparse_descent_width_bound(0, 5), DomainError);
  CHECK_THROWS_AS(sparse_descent_width_bound(6, 5), DomainError);

  for (int trial = 0; trial < 5; ++trial) {
    Generator gen(700 + trial);
    const int d = 10 + static_cast<int>(gen.below(20));
    const int s = 1 + static_cast<int>(gen.below(5));
    const PolyhedralCone cone = identity_descent_cone(d, s, 7000 + trial);
    const WidthEstimate est = estimate_statdim(cone, 300, 70 + trial, 2);
    CHECK(sparse_descent_width_bound(s, d) >= est.statdim - 1.0 - 3.0 * est.stderr_);
  }
}

TEST_CASE("sampling prediction") {
  CHECK(predict_m0(25.0, 0.0).m0 == doctest::Approx(26.0));
  CHECK(predict_m0(0.0, 0.0).m0 == doctest::Approx(1.0));
  CHECK(predict_m0(25.0, 2.0).m0 == doctest::Approx(50.0));

  EnsembleConstants rademacher{1.2, 1.1};
  const SamplingPrediction pred = predict_m0(25.0, 0.0, rademacher);
  CHECK(pred.m0 == doctest::Approx(1.2 * 1.2 * std::pow(1.1, 4) * 25.0 + 1.0));

  WidthEstimate est;
  est.statdim = 25.0;
  CHECK(predict_m0(est, 0.0).m0 == doctest::Approx(26.0));
}

TEST_CASE("error bounds") {
  CHECK(error_bound_signal(0.0, 101.0, 1.0) == doctest::Approx(0.0));
  CHECK(error_bound_signal(1.0, 101.0, 1.0) == doctest::Approx(0.2));
  CHECK(error_bound_signal(1.0, 200.0, 1.0) < error_bound_signal(1.0, 101.0, 1.0));
  CHECK_THROWS_AS(error_bound_signal(1.0, 5.0, 10.0), DomainError);

  CHECK(error_bound_coef(1.0, 101.0, 1.0, 1.0) == doctest::Approx(error_bound_signal(1.0, 101.0, 1.0)));
  CHECK(error_bound_coef(1.0, 101.0, 1.0, 0.1) == doctest::Approx(2.0));
  CHECK(error_bound_coef(0.0, 101.0, 1.0, 0.3) == doctest::Approx(0.0));
  CHECK_THROWS_AS(error_bound_coef(1.0, 101.0, 1.0, 0.0), DomainError);
}

TEST_CASE("lambda_min upper bound heuristic") {
  const SolverSettings solver = SolverSettings{}.tightened(1e-2);

  SUBCASE("identity never undercuts the known value of one") {
    const Dictionary dict = make_identity(10);
    Vector z = Vector::Zero(10);
    z[2] = 1.0;
    z[7] = -2.0;
    LambdaMinOptions options;
    options.perturbations = 10;
    const double bound = upper_bound_lambda_min(dict, CoefVector(z), solver, options);
    CHECK(bound >= 1.0 - 1e-6);
  }

  SUBCASE("non-unique representer drives the bound to zero") {
    Dictionary dict = make_identity(6);
    Matrix m(6, 12);
    m << dict.matrix, dict.matrix;
    dict.matrix = m;
    dict.atom_norms = dict.matrix.colwise().norm();
    Vector z = Vector::Zero(12);
    z[0] = 1.0;
    LambdaMinOptions options;
    options.perturbations = 50;
    const double bound = upper_bound_lambda_min(dict, CoefVector(z), solver, options);
    CHECK(bound <= 0.05);
  }

  SUBCASE("dictionary scaling scales the bound at most linearly") {
    const Dictionary dict = make_gaussian(8, 12, 33);
    Dictionary doubled = dict;
    doubled.matrix *= 2.0;
    doubled.atom_norms = doubled.matrix.colwise().norm();
    Vector z = Vector::Zero(12);
    z[3] = 1.0;
    z[9] = -1.0;
    LambdaMinOptions options;
    options.perturbations = 8;
    const double base = upper_bound_lambda_min(dict, CoefVector(z), solver, options);
    const double scaled = upper_bound_lambda_min(doubled, CoefVector(z), solver, options);
    if (std::isfinite(base) && std::isfinite(scaled)) CHECK(scaled <= 2.0 * base + 1e-6);
  }
}
