// Integration suite: one test case per acceptance criterion, each printing a
// single PASS/FAIL line with the measured quantities.

#include "synthlab/cone.hpp"
#include "synthlab/dictionary.hpp"
#include "synthlab/lab.hpp"
#include "synthlab/rng.hpp"
#include "synthlab/solvers.hpp"
#include "synthlab/width.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

using namespace synthlab;

namespace {

const SolverSettings kSolver{};
const SolverSettings kTight = SolverSettings{}.tightened(1e-3);
constexpr int kThreads = 2;

// Numerical-accuracy floor: recovery errors below the success threshold are
// indistinguishable from exact recovery, so bound comparisons carry it as
// additive slack.
constexpr double kNumericalFloor = kSuccessThreshold;

struct Criterion {
  int index;
  std::string title;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }

  void finish() {
    std::printf("[%s] criterion %d: %s\n", failures.empty() ? "PASS" : "FAIL", index,
                title.c_str());
    for (const std::string& f : failures) std::printf("        %s\n", f.c_str());
    std::fflush(stdout);
    CHECK_MESSAGE(failures.empty(), "criterion ", index, " failed");
  }
};

CoefVector random_sparse(int d, int s, std::uint64_t seed, bool mixed_signs = true) {
  Generator gen(seed);
  Vector z = Vector::Zero(d);
  for (int idx : gen.subset(d, s)) {
    double v = gen.normal();
    if (!mixed_signs) v = std::abs(v) + 0.1;
    z[idx] = (std::abs(v) < 0.1) ? 0.1 : v;
  }
  return CoefVector(std::move(z));
}

}  // namespace

TEST_CASE("acceptance 1: standard-basis circumangle") {
  Criterion crit{1, "standard basis: tan^2(alpha) = s within 1e-6"};
  for (int n : {16, 32, 64}) {
    const Dictionary dict = make_identity(n);
    for (int s : {2, 4, 8}) {
      if (s > n - 3) continue;
      const CoefVector z = random_sparse(n, s, 100 + 10 * n + s);
      const ConeDecomposition dec = lineality_decompose(dict, z);
      if (!dec.has_circumcenter) {
        crit.expect(false, "missing circumcenter at n=" + std::to_string(n));
        continue;
      }
      const double tan2 = std::pow(std::tan(dec.circum_alpha), 2);
      crit.expect(std::abs(tan2 - s) <= 1e-6,
                  "n=" + std::to_string(n) + " s=" + std::to_string(s) +
                      ": tan^2=" + std::to_string(tan2));
    }
  }
  crit.finish();
}

TEST_CASE("acceptance 2: convolutional worked example") {
  Criterion crit{2, "conv pair: dim C_L = 2, 2(2n-4) range generators, cos(alpha) = 1/sqrt(3)"};
  for (int n : {8, 16, 32}) {
    const Dictionary dict = make_conv_pair(n);
    Vector x0 = Vector::Zero(n);
    x0[0] = 2.0;
    x0[n - 1] = 1.0;  // x_1 > x_n > 0
    const CoefVector z = maximal_representer(dict, x0, kTight);
    const ConeDecomposition dec = lineality_decompose(dict, z);
    crit.expect(dec.lineality_dim() == 2,
                "n=" + std::to_string(n) + ": dim C_L = " + std::to_string(dec.lineality_dim()));
    crit.expect(dec.range_cone.generator_count() == 2 * (2 * n - 4),
                "n=" + std::to_string(n) +
                    ": range generators = " + std::to_string(dec.range_cone.generator_count()));
    const double cos_alpha = std::cos(dec.circum_alpha);
    crit.expect(std::abs(cos_alpha - 1.0 / std::sqrt(3.0)) <= 1e-6,
                "n=" + std::to_string(n) + ": cos(alpha) = " + std::to_string(cos_alpha));
  }
  crit.finish();
}

TEST_CASE("acceptance 3: moreau property suite") {
  Criterion crit{3, "1000 random cone projections: moreau residuals below 1e-8"};
  double worst_orth = 0.0, worst_norm = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    Generator gen(3000 + trial);
    const int n = 2 + static_cast<int>(gen.below(19));   // up to 20
    const int k = 1 + static_cast<int>(gen.below(40));   // up to 40
    PolyhedralCone cone;
    cone.generators = gen.normal_matrix(n, k);
    const Vector g = 3.0 * gen.normal_vector(n);
    const Vector proj = project_cone(cone, g);
    const Vector rest = g - proj;
    worst_orth = std::max(worst_orth, std::abs(proj.dot(rest)));
    worst_norm =
        std::max(worst_norm, std::abs(g.squaredNorm() - proj.squaredNorm() - rest.squaredNorm()));
  }
  crit.expect(worst_orth < 1e-8, "worst orthogonality residual " + std::to_string(worst_orth));
  crit.expect(worst_norm < 1e-8, "worst norm-split residual " + std::to_string(worst_norm));
  crit.finish();
}

TEST_CASE("acceptance 4: statistical-dimension calibration") {
  Criterion crit{4, "statdim: subspaces exact, orthant n/2, identity cones below 2s log(d/s) + 2s"};

  for (int dim : {2, 5, 9}) {
    Generator gen(40 + dim);
    Matrix basis = gen.normal_matrix(30, dim);
    Eigen::HouseholderQR<Matrix> qr(basis);
    PolyhedralCone cone;
    cone.generators.resize(30, 2 * dim);
    cone.generators << Matrix(qr.householderQ()).leftCols(dim),
        -Matrix(qr.householderQ()).leftCols(dim);
    const WidthEstimate est = estimate_statdim(cone, 300, 401 + dim, kThreads);
    crit.expect(std::abs(est.statdim - dim) <= 3.0 * est.stderr_,
                "subspace dim " + std::to_string(dim) + ": estimate " + std::to_string(est.statdim) +
                    " +- " + std::to_string(est.stderr_));
  }

  PolyhedralCone orthant;
  orthant.generators = Matrix::Identity(50, 50);
  const WidthEstimate orthant_est = estimate_statdim(orthant, 300, 411, kThreads);
  crit.expect(std::abs(orthant_est.statdim - 25.0) <= 3.0 * orthant_est.stderr_,
              "orthant: estimate " + std::to_string(orthant_est.statdim) + " +- " +
                  std::to_string(orthant_est.stderr_));

  for (int trial = 0; trial < 20; ++trial) {
    Generator gen(420 + trial);
    const int d = 20 + static_cast<int>(gen.below(60));
    const int s = 1 + static_cast<int>(gen.below(10));
    const Dictionary dict = make_identity(d);
    const CoefVector z = random_sparse(d, s, 4300 + trial);
    const PolyhedralCone cone = descent_generators(dict, z);
    const WidthEstimate est = estimate_statdim(cone, 300, 440 + trial, kThreads);
    crit.expect(est.statdim - 1.0 <= sparse_descent_width_bound(s, d),
                "identity cone s=" + std::to_string(s) + " d=" + std::to_string(d) +
                    ": estimate " + std::to_string(est.statdim) + " vs bound " +
                    std::to_string(sparse_descent_width_bound(s, d)));
  }
  crit.finish();
}

TEST_CASE("acceptance 5: desk-scale phase transition") {
  Criterion crit{5, "haar n=64: 50% signal-success crossing within 8 of the statdim for 80% of s"};
  const Dictionary dict = make_haar_redundant(64, 3);

  PhaseFullOptions options;
  for (int m = 2; m <= 64; m += 2) options.m_values.push_back(m);
  options.trials_per_cell = 25;
  options.inner_repetitions = 5;
  options.width_samples = 300;
  options.threads = kThreads;

  std::vector<int> s_values;
  for (int s = 2; s <= 24; s += 2) s_values.push_back(s);
  const PhaseGrid grid = run_phase_full(dict, s_values, 12345, kSolver, options);

  int hits = 0;
  long failures = 0;
  for (std::size_t si = 0; si < s_values.size(); ++si) {
    std::vector<double> fractions;
    for (std::size_t mi = 0; mi < grid.m_values.size(); ++mi) {
      fractions.push_back(static_cast<double>(grid.success_counts_sig[si][mi]) /
                          grid.trials_per_cell);
      failures += grid.solver_failures[si][mi];
    }
    const double cross = crossing_m(grid.m_values, fractions);
    const double diff = std::abs(cross - grid.overlay[si]);
    if (std::isfinite(diff) && diff <= 8.0) ++hits;
    std::printf("        s=%2d: statdim %6.2f crossing %6.2f diff %5.2f\n", s_values[si],
                grid.overlay[si], cross, std::isfinite(diff) ? diff : -1.0);
  }
  crit.expect(hits * 5 >= static_cast<int>(s_values.size()) * 4,
              "only " + std::to_string(hits) + "/" + std::to_string(s_values.size()) +
                  " sparsities within 8 measurements");
  const long total = static_cast<long>(s_values.size()) * grid.m_values.size() * grid.trials_per_cell;
  crit.expect(failures * 20 <= total,
              "solver failure rate " + std::to_string(failures) + "/" + std::to_string(total));
  crit.finish();
}

TEST_CASE("acceptance 6: noise robustness against the analytic bound") {
  Criterion crit{6, "mean signal error below the noise bound on the preset grid"};
  const Dictionary dict = make_haar_redundant(64, 3);

  // Unique-representer coefficient vector, so the coefficient program is
  // well-posed as well.
  CoefVector z_ref;
  bool found = false;
  for (std::uint64_t attempt = 0; attempt < 20 && !found; ++attempt) {
    CoefVector candidate = random_sparse(static_cast<int>(dict.d()), 4, 600 + attempt);
    if (is_unique_representer(dict, candidate, kTight, 90 + attempt)) {
      z_ref = candidate;
      found = true;
    }
  }
  REQUIRE(found);

  const PolyhedralCone cone = descent_generators(dict, z_ref);
  const WidthEstimate width = estimate_statdim(cone, 300, 61, kThreads);
  const double m0 = predict_m0(width, 0.0).m0;
  const int m = static_cast<int>(std::ceil(width.statdim)) + 40;

  std::vector<double> etas;
  for (int i = 0; i <= 20; ++i) etas.push_back(0.05 * i);
  const NoiseSweep sweep = run_noise_sweep(dict, z_ref, m, etas, 25, 62, kSolver, m0, kThreads);

  int violations = 0, total = 0;
  for (std::size_t ei = 0; ei < etas.size(); ++ei) {
    crit.expect(std::isfinite(sweep.bound_sig[ei]), "bound not computed for eta index " +
                                                        std::to_string(ei));
    crit.expect(sweep.mean_sig_err[ei] <= sweep.bound_sig[ei] + kNumericalFloor,
                "eta=" + std::to_string(etas[ei]) + ": mean " +
                    std::to_string(sweep.mean_sig_err[ei]) + " vs bound " +
                    std::to_string(sweep.bound_sig[ei]));
    for (const TrialResult& t : sweep.trials[ei]) {
      ++total;
      if (t.sig_err > sweep.bound_sig[ei] + kNumericalFloor) ++violations;
    }
  }
  crit.expect(violations * 20 <= total,
              "per-trial violations " + std::to_string(violations) + "/" + std::to_string(total));
  crit.finish();
}

TEST_CASE("acceptance 7: non-unique representer separation") {
  Criterion crit{7, "duplicated identity: signal success 100%, coefficient success 0%"};
  const int n = 16;
  Dictionary dict = make_identity(n);
  Matrix m(n, 2 * n);
  m << dict.matrix, dict.matrix;
  dict.matrix = m;
  dict.atom_norms = dict.matrix.colwise().norm();

  Vector e1 = Vector::Zero(2 * n);
  e1[0] = 1.0;
  const CoefVector z0(e1);

  int sig_hits = 0, coef_hits = 0;
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    const TrialResult t = run_trial(dict, z0, n, 0.0, trial, 700 + trial, kSolver);
    sig_hits += t.sig_success ? 1 : 0;
    coef_hits += t.coef_success ? 1 : 0;
  }
  crit.expect(sig_hits == 20, "signal successes " + std::to_string(sig_hits) + "/20");
  crit.expect(coef_hits == 0, "coefficient successes " + std::to_string(coef_hits) + "/20");
  crit.finish();
}

TEST_CASE("acceptance 8: coherence bound on the circumangle") {
  Criterion crit{8, "tan^2(alpha) below s(1 - s mu)/(1 - 2 s mu)^2 for coherent dictionaries"};
  for (int trial = 0; trial < 10; ++trial) {
    const Dictionary dict = normalize_atoms(make_gaussian(96, 128, 800 + trial));
    const double mu = coherence(dict);
    const int s_max = static_cast<int>(std::ceil(0.5 * (1.0 + 1.0 / mu))) - 1;
    if (s_max < 1) {
      crit.expect(false, "coherence too large to admit any sparsity");
      continue;
    }
    Generator gen(810 + trial);
    const int s = 1 + static_cast<int>(gen.below(static_cast<std::uint64_t>(s_max)));
    const CoefVector z = random_sparse(static_cast<int>(dict.d()), s, 820 + trial);
    const ConeDecomposition dec = lineality_decompose(dict, z);
    const double tan2 = std::pow(std::tan(dec.circum_alpha), 2);
    const double bound = coherence_circumangle_bound(s, mu);
    crit.expect(tan2 <= bound + 1e-6, "trial " + std::to_string(trial) + ": tan^2 " +
                                          std::to_string(tan2) + " vs bound " +
                                          std::to_string(bound) + " (s=" + std::to_string(s) +
                                          ", mu=" + std::to_string(mu) + ")");
  }
  crit.finish();
}

TEST_CASE("acceptance 9: tv log-scaling of the circumangle") {
  Criterion crit{9, "tv dictionary: tan^2(alpha) grows logarithmically through n = 1024"};
  std::vector<double> tan2_values;
  for (int n : {128, 256, 512, 1024}) {
    const Dictionary dict = make_tv_pinv(n);
    Vector x(n);
    const int segments = 5;  // four equidistant jumps
    for (int i = 0; i < n; ++i) {
      const int seg = std::min(segments - 1, i * segments / n);
      x[i] = (seg % 2 == 0) ? 1.0 : -1.0;
    }
    x.array() -= x.mean();
    CoefVector z(forward_difference(n) * x);
    z.rebuild_support(1e-9);
    crit.expect(z.sparsity() == 4, "n=" + std::to_string(n) + ": jump count " +
                                       std::to_string(z.sparsity()));
    const ConeDecomposition dec = lineality_decompose(dict, z);
    tan2_values.push_back(std::pow(std::tan(dec.circum_alpha), 2));
    std::printf("        n=%5d: tan^2(alpha) = %.6f\n", n, tan2_values.back());
  }
  for (std::size_t i = 1; i < tan2_values.size(); ++i)
    crit.expect(tan2_values[i] > tan2_values[i - 1], "not increasing at step " + std::to_string(i));
  for (std::size_t i = 2; i < tan2_values.size(); ++i) {
    const double prev = tan2_values[i - 1] - tan2_values[i - 2];
    const double next = tan2_values[i] - tan2_values[i - 1];
    crit.expect(std::abs(next - prev) < 0.5 * prev,
                "increment change " + std::to_string(prev) + " -> " + std::to_string(next));
  }
  crit.finish();
}

TEST_CASE("acceptance 10: polytope width bound") {
  Criterion crit{10, "monte-carlo polytope widths below the analytic bound in 99 of 100 cases"};
  int hits = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Generator gen(9000 + trial);
    const int n = 2 + static_cast<int>(gen.below(49));   // up to 50
    const int k = 5 + static_cast<int>(gen.below(196));  // 5..200
    Matrix vertices(n, k);
    for (int j = 0; j < k; ++j) vertices.col(j) = gen.unit_vector(n);
    double acc = 0.0;
    for (int sample = 0; sample < 2000; ++sample) {
      const Vector g = gen.normal_vector(n);
      acc += (vertices.transpose() * g).maxCoeff();
    }
    const double width = acc / 2000.0;
    if (width <= polytope_width_bound(k)) ++hits;
  }
  crit.expect(hits >= 99, "bound held in " + std::to_string(hits) + "/100 cases");
  crit.finish();
}

TEST_CASE("acceptance 11: solver oracle equivalence") {
  Criterion crit{11, "basis-pursuit objectives match enumeration oracles within 1e-6"};

  int done = 0;
  for (int trial = 0; done < 25; ++trial) {
    Generator gen(1100 + trial);
    const int m = 2 + static_cast<int>(gen.below(5));  // up to 6
    const int d = m + 1 + static_cast<int>(gen.below(static_cast<std::uint64_t>(10 - m)));
    const Matrix M = gen.normal_matrix(m, d);
    Vector z_true = Vector::Zero(d);
    const int s = 1 + static_cast<int>(gen.below(static_cast<std::uint64_t>(m)));
    for (int j = 0; j < s; ++j) z_true[static_cast<Eigen::Index>(gen.below(d))] = gen.normal();
    const Vector y = M * z_true;
    if (y.norm() < 1e-3) continue;
    const auto oracle = oracles::bp_eq_objective(M, y);
    if (!oracle) continue;
    const BPSolution sol = solve_bp_eq(M, y, kTight);
    crit.expect(std::abs(sol.objective - *oracle) <= 1e-6 * std::max(1.0, *oracle),
                "eq instance " + std::to_string(trial) + ": " + std::to_string(sol.objective) +
                    " vs oracle " + std::to_string(*oracle));
    ++done;
  }

  done = 0;
  for (int trial = 0; done < 25; ++trial) {
    Generator gen(1200 + trial);
    const int m = 2 + static_cast<int>(gen.below(5));
    const int d = std::min(8, m + 1 + static_cast<int>(gen.below(4)));
    const Matrix M = gen.normal_matrix(m, d);
    Vector z_true = Vector::Zero(d);
    z_true[static_cast<Eigen::Index>(gen.below(d))] = 1.0 + gen.uniform();
    z_true[static_cast<Eigen::Index>(gen.below(d))] = -1.0 - gen.uniform();
    const Vector y = M * z_true;
    if (y.norm() < 0.5) continue;
    const double eta = 0.05 + 0.1 * gen.uniform();
    const auto oracle = oracles::bp_ineq_objective(M, y, eta);
    if (!oracle) continue;
    const BPSolution sol = solve_bp_ineq(M, y, eta, kTight);
    crit.expect(std::abs(sol.objective - *oracle) <= 1e-6 * std::max(1.0, *oracle),
                "ineq instance " + std::to_string(trial) + ": " + std::to_string(sol.objective) +
                    " vs oracle " + std::to_string(*oracle));
    ++done;
  }
  crit.finish();
}
