#include "synthlab/dictionary.hpp"

#include "synthlab/errors.hpp"
#include "synthlab/rng.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>

namespace synthlab {

namespace {

Dictionary finalize(Matrix m, std::string label) {
  Dictionary dict;
  dict.matrix = std::move(m);
  dict.label = std::move(label);
  dict.atom_norms = dict.matrix.colwise().norm();
  if (!dict.matrix.allFinite()) throw NumericalError("dictionary has non-finite entries");
  return dict;
}

bool is_power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }

}  // namespace

Dictionary make_identity(int n) {
  if (n < 1) throw DomainError("make_identity: n must be positive");
  return finalize(Matrix::Identity(n, n), "identity");
}

Dictionary make_gaussian(int n, int d, std::uint64_t seed) {
  if (n < 1 || d < 1) throw DomainError("make_gaussian: dimensions must be positive");
  Generator gen(seed);
  return finalize(gen.normal_matrix(n, d), "gaussian");
}

Dictionary make_haar_redundant(int n, int levels) {
  if (!is_power_of_two(n)) throw DomainError("make_haar_redundant: n must be a power of two");
  const int max_levels = static_cast<int>(std::round(std::log2(static_cast<double>(n))));
  if (levels < 1 || levels > max_levels)
    throw DomainError("make_haar_redundant: levels must lie in [1, log2(n)]");

  Matrix m = Matrix::Zero(n, static_cast<Eigen::Index>(n) * (levels + 1));
  Eigen::Index col = 0;
  for (int level = 1; level <= levels; ++level) {
    const int len = 1 << level;
    const double amp = 1.0 / std::sqrt(static_cast<double>(len));
    for (int shift = 0; shift < n; ++shift, ++col) {
      for (int t = 0; t < len; ++t) {
        const int row = (shift + t) % n;
        m(row, col) = (t < len / 2) ? amp : -amp;
      }
    }
  }
  const int len = 1 << levels;
  const double amp = 1.0 / std::sqrt(static_cast<double>(len));
  for (int shift = 0; shift < n; ++shift, ++col) {
    for (int t = 0; t < len; ++t) m((shift + t) % n, col) = amp;
  }
  return finalize(std::move(m), "haar");
}

Dictionary make_conv_pair(int n) {
  if (n < 3) throw DomainError("make_conv_pair: n must be at least 3");
  Matrix m = Matrix::Zero(n, 2 * n);
  for (int j = 0; j < n; ++j) {
    const int prev = (j + n - 1) % n;
    m(j, j) = 1.0;
    m(prev, j) = 1.0;
    m(j, n + j) = 1.0;
    m(prev, n + j) = -1.0;
  }
  return finalize(std::move(m), "conv-pair");
}

Dictionary make_superres(int n, double sigma) {
  if (n < 4) throw DomainError("make_superres: n must be at least 4");
  if (!(sigma > 0.0)) throw DomainError("make_superres: sigma must be positive");
  Vector kernel = Vector::Zero(n);
  // Periodize over enough copies that the tail is below double precision.
  const int copies = std::max(1, static_cast<int>(std::ceil(9.0 * sigma / n)) + 1);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int k = -copies; k <= copies; ++k) {
      const double offset = static_cast<double>(i) + static_cast<double>(k) * n;
      acc += std::exp(-offset * offset / (2.0 * sigma * sigma));
    }
    kernel[i] = acc;
  }
  Matrix m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = kernel[(i - j + n) % n];
  return finalize(std::move(m), "superres");
}

Dictionary normalize_atoms(const Dictionary& dict) {
  Matrix m = dict.matrix;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double nrm = m.col(j).norm();
    if (nrm < 1e-300) throw DomainError("normalize_atoms: zero atom");
    m.col(j) /= nrm;
  }
  return finalize(std::move(m), dict.label + "-unit");
}

Matrix forward_difference(int n) {
  Matrix grad = Matrix::Zero(n - 1, n);
  for (int i = 0; i < n - 1; ++i) {
    grad(i, i) = -1.0;
    grad(i, i + 1) = 1.0;
  }
  return grad;
}

Dictionary make_tv_pinv(int n) {
  if (n < 3) throw DomainError("make_tv_pinv: n must be at least 3");
  const Matrix grad = forward_difference(n);

  // grad has full row rank, so pinv = grad^T (grad grad^T)^{-1}. The Gram
  // matrix is the tridiagonal second-difference matrix; solve it with the
  // Thomas recurrence against all n-1 unit right-hand sides at once.
  const int r = n - 1;
  Matrix rhs = grad;  // (grad grad^T)^{-1} grad, built in place
  std::vector<double> diag(r, 2.0), lower(r, -1.0);
  for (int i = 1; i < r; ++i) {
    const double w = lower[i] / diag[i - 1];
    diag[i] -= w * (-1.0);
    rhs.row(i) -= w * rhs.row(i - 1);
  }
  rhs.row(r - 1) /= diag[r - 1];
  for (int i = r - 2; i >= 0; --i) rhs.row(i) = (rhs.row(i) + rhs.row(i + 1)) / diag[i];

  Matrix pinv = rhs.transpose();  // n x (n-1)
  const double residual = (grad * pinv * grad - grad).cwiseAbs().maxCoeff();
  if (residual > 1e-8)
    throw NumericalError("make_tv_pinv: pseudoinverse residual " + std::to_string(residual));
  Dictionary dict = finalize(std::move(pinv), "tv-pinv");
  return dict;
}

double coherence(const Dictionary& dict) {
  const Eigen::Index d = dict.d();
  if (d < 2) throw DomainError("coherence: need at least two atoms");
  Vector norms = dict.matrix.colwise().norm();
  for (Eigen::Index j = 0; j < d; ++j)
    if (norms[j] < 1e-300) throw DomainError("coherence: zero atom");
  Matrix gram = dict.matrix.transpose() * dict.matrix;
  double best = 0.0;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j)
      best = std::max(best, std::abs(gram(i, j)) / (norms[i] * norms[j]));
  return std::min(best, 1.0);
}

CoefVector omp(const Dictionary& dict, const Vector& x, int s_max, double tol,
               std::vector<double>* residual_history) {
  const Eigen::Index d = dict.d();
  if (s_max < 0 || s_max > d) throw DomainError("omp: s_max out of range");
  if (x.size() != dict.n()) throw DomainError("omp: signal dimension mismatch");

  Vector residual = x;
  std::vector<int> active;
  std::vector<bool> used(static_cast<std::size_t>(d), false);
  Vector coeffs;
  if (residual_history) {
    residual_history->clear();
    residual_history->push_back(residual.norm());
  }

  while (static_cast<int>(active.size()) < s_max && residual.norm() > tol) {
    int best = -1;
    double best_corr = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) {
      if (used[static_cast<std::size_t>(j)] || dict.atom_norms[j] < 1e-300) continue;
      const double corr = std::abs(dict.matrix.col(j).dot(residual)) / dict.atom_norms[j];
      if (corr > best_corr) {
        best_corr = corr;
        best = static_cast<int>(j);
      }
    }
    if (best < 0) break;  // residual orthogonal to every remaining atom
    used[static_cast<std::size_t>(best)] = true;
    active.push_back(best);

    Matrix sub(dict.n(), static_cast<Eigen::Index>(active.size()));
    for (std::size_t k = 0; k < active.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = dict.matrix.col(active[k]);
    coeffs = sub.colPivHouseholderQr().solve(x);
    residual = x - sub * coeffs;
    if (residual_history) residual_history->push_back(residual.norm());
  }

  Vector full = Vector::Zero(d);
  for (std::size_t k = 0; k < active.size(); ++k) full[active[k]] = coeffs[static_cast<Eigen::Index>(k)];
  return CoefVector(std::move(full));
}

}  // namespace synthlab
