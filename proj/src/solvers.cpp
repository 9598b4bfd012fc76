#include "synthlab/solvers.hpp"

#include "synthlab/errors.hpp"
#include "synthlab/rng.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace synthlab {

namespace {

Vector soft_threshold(const Vector& v, double gamma) {
  Vector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = v[i];
    if (a > gamma)
      out[i] = a - gamma;
    else if (a < -gamma)
      out[i] = a + gamma;
    else
      out[i] = 0.0;
  }
  return out;
}

// Euclidean projection onto {z : ||M z - y|| <= eta}, with eta = 0 meaning the
// affine set {M z = y}. Works in the SVD basis of M, where the KKT conditions
// reduce to a scalar secular equation in the multiplier.
class ConstraintProjector {
public:
  ConstraintProjector(const Matrix& M, const Vector& y, double eta) : eta_(eta) {
    Eigen::BDCSVD<Matrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& sv = svd.singularValues();
    const double cutoff =
        std::max(M.rows(), M.cols()) * std::numeric_limits<double>::epsilon() * (sv.size() ? sv[0] : 0.0);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv[rank] > cutoff) ++rank;
    sigma_ = sv.head(rank);
    U_ = svd.matrixU().leftCols(rank);
    V_ = svd.matrixV().leftCols(rank);
    b_ = U_.transpose() * y;
    off_range_sq_ = (y - U_ * b_).squaredNorm();
  }

  /// Distance from y to the range of M; zero iff the eta = 0 problem is feasible.
  double off_range_norm() const { return std::sqrt(off_range_sq_); }

  bool feasible(double tol) const { return off_range_norm() <= eta_ + tol; }

  /// Least-norm solution of min ||M z - y||.
  Vector least_norm_solution() const {
    return V_ * (b_.array() / sigma_.array()).matrix();
  }

  Vector project(const Vector& v) const {
    const Eigen::Index r = sigma_.size();
    if (r == 0) return v;  // constraint only fixes nothing beyond feasibility
    Vector a = V_.transpose() * v;
    Vector c = sigma_.cwiseProduct(a) - b_;
    const double target_sq = eta_ * eta_ - off_range_sq_;
    if (c.squaredNorm() + off_range_sq_ <= eta_ * eta_) return v;  // already inside

    Vector a_new(r);
    if (target_sq <= 0.0) {
      // Tight or affine constraint: land exactly on M z = U b part.
      a_new = b_.cwiseQuotient(sigma_);
    } else {
      const double lambda = solve_secular(c, target_sq);
      for (Eigen::Index i = 0; i < r; ++i) {
        const double s = sigma_[i];
        a_new[i] = (a[i] + lambda * s * b_[i]) / (1.0 + lambda * s * s);
      }
    }
    return v + V_ * (a_new - a);
  }

private:
  // Root of sum_i c_i^2 / (1 + lambda s_i^2)^2 = target_sq for lambda >= 0.
  // The left side is convex and decreasing, so Newton from the left converges
  // monotonically; a doubling bracket guards the first steps.
  double solve_secular(const Vector& c, double target_sq) const {
    const Eigen::Index r = sigma_.size();
    auto value = [&](double lambda) {
      double acc = 0.0;
      for (Eigen::Index i = 0; i < r; ++i) {
        const double denom = 1.0 + lambda * sigma_[i] * sigma_[i];
        acc += c[i] * c[i] / (denom * denom);
      }
      return acc;
    };
    auto derivative = [&](double lambda) {
      double acc = 0.0;
      for (Eigen::Index i = 0; i < r; ++i) {
        const double s2 = sigma_[i] * sigma_[i];
        const double denom = 1.0 + lambda * s2;
        acc -= 2.0 * c[i] * c[i] * s2 / (denom * denom * denom);
      }
      return acc;
    };
    double lo = 0.0, hi = 1.0;
    while (value(hi) > target_sq) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e18) return hi;
    }
    double lambda = lo;
    for (int it = 0; it < 200; ++it) {
      const double f = value(lambda) - target_sq;
      if (std::abs(f) <= 1e-14 * target_sq + 1e-300) break;
      const double d = derivative(lambda);
      double step = (d < 0.0) ? -f / d : 0.0;
      double next = lambda + step;
      if (step <= 0.0 || next <= lo || next >= hi) next = 0.5 * (lo + hi);  // bisect fallback
      if (value(next) > target_sq)
        lo = next;
      else
        hi = next;
      lambda = next;
      if (hi - lo <= 1e-16 * (1.0 + hi)) break;
    }
    return lambda;
  }

  Vector sigma_, b_;
  Matrix U_, V_;
  double eta_;
  double off_range_sq_;
};

// Support polish for the equality-constrained case: take the support and sign
// pattern of the sparse iterate, solve the restricted least squares, and
// accept when a dual vector u with (M^T u)_S = sign_S and ||M^T u||_inf <= 1
// certifies optimality. Weak duality then pins the objective:
// ||z'||_1 >= <u, M z'> = <u, y> = ||z||_1 for every feasible z'.
struct PolishOutcome {
  bool certified = false;
  Vector z;
  double feas_residual = 0.0;
  double cert_slack = 0.0;
};

PolishOutcome try_support_polish(const Matrix& M, const Vector& y, const Vector& x,
                                 double feas_tol) {
  PolishOutcome out;
  const Eigen::Index d = M.cols();
  const double x_max = x.cwiseAbs().maxCoeff();
  if (x_max <= 0.0) return out;
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < d; ++i)
    if (std::abs(x[i]) > 1e-7 * x_max) support.push_back(i);
  if (support.empty()) return out;

  // Sign-constrained candidate on the detected support. Plain least squares
  // can leave the sign orthant on degenerate faces, so fit nonnegative
  // coefficients against the sign-flipped columns instead.
  const Eigen::Index s = static_cast<Eigen::Index>(support.size());
  Matrix sub(M.rows(), s);
  Vector sign_s(s);
  for (Eigen::Index j = 0; j < s; ++j) {
    const Eigen::Index i = support[static_cast<std::size_t>(j)];
    sign_s[j] = x[i] > 0 ? 1.0 : -1.0;
    sub.col(j) = sign_s[j] * M.col(i);
  }
  Vector c;
  try {
    c = nnls(sub, y).coefficients;
  } catch (const std::exception&) {
    return out;
  }
  out.feas_residual = (sub * c - y).norm();
  if (out.feas_residual > feas_tol) return out;

  // Dual vector with (M^T u)_S = sign_S; when the full support is
  // inconsistent, retry on the entries the candidate actually uses.
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<Eigen::Index> active;
    for (Eigen::Index j = 0; j < s; ++j) {
      if (attempt == 0 || c[j] > 0.0) active.push_back(j);
    }
    if (active.empty()) return out;
    Matrix cols(M.rows(), static_cast<Eigen::Index>(active.size()));
    Vector rhs(static_cast<Eigen::Index>(active.size()));
    for (std::size_t j = 0; j < active.size(); ++j) {
      cols.col(static_cast<Eigen::Index>(j)) = M.col(support[static_cast<std::size_t>(active[j])]);
      rhs[static_cast<Eigen::Index>(j)] = sign_s[active[j]];
    }
    const auto dual_cod = Matrix(cols.transpose()).completeOrthogonalDecomposition();
    const Vector u = dual_cod.solve(rhs);
    if ((cols.transpose() * u - rhs).cwiseAbs().maxCoeff() > 1e-9) continue;
    const double sup_norm = (M.transpose() * u).cwiseAbs().maxCoeff();
    out.cert_slack = sup_norm - 1.0;
    if (out.cert_slack > 1e-9) continue;

    out.certified = true;
    out.z = Vector::Zero(d);
    for (Eigen::Index j = 0; j < s; ++j)
      out.z[support[static_cast<std::size_t>(j)]] = sign_s[j] * c[j];
    return out;
  }
  return out;
}

BPSolution solve_bp_core(const Matrix& M, const Vector& y, double eta,
                         const SolverSettings& settings, const Vector* tilt) {
  if (eta < 0.0) throw DomainError("basis pursuit: eta must be nonnegative");
  if (M.rows() != y.size()) throw DomainError("basis pursuit: dimension mismatch");
  const Eigen::Index d = M.cols();

  BPSolution sol;
  const double scale = y.norm();
  if (scale <= eta || d == 0) {
    // The origin is feasible and minimal.
    sol.z = CoefVector(Vector::Zero(d));
    sol.converged = true;
    return sol;
  }

  const Vector y_n = y / scale;
  const double eta_n = eta / scale;
  ConstraintProjector projector(M, y_n, eta_n);
  const double feas_tol = settings.abs_tol + settings.rel_tol;
  if (!projector.feasible(feas_tol))
    throw InfeasibleError("basis pursuit: residual " + std::to_string(projector.off_range_norm()) +
                          " exceeds eta " + std::to_string(eta_n) + " (normalized)");

  Vector v = projector.least_norm_solution();

  // The splitting stalls when the prox scale is far from the geometry of the
  // problem: tie it to the constraint-ball radius for noisy constraints and
  // to the coefficient magnitude of the least-norm solution otherwise.
  const double gamma =
      settings.penalty * (eta_n > 0.0 ? std::clamp(3.0 * eta_n, 1e-4, 1.0)
                                      : std::max(v.cwiseAbs().maxCoeff(), 1e-4));
  const double relax = settings.over_relaxation;
  Vector q = Vector::Zero(d);
  if (tilt) q = *tilt;
  Vector x = Vector::Zero(d), x_prev = Vector::Zero(d), w;
  const double tol_floor = std::sqrt(static_cast<double>(d)) * settings.abs_tol;

  const bool polish_allowed = (eta == 0.0) && !tilt;
  int iter = 0;
  double primal = std::numeric_limits<double>::infinity();
  double dual = std::numeric_limits<double>::infinity();
  for (; iter < settings.max_iters; ++iter) {
    x_prev = x;
    x = soft_threshold(v - gamma * q, gamma);
    w = projector.project(2.0 * x - v);
    v += relax * (w - x);

    primal = (x - w).norm();
    dual = (x - x_prev).norm() / gamma;
    const double eps_pri = tol_floor + settings.rel_tol * std::max(x.norm(), w.norm());
    const double eps_dual = tol_floor + settings.rel_tol * x.norm();
    if (iter > 0 && primal <= eps_pri && dual <= eps_dual) {
      sol.converged = true;
      ++iter;
      break;
    }
    if (polish_allowed && iter % 500 == 499) {
      const PolishOutcome polish = try_support_polish(M, y_n, x, feas_tol);
      if (polish.certified) {
        sol.z = CoefVector(polish.z * scale);
        sol.z.rebuild_support(1e-12);
        sol.objective = sol.z.entries.lpNorm<1>();
        sol.primal_residual = polish.feas_residual * scale;
        sol.dual_residual = std::max(polish.cert_slack, 0.0);
        sol.converged = true;
        sol.iterations = iter + 1;
        return sol;
      }
    }
  }

  if (!sol.converged && polish_allowed) {
    const PolishOutcome polish = try_support_polish(M, y_n, x, feas_tol);
    if (polish.certified) {
      sol.z = CoefVector(polish.z * scale);
      sol.z.rebuild_support(1e-12);
      sol.objective = sol.z.entries.lpNorm<1>();
      sol.primal_residual = polish.feas_residual * scale;
      sol.dual_residual = std::max(polish.cert_slack, 0.0);
      sol.converged = true;
      sol.iterations = iter;
      return sol;
    }
  }

  Vector z = projector.project(x) * scale;  // feasible by construction
  sol.z = CoefVector(std::move(z));
  sol.z.rebuild_support(1e-12);
  sol.objective = sol.z.entries.lpNorm<1>();
  sol.primal_residual = primal * scale;
  sol.dual_residual = dual * scale;
  sol.iterations = iter;
  return sol;
}

}  // namespace

BPSolution solve_bp_eq(const Matrix& M, const Vector& y, const SolverSettings& settings,
                       const Vector* tilt) {
  return solve_bp_core(M, y, 0.0, settings, tilt);
}

BPSolution solve_bp_ineq(const Matrix& M, const Vector& y, double eta,
                         const SolverSettings& settings, const Vector* tilt) {
  if (eta < 0.0) throw DomainError("solve_bp_ineq: eta must be nonnegative");
  return solve_bp_core(M, y, eta, settings, tilt);
}

NnlsResult nnls(const Matrix& R, const Vector& g) {
  const Eigen::Index k = R.cols();
  if (k < 1) throw DomainError("nnls: need at least one column");
  if (R.rows() != g.size()) throw DomainError("nnls: dimension mismatch");

  const Vector rtg = R.transpose() * g;
  const double tol = 1e-10 * std::max(1.0, rtg.cwiseAbs().maxCoeff());

  Vector c = Vector::Zero(k);
  std::vector<int> passive;
  std::vector<bool> in_passive(static_cast<std::size_t>(k), false);
  const int max_outer = 10 * static_cast<int>(k) + 50;

  auto solve_passive = [&](Vector& c_p) {
    Matrix sub(R.rows(), static_cast<Eigen::Index>(passive.size()));
    for (std::size_t j = 0; j < passive.size(); ++j) sub.col(static_cast<Eigen::Index>(j)) = R.col(passive[j]);
    c_p = sub.colPivHouseholderQr().solve(g);
  };

  int outer = 0;
  for (; outer < max_outer; ++outer) {
    const Vector w = rtg - R.transpose() * (R * c);
    int enter = -1;
    double w_best = tol;
    for (Eigen::Index i = 0; i < k; ++i) {
      if (!in_passive[static_cast<std::size_t>(i)] && w[i] > w_best) {
        w_best = w[i];
        enter = static_cast<int>(i);
      }
    }
    if (enter < 0) break;  // KKT satisfied

    passive.push_back(enter);
    in_passive[static_cast<std::size_t>(enter)] = true;

    for (int inner = 0; inner <= static_cast<int>(k) + 1; ++inner) {
      Vector c_p;
      solve_passive(c_p);
      double min_cp = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < c_p.size(); ++j) min_cp = std::min(min_cp, c_p[j]);
      if (min_cp > 0.0) {
        c.setZero();
        for (std::size_t j = 0; j < passive.size(); ++j) c[passive[j]] = c_p[static_cast<Eigen::Index>(j)];
        break;
      }
      // Step back to the boundary and drop the blocking variables.
      double alpha = 1.0;
      for (std::size_t j = 0; j < passive.size(); ++j) {
        const double new_val = c_p[static_cast<Eigen::Index>(j)];
        if (new_val <= 0.0) {
          const double old_val = c[passive[j]];
          const double denom = old_val - new_val;
          if (denom > 0.0) alpha = std::min(alpha, old_val / denom);
        }
      }
      for (std::size_t j = 0; j < passive.size(); ++j) {
        const int idx = passive[j];
        c[idx] += alpha * (c_p[static_cast<Eigen::Index>(j)] - c[idx]);
      }
      std::vector<int> kept;
      for (int idx : passive) {
        if (c[idx] > 1e-14 * std::max(1.0, c.cwiseAbs().maxCoeff())) {
          kept.push_back(idx);
        } else {
          c[idx] = 0.0;
          in_passive[static_cast<std::size_t>(idx)] = false;
        }
      }
      passive = std::move(kept);
      if (passive.empty()) break;
    }
  }

  NnlsResult result;
  result.coefficients = c;
  result.residual = g - R * c;
  result.iterations = outer;
  const Vector w_final = R.transpose() * result.residual;
  double viol = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    viol = std::max(viol, -c[i]);
    viol = std::max(viol, w_final[i]);                 // dual feasibility: w <= 0 at optimum
    viol = std::max(viol, std::abs(c[i] * w_final[i]));  // complementary slackness
  }
  result.kkt_violation = std::max(0.0, viol);
  if (outer >= max_outer && result.kkt_violation > tol)
    throw ConvergenceError("nnls: active-set iteration limit, KKT violation " +
                               std::to_string(result.kkt_violation),
                           result.kkt_violation);
  return result;
}

Vector project_cone(const PolyhedralCone& cone, const Vector& g) {
  if (cone.generator_count() < 1) throw DomainError("project_cone: empty cone");
  if (cone.ambient_dim() != g.size()) throw DomainError("project_cone: dimension mismatch");
  const NnlsResult res = nnls(cone.generators, g);
  return cone.generators * res.coefficients;
}

MinNormPoint min_norm_point_simplex(const Matrix& X, int start_column, int max_iters) {
  const Eigen::Index k = X.cols();
  if (k < 1) throw DomainError("min_norm_point_simplex: need at least one column");
  if (start_column < 0 || start_column >= k) start_column = 0;
  const double scale = std::max(1.0, X.colwise().norm().maxCoeff());
  const double opt_tol = 1e-13 * scale * scale;

  std::vector<int> support{start_column};
  Vector weights = Vector::Ones(1);
  Vector v = X.col(start_column);

  auto affine_minimizer = [&](Vector& c) -> bool {
    const Eigen::Index p = static_cast<Eigen::Index>(support.size());
    Matrix kkt = Matrix::Zero(p + 1, p + 1);
    for (Eigen::Index a = 0; a < p; ++a)
      for (Eigen::Index b = 0; b <= a; ++b) {
        const double val = X.col(support[static_cast<std::size_t>(a)]).dot(X.col(support[static_cast<std::size_t>(b)]));
        kkt(a, b) = val;
        kkt(b, a) = val;
      }
    kkt.row(p).head(p).setOnes();
    kkt.col(p).head(p).setOnes();
    Vector rhs = Vector::Zero(p + 1);
    rhs[p] = 1.0;
    Eigen::FullPivLU<Matrix> lu(kkt);
    if (!lu.isInvertible()) return false;
    const Vector sol = lu.solve(rhs);
    c = sol.head(p);
    return c.allFinite();
  };

  MinNormPoint out;
  int iter = 0;
  for (; iter < max_iters; ++iter) {
    // Most improving vertex.
    Eigen::Index best = 0;
    double best_dot = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < k; ++i) {
      const double dot = v.dot(X.col(i));
      if (dot < best_dot) {
        best_dot = dot;
        best = i;
      }
    }
    out.gap = v.squaredNorm() - best_dot;
    if (out.gap <= opt_tol) break;
    bool already = false;
    for (int s : support)
      if (s == static_cast<int>(best)) already = true;
    if (already) break;  // numerical stall; gap reported to the caller

    support.push_back(static_cast<int>(best));
    Vector padded(weights.size() + 1);
    padded << weights, 0.0;
    weights = padded;

    for (int minor = 0; minor <= static_cast<int>(k) + 2; ++minor) {
      Vector c;
      if (!affine_minimizer(c)) {
        // Affinely dependent support; drop the weakest member and retry.
        Eigen::Index drop = 0;
        weights.minCoeff(&drop);
        support.erase(support.begin() + drop);
        Vector reduced(weights.size() - 1);
        reduced << weights.head(drop), weights.tail(weights.size() - drop - 1);
        weights = reduced / reduced.sum();
        continue;
      }
      if (c.minCoeff() > 1e-12) {
        weights = c;
        break;
      }
      double theta = 1.0;
      for (Eigen::Index j = 0; j < c.size(); ++j) {
        if (c[j] <= 1e-12) {
          const double denom = weights[j] - c[j];
          if (denom > 0.0) theta = std::min(theta, weights[j] / denom);
        }
      }
      weights = (1.0 - theta) * weights + theta * c;
      std::vector<int> kept_support;
      std::vector<double> kept_weights;
      for (Eigen::Index j = 0; j < weights.size(); ++j) {
        if (weights[j] > 1e-12) {
          kept_support.push_back(support[static_cast<std::size_t>(j)]);
          kept_weights.push_back(weights[j]);
        }
      }
      if (kept_support.empty()) {
        kept_support.push_back(support[0]);
        kept_weights.push_back(1.0);
      }
      support = std::move(kept_support);
      weights = Eigen::Map<Vector>(kept_weights.data(), static_cast<Eigen::Index>(kept_weights.size()));
      weights /= weights.sum();
    }

    v.setZero();
    for (Eigen::Index j = 0; j < weights.size(); ++j)
      v += weights[j] * X.col(support[static_cast<std::size_t>(j)]);
  }

  out.point = v;
  out.weights = Vector::Zero(k);
  for (Eigen::Index j = 0; j < weights.size(); ++j) out.weights[support[static_cast<std::size_t>(j)]] = weights[j];
  out.iterations = iter;
  return out;
}

CircumcenterResult circumcenter(const PolyhedralCone& cone, const CircumcenterSettings& settings) {
  const Eigen::Index n = cone.ambient_dim();
  const Eigen::Index k = cone.generator_count();
  if (k < 1) throw DomainError("circumcenter: empty cone");

  Matrix X(n, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const double nrm = cone.generators.col(j).norm();
    if (nrm < 1e-300) throw DomainError("circumcenter: zero generator");
    X.col(j) = cone.generators.col(j) / nrm;
  }

  auto objective = [&](const Vector& theta, Eigen::Index* argmin) {
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index best_i = 0;
    for (Eigen::Index i = 0; i < k; ++i) {
      const double dot = theta.dot(X.col(i));
      if (dot < best) {
        best = dot;
        best_i = i;
      }
    }
    if (argmin) *argmin = best_i;
    return best;
  };

  // Subgradient search: ascend the concave min-inner-product objective from a
  // handful of seeded starts, keeping the best iterate seen.
  Vector theta_best = X.rowwise().mean();
  if (theta_best.norm() < 1e-300) theta_best = X.col(0);
  theta_best.normalize();
  double f_best = objective(theta_best, nullptr);
  int total_iters = 0;
  for (int restart = 0; restart < settings.restarts; ++restart) {
    Vector theta;
    if (restart == 0) {
      theta = theta_best;
    } else {
      Generator gen(settings.seed, {0xC1C0u, static_cast<std::uint64_t>(restart)});
      theta = (theta_best + 0.5 * gen.unit_vector(n)).normalized();
    }
    for (int it = 0; it < settings.subgradient_iters; ++it, ++total_iters) {
      Eigen::Index active = 0;
      const double val = objective(theta, &active);
      if (val > f_best) {
        f_best = val;
        theta_best = theta;
      }
      // Polyak-style step toward the best value seen, with a decaying slack.
      const double slack = std::max(1e-3 * (1.0 - std::abs(f_best)), 1e-9) / (1.0 + it);
      const double step = std::max(f_best + slack - val, 1e-12);
      theta += step * X.col(active);
      const double nrm = theta.norm();
      if (nrm > 1.0) theta /= nrm;
    }
  }

  // Exact polish: the optimal axis is the direction of the minimum-norm point
  // of the generator hull, and its norm is cos(alpha). Start from a generator
  // active at the subgradient solution.
  Eigen::Index start = 0;
  objective(theta_best, &start);
  const MinNormPoint mnp = min_norm_point_simplex(X, static_cast<int>(start), settings.max_refine_iters);
  total_iters += mnp.iterations;

  const double cos_alpha = mnp.point.norm();
  if (cos_alpha <= 1e-9)
    throw DomainError("circumcenter: cone not strictly pointed within tolerance (cos <= 0)");

  CircumcenterResult result;
  result.theta = mnp.point / cos_alpha;
  const double achieved = objective(result.theta, nullptr);
  result.cos_alpha = achieved;
  result.certificate_gap = cos_alpha - achieved;
  result.iterations = total_iters;
  if (result.certificate_gap > settings.cert_tol || f_best > cos_alpha + settings.cert_tol)
    throw ConvergenceError("circumcenter: certificate gap " + std::to_string(result.certificate_gap),
                           result.certificate_gap);
  result.alpha = std::acos(std::clamp(achieved, -1.0, 1.0));
  return result;
}

bool is_unique_representer(const Dictionary& dict, const CoefVector& z,
                           const SolverSettings& settings, std::uint64_t seed) {
  const Vector x = dict.matrix * z.entries;
  if (x.norm() < 1e-300) throw DomainError("is_unique_representer: D z must be nonzero");

  const int s = z.sparsity();
  if (s == 0) throw DomainError("is_unique_representer: z must be nonzero");
  Matrix sub(dict.n(), s);
  for (int j = 0; j < s; ++j) sub.col(j) = dict.matrix.col(z.support[static_cast<std::size_t>(j)]);
  Eigen::ColPivHouseholderQR<Matrix> qr(sub);
  qr.setThreshold(1e-10);
  if (qr.rank() < s) return false;  // dependent atoms can never be unique

  const double z_l1 = z.entries.lpNorm<1>();
  const double opt_tol = 100.0 * settings.abs_tol + settings.rel_tol * std::max(1.0, z_l1);
  const double match_tol = 10.0 * (settings.abs_tol + settings.rel_tol * std::max(1.0, z_l1));

  BPSolution plain = solve_bp_eq(dict.matrix, x, settings);
  if (!plain.converged)
    throw ConvergenceError("is_unique_representer: basis pursuit did not converge",
                           plain.primal_residual);
  if (std::abs(plain.objective - z_l1) > opt_tol) return false;

  const double tilt_mag = 1e-7 * std::max(1.0, z_l1);
  for (int trial = 0; trial < 2; ++trial) {
    Generator gen(seed, {0x517Eu, static_cast<std::uint64_t>(trial)});
    Vector tilt(dict.d());
    for (Eigen::Index i = 0; i < tilt.size(); ++i) tilt[i] = tilt_mag * (2.0 * gen.uniform() - 1.0);
    BPSolution tilted = solve_bp_eq(dict.matrix, x, settings, &tilt);
    const double displacement = (tilted.z.entries - z.entries).norm();
    if (!tilted.converged) {
      // On a non-singleton solution set the tilted iterates drift along the
      // optimal face at the tilt rate and never settle; a displacement far
      // above solver accuracy is already decisive.
      if (displacement > 1e-3 * std::max(1.0, z.entries.norm())) return false;
      throw ConvergenceError("is_unique_representer: tilted solve did not converge",
                             tilted.primal_residual);
    }
    if (displacement > match_tol) return false;
  }
  return true;
}

}  // namespace synthlab
