#include "rysint/rys.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <vector>

namespace rysint {

namespace {

// 16-point Gauss-Legendre nodes/weights on [0, 1].
struct GaussLegendre16 {
  std::array<double, 16> x{};
  std::array<double, 16> w{};

  GaussLegendre16() {
    // Newton iteration on Legendre P_16; seeds from the Chebyshev angles.
    constexpr int n = 16;
    for (int i = 0; i < n / 2; ++i) {
      double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        pp = n * (z * p1 - p0) / (z * z - 1.0);
        double dz = p1 / pp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      const double wi = 2.0 / ((1.0 - z * z) * pp * pp);
      x[i] = 0.5 * (1.0 - z);
      x[n - 1 - i] = 0.5 * (1.0 + z);
      w[i] = 0.5 * wi;
      w[n - 1 - i] = 0.5 * wi;
    }
  }
};

// Discretization of the Rys measure u^{-1/2} e^{-Tu} du / 2 on [0,1]
// via the substitution u = v^2 (integrand e^{-T v^2} dv, no endpoint
// singularity).  Panels are graded toward zero on the decay scale
// 1/sqrt(T) so the composite Gauss-Legendre rule stays accurate for
// any T.
struct DiscretizedMeasure {
  std::vector<double> u;
  std::vector<double> w;
};

DiscretizedMeasure discretize(double t_arg) {
  static const GaussLegendre16 gl;
  std::vector<double> edges{0.0};
  if (t_arg <= 4.0) {
    for (int k = 1; k <= 8; ++k) edges.push_back(k / 8.0);
  } else {
    double e = 0.125 / std::sqrt(t_arg);
    while (e < 1.0) {
      edges.push_back(e);
      e *= 2.0;
    }
    edges.push_back(1.0);
  }

  DiscretizedMeasure d;
  d.u.reserve(16 * (edges.size() - 1));
  d.w.reserve(16 * (edges.size() - 1));
  for (std::size_t panel = 0; panel + 1 < edges.size(); ++panel) {
    const double lo = edges[panel];
    const double h = edges[panel + 1] - lo;
    for (int i = 0; i < 16; ++i) {
      const double v = lo + h * gl.x[i];
      d.u.push_back(v * v);
      d.w.push_back(h * gl.w[i] * std::exp(-t_arg * v * v));
    }
  }
  return d;
}

}  // namespace

RysNodeSet rys_roots_weights(int order, double t_arg) {
  if (order < 1 || order > kMaxRysOrder)
    throw std::out_of_range("rys_roots_weights: order must be in [1, 7]");
  if (t_arg < 0.0) throw std::domain_error("rys_roots_weights: T must be non-negative");

  const int n = order;
  const DiscretizedMeasure d = discretize(t_arg);
  const std::size_t npts = d.u.size();

  // Stieltjes procedure on the discretized measure: recurrence
  // coefficients of the monic orthogonal polynomials
  // pi_{k+1}(u) = (u - alpha_k) pi_k(u) - beta_k pi_{k-1}(u).
  std::vector<double> alpha(n), beta(n);
  std::vector<double> pi_prev(npts, 0.0), pi_cur(npts, 1.0), pi_next(npts);
  double norm_prev = 1.0;
  double norm_cur = 0.0;
  for (std::size_t i = 0; i < npts; ++i) norm_cur += d.w[i];
  beta[0] = norm_cur;  // total mass F_0(T)

  for (int k = 0; k < n; ++k) {
    double num = 0.0;
    for (std::size_t i = 0; i < npts; ++i) num += d.w[i] * d.u[i] * pi_cur[i] * pi_cur[i];
    alpha[k] = num / norm_cur;
    if (k + 1 < n) {
      const double bk = k == 0 ? 0.0 : beta[k];
      for (std::size_t i = 0; i < npts; ++i)
        pi_next[i] = (d.u[i] - alpha[k]) * pi_cur[i] - bk * pi_prev[i];
      double norm_next = 0.0;
      for (std::size_t i = 0; i < npts; ++i)
        norm_next += d.w[i] * pi_next[i] * pi_next[i];
      beta[k + 1] = norm_next / norm_cur;
      if (!(beta[k + 1] > 0.0) || !std::isfinite(beta[k + 1]))
        throw RysConvergenceError(
            "rys_roots_weights: Jacobi construction lost positivity");
      std::swap(pi_prev, pi_cur);
      std::swap(pi_cur, pi_next);
      norm_prev = norm_cur;
      norm_cur = norm_next;
    }
  }
  (void)norm_prev;

  // Golub-Welsch: nodes are eigenvalues of the symmetric tridiagonal
  // Jacobi matrix, weights come from the first eigenvector components.
  Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 1);
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(beta[k]);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(std::max(n - 1, 0)),
                            Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw RysConvergenceError("rys_roots_weights: tridiagonal eigensolver did not converge");

  RysNodeSet r;
  r.order = n;
  r.t_arg = t_arg;
  for (int i = 0; i < n; ++i) {
    const double u = es.eigenvalues()[i];
    if (!(u > 0.0 && u < 1.0))
      throw RysConvergenceError("rys_roots_weights: node outside (0, 1)");
    r.roots[i] = std::sqrt(u);
    const double v0 = es.eigenvectors()(0, i);
    r.weights[i] = beta[0] * v0 * v0;
  }
  return r;
}

double rys_argument(const QuartetInput& q) {
  const auto& a = q.shells[0];
  const auto& b = q.shells[1];
  const auto& c = q.shells[2];
  const auto& d = q.shells[3];
  const double p = a.exponent + b.exponent;
  const double qq = c.exponent + d.exponent;
  double pq2 = 0.0;
  for (int x = 0; x < 3; ++x) {
    const double px = (a.exponent * a.center[x] + b.exponent * b.center[x]) / p;
    const double qx = (c.exponent * c.center[x] + d.exponent * d.center[x]) / qq;
    pq2 += (px - qx) * (px - qx);
  }
  const double rho = p * qq / (p + qq);
  return rho * pq2;
}

RysNodeSet prepare_quartet_rys(const QuartetInput& q) {
  return rys_roots_weights(q.cls().n_rys(), rys_argument(q));
}

}  // namespace rysint
