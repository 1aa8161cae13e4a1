#include "conexp/gauss.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace conexp {

namespace {

Rule make_legendre(int n) {
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
    }
    const double w = 2 / ((1 - x * x) * dp * dp);
    r.nodes[i] = 0.5 * (1 - x);
    r.nodes[n - 1 - i] = 0.5 * (1 + x);
    r.weights[i] = r.weights[n - 1 - i] = 0.5 * w;
  }
  return r;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  if (n < 1 || n > 256) throw std::invalid_argument("gauss_legendre: order out of range");
  static std::mutex mu;
  static std::map<int, Rule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_legendre(n)).first;
  return it->second;
}

Rule gauss_jacobi_left(int n, double gamma) {
  if (!(gamma > -1)) throw std::invalid_argument("gauss_jacobi_left: gamma must exceed -1");
  // Monic recurrence for the weight (1+t)^gamma on [-1, 1], i.e. Jacobi (a, b) = (0, gamma).
  const double a = 0, b = gamma;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double s = 2 * k + a + b;
    J(k, k) = k == 0 ? (b - a) / (a + b + 2) : (b * b - a * a) / (s * (s + 2));
    if (k + 1 < n) {
      const int m = k + 1;
      const double t = 2 * m + a + b;
      const double beta = 4.0 * m * (m + a) * (m + b) * (m + a + b) / (t * t * (t + 1) * (t - 1));
      J(k, k + 1) = J(k + 1, k) = std::sqrt(beta);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  const double mu0 = std::exp((a + b + 1) * std::log(2.0) + std::lgamma(a + 1) + std::lgamma(b + 1) -
                              std::lgamma(a + b + 2));
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  // Map t in [-1,1] to x = (1+t)/2; weight (1+t)^gamma dt = 2^(gamma+1) x^gamma dx.
  const double scale = std::pow(2.0, -gamma - 1);
  for (int i = 0; i < n; ++i) {
    const double v = es.eigenvectors()(0, i);
    r.nodes[i] = 0.5 * (1 + es.eigenvalues()(i));
    r.weights[i] = mu0 * v * v * scale;
  }
  return r;
}

}  // namespace conexp
