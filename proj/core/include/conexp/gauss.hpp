#pragma once

#include <vector>

namespace conexp {

struct Rule {
  std::vector<double> nodes;    // on [0, 1]
  std::vector<double> weights;
};

// Gauss-Legendre rule with n points mapped to [0, 1]. Cached, thread safe.
const Rule& gauss_legendre(int n);

// Gauss rule for the weight t^gamma on [0, 1], gamma > -1 (Golub-Welsch).
Rule gauss_jacobi_left(int n, double gamma);

}  // namespace conexp
