#include <doctest.h>

#include <cmath>

#include "conexp/gauss.hpp"

using namespace conexp;

TEST_SUITE("gauss") {
  TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
    for (int n : {1, 3, 6, 12}) {
      const Rule& r = gauss_legendre(n);
      for (int d = 0; d <= 2 * n - 1; ++d) {
        double s = 0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], d);
        CHECK(s == doctest::Approx(1.0 / (d + 1)).epsilon(1e-13));
      }
    }
  }

  TEST_CASE("Gauss-Jacobi integrates t^gamma times polynomials exactly") {
    for (double g : {-0.5, 0.0, 0.8, 2.3}) {
      const int n = 5;
      const Rule r = gauss_jacobi_left(n, g);
      for (int d = 0; d <= 2 * n - 1; ++d) {
        double s = 0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], d);
        CHECK(s == doctest::Approx(1.0 / (d + g + 1)).epsilon(1e-11));
      }
    }
  }

  TEST_CASE("nodes lie inside the unit interval with positive weights") {
    const Rule r = gauss_jacobi_left(8, -0.9);
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      CHECK(r.nodes[i] > 0.0);
      CHECK(r.nodes[i] < 1.0);
      CHECK(r.weights[i] > 0.0);
    }
  }
}
