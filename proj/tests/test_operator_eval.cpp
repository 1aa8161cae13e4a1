#include <doctest.h>

#include <cmath>
#include <numbers>

#include "conexp/error.hpp"
#include "conexp/exponents.hpp"
#include "conexp/operator_eval.hpp"
#include "conexp/quadrature.hpp"
#include "oracles.hpp"

using namespace conexp;

namespace {

const ConeSpec kFull2{2, ConeShape::FullSpace, {}, 0, 0};
const ConeSpec kHalf2{2, ConeShape::HalfSpace, {}, 0, 0};

OperatorSpec frac(double a) { return {OperatorKind::FractionalLaplacian, 1, 1, a, {}}; }
OperatorSpec pucci_plus() { return {OperatorKind::PucciPlus, 1, 2, 0.5, {}}; }
OperatorSpec pucci_minus() { return {OperatorKind::PucciMinus, 1, 2, 0.5, {}}; }

Eigen::VectorXd cos_power_at_nodes(const ReducedSystem& sys, double a) {
  Eigen::VectorXd f(sys.size());
  for (int i = 0; i < sys.size(); ++i) f[i] = std::pow(std::cos(sys.grid().nodes()[i]), a);
  return f;
}

OperatorSpec isaacs() {
  OperatorSpec op{OperatorKind::IsaacsFinite, 1, 2, 0.5, {}};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      AngularKernel k;
      k.a = a;
      k.b = b;
      for (int i = 0; i <= 32; ++i) {
        const double t = std::numbers::pi * i / 32;
        k.density.push_back(1.3 + 0.25 * (a - b) * std::cos(2 * t) + 0.2 * b);
      }
      op.kernels.push_back(k);
    }
  return op;
}

}  // namespace

TEST_SUITE("operator_eval") {
  TEST_CASE("assembled operator agrees with direct quadrature") {
    const QuadratureConfig q;
    for (const OperatorSpec& op : {frac(0.5), pucci_plus(), pucci_minus()}) {
      const ReducedSystem sys({op, kHalf2, 0.8, q, {}});
      const Eigen::VectorXd f = cos_power_at_nodes(sys, 0.5);
      const Eigen::VectorXd g = sys.apply(f);
      const auto prof = [](double th) { return std::pow(std::cos(th), 0.5); };
      for (int i = 0; i < sys.size(); i += 5) {
        const Vec3 e = meridian_direction(2, sys.grid().nodes()[i]);
        CHECK(g[i] == doctest::Approx(sys.evaluate_at(f, e)).epsilon(1e-9));
        CHECK(std::abs(g[i] - integrate_extremal(prof, 0.8, kHalf2, e, op, q).total()) < q.tol);
      }
    }
  }

  TEST_CASE("full space: constant profile reproduces the radial symbol") {
    const QuadratureConfig q;
    const ReducedSystem sys({frac(0.5), kFull2, 0.5, q, {}});
    const Eigen::VectorXd g = sys.apply(Eigen::VectorXd::Ones(sys.size()));
    const double want = oracle::fractional_symbol(2, 0.5, 0.5);
    for (int i = 0; i < sys.size(); ++i) CHECK(g[i] == doctest::Approx(want).epsilon(1e-3));
  }

  TEST_CASE("half space anchors are harmonic") {
    // Default resolution for alpha = 1/2; the other orders need one refinement round
    // at the node closest to the boundary.
    for (double a : {0.25, 0.5, 0.75})
      for (double beta : {-a, 2 - a}) {
        const QuadratureConfig q = a == 0.5 ? QuadratureConfig{} : refined(QuadratureConfig{}, 1);
        const ReducedSystem sys({frac(a), kHalf2, beta, q, {}});
        const Eigen::VectorXd g = sys.apply(cos_power_at_nodes(sys, a));
        INFO("alpha " << a << " beta " << beta);
        CHECK(g.cwiseAbs().maxCoeff() < q.tol);
      }
  }

  TEST_CASE("scale invariance") {
    const QuadratureConfig q;
    for (const OperatorSpec& op : {frac(0.5), pucci_plus()}) {
      const ReducedOperator R{op, kHalf2, 0.7, q, {}};
      const ReducedSystem sys(R);
      const HomogeneousProfile p = make_profile(R, cos_power_at_nodes(sys, 0.5));
      for (double r : {0.5, 3.0}) {
        const double scale = std::pow(r, -0.7 - 1.0);
        CHECK(scale_invariance_check(R, p, r) < q.tol * std::max(1.0, scale));
      }
    }
  }

  TEST_CASE("functional apply matches the system") {
    const QuadratureConfig q;
    const ReducedOperator R{pucci_plus(), kHalf2, 0.7, q, {}};
    const ReducedSystem sys(R);
    const Eigen::VectorXd f = cos_power_at_nodes(sys, 0.5);
    const auto v = apply(R, make_profile(R, f));
    const Eigen::VectorXd g = sys.apply(f);
    for (int i = 0; i < sys.size(); ++i) CHECK(v[i] == doctest::Approx(g[i]).epsilon(1e-12));
  }

  TEST_CASE("Pucci operators are positively homogeneous and dual") {
    const QuadratureConfig q;
    const ReducedSystem sp({pucci_plus(), kHalf2, 0.7, q, {}});
    const ReducedSystem sm({pucci_minus(), kHalf2, 0.7, q, {}});
    Eigen::VectorXd f = cos_power_at_nodes(sp, 0.5);
    for (int i = 0; i < f.size(); ++i) f[i] *= 1 + 0.4 * std::sin(3.0 * i);
    const Eigen::VectorXd a = sp.apply(f);
    CHECK((sp.apply(2.5 * f) - 2.5 * a).cwiseAbs().maxCoeff() < 1e-9 * (1 + a.cwiseAbs().maxCoeff()));
    // M+(-u) = -M-(u)
    CHECK((sp.apply(-f) + sm.apply(f)).cwiseAbs().maxCoeff() < 1e-9 * (1 + a.cwiseAbs().maxCoeff()));
  }

  TEST_CASE("fractional operator is linear") {
    const QuadratureConfig q;
    const ReducedSystem sys({frac(0.5), kHalf2, 0.7, q, {}});
    const Eigen::VectorXd f = cos_power_at_nodes(sys, 0.5);
    Eigen::VectorXd h = f;
    for (int i = 0; i < h.size(); ++i) h[i] *= std::cos(0.2 * i);
    const Eigen::VectorXd lhs = sys.apply(2 * f - 3 * h), rhs = 2 * sys.apply(f) - 3 * sys.apply(h);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9 * (1 + rhs.cwiseAbs().maxCoeff()));
  }

  TEST_CASE("Isaacs operator lies between the Pucci extremals") {
    const QuadratureConfig q;
    const OperatorSpec op = isaacs();
    const ReducedOperator R{op, kHalf2, 0.6, q, {}};
    const ReducedSystem sys(R);
    Eigen::VectorXd f = cos_power_at_nodes(sys, 0.5);
    for (int i = 0; i < f.size(); ++i) f[i] *= 1 + 0.5 * std::cos(1.7 * i);
    const auto [lo, hi] = pucci_sandwich_check(make_profile(R, f), 0.6, kHalf2, q, op, {});
    CHECK(lo >= -q.tol);
    CHECK(hi >= -q.tol);
  }

  TEST_CASE("mismatched profiles are rejected") {
    const QuadratureConfig q;
    const ReducedOperator R{frac(0.5), kHalf2, 0.7, q, {}};
    const ReducedSystem sys(R);
    HomogeneousProfile p = make_profile(R, cos_power_at_nodes(sys, 0.5));
    HomogeneousProfile shorter = p;
    shorter.samples.pop_back();
    HomogeneousProfile other_beta = p;
    other_beta.beta = 0.9;
    HomogeneousProfile other_grading = p;
    other_grading.boundary_grading = 0.8;
    for (const auto& bad : {shorter, other_beta, other_grading}) {
      try {
        apply(R, bad);
        FAIL("expected GridMismatch");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::GridMismatch);
      }
    }
    CHECK_THROWS_AS(sys.apply(Eigen::VectorXd::Ones(3)), Error);
    CHECK_THROWS_AS(pucci_sandwich_check(p, 0.7, kHalf2, q, frac(0.5), {}), Error);
  }
}
