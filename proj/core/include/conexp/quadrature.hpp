#pragma once

// Singular integrals  int Phi(delta(u, x, y)) K(y) dy  for functions supported in cones.

#include <functional>
#include <utility>

#include "conexp/geometry.hpp"
#include "conexp/model.hpp"

namespace conexp {

struct SplitIntegral {
  double core = 0;                        // r_min <= |y| <= r_max outside the balls B_eta(+-x)
  std::pair<double, double> near_pm_x{};  // balls around -x and +x
  double inner_correction = 0;            // |y| < r_min, second order Taylor model
  double tail = 0;                        // |y| > r_max, leading far-field law
  double inner_bound = 0;
  double outer_bound = 0;
  long points = 0;

  double total() const { return core + near_pm_x.first + near_pm_x.second + inner_correction + tail; }
  double uncertainty() const { return inner_bound + outer_bound; }
};

// u(x+y) + u(x-y) - 2u(x) with compensated summation.
double second_difference(const std::function<double(const Vec3&)>& u, const Vec3& x, const Vec3& y);

// Split integral of the operator applied to the profile at x.
SplitIntegral integrate_extremal(const HomogeneousProfile& profile, const Vec3& x, const OperatorSpec& op,
                                 const QuadratureConfig& cfg);

// Radial factor replacing |x|^-beta: inside |x| < parameter by the linear
// continuation (InnerLinear) or outside |x| > parameter by R^(1-beta)/|x| (OuterInverse).
enum class RadialTruncation { None, InnerLinear, OuterInverse };

SplitIntegral integrate_extremal(const HomogeneousProfile& profile, const Vec3& x, const OperatorSpec& op,
                                 const QuadratureConfig& cfg, RadialTruncation truncation, double parameter);

// Same with the angular profile supplied as a function of the polar angle.
SplitIntegral integrate_extremal(const std::function<double(double)>& profile, double beta, const ConeSpec& cone,
                                 const Vec3& x, const OperatorSpec& op, const QuadratureConfig& cfg,
                                 bool use_evenness = true);

struct RefinedValue {
  double value = 0;
  double error_estimate = 0;
  int rounds = 0;
};

// Doubles the per-panel orders, shrinks r_min and grows r_max until two successive
// totals agree within cfg.tol. Throws ToleranceNotMet after max_rounds.
RefinedValue refine_until(const HomogeneousProfile& profile, const Vec3& x, const OperatorSpec& op,
                          const QuadratureConfig& cfg, int max_rounds = 4);
RefinedValue refine_until(const std::function<double(double)>& profile, double beta, const ConeSpec& cone,
                          const Vec3& x, const OperatorSpec& op, const QuadratureConfig& cfg, int max_rounds = 4);

// int_{|y| <= R} Phi(delta(y)) |y|^(-N-2alpha) dy for a second difference delta
// with delta(y) = O(|y|^2) at the origin, using the engine's radial treatment.
double integrate_ball_difference(const std::function<double(const Vec3&)>& delta, int dim, double alpha, double R,
                                 const QuadratureConfig& cfg);

QuadratureConfig refined(const QuadratureConfig& cfg, int round);

}  // namespace conexp
