#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conexp/exponents.hpp"
#include "conexp/geometry.hpp"
#include "conexp/model.hpp"

namespace conexp {

// Homogeneous profile with its radial power cut off near the vertex
// (InnerLinear, radius eps) or at infinity (OuterInverse, radius R).
struct TruncatedBarrier {
  enum class Mode { InnerLinear, OuterInverse };
  HomogeneousProfile base;
  Mode mode = Mode::InnerLinear;
  double parameter = 0;

  double value(const Vec3& x, double alpha) const;
};

// (beta + 2 alpha) / beta.
double liouville_threshold(double beta, double alpha);

// gamma_0 = 2 alpha / p, gamma_i = (2 alpha + gamma_{i-1}) / p, i = 1..k.
std::vector<double> gamma_iteration(double p, double alpha, int k);

struct BarrierSample {
  Vec3 x;
  double value = 0;   // F(barrier)(x)
  double scaled = 0;  // value times the normalizing power
};

struct BarrierCheck {
  double observed = 0;  // min of the scaled values
  bool pass = false;
  double parameter = 0;  // eps or R actually used
  std::vector<BarrierSample> samples;
  std::vector<std::string> notes;
};

struct BarrierOptions {
  std::vector<double> radii;  // empty: 1, 1.5, 2, 3, 5 (sub) or 0.2, 0.4, 0.6, 0.8, 1 (super)
  double inner_fraction = 0.6;  // sample nodes with theta <= fraction * theta0
  double eps = 1e-2;
  double eps_floor = 1e-12;
  double eps_shrink = 1e-2;
  double R = 100;
  double margin = 0.05;  // required distance from the critical exponent
  int threads = 0;
};

// F(w) |x|^(beta+2alpha) at |x| >= 1 for the inner-truncated barrier built on the
// beta+ eigenprofile. eps is shrunk (by eps_shrink, down to eps_floor) until the
// check passes.
BarrierCheck barrier_subsolution_check(const ConeSpec& cone, const OperatorSpec& op, double beta,
                                       const CriticalExponents& exponents, const QuadratureConfig& cfg,
                                       const GridSpec& grid, const BarrierOptions& options = {});

// F(W) R^(beta+2alpha) at |x| <= 1 for the outer-truncated barrier built on the
// beta- eigenprofile.
BarrierCheck barrier_supersolution_check(const ConeSpec& cone, const OperatorSpec& op, double beta,
                                         const CriticalExponents& exponents, const QuadratureConfig& cfg,
                                         const GridSpec& grid, const BarrierOptions& options = {});

struct Interval {
  double lo = 0, hi = 0;  // open
  bool empty() const { return !(lo < hi); }
};

// Exponents (-2 alpha, beta-) for the lower growth estimate of supersolutions.
Interval hopf_window(double beta_minus, double alpha);

enum class LiouvilleVerdict { NoPositiveSupersolution, Inconclusive, UnboundedSupersolutionsOnly };

std::string to_string(LiouvilleVerdict v);

struct VerdictContext {
  std::optional<CriticalExponents> exponents;
  // Dimension-like number of M+ for the ellipticity of op; NaN computes it
  // (N for the fractional Laplacian).
  double n_tilde_plus = std::numeric_limits<double>::quiet_NaN();
};

LiouvilleVerdict liouville_verdict(double p, const ConeSpec& cone, const OperatorSpec& op,
                                   const QuadratureConfig& cfg, const VerdictContext& context);

}  // namespace conexp
