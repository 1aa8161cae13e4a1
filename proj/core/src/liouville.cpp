#include "conexp/liouville.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "conexp/angular.hpp"
#include "conexp/error.hpp"
#include "conexp/operator_eval.hpp"
#include "conexp/parallel.hpp"
#include "conexp/quadrature.hpp"

namespace conexp {

double TruncatedBarrier::value(const Vec3& x, double alpha) const {
  const ConeSpec c = canonicalize(base.cone);
  const int dim = c.dimension;
  const double th = polar_angle(dim, x);
  const double f = base.value(th, alpha);
  if (f == 0) return 0;
  const double r = norm(x);
  const double b = base.beta;
  if (mode == Mode::InnerLinear) return f * (r >= parameter ? std::pow(r, -b) : r * std::pow(parameter, -b - 1));
  return f * (r <= parameter ? std::pow(r, -b) : std::pow(parameter, 1 - b) / r);
}

double liouville_threshold(double beta, double alpha) {
  if (beta == 0) throw Error(ErrorCode::BetaZero, "threshold undefined at beta = 0");
  if (!(beta > -2 * alpha)) throw Error(ErrorCode::BetaOutOfRange, "beta must exceed -2alpha");
  return (beta + 2 * alpha) / beta;
}

std::vector<double> gamma_iteration(double p, double alpha, int k) {
  if (!(p > 0)) throw Error(ErrorCode::PreconditionViolated, "gamma iteration needs p > 0");
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(std::max(k, 0)) + 1);
  g.push_back(2 * alpha / p);
  for (int i = 1; i <= k; ++i) g.push_back((2 * alpha + g.back()) / p);
  return g;
}

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Eigenprofile at the critical exponent, recomputed when the exponent came from the cache.
Eigen::VectorXd critical_profile(const ConeSpec& cone, const OperatorSpec& op, double beta_c,
                                 const Eigen::VectorXd& given, const QuadratureConfig& cfg, const GridSpec& grid) {
  const ReducedSystem sys({op, cone, beta_c, cfg, grid});
  if (given.size() == sys.size()) return given;
  return principal_eigenpair(sys).f;
}

HomogeneousProfile profile_for(const ConeSpec& cone, const OperatorSpec& op, double beta, const Eigen::VectorXd& f,
                               const QuadratureConfig& cfg, const GridSpec& grid) {
  HomogeneousProfile p = make_profile({op, cone, beta, cfg, grid}, f);
  p.beta = beta;
  return p;
}

std::vector<Vec3> sample_points(const ConeSpec& cone, const GridSpec& grid, double alpha,
                                const std::vector<double>& radii, double fraction) {
  const AngularGrid g(cone, grid.nodes, grid.grading, alpha);
  const double limit = fraction * g.half_angle();
  std::vector<Vec3> pts;
  for (double r : radii)
    for (double th : g.nodes())
      if (th <= limit) pts.push_back(r * meridian_direction(cone.dimension, th));
  return pts;
}

void evaluate(BarrierCheck& out, const HomogeneousProfile& prof, RadialTruncation tr, double param,
              const std::vector<Vec3>& pts, const OperatorSpec& op, const QuadratureConfig& cfg,
              const std::function<double(const Vec3&)>& scale, int threads) {
  out.samples.assign(pts.size(), {});
  parallel_for(static_cast<int>(pts.size()), threads, [&](int i) {
    const double v = integrate_extremal(prof, pts[i], op, cfg, tr, param).total();
    out.samples[i] = {pts[i], v, v * scale(pts[i])};
  });
  out.observed = std::numeric_limits<double>::infinity();
  for (const auto& s : out.samples) out.observed = std::min(out.observed, s.scaled);
  out.pass = out.observed > 0;
  out.parameter = param;
}

}  // namespace

BarrierCheck barrier_subsolution_check(const ConeSpec& cone_in, const OperatorSpec& op, double beta,
                                       const CriticalExponents& ex, const QuadratureConfig& cfg,
                                       const GridSpec& grid, const BarrierOptions& options) {
  const ConeSpec cone = canonicalize(cone_in);
  const int N = cone.dimension;
  const double bp = ex.beta_plus.value;
  if (!(beta > bp + options.margin && beta < N))
    throw Error(ErrorCode::PreconditionViolated,
                "subsolution barrier needs beta in (beta+ + " + num(options.margin) + ", N); beta+ = " + num(bp));
  const Eigen::VectorXd f = critical_profile(cone, op, bp, ex.f_plus, cfg, grid);
  const HomogeneousProfile prof = profile_for(cone, op, beta, f, cfg, grid);
  const std::vector<double> radii = options.radii.empty() ? std::vector<double>{1, 1.5, 2, 3, 5} : options.radii;
  const auto pts = sample_points(cone, grid, op.alpha, radii, options.inner_fraction);
  const auto scale = [&](const Vec3& x) { return std::pow(norm(x), beta + 2 * op.alpha); };
  BarrierCheck out;
  for (double eps = options.eps;; eps *= options.eps_shrink) {
    evaluate(out, prof, RadialTruncation::InnerLinear, eps, pts, op, cfg, scale, options.threads);
    out.notes.push_back("eps = " + num(eps) + ": min = " + num(out.observed));
    if (out.pass || eps * options.eps_shrink < options.eps_floor) break;
  }
  return out;
}

BarrierCheck barrier_supersolution_check(const ConeSpec& cone_in, const OperatorSpec& op, double beta,
                                         const CriticalExponents& ex, const QuadratureConfig& cfg,
                                         const GridSpec& grid, const BarrierOptions& options) {
  const ConeSpec cone = canonicalize(cone_in);
  if (!ex.beta_minus) throw Error(ErrorCode::MissingExponents, "beta- is absent for this cone and operator");
  const double bm = ex.beta_minus->value;
  if (!(beta < bm - options.margin && beta > -2 * op.alpha))
    throw Error(ErrorCode::PreconditionViolated,
                "supersolution barrier needs beta in (-2alpha, beta- - " + num(options.margin) + "); beta- = " + num(bm));
  const std::vector<double> radii =
      options.radii.empty() ? std::vector<double>{0.2, 0.4, 0.6, 0.8, 1.0} : options.radii;
  const double sigma = *std::max_element(radii.begin(), radii.end());
  if (!(options.R >= 2 * sigma)) throw Error(ErrorCode::PreconditionViolated, "needs R >= 2 sigma");
  const Eigen::VectorXd f = critical_profile(cone, op, bm, ex.f_minus, cfg, grid);
  const HomogeneousProfile prof = profile_for(cone, op, beta, f, cfg, grid);
  const auto pts = sample_points(cone, grid, op.alpha, radii, options.inner_fraction);
  const double R = options.R;
  const double s = std::pow(R, beta + 2 * op.alpha);
  BarrierCheck out;
  evaluate(out, prof, RadialTruncation::OuterInverse, R, pts, op, cfg, [&](const Vec3&) { return s; },
           options.threads);
  out.notes.push_back("R = " + num(R) + ": min = " + num(out.observed));
  return out;
}

Interval hopf_window(double beta_minus, double alpha) { return {-2 * alpha, beta_minus}; }

std::string to_string(LiouvilleVerdict v) {
  switch (v) {
    case LiouvilleVerdict::NoPositiveSupersolution: return "NoPositiveSupersolution";
    case LiouvilleVerdict::Inconclusive: return "Inconclusive";
    case LiouvilleVerdict::UnboundedSupersolutionsOnly: return "UnboundedSupersolutionsOnly";
  }
  return "?";
}

LiouvilleVerdict liouville_verdict(double p, const ConeSpec& cone_in, const OperatorSpec& op,
                                   const QuadratureConfig& cfg, const VerdictContext& ctx) {
  if (!ctx.exponents) throw Error(ErrorCode::MissingExponents, "critical exponents were not computed");
  const ConeSpec cone = canonicalize(cone_in);
  const int N = cone.dimension;
  double nt = ctx.n_tilde_plus;
  if (!std::isfinite(nt)) {
    if (op.kind == OperatorKind::FractionalLaplacian)
      nt = N;
    else
      nt = dimension_like({OperatorKind::PucciPlus, op.lambda, op.Lambda, op.alpha, {}}, N, cfg).plus.value;
  }
  const double a2 = 2 * op.alpha;
  if (p > 0) {
    if (nt > a2 && p <= liouville_threshold(ctx.exponents->beta_plus.value, op.alpha))
      return LiouvilleVerdict::NoPositiveSupersolution;
    return LiouvilleVerdict::Inconclusive;
  }
  // Nonpositive powers: stated for M- (the fractional Laplacian is M- with lambda = Lambda).
  const bool minus_like = op.kind == OperatorKind::PucciMinus || op.kind == OperatorKind::FractionalLaplacian;
  const bool hypotheses = nt < a2 || cone_half_angle(cone) <= std::numbers::pi / 2 + 1e-12;
  if (!minus_like || !hypotheses || !ctx.exponents->beta_minus) return LiouvilleVerdict::Inconclusive;
  const double pm = liouville_threshold(ctx.exponents->beta_minus->value, op.alpha);
  if (p >= pm) return LiouvilleVerdict::NoPositiveSupersolution;
  return LiouvilleVerdict::UnboundedSupersolutionsOnly;
}

}  // namespace conexp
