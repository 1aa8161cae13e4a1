#include "conexp/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "conexp/angular.hpp"
#include "conexp/engine.hpp"
#include "conexp/error.hpp"

namespace conexp {

namespace detail {

void build_panels(double lo, double hi, const std::vector<double>& graded, const std::vector<double>& plain,
                  const PanelOptions& po, std::vector<Panel>& out) {
  out.clear();
  if (!(hi > lo)) return;
  thread_local std::vector<double> knots, extra;
  knots.clear();
  extra.clear();
  const double eps = 1e-12 * (hi - lo);
  knots.push_back(lo);
  knots.push_back(hi);
  for (double g : graded)
    if (g > lo + eps && g < hi - eps) knots.push_back(g);
  for (double p : plain)
    if (p > lo + eps && p < hi - eps) knots.push_back(p);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end(), [&](double a, double b) { return b - a <= eps; }),
              knots.end());

  for (double g : graded) {
    if (!(g > lo + eps && g < hi - eps)) continue;
    auto it = std::lower_bound(knots.begin(), knots.end(), g - eps);
    const std::size_t i = static_cast<std::size_t>(it - knots.begin());
    const double left = i > 0 ? knots[i - 1] : lo;
    const double right = i + 1 < knots.size() ? knots[i + 1] : hi;
    double f = 0.5;
    for (int j = 0; j < po.grade_levels; ++j, f *= po.grade_ratio) {
      extra.push_back(g - (g - left) * f);
      extra.push_back(g + (right - g) * f);
    }
  }
  knots.insert(knots.end(), extra.begin(), extra.end());
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end(), [&](double a, double b) { return b - a <= eps; }),
              knots.end());

  const double lr = std::log(po.max_ratio);
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i], b = knots[i + 1];
    int m = 1;
    bool geometric = false;
    if (a > 0 && b / a > po.max_ratio) {
      m = static_cast<int>(std::ceil(std::log(b / a) / lr));
      geometric = true;
    } else if (b - a > po.max_width) {
      m = static_cast<int>(std::ceil((b - a) / po.max_width));
    }
    double prev = a;
    for (int k = 1; k <= m; ++k) {
      const double next = k == m ? b : (geometric ? a * std::pow(b / a, double(k) / m) : a + (b - a) * k / m);
      out.push_back({prev, next});
      prev = next;
    }
  }
}

}  // namespace detail

namespace {

double two_sum(double a, double b, double& err) {
  const double s = a + b;
  const double bb = s - a;
  err = (a - (s - bb)) + (b - bb);
  return s;
}

void check_beta(double beta, double alpha, int dim) {
  if (!(beta > -2 * alpha && beta < dim))
    throw Error(ErrorCode::BetaOutOfRange, "beta must lie in (-2alpha, N)");
}

void check_cfg(const QuadratureConfig& cfg) {
  const auto v = validate(cfg);
  if (!v.empty()) throw Error(ErrorCode::InvalidConfig, v.front());
}

struct FunctionProfile {
  const std::function<double(double)>* f;
  double operator()(double th) const { return (*f)(th); }
};

struct MonotoneRef {
  const MonotoneProfile* p;
  double operator()(double th) const { return (*p)(th); }
};

template <class Field>
SplitIntegral integrate_op(const Field& field, const Vec3& x, const OperatorSpec& op,
                           const detail::EngineOptions& eo) {
  using detail::DensityWeight;
  using detail::PolicyWeight;
  switch (op.kind) {
    case OperatorKind::FractionalLaplacian:
      return detail::integrate(field, x, PolicyWeight{op.Lambda, op.Lambda}, eo, nullptr);
    case OperatorKind::PucciPlus:
      return detail::integrate(field, x, PolicyWeight{op.Lambda, op.lambda}, eo, nullptr);
    case OperatorKind::PucciMinus:
      return detail::integrate(field, x, PolicyWeight{op.lambda, op.Lambda}, eo, nullptr);
    case OperatorKind::IsaacsFinite: {
      // inf over a of sup over b of whole integrals.
      std::vector<int> as;
      for (const auto& k : op.kernels) as.push_back(k.a);
      std::sort(as.begin(), as.end());
      as.erase(std::unique(as.begin(), as.end()), as.end());
      SplitIntegral best;
      bool have_best = false;
      for (int a : as) {
        SplitIntegral sup;
        bool have_sup = false;
        for (const auto& k : op.kernels) {
          if (k.a != a) continue;
          SplitIntegral v = detail::integrate(field, x, DensityWeight{field.cone.dim, &k}, eo, nullptr);
          if (!have_sup || v.total() > sup.total()) sup = v, have_sup = true;
        }
        if (!have_best || sup.total() < best.total()) best = sup, have_best = true;
      }
      return best;
    }
  }
  return {};
}

}  // namespace

double second_difference(const std::function<double(const Vec3&)>& u, const Vec3& x, const Vec3& y) {
  double e1, e2;
  const double s = two_sum(u(x + y), u(x - y), e1);
  const double t = two_sum(s, -2 * u(x), e2);
  return t + (e1 + e2);
}

QuadratureConfig refined(const QuadratureConfig& cfg, int round) {
  QuadratureConfig c = cfg;
  for (int i = 0; i < round; ++i) {
    c.n_radial *= 2;
    c.n_angular *= 2;
    c.n_azimuthal *= 2;
    c.r_min /= 4;
    c.r_max *= 4;
  }
  return c;
}

SplitIntegral integrate_extremal(const std::function<double(double)>& profile, double beta, const ConeSpec& cone,
                                 const Vec3& x, const OperatorSpec& op, const QuadratureConfig& cfg,
                                 bool use_evenness) {
  check_cfg(cfg);
  check_beta(beta, op.alpha, cone.dimension);
  if (norm(x) == 0) throw Error(ErrorCode::PreconditionViolated, "x must be nonzero");
  ProfileField<FunctionProfile> field{frame_of(cone), RadialLaw{RadialLaw::Mode::Power, beta, 0},
                                      FunctionProfile{&profile}};
  detail::EngineOptions eo;
  eo.cfg = cfg;
  eo.alpha = op.alpha;
  eo.evenness = use_evenness;
  return integrate_op(field, x, op, eo);
}

SplitIntegral integrate_extremal(const HomogeneousProfile& profile, const Vec3& x, const OperatorSpec& op,
                                 const QuadratureConfig& cfg) {
  return integrate_extremal(profile, x, op, cfg, RadialTruncation::None, 0);
}

SplitIntegral integrate_extremal(const HomogeneousProfile& profile, const Vec3& x, const OperatorSpec& op,
                                 const QuadratureConfig& cfg, RadialTruncation truncation, double parameter) {
  check_cfg(cfg);
  if (truncation != RadialTruncation::None && !(parameter > 0))
    throw Error(ErrorCode::PreconditionViolated, "truncation radius must be positive");
  check_beta(profile.beta, op.alpha, profile.cone.dimension);
  if (norm(x) == 0) throw Error(ErrorCode::PreconditionViolated, "x must be nonzero");
  const AngularGrid grid(profile.cone, static_cast<int>(profile.samples.size()), profile.boundary_grading,
                         op.alpha);
  const MonotoneProfile mp(grid, profile.samples);
  const RadialLaw::Mode mode = truncation == RadialTruncation::InnerLinear    ? RadialLaw::Mode::InnerLinear
                               : truncation == RadialTruncation::OuterInverse ? RadialLaw::Mode::OuterInverse
                                                                              : RadialLaw::Mode::Power;
  ProfileField<MonotoneRef> field{frame_of(profile.cone), RadialLaw{mode, profile.beta, parameter},
                                  MonotoneRef{&mp}};
  detail::EngineOptions eo;
  eo.cfg = cfg;
  eo.alpha = op.alpha;
  return integrate_op(field, x, op, eo);
}

namespace {

template <class Eval>
RefinedValue refine_loop(const QuadratureConfig& cfg, int max_rounds, Eval&& eval) {
  RefinedValue r;
  double prev = eval(cfg);
  for (int round = 1; round <= max_rounds; ++round) {
    const double cur = eval(refined(cfg, round));
    r.value = cur;
    r.error_estimate = std::abs(cur - prev);
    r.rounds = round;
    if (r.error_estimate < cfg.tol) return r;
    prev = cur;
  }
  throw Error(ErrorCode::ToleranceNotMet,
              "refinement stalled at difference " + std::to_string(r.error_estimate) + " > tol");
}

}  // namespace

RefinedValue refine_until(const HomogeneousProfile& profile, const Vec3& x, const OperatorSpec& op,
                          const QuadratureConfig& cfg, int max_rounds) {
  return refine_loop(cfg, max_rounds,
                     [&](const QuadratureConfig& c) { return integrate_extremal(profile, x, op, c).total(); });
}

RefinedValue refine_until(const std::function<double(double)>& profile, double beta, const ConeSpec& cone,
                          const Vec3& x, const OperatorSpec& op, const QuadratureConfig& cfg, int max_rounds) {
  return refine_loop(cfg, max_rounds, [&](const QuadratureConfig& c) {
    return integrate_extremal(profile, beta, cone, x, op, c).total();
  });
}

double integrate_ball_difference(const std::function<double(const Vec3&)>& delta, int dim, double alpha, double R,
                                 const QuadratureConfig& cfg) {
  // Radial panels from r_min R to R, directions on the sphere, inner quadratic model.
  constexpr double kPi = std::numbers::pi;
  const double a2 = 2 * alpha;
  const double r_in = cfg.r_min * R;
  std::vector<detail::Panel> rp, ap;
  detail::PanelOptions po;
  detail::build_panels(r_in, R, {}, {}, po, rp);
  detail::PanelOptions pa{0.2, 0, 1e300, kPi / 8};
  const Rule& gr = gauss_legendre(cfg.n_radial);
  const Rule& ga = gauss_legendre(cfg.n_angular);
  double total = 0;
  auto ray = [&](const Vec3& sigma, double wdir) {
    double acc = 0;
    for (const auto& p : rp)
      for (int q = 0; q < cfg.n_radial; ++q) {
        const double s = p.a + (p.b - p.a) * gr.nodes[q];
        acc += (p.b - p.a) * gr.weights[q] * std::pow(s, -1 - a2) * delta(s * sigma);
      }
    acc += std::pow(r_in, -a2) / (2 - a2) * delta(r_in * sigma);
    total += wdir * acc;
  };
  if (dim == 2) {
    detail::build_panels(0, 2 * kPi, {}, {}, pa, ap);
    for (const auto& p : ap)
      for (int q = 0; q < cfg.n_angular; ++q) {
        const double ph = p.a + (p.b - p.a) * ga.nodes[q];
        ray({std::cos(ph), std::sin(ph), 0}, (p.b - p.a) * ga.weights[q]);
      }
  } else {
    detail::build_panels(0, kPi, {}, {}, pa, ap);
    for (const auto& p : ap)
      for (int q = 0; q < cfg.n_angular; ++q) {
        const double th = p.a + (p.b - p.a) * ga.nodes[q];
        for (int k = 0; k < cfg.n_azimuthal; ++k) {
          const double ph = 2 * kPi * k / cfg.n_azimuthal;
          ray({std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)},
              (p.b - p.a) * ga.weights[q] * std::sin(th) * 2 * kPi / cfg.n_azimuthal);
        }
      }
  }
  return total;
}

}  // namespace conexp
