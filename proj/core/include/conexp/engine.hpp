#pragma once

// Quadrature engine shared by all operator evaluations.
//
// y-space is split into
//   core : r_in <= |y| <= r_out minus B_eta(x), polar coordinates around y = 0 on a
//          hemisphere of directions (doubled by evenness of the integrand);
//   balls: B_eta(-x) in polar coordinates centred at the singular point, with the
//          innermost shell integrated against rho^(N-1-beta) by a Gauss-Jacobi rule;
//          B_eta(x) follows by evenness;
//   inner: |y| < r_in, second order model delta(r s) ~ (r / r_in)^2 delta(r_in s);
//   tail : |y| > r_out, leading far-field law of u integrated in closed form.
// Radial and angular panels are graded toward cone crossings and radial breaks.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "conexp/field.hpp"
#include "conexp/gauss.hpp"
#include "conexp/quadrature.hpp"

namespace conexp::detail {

struct Panel {
  double a, b;
};

struct PanelOptions {
  double grade_ratio = 0.2;
  int grade_levels = 6;
  double max_ratio = 3.0;
  double max_width = std::numeric_limits<double>::infinity();
};

// Panels covering [lo, hi] with knots at every break, geometric refinement toward
// graded breaks and ratio / width limits on every panel.
void build_panels(double lo, double hi, const std::vector<double>& graded, const std::vector<double>& plain,
                  const PanelOptions& po, std::vector<Panel>& out);

struct EngineOptions {
  QuadratureConfig cfg;
  double alpha = 0.5;
  bool evenness = true;
  // Integrand depends on y only through the angle to x (radial field, isotropic
  // kernel): collapse the azimuthal rule in N = 3.
  bool axisymmetric = false;
  PanelOptions radial_panels{};
  PanelOptions angular_panels{0.2, 6, 1e300, std::numbers::pi / 8};
};

// Coefficient selecting S+-, a fixed multiple, or an angular kernel density.
struct PolicyWeight {
  double pos = 1, neg = 1;
  double operator()(double delta, const Vec3&) const { return delta > 0 ? pos : neg; }
  double max() const { return std::max(pos, neg); }
};

struct DensityWeight {
  int dim = 2;
  const AngularKernel* kernel = nullptr;
  double operator()(double, const Vec3& y) const { return (*kernel)(polar_angle(dim, y)); }
  double max() const { return *std::max_element(kernel->density.begin(), kernel->density.end()); }
};

template <class Field, class Weight>
SplitIntegral integrate(const Field& u, const Vec3& x, const Weight& kern, const EngineOptions& opt, double* row) {
  using Form = typename Field::Form;
  constexpr double kPi = std::numbers::pi;
  const auto& cfg = opt.cfg;
  const int N = u.cone.dim;
  const double a2 = 2 * opt.alpha;
  const bool full = u.cone.full;
  const double theta0 = u.cone.theta0;

  SplitIntegral out;
  const double rx = norm(x);
  const Vec3 xh = x * (1 / rx);

  Form ux;
  Field::reset(ux);
  u.add_at(x, 1.0, ux);
  const double u0 = u.value(ux);

  double rb[2];
  const int nrb = u.radial.breaks(rb);

  // Radius of a ball around x on which u is smooth.
  double smooth = std::numeric_limits<double>::infinity();
  if (!full) {
    const double gap = std::abs(theta0 - polar_angle(N, x));
    smooth = rx * std::sin(std::min(gap, kPi / 2));
  }
  for (int i = 0; i < nrb; ++i) smooth = std::min(smooth, std::abs(rx - rb[i]));
  const double r_in = std::min(cfg.r_min * rx, 0.05 * smooth);
  const double eta = cfg.eta * rx;
  double r_out = cfg.r_max * rx;
  for (int i = 0; i < nrb; ++i) r_out = std::max(r_out, 50 * rb[i]);

  // Orthonormal frame: e1 = x/|x|, e2 in the meridian plane.
  const Vec3 axis = cone_axis(N);
  Vec3 e2 = axis - dot(axis, xh) * xh;
  if (norm(e2) < 1e-12) {
    const Vec3 ex{1, 0, 0};
    e2 = ex - dot(ex, xh) * xh;
  }
  e2 = normalized(e2);
  const Vec3 e3 = cross(xh, e2);

  const Rule& gl_r = gauss_legendre(cfg.n_radial);
  const Rule& gl_a = gauss_legendre(cfg.n_angular);

  thread_local std::vector<Panel> apanels, rpanels;
  thread_local std::vector<double> graded, plain;

  Form d;
  auto delta_at = [&](const Vec3& y, Form& f) {
    Field::reset(f);
    u.add_at(x + y, 1.0, f);
    u.add_at(x - y, 1.0, f);
    Field::add(f, ux, -2.0);
    return u.value(f);
  };

  double* const rrow = row;

  // ---------------- core, inner model and tail ----------------
  const double theta_t = std::asin(std::min(1.0, eta / rx));
  const double th_hi = opt.evenness ? kPi / 2 : kPi;
  const double dir_factor = opt.evenness ? 2.0 : 1.0;
  graded.clear();
  plain.clear();
  graded.push_back(theta_t);
  if (!opt.evenness) graded.push_back(kPi - theta_t);
  if (N == 2 && !full) {
    const Vec3 b1{std::sin(theta0), std::cos(theta0), 0}, b2{-std::sin(theta0), std::cos(theta0), 0};
    for (const Vec3& b : {b1, b2, -b1, -b2}) {
      const double ang = std::acos(std::clamp(dot(b, xh), -1.0, 1.0));
      if (ang > 0 && ang < th_hi) graded.push_back(ang);
    }
  }
  build_panels(0, th_hi, graded, plain, opt.angular_panels, apanels);

  const int n_chi = N == 2 ? 2 : (opt.axisymmetric ? 1 : cfg.n_azimuthal);
  const double tail_e = u.radial.far_exponent();
  const double tail_amp = u.radial.far_amplitude();

  Form fp, fm;
  for (const Panel& ap : apanels) {
    const double aw = ap.b - ap.a;
    for (int qa = 0; qa < cfg.n_angular; ++qa) {
      const double th = ap.a + aw * gl_a.nodes[qa];
      const double ct = std::cos(th), st = std::sin(th);
      for (int k = 0; k < n_chi; ++k) {
        Vec3 sigma;
        double wdir = aw * gl_a.weights[qa] * dir_factor;
        if (N == 2) {
          sigma = ct * xh + (k == 0 ? st : -st) * e2;
        } else {
          const double chi = 2 * kPi * k / n_chi;
          sigma = ct * xh + st * (std::cos(chi) * e2 + std::sin(chi) * e3);
          wdir *= st * 2 * kPi / n_chi;
        }

        // Radial segments along the ray.
        double seg[2][2];
        int nseg = 0;
        graded.clear();
        plain.clear();
        plain.push_back(rx);
        const double cpos = rx * std::abs(ct);
        if (th < theta_t || th > kPi - theta_t) {
          const double h = std::sqrt(std::max(0.0, eta * eta - rx * rx * st * st));
          seg[0][0] = r_in, seg[0][1] = cpos - h;
          seg[1][0] = cpos + h, seg[1][1] = r_out;
          nseg = 2;
        } else {
          seg[0][0] = r_in, seg[0][1] = r_out;
          nseg = 1;
          if (cpos > r_in) graded.push_back(cpos);
        }
        double t[2];
        for (double sg : {1.0, -1.0}) {
          if (!full) {
            const int m = cone_crossings(N, theta0, x, sigma * sg, t);
            for (int i = 0; i < m; ++i)
              if (t[i] > 0) graded.push_back(t[i]);
          }
          for (int i = 0; i < nrb; ++i) {
            const int m = sphere_crossings(x, sigma * sg, rb[i], t);
            for (int j = 0; j < m; ++j)
              if (t[j] > 0) graded.push_back(t[j]);
          }
        }
        for (int sgi = 0; sgi < nseg; ++sgi) {
          if (seg[sgi][1] <= seg[sgi][0]) continue;
          build_panels(seg[sgi][0], seg[sgi][1], graded, plain, opt.radial_panels, rpanels);
          for (const Panel& rp : rpanels) {
            const double rw = rp.b - rp.a;
            for (int q = 0; q < cfg.n_radial; ++q) {
              const double s = rp.a + rw * gl_r.nodes[q];
              const double w = wdir * rw * gl_r.weights[q] * std::pow(s, -1 - a2);
              const Vec3 y = s * sigma;
              const double dv = delta_at(y, d);
              const double kw = kern(dv, y) * w;
              out.core += kw * dv;
              u.scatter(d, kw, rrow);
            }
            out.points += cfg.n_radial;
          }
        }

        // Inner model on |y| < r_in.
        {
          const Vec3 y = r_in * sigma;
          const double dv = delta_at(y, d);
          const double coef = wdir * std::pow(r_in, -a2) / (2 - a2);
          const double kw = kern(dv, y) * coef;
          out.inner_correction += kw * dv;
          u.scatter(d, kw, rrow);
          Form dh;
          const double dv2 = delta_at(0.5 * y, dh);
          out.inner_bound += kern.max() * coef * std::abs(dv - 4 * dv2);
        }

        // Far field: delta ~ c s^-e - 2u(x) with c = A (f(sigma) + f(-sigma)).
        {
          Field::reset(fp);
          u.add_angular(sigma, tail_amp, fp);
          u.add_angular(-sigma, tail_amp, fp);
          const double c = u.value(fp);
          const double dd = 2 * u0;
          const double R = r_out;
          // I1 = int s^(-e-1-a2), I2 = int s^(-1-a2) over [lo, hi].
          auto I1 = [&](double lo, double hi) {
            const double p = tail_e + a2;
            return (std::pow(lo, -p) - (std::isinf(hi) ? 0.0 : std::pow(hi, -p))) / p;
          };
          auto I2 = [&](double lo, double hi) {
            return (std::pow(lo, -a2) - (std::isinf(hi) ? 0.0 : std::pow(hi, -a2))) / a2;
          };
          const double inf = std::numeric_limits<double>::infinity();
          double lo[2], hi[2], sgn[2];
          int nr = 1;
          auto dval = [&](double s) { return c * std::pow(s, -tail_e) - dd; };
          double s_star = -1;
          if (c > 0 && dd > 0 && tail_e != 0) s_star = std::pow(c / dd, 1 / tail_e);
          lo[0] = R, hi[0] = inf, sgn[0] = dval(R);
          if (sgn[0] == 0) sgn[0] = dval(2 * R);
          if (s_star > R) {
            hi[0] = s_star;
            lo[1] = s_star, hi[1] = inf, sgn[1] = -sgn[0];
            nr = 2;
          }
          double cc = 0, cd = 0;
          for (int r = 0; r < nr; ++r) {
            const double kf = kern(sgn[r], sigma);
            cc += kf * I1(lo[r], hi[r]);
            cd += kf * I2(lo[r], hi[r]);
          }
          out.tail += wdir * (cc * c - cd * dd);
          u.scatter(fp, wdir * cc, rrow);
          u.scatter(ux, -2 * wdir * cd, rrow);
          out.outer_bound += wdir * kern.max() * std::abs(c) * I1(R, inf) * std::pow(rx / R, std::min(1.0, opt.alpha));
        }
      }
    }
  }

  // ---------------- ball around the singular point -x ----------------
  {
    double rho_in = eta / 729;
    for (int i = 0; i < nrb; ++i) rho_in = std::min(rho_in, 0.3 * rb[i]);
    const double e0 = u.radial.near_exponent();
    const double a0 = u.radial.near_amplitude();
    const double gam = N - 1 - e0;
    const Rule jac = gauss_jacobi_left(cfg.n_radial, gam);
    const double jac_scale = std::pow(rho_in, gam + 1);
    // The ball around +x mirrors the ball around -x since delta is even in y.
    const double ball_factor = 2.0;

    // Directions tau on the full sphere.
    graded.clear();
    plain.clear();
    const bool pole_x = N == 3 && opt.axisymmetric;
    const double tau_lo = N == 2 ? -kPi : 0.0;
    if (!full) {
      graded.push_back(theta0);
      if (N == 2) graded.push_back(-theta0);
    }
    PanelOptions tau_opt = opt.angular_panels;
    tau_opt.max_width = kPi / 6;
    std::vector<Panel> tpanels;
    build_panels(tau_lo, kPi, graded, plain, tau_opt, tpanels);
    const int n_psi = N == 2 ? 1 : (pole_x ? 1 : cfg.n_azimuthal);

    double near = 0;
    for (const Panel& tp : tpanels) {
      const double tw = tp.b - tp.a;
      for (int qa = 0; qa < cfg.n_angular; ++qa) {
        const double ph = tp.a + tw * gl_a.nodes[qa];
        for (int k = 0; k < n_psi; ++k) {
          Vec3 tau;
          double wt = tw * gl_a.weights[qa];
          if (N == 2) {
            tau = Vec3{std::sin(ph), std::cos(ph), 0};
          } else if (pole_x) {
            tau = std::cos(ph) * xh + std::sin(ph) * e2;
            wt *= 2 * kPi * std::sin(ph);
          } else {
            const double psi = 2 * kPi * k / n_psi;
            tau = Vec3{std::sin(ph) * std::cos(psi), std::sin(ph) * std::sin(psi), std::cos(ph)};
            wt *= std::sin(ph) * 2 * kPi / n_psi;
          }
          wt *= ball_factor;

          graded.clear();
          plain.clear();
          const Vec3 p2 = 2.0 * x;
          double t[2];
          if (!full) {
            const int m = cone_crossings(N, theta0, p2, -tau, t);
            for (int i = 0; i < m; ++i) graded.push_back(t[i]);
          }
          for (int i = 0; i < nrb; ++i) {
            graded.push_back(rb[i]);
            const int m = sphere_crossings(p2, -tau, rb[i], t);
            for (int j = 0; j < m; ++j) graded.push_back(t[j]);
          }
          build_panels(rho_in, eta, graded, plain, opt.radial_panels, rpanels);
          for (const Panel& rp : rpanels) {
            const double rw = rp.b - rp.a;
            for (int q = 0; q < cfg.n_radial; ++q) {
              const double rho = rp.a + rw * gl_r.nodes[q];
              const Vec3 y = rho * tau - x;
              const double w = wt * rw * gl_r.weights[q] * std::pow(rho, N - 1) * std::pow(norm(y), -N - a2);
              const double dv = delta_at(y, d);
              const double kw = kern(dv, y) * w;
              near += kw * dv;
              u.scatter(d, kw, rrow);
            }
            out.points += cfg.n_radial;
          }

          // Innermost shell [0, rho_in]: u(rho tau) = a0 f(tau) rho^-e0 exactly.
          const double dv_rep = delta_at(0.5 * rho_in * tau - x, d);
          Field::reset(fp);
          u.add_angular(tau, a0, fp);
          double cs = 0;
          for (int q = 0; q < cfg.n_radial; ++q) {
            const Vec3 y = (rho_in * jac.nodes[q]) * tau - x;
            cs += jac.weights[q] * kern(dv_rep, y) * std::pow(norm(y), -N - a2);
          }
          cs *= wt * jac_scale;
          near += cs * u.value(fp);
          u.scatter(fp, cs, rrow);
          for (int q = 0; q < cfg.n_radial; ++q) {
            const double rho = rho_in * gl_r.nodes[q];
            const Vec3 y = rho * tau - x;
            Field::reset(fm);
            u.add_at(x - y, 1.0, fm);
            Field::add(fm, ux, -2.0);
            const double w = wt * rho_in * gl_r.weights[q] * std::pow(rho, N - 1) * kern(dv_rep, y) *
                             std::pow(norm(y), -N - a2);
            near += w * u.value(fm);
            u.scatter(fm, w, rrow);
          }
          out.points += 2 * cfg.n_radial;
        }
      }
    }
    out.near_pm_x = {0.5 * near, 0.5 * near};
  }
  return out;
}

}  // namespace conexp::detail
