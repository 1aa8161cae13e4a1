#include "conexp/angular.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "conexp/error.hpp"

namespace conexp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxGradingPower = 3.0;

struct Combo {
  std::map<int, double> c;
  void add(const Combo& o, double s) {
    for (auto [j, v] : o.c) c[j] += s * v;
  }
};

}  // namespace

AngularGrid::AngularGrid(const ConeSpec& cone, int nodes, double grading, double alpha)
    : dim_(cone.dimension),
      full_(is_full_space(cone)),
      theta0_(cone_half_angle(cone)),
      alpha_(alpha),
      grading_(grading > 0 ? grading : alpha) {
  if (dim_ != 2 && dim_ != 3)
    throw Error(ErrorCode::PreconditionViolated, "angular grids need N = 2 or N = 3");
  if (nodes < 3) throw Error(ErrorCode::GridMismatch, "angular grid needs at least 3 nodes");
  if (full_) {
    for (int i = 0; i < nodes; ++i) nodes_.push_back(kPi * i / (nodes - 1));
    knots_ = nodes_;
  } else {
    const double q = std::clamp(1.0 / grading_, 1.0, kMaxGradingPower);
    for (int i = 0; i <= nodes; ++i) {
      const double t = static_cast<double>(i) / nodes;
      knots_.push_back(theta0_ * (1 - std::pow(1 - t, q)));
    }
    knots_.back() = theta0_;
    nodes_.assign(knots_.begin(), knots_.end() - 1);
  }
}

double AngularGrid::weight(double theta) const {
  if (full_) return 1.0;
  if (theta >= theta0_) return 0.0;
  return std::pow(std::cos(0.5 * kPi * theta / theta0_), alpha_);
}

int AngularGrid::cell(double theta) const {
  const int last = static_cast<int>(knots_.size()) - 2;
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), theta);
  const int i = static_cast<int>(it - knots_.begin()) - 1;
  return std::clamp(i, 0, last);
}

AngularBasis::AngularBasis(const AngularGrid& grid) : grid_(grid) {
  const auto& th = grid.knots();
  const int nk = static_cast<int>(th.size());
  const int nu = grid.size();
  const bool full = grid.full_space();

  // Virtual knot values of g as combinations of unknown g's, and their positions.
  auto gval = [&](int k) {
    Combo v;
    if (k < 0) k = -k;
    if (full && k > nu - 1) k = 2 * (nu - 1) - k;
    if (k < nu) {
      v.c[k] = 1;
    } else {  // boundary knot: linear extrapolation
      const double r = (th[nu] - th[nu - 1]) / (th[nu - 1] - th[nu - 2]);
      v.c[nu - 1] = 1 + r;
      v.c[nu - 2] = -r;
    }
    return v;
  };
  auto pos = [&](int k) {
    if (k < 0) return -th[-k];
    if (k > nk - 1) return 2 * th[nk - 1] - th[2 * (nk - 1) - k];
    return th[k];
  };
  auto slope = [&](int k) {
    Combo m;
    if (!full && k == nk - 1) {
      // One-sided slope at the boundary knot, consistent with the extrapolation.
      const double h = th[nu - 1] - th[nu - 2];
      m.c[nu - 1] = 1 / h;
      m.c[nu - 2] = -1 / h;
      return m;
    }
    const double hl = pos(k) - pos(k - 1), hr = pos(k + 1) - pos(k);
    const Combo gl = gval(k - 1), g0 = gval(k), gr = gval(k + 1);
    // m = (hr * dl + hl * dr) / (hl + hr)
    const double s = 1 / (hl + hr);
    m.add(g0, s * (hr / hl - hl / hr));
    m.add(gl, -s * hr / hl);
    m.add(gr, s * hl / hr);
    return m;
  };

  cells_.resize(nk - 1);
  for (int c = 0; c + 1 < nk; ++c) {
    const double H = th[c + 1] - th[c];
    // Hermite basis in t: h00 = 1 - 3t^2 + 2t^3, h10 = t - 2t^2 + t^3,
    // h01 = 3t^2 - 2t^3, h11 = -t^2 + t^3.
    const std::array<double, 4> h00{1, 0, -3, 2}, h10{0, 1, -2, 1}, h01{0, 0, 3, -2}, h11{0, 0, -1, 1};
    std::map<int, std::array<double, 4>> acc;
    auto add = [&](const Combo& v, const std::array<double, 4>& poly, double s) {
      for (auto [j, w] : v.c)
        for (int d = 0; d < 4; ++d) acc[j][d] += s * w * poly[d];
    };
    add(gval(c), h00, 1);
    add(gval(c + 1), h01, 1);
    add(slope(c), h10, H);
    add(slope(c + 1), h11, H);
    for (auto& [j, p] : acc)
      if (std::abs(p[0]) + std::abs(p[1]) + std::abs(p[2]) + std::abs(p[3]) > 0) cells_[c].push_back({j, p});
  }
  inv_node_weight_.resize(nu);
  for (int j = 0; j < nu; ++j) inv_node_weight_[j] = 1 / grid.weight(grid.nodes()[j]);
}

void AngularBasis::append(double theta, double scale, SparseForm& out) const {
  if (!grid_.inside(theta)) return;
  const auto& th = grid_.knots();
  const int c = grid_.cell(theta);
  const double t = (theta - th[c]) / (th[c + 1] - th[c]);
  const double s = scale * grid_.weight(theta);
  for (const auto& term : cells_[c]) {
    const double v = term.p[0] + t * (term.p[1] + t * (term.p[2] + t * term.p[3]));
    out.push(term.j, s * v * inv_node_weight_[term.j]);
  }
}

double AngularBasis::value(double theta, std::span<const double> f) const {
  SparseForm form;
  append(theta, 1.0, form);
  return form.dot(f.data());
}

MonotoneProfile::MonotoneProfile(const AngularGrid& grid, std::span<const double> f) : grid_(grid) {
  const auto& th = grid_.knots();
  const int nk = static_cast<int>(th.size());
  const int nu = grid_.size();
  if (static_cast<int>(f.size()) != nu) throw Error(ErrorCode::GridMismatch, "profile size does not match grid");
  g_.resize(nk);
  for (int j = 0; j < nu; ++j) g_[j] = f[j] / grid_.weight(th[j]);
  if (!grid_.full_space()) {
    const double r = (th[nu] - th[nu - 1]) / (th[nu - 1] - th[nu - 2]);
    g_[nu] = std::max(0.0, g_[nu - 1] + r * (g_[nu - 1] - g_[nu - 2]));
  }
  slope_.assign(nk, 0.0);
  for (int k = 1; k + 1 < nk; ++k) {
    const double hl = th[k] - th[k - 1], hr = th[k + 1] - th[k];
    const double dl = (g_[k] - g_[k - 1]) / hl, dr = (g_[k + 1] - g_[k]) / hr;
    if (dl * dr <= 0) continue;
    const double w1 = 2 * hr + hl, w2 = hr + 2 * hl;
    slope_[k] = (w1 + w2) / (w1 / dl + w2 / dr);
  }
  // The axis (and the antipode in the full space) are symmetry points: zero slope.
  if (!grid_.full_space()) {
    const double d = (g_[nk - 1] - g_[nk - 2]) / (th[nk - 1] - th[nk - 2]);
    const double prev = slope_[nk - 2];
    slope_[nk - 1] = (prev * d <= 0) ? 0.0 : d;
  }
}

double MonotoneProfile::operator()(double theta) const {
  if (!grid_.inside(theta)) return 0.0;
  const auto& th = grid_.knots();
  const int c = grid_.cell(theta);
  const double H = th[c + 1] - th[c];
  const double t = (theta - th[c]) / H;
  const double t2 = t * t, t3 = t2 * t;
  const double g = (1 - 3 * t2 + 2 * t3) * g_[c] + (3 * t2 - 2 * t3) * g_[c + 1] +
                   H * ((t - 2 * t2 + t3) * slope_[c] + (t3 - t2) * slope_[c + 1]);
  return grid_.weight(theta) * g;
}

}  // namespace conexp
