#include "conexp/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "conexp/angular.hpp"

namespace conexp {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

double AngularKernel::operator()(double angle_from_axis) const {
  const int m = static_cast<int>(density.size());
  if (m == 0) return 0;
  if (m == 1) return density[0];
  const double t = std::clamp(angle_from_axis / kPi, 0.0, 1.0) * (m - 1);
  const int i = std::min(static_cast<int>(t), m - 2);
  const double s = t - i;
  return (1 - s) * density[i] + s * density[i + 1];
}

ConeSpec canonicalize(const ConeSpec& cone) {
  ConeSpec c = cone;
  c.axis.clear();
  if (c.shape == ConeShape::HalfSpace) {
    if (c.dimension == 2) {
      c.shape = ConeShape::PlanarSector;
      c.aperture = kPi;
    } else if (c.dimension == 3) {
      c.shape = ConeShape::AxisymmetricCap;
      c.half_angle = kPi / 2;
    }
  }
  if (c.shape != ConeShape::PlanarSector) c.aperture = 0;
  if (c.shape != ConeShape::AxisymmetricCap) c.half_angle = 0;
  return c;
}

double cone_half_angle(const ConeSpec& cone) {
  switch (cone.shape) {
    case ConeShape::FullSpace: return kPi;
    case ConeShape::HalfSpace: return kPi / 2;
    case ConeShape::PlanarSector: return cone.aperture / 2;
    case ConeShape::AxisymmetricCap: return cone.half_angle;
  }
  return kPi;
}

bool is_full_space(const ConeSpec& cone) { return cone.shape == ConeShape::FullSpace; }

double HomogeneousProfile::value(double theta, double alpha) const {
  const AngularGrid grid(cone, static_cast<int>(samples.size()), boundary_grading, alpha);
  return MonotoneProfile(grid, samples)(theta);
}

std::vector<std::string> validate(const OperatorSpec& op) {
  std::vector<std::string> v;
  if (!(op.lambda > 0)) v.push_back("lambda: requires 0 < λ");
  if (!(op.Lambda >= op.lambda)) v.push_back("Lambda: requires λ ≤ Λ");
  if (!(op.alpha > 0 && op.alpha < 1)) v.push_back("alpha: requires 0 < α < 1");
  if (op.kind == OperatorKind::FractionalLaplacian && op.lambda != op.Lambda)
    v.push_back("FractionalLaplacian requires λ=Λ");
  if (op.kind == OperatorKind::IsaacsFinite) {
    if (op.kernels.empty()) v.push_back("kernels: IsaacsFinite requires a nonempty kernel family");
    for (std::size_t k = 0; k < op.kernels.size(); ++k) {
      const auto& d = op.kernels[k].density;
      const std::string tag = "kernels[" + std::to_string(k) + "]";
      if (d.empty()) {
        v.push_back(tag + ": density must be tabulated");
        continue;
      }
      const double slack = 1e-12 * op.Lambda;
      for (double x : d) {
        if (!(x >= op.lambda - slack && x <= op.Lambda + slack)) {
          v.push_back(tag + ": density must satisfy λ ≤ a(σ) ≤ Λ");
          break;
        }
      }
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (std::abs(d[i] - d[d.size() - 1 - i]) > 1e-12 * std::max(1.0, std::abs(d[i]))) {
          v.push_back(tag + ": density must be even, a(σ) = a(−σ)");
          break;
        }
      }
    }
  } else if (!op.kernels.empty()) {
    v.push_back("kernels: only IsaacsFinite carries a kernel family");
  }
  return v;
}

std::vector<std::string> validate(const ConeSpec& cone) {
  std::vector<std::string> v;
  if (cone.dimension < 2) v.push_back("dimension: requires N ≥ 2");
  switch (cone.shape) {
    case ConeShape::FullSpace: break;
    case ConeShape::HalfSpace: {
      if (!cone.axis.empty()) {
        if (static_cast<int>(cone.axis.size()) != cone.dimension) {
          v.push_back("axis: HalfSpace normal must have N components");
        } else {
          double s = 0;
          for (double x : cone.axis) s += x * x;
          if (std::abs(s - 1) > 1e-9) v.push_back("axis: HalfSpace normal must be a unit vector");
        }
      }
      break;
    }
    case ConeShape::PlanarSector:
      if (cone.dimension != 2) v.push_back("PlanarSector requires N=2");
      if (!(cone.aperture > 0 && cone.aperture < 2 * kPi))
        v.push_back("aperture: PlanarSector requires 0 < aperture < 2π");
      break;
    case ConeShape::AxisymmetricCap:
      if (cone.dimension != 3) v.push_back("AxisymmetricCap requires N=3");
      if (!(cone.half_angle > 0 && cone.half_angle < kPi))
        v.push_back("half_angle: AxisymmetricCap requires 0 < θ₀ < π");
      break;
  }
  return v;
}

std::vector<std::string> validate(const HomogeneousProfile& profile) {
  std::vector<std::string> v = validate(profile.cone);
  const bool full = is_full_space(profile.cone);
  if (profile.samples.size() < (full ? 2u : 3u)) v.push_back("samples: too few angular nodes");
  for (double s : profile.samples) {
    if (!(s >= 0)) {
      v.push_back("samples: requires f ≥ 0 at every node");
      break;
    }
  }
  if (!(profile.boundary_grading > 0 && profile.boundary_grading <= 1))
    v.push_back("boundary_grading: requires 0 < g ≤ 1");
  return v;
}

std::vector<std::string> validate(const QuadratureConfig& cfg) {
  std::vector<std::string> v;
  if (!(cfg.r_min > 0)) v.push_back("requires 0 < r_min");
  if (!(cfg.r_min < cfg.eta)) v.push_back("requires r_min < eta");
  if (!(cfg.eta < 1)) v.push_back("requires eta < 1");
  if (!(cfg.r_max > 1)) v.push_back("requires 1 < r_max");
  if (cfg.n_radial < 2) v.push_back("n_radial: requires at least 2 points per panel");
  if (cfg.n_angular < 2) v.push_back("n_angular: requires at least 2 points per panel");
  if (cfg.n_azimuthal < 4) v.push_back("n_azimuthal: requires at least 4 points");
  if (!(cfg.tol > 0)) v.push_back("tol: requires tol > 0");
  return v;
}

std::vector<std::string> validate(const ExponentResult& r, int dimension, double alpha) {
  std::vector<std::string> v;
  switch (r.kind) {
    case ExponentKind::BetaPlus:
      if (!(r.value > 0 && r.value < dimension))
        v.push_back("BetaPlus value " + fmt(r.value) + " outside (0, N)");
      break;
    case ExponentKind::BetaMinus:
      if (!(r.value > -2 * alpha && r.value < 0))
        v.push_back("BetaMinus value " + fmt(r.value) + " outside (-2α, 0)");
      break;
    case ExponentKind::NTildePlus:
    case ExponentKind::NTildeMinus:
      if (!(r.value > 0)) v.push_back("dimension-like number must be positive");
      break;
  }
  if (!(r.bracket.first <= r.value && r.value <= r.bracket.second))
    v.push_back("bracket does not enclose value");
  return v;
}

std::string to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::FractionalLaplacian: return "FractionalLaplacian";
    case OperatorKind::PucciPlus: return "PucciPlus";
    case OperatorKind::PucciMinus: return "PucciMinus";
    case OperatorKind::IsaacsFinite: return "IsaacsFinite";
  }
  return "?";
}

std::string to_string(ConeShape shape) {
  switch (shape) {
    case ConeShape::FullSpace: return "FullSpace";
    case ConeShape::HalfSpace: return "HalfSpace";
    case ConeShape::PlanarSector: return "PlanarSector";
    case ConeShape::AxisymmetricCap: return "AxisymmetricCap";
  }
  return "?";
}

std::string to_string(ExponentKind kind) {
  switch (kind) {
    case ExponentKind::NTildePlus: return "NTildePlus";
    case ExponentKind::NTildeMinus: return "NTildeMinus";
    case ExponentKind::BetaPlus: return "BetaPlus";
    case ExponentKind::BetaMinus: return "BetaMinus";
  }
  return "?";
}

}  // namespace conexp
