#pragma once

// Domain types: operators, kernels, cones, profiles, quadrature settings, results.

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace conexp {

enum class OperatorKind { FractionalLaplacian, PucciPlus, PucciMinus, IsaacsFinite };

// Even angular density of a kernel K(y) = density(y/|y|) |y|^(-N-2alpha).
// Tabulated on a uniform grid of the angle between y and the cone axis over [0, pi];
// linear interpolation in between. Evenness means density(t) = density(pi - t).
struct AngularKernel {
  int a = 0;
  int b = 0;
  std::vector<double> density;

  double operator()(double angle_from_axis) const;
};

struct OperatorSpec {
  OperatorKind kind = OperatorKind::FractionalLaplacian;
  double lambda = 1;
  double Lambda = 1;
  double alpha = 0.5;
  std::vector<AngularKernel> kernels;
};

enum class ConeShape { FullSpace, HalfSpace, PlanarSector, AxisymmetricCap };

struct ConeSpec {
  int dimension = 2;
  ConeShape shape = ConeShape::HalfSpace;
  std::vector<double> axis;  // HalfSpace normal; empty means e_N
  double aperture = 0;       // PlanarSector opening angle
  double half_angle = 0;     // AxisymmetricCap polar half-angle

  friend bool operator==(const ConeSpec&, const ConeSpec&) = default;
};

// Half-space rewritten as a sector (N=2) or cap (N=3); other shapes unchanged
// except that the axis is dropped (all computations use the canonical axis).
ConeSpec canonicalize(const ConeSpec& cone);

// Polar half-angle theta0 of the cone around its axis (pi for the full space).
double cone_half_angle(const ConeSpec& cone);

bool is_full_space(const ConeSpec& cone);

struct QuadratureConfig {
  double r_min = 2e-3;
  double eta = 0.3;
  double r_max = 1e4;
  int n_radial = 6;
  int n_angular = 6;
  int n_azimuthal = 12;
  double tol = 1e-3;

  friend bool operator==(const QuadratureConfig&, const QuadratureConfig&) = default;
};

// Angular grid resolution of profiles: number of collocation nodes and the
// boundary grading exponent (0 selects the operator order alpha).
struct GridSpec {
  int nodes = 24;
  double grading = 0;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// u(x) = f(x/|x|) |x|^(-beta) on the cone, zero outside. Samples sit on the
// collocation nodes of AngularGrid(cone, samples.size(), boundary_grading).
struct HomogeneousProfile {
  double beta = 0;
  ConeSpec cone;
  std::vector<double> samples;
  double boundary_grading = 0.5;

  // Monotone interpolation at polar angle theta (0 outside the cone).
  double value(double theta, double alpha) const;
};

enum class ExponentKind { NTildePlus, NTildeMinus, BetaPlus, BetaMinus };

struct GridMeta {
  QuadratureConfig quadrature;
  GridSpec grid;
};

struct ExponentResult {
  double value = 0;
  double residual = 0;
  std::pair<double, double> bracket{0, 0};
  GridMeta grid_meta;
  ExponentKind kind = ExponentKind::BetaPlus;
  std::vector<std::string> notes;
};

std::vector<std::string> validate(const OperatorSpec& op);
std::vector<std::string> validate(const ConeSpec& cone);
std::vector<std::string> validate(const HomogeneousProfile& profile);
std::vector<std::string> validate(const QuadratureConfig& cfg);
std::vector<std::string> validate(const ExponentResult& result, int dimension, double alpha);

std::string to_string(OperatorKind kind);
std::string to_string(ConeShape shape);
std::string to_string(ExponentKind kind);

}  // namespace conexp
