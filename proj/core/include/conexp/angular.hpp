#pragma once

// Angular grids on the polar angle theta in [0, theta0) and interpolation of
// profiles f = w * g, where w(theta) = cos^alpha(pi theta / (2 theta0)) carries the
// boundary decay and g is interpolated.

#include <array>
#include <span>
#include <vector>

#include "conexp/model.hpp"

namespace conexp {

// Up to kFormCapacity (index, coefficient) pairs: a linear functional of nodal values.
struct SparseForm {
  static constexpr int kFormCapacity = 24;
  std::array<int, kFormCapacity> index{};
  std::array<double, kFormCapacity> coef{};
  int size = 0;

  void clear() { size = 0; }
  void push(int j, double c) {
    index[size] = j;
    coef[size] = c;
    ++size;
  }
  void append(const SparseForm& o, double scale) {
    for (int k = 0; k < o.size; ++k) push(o.index[k], o.coef[k] * scale);
  }
  double dot(const double* data) const {
    double s = 0;
    for (int k = 0; k < size; ++k) s += coef[k] * data[index[k]];
    return s;
  }
};

class AngularGrid {
 public:
  // grading <= 0 selects alpha. Full space: nodes cover [0, pi] including both ends.
  AngularGrid(const ConeSpec& cone, int nodes, double grading, double alpha);

  int dim() const { return dim_; }
  bool full_space() const { return full_; }
  double half_angle() const { return theta0_; }
  double alpha() const { return alpha_; }
  double grading() const { return grading_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  // Interpolation knots: the nodes plus the boundary angle for proper cones.
  const std::vector<double>& knots() const { return knots_; }

  double weight(double theta) const;
  bool inside(double theta) const { return full_ || theta < theta0_; }

  // Index of the cell [knot_i, knot_{i+1}] containing theta (clamped).
  int cell(double theta) const;

 private:
  int dim_;
  bool full_;
  double theta0_;
  double alpha_;
  double grading_;
  std::vector<double> nodes_;
  std::vector<double> knots_;
};

// Piecewise cubic Hermite interpolation of g = f / w with three-point slopes.
// Linear in the nodal values, C^1, even about the axis; the boundary value of g is
// extrapolated linearly from the last two nodes.
class AngularBasis {
 public:
  explicit AngularBasis(const AngularGrid& grid);

  const AngularGrid& grid() const { return grid_; }

  // Appends scale * d f(theta) / d f_j for all j to out.
  void append(double theta, double scale, SparseForm& out) const;
  double value(double theta, std::span<const double> f) const;

 private:
  struct Term {
    int j;
    std::array<double, 4> p;  // cubic in the local coordinate t in [0, 1]
  };
  AngularGrid grid_;
  std::vector<std::vector<Term>> cells_;
  std::vector<double> inv_node_weight_;
};

// Shape preserving (Fritsch-Butland) interpolation of g = f / w; nonnegative for
// nonnegative data and exact at the nodes.
class MonotoneProfile {
 public:
  MonotoneProfile(const AngularGrid& grid, std::span<const double> f);
  double operator()(double theta) const;
  const AngularGrid& grid() const { return grid_; }

 private:
  AngularGrid grid_;
  std::vector<double> g_;      // per knot
  std::vector<double> slope_;  // per knot
};

}  // namespace conexp
