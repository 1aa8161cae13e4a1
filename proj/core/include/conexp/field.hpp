#pragma once

// Evaluable functions u(z) = f(theta(z)) * R(|z|) supported in a cone.
// Two flavours share one interface: ProfileField returns plain numbers,
// BasisField returns sparse linear forms in the nodal values of f.

#include <cmath>
#include <limits>

#include "conexp/angular.hpp"
#include "conexp/geometry.hpp"

namespace conexp {

struct ConeFrame {
  int dim = 2;
  bool full = false;
  double theta0 = 0;

  bool inside(double theta) const { return full || theta < theta0; }
};

inline ConeFrame frame_of(const ConeSpec& cone) {
  return {cone.dimension, is_full_space(cone), cone_half_angle(cone)};
}

// Radial factor: the pure power |z|^-beta or one of the two barrier truncations.
struct RadialLaw {
  enum class Mode { Power, InnerLinear, OuterInverse };
  Mode mode = Mode::Power;
  double beta = 0;
  double parameter = 0;  // eps (InnerLinear) or R (OuterInverse)

  double operator()(double r) const {
    switch (mode) {
      case Mode::Power: return std::pow(r, -beta);
      case Mode::InnerLinear: return r >= parameter ? std::pow(r, -beta) : r * std::pow(parameter, -beta - 1);
      case Mode::OuterInverse: return r <= parameter ? std::pow(r, -beta) : std::pow(parameter, 1 - beta) / r;
    }
    return 0;
  }
  // Behaviour A r^-e near the origin and at infinity.
  double near_exponent() const { return mode == Mode::InnerLinear ? -1.0 : beta; }
  double near_amplitude() const { return mode == Mode::InnerLinear ? std::pow(parameter, -beta - 1) : 1.0; }
  double far_exponent() const { return mode == Mode::OuterInverse ? 1.0 : beta; }
  double far_amplitude() const { return mode == Mode::OuterInverse ? std::pow(parameter, 1 - beta) : 1.0; }
  // Radii where the law changes form.
  int breaks(double* out) const {
    if (mode == Mode::Power) return 0;
    out[0] = parameter;
    return 1;
  }
};

template <class Profile>
struct ProfileField {
  using Form = double;

  ConeFrame cone;
  RadialLaw radial;
  Profile profile;

  static void reset(Form& f) { f = 0; }
  double value(const Form& f) const { return f; }
  void scatter(const Form&, double, double*) const {}
  static void add(Form& out, const Form& in, double s) { out += s * in; }

  void add_angular(const Vec3& d, double s, Form& out) const {
    const double th = polar_angle(cone.dim, d);
    if (cone.inside(th)) out += s * profile(th);
  }
  void add_at(const Vec3& z, double s, Form& out) const {
    const double th = polar_angle(cone.dim, z);
    if (!cone.inside(th)) return;
    out += s * profile(th) * radial(norm(z));
  }
};

struct BasisField {
  using Form = SparseForm;

  ConeFrame cone;
  RadialLaw radial;
  const AngularBasis* basis = nullptr;
  const double* data = nullptr;

  static void reset(Form& f) { f.clear(); }
  double value(const Form& f) const { return f.dot(data); }
  void scatter(const Form& f, double s, double* row) const {
    if (!row) return;
    for (int k = 0; k < f.size; ++k) row[f.index[k]] += s * f.coef[k];
  }
  static void add(Form& out, const Form& in, double s) { out.append(in, s); }

  void add_angular(const Vec3& d, double s, Form& out) const {
    const double th = polar_angle(cone.dim, d);
    if (cone.inside(th)) basis->append(th, s, out);
  }
  void add_at(const Vec3& z, double s, Form& out) const {
    const double th = polar_angle(cone.dim, z);
    if (!cone.inside(th)) return;
    basis->append(th, s * radial(norm(z)), out);
  }
};

}  // namespace conexp
