#include "conexp/model_json.hpp"

#include "conexp/error.hpp"

namespace conexp {

namespace {

template <class T>
void get_opt(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) it->get_to(out);
}

}  // namespace

OperatorKind operator_kind_from_string(const std::string& s) {
  for (auto k : {OperatorKind::FractionalLaplacian, OperatorKind::PucciPlus, OperatorKind::PucciMinus,
                 OperatorKind::IsaacsFinite})
    if (to_string(k) == s) return k;
  throw Error(ErrorCode::InvalidConfig, "unknown operator kind '" + s + "'");
}

ConeShape cone_shape_from_string(const std::string& s) {
  for (auto k : {ConeShape::FullSpace, ConeShape::HalfSpace, ConeShape::PlanarSector,
                 ConeShape::AxisymmetricCap})
    if (to_string(k) == s) return k;
  throw Error(ErrorCode::InvalidConfig, "unknown cone shape '" + s + "'");
}

ExponentKind exponent_kind_from_string(const std::string& s) {
  for (auto k : {ExponentKind::NTildePlus, ExponentKind::NTildeMinus, ExponentKind::BetaPlus,
                 ExponentKind::BetaMinus})
    if (to_string(k) == s) return k;
  throw Error(ErrorCode::InvalidConfig, "unknown exponent kind '" + s + "'");
}

void to_json(json& j, const AngularKernel& k) {
  j = json{{"a", k.a}, {"b", k.b}, {"density", k.density}};
}

void from_json(const json& j, AngularKernel& k) {
  get_opt(j, "a", k.a);
  get_opt(j, "b", k.b);
  j.at("density").get_to(k.density);
}

void to_json(json& j, const OperatorSpec& op) {
  j = json{{"kind", to_string(op.kind)}, {"lambda", op.lambda}, {"Lambda", op.Lambda}, {"alpha", op.alpha}};
  if (!op.kernels.empty()) j["kernels"] = op.kernels;
}

void from_json(const json& j, OperatorSpec& op) {
  op = OperatorSpec{};
  op.kind = operator_kind_from_string(j.at("kind").get<std::string>());
  get_opt(j, "lambda", op.lambda);
  get_opt(j, "Lambda", op.Lambda);
  if (!j.contains("Lambda") && op.kind == OperatorKind::FractionalLaplacian) op.Lambda = op.lambda;
  j.at("alpha").get_to(op.alpha);
  get_opt(j, "kernels", op.kernels);
}

void to_json(json& j, const ConeSpec& c) {
  j = json{{"dimension", c.dimension}, {"shape", to_string(c.shape)}};
  switch (c.shape) {
    case ConeShape::HalfSpace:
      if (!c.axis.empty()) j["axis"] = c.axis;
      break;
    case ConeShape::PlanarSector: j["aperture"] = c.aperture; break;
    case ConeShape::AxisymmetricCap: j["half_angle"] = c.half_angle; break;
    case ConeShape::FullSpace: break;
  }
}

void from_json(const json& j, ConeSpec& c) {
  c = ConeSpec{};
  j.at("dimension").get_to(c.dimension);
  c.shape = cone_shape_from_string(j.at("shape").get<std::string>());
  get_opt(j, "axis", c.axis);
  get_opt(j, "aperture", c.aperture);
  get_opt(j, "half_angle", c.half_angle);
}

void to_json(json& j, const QuadratureConfig& q) {
  j = json{{"r_min", q.r_min},         {"eta", q.eta},         {"r_max", q.r_max},
           {"n_radial", q.n_radial},   {"n_angular", q.n_angular},
           {"n_azimuthal", q.n_azimuthal}, {"tol", q.tol}};
}

void from_json(const json& j, QuadratureConfig& q) {
  q = QuadratureConfig{};
  get_opt(j, "r_min", q.r_min);
  get_opt(j, "eta", q.eta);
  get_opt(j, "r_max", q.r_max);
  get_opt(j, "n_radial", q.n_radial);
  get_opt(j, "n_angular", q.n_angular);
  get_opt(j, "n_azimuthal", q.n_azimuthal);
  get_opt(j, "tol", q.tol);
}

void to_json(json& j, const GridSpec& g) { j = json{{"nodes", g.nodes}, {"grading", g.grading}}; }

void from_json(const json& j, GridSpec& g) {
  g = GridSpec{};
  get_opt(j, "nodes", g.nodes);
  get_opt(j, "grading", g.grading);
}

void to_json(json& j, const HomogeneousProfile& p) {
  j = json{{"beta", p.beta},
           {"cone", p.cone},
           {"samples", p.samples},
           {"boundary_grading", p.boundary_grading}};
}

void from_json(const json& j, HomogeneousProfile& p) {
  p = HomogeneousProfile{};
  j.at("beta").get_to(p.beta);
  j.at("cone").get_to(p.cone);
  j.at("samples").get_to(p.samples);
  get_opt(j, "boundary_grading", p.boundary_grading);
}

void to_json(json& j, const GridMeta& m) { j = json{{"quadrature", m.quadrature}, {"grid", m.grid}}; }

void from_json(const json& j, GridMeta& m) {
  m = GridMeta{};
  get_opt(j, "quadrature", m.quadrature);
  get_opt(j, "grid", m.grid);
}

void to_json(json& j, const ExponentResult& r) {
  j = json{{"kind", to_string(r.kind)},
           {"value", r.value},
           {"residual", r.residual},
           {"bracket", {r.bracket.first, r.bracket.second}},
           {"grid_meta", r.grid_meta}};
  if (!r.notes.empty()) j["notes"] = r.notes;
}

void from_json(const json& j, ExponentResult& r) {
  r = ExponentResult{};
  r.kind = exponent_kind_from_string(j.at("kind").get<std::string>());
  j.at("value").get_to(r.value);
  get_opt(j, "residual", r.residual);
  if (j.contains("bracket")) {
    const auto& b = j.at("bracket");
    r.bracket = {b.at(0).get<double>(), b.at(1).get<double>()};
  }
  get_opt(j, "grid_meta", r.grid_meta);
  get_opt(j, "notes", r.notes);
}

}  // namespace conexp
