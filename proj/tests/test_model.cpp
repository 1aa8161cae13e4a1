#include <doctest.h>

#include <cmath>
#include <numbers>

#include "conexp/angular.hpp"
#include "conexp/error.hpp"
#include "conexp/model.hpp"
#include "conexp/model_json.hpp"

using namespace conexp;

namespace {
constexpr double kPi = std::numbers::pi;

template <class T>
T round_trip(const T& v) {
  const json j = v;
  return json::parse(j.dump()).get<T>();
}
}  // namespace

TEST_SUITE("model") {
  TEST_CASE("validate reports invariant violations by name") {
    CHECK(validate(OperatorSpec{OperatorKind::FractionalLaplacian, 1, 2, 0.5, {}}) ==
          std::vector<std::string>{"FractionalLaplacian requires λ=Λ"});
    CHECK(validate(ConeSpec{3, ConeShape::PlanarSector, {}, kPi / 2, 0}) ==
          std::vector<std::string>{"PlanarSector requires N=2"});
    QuadratureConfig q;
    q.r_min = 0.1;
    q.eta = 0.05;
    CHECK(validate(q) == std::vector<std::string>{"requires r_min < eta"});
    CHECK(validate(ConeSpec{2, ConeShape::AxisymmetricCap, {}, 0, 1.0}).front() == "AxisymmetricCap requires N=3");
    CHECK(validate(OperatorSpec{}).empty());
    CHECK(validate(QuadratureConfig{}).empty());
    CHECK_FALSE(validate(OperatorSpec{OperatorKind::PucciPlus, 2, 1, 0.5, {}}).empty());
    CHECK_FALSE(validate(OperatorSpec{OperatorKind::PucciPlus, 1, 2, 1.0, {}}).empty());
  }

  TEST_CASE("Isaacs kernels must be even and within the ellipticity bounds") {
    OperatorSpec op{OperatorKind::IsaacsFinite, 1, 2, 0.5, {}};
    CHECK_FALSE(validate(op).empty());
    AngularKernel k;
    for (int i = 0; i <= 32; ++i) k.density.push_back(1.5 + 0.4 * std::cos(2 * kPi * i / 32));
    op.kernels.push_back(k);
    CHECK(validate(op).empty());
    op.kernels[0].density[3] = 2.5;
    CHECK_FALSE(validate(op).empty());
    // Odd perturbation: a(angle) != a(pi - angle).
    op.kernels[0].density.assign(33, 1.5);
    op.kernels[0].density[2] = 1.9;
    CHECK_FALSE(validate(op).empty());
  }

  TEST_CASE("half-space canonicalizes to the sector of aperture pi and the cap of angle pi/2") {
    const ConeSpec h2{2, ConeShape::HalfSpace, {}, 0, 0};
    const ConeSpec s2{2, ConeShape::PlanarSector, {}, kPi, 0};
    CHECK(canonicalize(h2) == canonicalize(s2));
    const ConeSpec h3{3, ConeShape::HalfSpace, {0, 0, 1}, 0, 0};
    const ConeSpec c3{3, ConeShape::AxisymmetricCap, {}, 0, kPi / 2};
    CHECK(canonicalize(h3) == canonicalize(c3));
    CHECK(cone_half_angle(s2) == doctest::Approx(kPi / 2));
    CHECK(cone_half_angle(ConeSpec{2, ConeShape::FullSpace, {}, 0, 0}) == doctest::Approx(kPi));
    CHECK(is_full_space(ConeSpec{3, ConeShape::FullSpace, {}, 0, 0}));
  }

  TEST_CASE("JSON round trip preserves validation output") {
    OperatorSpec op{OperatorKind::IsaacsFinite, 1, 2, 0.3, {}};
    AngularKernel k;
    k.a = 1;
    k.density.assign(9, 1.2);
    op.kernels.push_back(k);
    const OperatorSpec op2 = round_trip(op);
    CHECK(validate(op2) == validate(op));
    CHECK(op2.kernels.size() == 1);
    CHECK(op2.kernels[0].a == 1);

    const OperatorSpec bad{OperatorKind::FractionalLaplacian, 1, 2, 0.5, {}};
    CHECK(validate(round_trip(bad)) == validate(bad));

    const ConeSpec cone{2, ConeShape::PlanarSector, {}, 1.3, 0};
    CHECK(round_trip(cone) == cone);
    QuadratureConfig q;
    q.n_radial = 5;
    q.tol = 2e-4;
    CHECK(round_trip(q) == q);
    HomogeneousProfile p{0.7, cone, {0.5, 1.0, 0.8, 0.2}, 0.5};
    const HomogeneousProfile p2 = round_trip(p);
    CHECK(p2.samples == p.samples);
    CHECK(validate(p2) == validate(p));
    ExponentResult r;
    r.value = 1.25;
    r.bracket = {1.2, 1.3};
    r.kind = ExponentKind::BetaMinus;
    const ExponentResult r2 = round_trip(r);
    CHECK(r2.value == r.value);
    CHECK(r2.kind == ExponentKind::BetaMinus);
    CHECK(r2.bracket == r.bracket);
  }

  TEST_CASE("unknown enum names are configuration errors") {
    json j = json::parse(R"({"kind": "Laplace", "alpha": 0.5})");
    CHECK_THROWS_AS(j.get<OperatorSpec>(), Error);
    try {
      (void)j.get<OperatorSpec>();
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidConfig);
    }
  }

  TEST_CASE("profile interpolation reproduces the samples and vanishes outside") {
    const ConeSpec cone{2, ConeShape::PlanarSector, {}, 2.0, 0};
    const AngularGrid grid(cone, 12, 0.5, 0.5);
    HomogeneousProfile p{1.0, cone, {}, 0.5};
    for (double th : grid.nodes()) p.samples.push_back(std::cos(th));
    for (std::size_t i = 0; i < grid.nodes().size(); ++i)
      CHECK(p.value(grid.nodes()[i], 0.5) == doctest::Approx(p.samples[i]).epsilon(1e-12));
    CHECK(p.value(1.2, 0.5) == 0.0);
    CHECK(p.value(0.999, 0.5) >= 0.0);
  }

  TEST_CASE("monotone interpolation keeps nonnegative data nonnegative") {
    const ConeSpec cone{2, ConeShape::PlanarSector, {}, kPi, 0};
    const AngularGrid grid(cone, 10, 0, 0.5);
    std::vector<double> f;
    for (std::size_t i = 0; i < grid.nodes().size(); ++i) f.push_back(i % 3 == 0 ? 0.0 : 1.0);
    const MonotoneProfile mp(grid, f);
    for (int k = 0; k <= 400; ++k) CHECK(mp(kPi / 2 * k / 400.0) >= 0.0);
  }

  TEST_CASE("angular kernel evaluation is even about the equator") {
    AngularKernel k;
    for (int i = 0; i <= 64; ++i) k.density.push_back(1 + std::pow(std::cos(kPi * i / 64), 2));
    for (double t : {0.1, 0.7, 1.3}) CHECK(k(t) == doctest::Approx(k(kPi - t)));
  }

  TEST_CASE("exponent bounds") {
    ExponentResult r;
    r.kind = ExponentKind::BetaPlus;
    r.value = 1.5;
    r.bracket = {1.49, 1.51};
    CHECK(validate(r, 2, 0.5).empty());
    r.value = 2.1;
    r.bracket = {2.0, 2.2};
    CHECK_FALSE(validate(r, 2, 0.5).empty());
    r.kind = ExponentKind::BetaMinus;
    r.value = -1.2;
    r.bracket = {-1.3, -1.1};
    CHECK_FALSE(validate(r, 2, 0.5).empty());
  }
}
