#include <doctest.h>

#include <cmath>
#include <numbers>

#include "conexp/error.hpp"
#include "conexp/exponents.hpp"
#include "oracles.hpp"

using namespace conexp;

namespace {

constexpr double kPi = std::numbers::pi;

const ConeSpec kFull2{2, ConeShape::FullSpace, {}, 0, 0};
const ConeSpec kHalf2{2, ConeShape::HalfSpace, {}, 0, 0};

ConeSpec sector(double aperture) { return {2, ConeShape::PlanarSector, {}, aperture, 0}; }

OperatorSpec frac(double a) { return {OperatorKind::FractionalLaplacian, 1, 1, a, {}}; }
OperatorSpec pucci(OperatorKind k, double lam = 1, double Lam = 2) { return {k, lam, Lam, 0.5, {}}; }

// Coarser settings for the more expensive scans.
QuadratureConfig fast_cfg() {
  QuadratureConfig q;
  q.n_radial = 4;
  q.n_angular = 4;
  return q;
}
const GridSpec kFastGrid{16, 0};

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidConfig;
}

}  // namespace

TEST_SUITE("exponents") {
  TEST_CASE("root finder") {
    auto f = [](double x) { return std::cos(x) - x; };
    const auto r = find_root(f, 0, f(0), 1, f(1), 1e-10);
    CHECK(r.x == doctest::Approx(0.7390851332151607).epsilon(1e-9));
    CHECK(r.a <= r.x);
    CHECK(r.x <= r.b);
    CHECK(r.evaluations < 20);
    // Strongly asymmetric function: the bracket must close from both sides.
    auto g = [](double x) { return std::exp(8 * x) - 2; };
    const auto s = find_root(g, 0, g(0), 1, g(1), 1e-8);
    CHECK(s.x == doctest::Approx(std::log(2.0) / 8).epsilon(1e-7));
    CHECK(s.b - s.a < 1e-6);
    CHECK(code_of([&] { find_root(f, 1, f(1), 2, f(2), 1e-6); }) == ErrorCode::RootNotBracketed);
    CHECK(find_root(f, 0, 0.0, 1, f(1), 1e-6).x == 0);
  }

  TEST_CASE("radial symbol: trivial value, domain and divergence") {
    const QuadratureConfig q;
    for (const OperatorSpec& op : {frac(0.5), pucci(OperatorKind::PucciPlus), pucci(OperatorKind::PucciMinus)})
      CHECK(c_of_beta(0, op, 2, q) == 0);
    CHECK(code_of([&] { c_of_beta(2.0, frac(0.5), 2, q); }) == ErrorCode::BetaOutOfRange);
    CHECK(code_of([&] { c_of_beta(-1.0, frac(0.5), 2, q); }) == ErrorCode::BetaOutOfRange);
    CHECK(code_of([&] { c_of_beta(0.5, frac(0.5), 4, q); }) == ErrorCode::PreconditionViolated);
    for (const OperatorSpec& op : {frac(0.5), pucci(OperatorKind::PucciPlus)}) {
      double prev_hi = 0, prev_lo = 0;
      for (double d : {1e-2, 5e-3, 2.5e-3}) {
        const double hi = c_of_beta(2 - d, op, 2, q), lo = c_of_beta(-1 + d, op, 2, q);
        CHECK(hi > 0);
        CHECK(lo > 0);
        CHECK(hi > prev_hi);
        CHECK(lo > prev_lo);
        prev_hi = hi;
        prev_lo = lo;
      }
    }
  }

  TEST_CASE("g(beta)") {
    const QuadratureConfig q;
    // c(0.5) < -0.5 for the fractional Laplacian, N = 2, alpha = 1/2.
    CHECK(oracle::fractional_symbol(2, 0.5, 0.5) < -0.5);
    CHECK(g_of_beta(0.5, frac(0.5), 2, q) == -0.5);
    CHECK(g_of_beta(1.0, frac(0.5), 2, q) == doctest::Approx(0.0).epsilon(1e-3));
    CHECK(std::abs(g_of_beta(1.0, frac(0.5), 2, q)) < q.tol);
    const double c = c_of_beta(-0.3, frac(0.5), 2, q);
    CHECK(c > -0.3);
    CHECK(g_of_beta(-0.3, frac(0.5), 2, q) == c);
    CHECK(g_from_symbol(0.7, -2.0) == -0.7);
    CHECK(g_from_symbol(-0.7, 1.0) == 1.0);
    CHECK(code_of([&] { g_of_beta(0, frac(0.5), 2, q); }) == ErrorCode::PreconditionViolated);
  }

  TEST_CASE("symbol curve is convex with two roots") {
    const QuadratureConfig q;
    std::vector<double> betas;
    for (int i = 1; i < 20; ++i) betas.push_back(-1 + 3.0 * i / 20);
    const auto curve = symbol_curve(betas, frac(0.5), 2, q);
    REQUIRE(curve.values.size() == betas.size());
    int changes = 0;
    for (size_t i = 1; i < betas.size(); ++i) {
      if ((curve.values[i] > 0) != (curve.values[i - 1] > 0)) ++changes;
      if (i + 1 < betas.size())
        CHECK(curve.values[i + 1] - 2 * curve.values[i] + curve.values[i - 1] > -q.tol);
    }
    CHECK(changes == 2);
  }

  TEST_CASE("dimension-like numbers") {
    const QuadratureConfig q;
    const auto fr = dimension_like(frac(0.5), 2, q);
    CHECK(fr.plus.value == doctest::Approx(2).epsilon(1e-3));
    CHECK(fr.minus.value == doctest::Approx(2).epsilon(1e-3));
    CHECK(fr.plus.kind == ExponentKind::NTildePlus);
    CHECK(fr.minus.kind == ExponentKind::NTildeMinus);
    const auto pu = dimension_like(pucci(OperatorKind::PucciPlus), 2, q);
    CHECK(pu.plus.value <= 2 + 1e-3);
    CHECK(pu.minus.value >= 2 - 1e-3);
    CHECK(pu.plus.value > 1.0);  // above 2 alpha
    const auto p1 = dimension_like(pucci(OperatorKind::PucciPlus, 1, 1), 2, q);
    const auto p3 = dimension_like(pucci(OperatorKind::PucciPlus, 3, 3), 2, q);
    CHECK(p1.plus.value == doctest::Approx(p3.plus.value).epsilon(1e-6));
    CHECK(p1.minus.value == doctest::Approx(p3.minus.value).epsilon(1e-6));
    CHECK(code_of([&] { dimension_like({OperatorKind::IsaacsFinite, 1, 2, 0.5, {}}, 2, q); }) ==
          ErrorCode::PreconditionViolated);
  }

  TEST_CASE("principal eigenpair: radial collapse on the full space") {
    const QuadratureConfig q;
    const OperatorSpec op = pucci(OperatorKind::PucciPlus);
    for (double b : {-0.5, 0.4, 1.2}) {
      const auto e = principal_eigenvalue(b, kFull2, op, q, {});
      CHECK(e.mu == doctest::Approx(-c_of_beta(b, op, 2, q)).epsilon(3 * q.tol));
      CHECK(e.f.minCoeff() > 0.99);
    }
    // Slit sectors approach the full-space value as the slit closes.
    for (double b : {0.4, 1.2}) {
      double prev = 1e300;
      for (double gap : {0.3, 0.03, 1e-3}) {
        const double dev = std::abs(principal_eigenvalue(b, sector(2 * kPi - gap), op, q, {}).mu + c_of_beta(b, op, 2, q));
        CHECK(dev < prev);
        prev = dev;
      }
    }
  }

  TEST_CASE("principal eigenpair: half space anchor") {
    const QuadratureConfig q;
    const auto e = principal_eigenvalue(1.5, kHalf2, frac(0.5), q, {});
    CHECK(std::abs(e.mu) < q.tol);
    CHECK(e.f.maxCoeff() == doctest::Approx(1.0));
    CHECK(e.f.minCoeff() > 0);
    CHECK(e.residual <= q.tol);
    CHECK(e.cw_hi - e.cw_lo <= q.tol);
    const AngularGrid grid(kHalf2, e.f.size(), 0, 0.5);
    for (int i = 0; i < e.f.size(); ++i) CHECK(e.f[i] == doctest::Approx(std::sqrt(std::cos(grid.nodes()[i]))).epsilon(1e-2));
  }

  TEST_CASE("principal eigenpair: kernel scaling") {
    const QuadratureConfig q;
    const auto e1 = principal_eigenvalue(0.8, kHalf2, pucci(OperatorKind::PucciPlus, 1, 2), q, {});
    const auto e3 = principal_eigenvalue(0.8, kHalf2, pucci(OperatorKind::PucciPlus, 3, 6), q, {});
    CHECK(e3.mu == doctest::Approx(3 * e1.mu).epsilon(1e-8));
    CHECK((e3.f - e1.f).cwiseAbs().maxCoeff() < 1e-8);
  }

  TEST_CASE("critical exponents of the half plane") {
    const QuadratureConfig q;
    const auto ce = critical_exponents(kHalf2, frac(0.5), q, {});
    CHECK(ce.beta_plus.value == doctest::Approx(1.5).epsilon(1e-2));
    REQUIRE(ce.beta_minus);
    CHECK(ce.beta_minus->value == doctest::Approx(-0.5).epsilon(1e-2));
    CHECK(validate(ce.beta_plus, 2, 0.5).empty());
    CHECK(validate(*ce.beta_minus, 2, 0.5).empty());
    CHECK(ce.beta_plus.bracket.first <= ce.beta_plus.value);
    CHECK(ce.beta_plus.value <= ce.beta_plus.bracket.second);

    SUBCASE("sign pattern of mu") {
      const double bp = ce.beta_plus.value, bm = ce.beta_minus->value;
      for (size_t i = 0; i < ce.scan.betas.size(); ++i) {
        const double b = ce.scan.betas[i], mu = ce.scan.values[i];
        if (std::abs(b - bp) < 1e-2 || std::abs(b - bm) < 1e-2) continue;
        INFO("beta " << b << " mu " << mu);
        CHECK((mu > 0) == (b > bm && b < bp));
      }
    }
    SUBCASE("uniqueness across bracket scans") {
      ScanOptions o;
      o.predict_plus = 1.0;
      o.predict_minus = -0.9;
      const auto other = critical_exponents(kHalf2, frac(0.5), q, {}, o);
      CHECK(std::abs(other.beta_plus.value - ce.beta_plus.value) < 1e-3);
      CHECK(std::abs(other.beta_minus->value - ce.beta_minus->value) < 1e-3);
    }
  }

  TEST_CASE("critical exponents: grid convergence") {
    const QuadratureConfig q;
    ScanOptions o;
    o.want_minus = false;
    o.root_tol = 1e-7;
    double v[3];
    for (int i = 0; i < 3; ++i) v[i] = critical_exponents(kHalf2, frac(0.5), q, {12 << i, 0}, o).beta_plus.value;
    const double d1 = std::abs(v[1] - v[0]), d2 = std::abs(v[2] - v[1]);
    INFO(v[0] << " " << v[1] << " " << v[2]);
    CHECK(d2 < 0.6 * d1);
  }

  TEST_CASE("critical exponents: monotone in the cone and in the operator") {
    const auto q = fast_cfg();
    const auto wide = critical_exponents(sector(2.5), frac(0.5), q, kFastGrid);
    const auto narrow = critical_exponents(sector(2.0), frac(0.5), q, kFastGrid);
    CHECK(narrow.beta_plus.value >= wide.beta_plus.value);
    REQUIRE(wide.beta_minus);
    REQUIRE(narrow.beta_minus);
    CHECK(narrow.beta_minus->value <= wide.beta_minus->value);

    ScanOptions o;
    o.want_minus = false;
    const double bp_plus = critical_exponents(sector(2.0), pucci(OperatorKind::PucciPlus), q, kFastGrid, o).beta_plus.value;
    const double bp_minus = critical_exponents(sector(2.0), pucci(OperatorKind::PucciMinus), q, kFastGrid, o).beta_plus.value;
    CHECK(bp_plus <= narrow.beta_plus.value);
    CHECK(narrow.beta_plus.value <= bp_minus);
  }

  TEST_CASE("critical exponents need a proper cone") {
    CHECK(code_of([] { critical_exponents(kFull2, frac(0.5), QuadratureConfig{}, {}); }) ==
          ErrorCode::PreconditionViolated);
  }

  TEST_CASE("auxiliary problem") {
    const auto q = fast_cfg();
    const ReducedSystem sys({frac(0.5), kHalf2, 1.0, q, kFastGrid});
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(sys.size());
    for (double gamma : {0.5, 1.5}) {
      const auto r = solve_auxiliary(sys, gamma, zero);
      CHECK(r.u.maxCoeff() <= 1.0 / gamma * (1 + 1e-9));
      CHECK(r.u.minCoeff() >= 0);
      CHECK(r.u.maxCoeff() <= r.k * (1 + 1e-6));
      AuxiliaryOptions from_top;
      from_top.initial = Eigen::VectorXd::Constant(sys.size(), r.k);
      const auto s = solve_auxiliary(sys, gamma, zero, from_top);
      CHECK((s.u - r.u).cwiseAbs().maxCoeff() < 1e-8);
    }
    // Nonzero psi and the negative branch.
    Eigen::VectorXd psi = Eigen::VectorXd::Constant(sys.size(), 0.3);
    const auto r = solve_auxiliary(sys, 1.5, psi);
    CHECK(r.u.minCoeff() >= 0);
    CHECK(r.u.maxCoeff() <= r.k * (1 + 1e-6));
    const auto neg = solve_auxiliary(-0.3, -0.5, zero, kHalf2, frac(0.5), q, kFastGrid);
    CHECK(neg.u.minCoeff() >= 0);
    CHECK(neg.u.maxCoeff() <= 0.3 / 0.5 * (1 + 1e-9));
    CHECK(code_of([&] { solve_auxiliary(sys, -1.0, zero); }) == ErrorCode::PreconditionViolated);
    CHECK(code_of([&] { solve_auxiliary(sys, 1.0, -psi); }) == ErrorCode::PreconditionViolated);
  }

  TEST_CASE("fixed point branch blows up at beta+") {
    const auto q = fast_cfg();
    const std::vector<double> betas{0.9, 1.1, 1.3, 1.4, 1.45};
    const auto br = fixed_point_branch(kHalf2, frac(0.5), q, kFastGrid, betas, 1.5);
    REQUIRE(br.points.size() == betas.size());
    CHECK(br.points.front().converged);
    CHECK(br.points.front().iterations < 100);
    for (size_t i = 1; i < br.points.size(); ++i) CHECK(br.points[i].norm > br.points[i - 1].norm);
    CHECK(br.blowup == doctest::Approx(1.5).epsilon(5e-2 / 1.5));
    CHECK(code_of([&] { fixed_point_branch(kHalf2, frac(0.5), q, kFastGrid, {1.0, 0.9}, 1.5); }) ==
          ErrorCode::PreconditionViolated);
  }

  TEST_CASE("Kelvin relation") {
    const auto q = fast_cfg();
    CHECK(kelvin_relation_check(kHalf2, 0.5, q, kFastGrid) < 2e-2);
    CHECK(kelvin_relation_check(sector(kPi / 2), 0.5, q, kFastGrid) < 2e-2);
  }
}
