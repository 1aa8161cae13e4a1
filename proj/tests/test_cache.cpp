#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <unistd.h>

#include "conexp/cache.hpp"

using namespace conexp;
namespace fs = std::filesystem;

namespace {

fs::path fresh_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("conexp_cache_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path p = dir / name;
  fs::remove(p);
  return p;
}

const ConeSpec kHalf2{2, ConeShape::HalfSpace, {}, 0, 0};
const OperatorSpec kFrac{OperatorKind::FractionalLaplacian, 1, 1, 0.5, {}};

CacheKey base_key() {
  return {kFrac, kHalf2, QuadratureConfig{}, GridSpec{}, ExponentKind::BetaPlus,
          json{{"interval", {0, 2}}, {"root_tol", 1e-3}}};
}

ExponentResult sample_result(double v) {
  ExponentResult r;
  r.value = v;
  r.residual = 1e-5;
  r.bracket = {v - 1e-3, v + 1e-3};
  r.kind = ExponentKind::BetaPlus;
  r.notes = {"sample"};
  return r;
}

}  // namespace

TEST_SUITE("cache") {
  TEST_CASE("store and reload") {
    const auto path = fresh_file("roundtrip.jsonl");
    {
      ExponentCache c(path);
      CHECK_FALSE(c.find(base_key()));
      c.store(base_key(), sample_result(1.5));
      auto minus = base_key();
      minus.kind = ExponentKind::BetaMinus;
      c.store(minus, std::nullopt);
    }
    ExponentCache c(path);
    CHECK(c.records().size() == 2);
    const auto hit = c.find(base_key());
    REQUIRE(hit);
    REQUIRE(*hit);
    CHECK((*hit)->value == 1.5);
    CHECK((*hit)->bracket.second == 1.5 + 1e-3);
    CHECK((*hit)->notes == std::vector<std::string>{"sample"});
    auto minus = base_key();
    minus.kind = ExponentKind::BetaMinus;
    const auto absent = c.find(minus);
    REQUIRE(absent);
    CHECK_FALSE(*absent);
  }

  TEST_CASE("later records supersede earlier ones") {
    const auto path = fresh_file("supersede.jsonl");
    {
      ExponentCache c(path);
      c.store(base_key(), sample_result(1.4));
      c.store(base_key(), sample_result(1.5));
      CHECK((*c.find(base_key()))->value == 1.5);
    }
    ExponentCache c(path);
    CHECK(c.records().size() == 1);
    CHECK((*c.find(base_key()))->value == 1.5);
  }

  TEST_CASE("a record is reused only on an exact match") {
    const auto path = fresh_file("soundness.jsonl");
    ExponentCache c(path);
    c.store(base_key(), sample_result(1.5));
    CHECK(c.find(base_key()));

    auto k = base_key();
    k.op.alpha = 0.25;
    CHECK_FALSE(c.find(k));
    k = base_key();
    k.op.kind = OperatorKind::PucciPlus;
    CHECK_FALSE(c.find(k));
    k = base_key();
    k.cone = {2, ConeShape::PlanarSector, {}, 2.0, 0};
    CHECK_FALSE(c.find(k));
    k = base_key();
    k.quadrature.tol = 1e-4;
    CHECK_FALSE(c.find(k));
    k = base_key();
    k.quadrature.n_radial = 8;
    CHECK_FALSE(c.find(k));
    k = base_key();
    k.grid.nodes = 32;
    CHECK_FALSE(c.find(k));
    k = base_key();
    k.kind = ExponentKind::BetaMinus;
    CHECK_FALSE(c.find(k));
    k = base_key();
    k.request["root_tol"] = 1e-4;
    CHECK_FALSE(c.find(k));

    // The half plane and the sector of aperture pi are the same cone.
    k = base_key();
    k.cone = {2, ConeShape::PlanarSector, {}, std::numbers::pi, 0};
    CHECK(c.find(k));
  }

  TEST_CASE("malformed lines are skipped") {
    const auto path = fresh_file("malformed.jsonl");
    {
      ExponentCache c(path);
      c.store(base_key(), sample_result(1.5));
    }
    {
      std::ofstream out(path, std::ios::app);
      out << "{not json\n\n" << R"({"key": 1})" << "\n";
    }
    ExponentCache c(path);
    CHECK(c.skipped_lines() == 2);
    CHECK(c.records().size() == 1);
    CHECK(c.find(base_key()));
  }

  TEST_CASE("environment override of the cache path") {
    ::unsetenv("CONE_EXP_CACHE");
    CHECK(resolve_cache_path("a/b.jsonl") == fs::path("a/b.jsonl"));
    ::setenv("CONE_EXP_CACHE", "/tmp/override.jsonl", 1);
    CHECK(resolve_cache_path("a/b.jsonl") == fs::path("/tmp/override.jsonl"));
    ::setenv("CONE_EXP_CACHE", "", 1);
    CHECK(resolve_cache_path("a/b.jsonl") == fs::path("a/b.jsonl"));
    ::unsetenv("CONE_EXP_CACHE");
  }

  TEST_CASE("cached critical exponents") {
    const auto path = fresh_file("exponents.jsonl");
    QuadratureConfig q;
    q.n_radial = 4;
    q.n_angular = 4;
    const GridSpec grid{12, 0};
    ExponentCache c(path);
    bool hit = true;
    const auto first = cached_critical_exponents(&c, kHalf2, kFrac, q, grid, {}, &hit);
    CHECK_FALSE(hit);
    CHECK(first.scan.betas.size() > 0);

    ExponentCache reloaded(path);
    const auto second = cached_critical_exponents(&reloaded, kHalf2, kFrac, q, grid, {}, &hit);
    CHECK(hit);
    CHECK(second.beta_plus.value == first.beta_plus.value);
    REQUIRE(second.beta_minus);
    CHECK(second.beta_minus->value == first.beta_minus->value);
    CHECK(second.scan.betas.empty());

    // Predictions change only the scan start, not the key.
    ScanOptions o;
    o.predict_plus = 1.2;
    cached_critical_exponents(&reloaded, kHalf2, kFrac, q, grid, o, &hit);
    CHECK(hit);
    o.root_tol = 1e-4;
    cached_critical_exponents(&reloaded, kHalf2, kFrac, q, grid, o, &hit);
    CHECK_FALSE(hit);
  }
}
