#include <doctest.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "conexp/error.hpp"
#include "conexp_cli/acceptance.hpp"
#include "conexp_cli/app.hpp"
#include "conexp_cli/run_config.hpp"

using namespace conexp;
using namespace conexp::cli;
namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
  const fs::path dir = fs::temp_directory_path() / ("conexp_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

json base_config(const std::string& name) {
  json j = json::parse(R"({
    "operator": {"kind": "FractionalLaplacian", "lambda": 1, "Lambda": 1, "alpha": 0.5},
    "cone": {"dimension": 2, "shape": "HalfSpace"},
    "quadrature": {"n_radial": 4, "n_angular": 4},
    "grid": {"nodes": 12, "grading": 0}
  })");
  j["output"] = (work_dir() / name).string();
  return j;
}

fs::path write_config(const json& j, const std::string& name) {
  const fs::path p = work_dir() / (name + ".json");
  std::ofstream(p) << j.dump(2);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

RunOptions quiet() {
  static std::ostringstream sink;
  return {1, &sink};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("config parsing") {
    json j = base_config("parse");
    j["tasks"] = json::array({"Exponents", json{{"Liouville", {1.6, -0.5}}}, "Symbol"});
    const RunConfig c = parse_config(j);
    CHECK(c.tasks.size() == 3);
    const auto ordered = ordered_tasks(c.tasks);
    CHECK(ordered.front().kind == TaskKind::Symbol);
    CHECK(ordered.back().kind == TaskKind::Liouville);
    CHECK(ordered.back().p == std::vector<double>{1.6, -0.5});
    CHECK(task_name(TaskKind::DimensionLike) == "dimension_like");
    CHECK(task_kind_from_string("Kelvin") == TaskKind::Kelvin);

    auto code = [](const json& bad) {
      try {
        parse_config(bad);
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::BetaZero;
    };
    j["tasks"] = json::array();
    CHECK(code(j) == ErrorCode::InvalidConfig);
    j["tasks"] = json::array({"Nonsense"});
    CHECK(code(j) == ErrorCode::InvalidConfig);
    j["tasks"] = json::array({"Liouville"});
    CHECK(code(j) == ErrorCode::InvalidConfig);
    j["tasks"] = json::array({"Exponents"});
    j["operator"]["alpha"] = 1.5;
    CHECK(code(j) == ErrorCode::InvalidConfig);
  }

  TEST_CASE("empty task list exits with code 2") {
    json j = base_config("empty");
    j["tasks"] = json::array();
    const auto path = write_config(j, "empty");
    std::string arg0 = "cone_exp", arg1 = "-q", arg2 = "run", arg3 = path.string();
    char* argv[] = {arg0.data(), arg1.data(), arg2.data(), arg3.data()};
    CHECK(main_entry(4, argv) == kConfigError);

    const char* bin = std::getenv("CONEXP_CLI_BIN");
    if (bin && *bin) {
      const std::string cmd = std::string(bin) + " -q run " + path.string() + " > /dev/null 2>&1";
      const int status = std::system(cmd.c_str());
      CHECK(WEXITSTATUS(status) == 2);
      const std::string missing = std::string(bin) + " -q run " + (work_dir() / "nope.json").string() + " > /dev/null 2>&1";
      CHECK(WEXITSTATUS(std::system(missing.c_str())) == 2);
    }
  }

  TEST_CASE("symbol task: convex curve with two roots, deterministic output") {
    json j = base_config("symbol");
    j["tasks"] = json::array({"Symbol"});
    const RunConfig c = parse_config(j);
    REQUIRE(run(c, quiet()) == kOk);
    const fs::path csv = c.output + ".symbol.csv";
    const auto rows = csv_rows(csv);
    REQUIRE(rows.size() == 41);
    CHECK(rows[0] == std::vector<std::string>{"beta", "c", "g"});
    int changes = 0;
    for (size_t i = 2; i < rows.size(); ++i)
      if ((std::stod(rows[i][1]) > 0) != (std::stod(rows[i - 1][1]) > 0)) ++changes;
    CHECK(changes == 2);
    const json report = json::parse(slurp(c.output + ".symbol.json"));
    CHECK(report.contains("grid_meta"));
    CHECK(report.contains("generated_at"));

    const std::string first = slurp(csv);
    REQUIRE(run(c, quiet()) == kOk);
    CHECK(slurp(csv) == first);
  }

  TEST_CASE("exponents and Liouville verdicts; cache speeds up the rerun") {
    json j = base_config("liouville");
    j["tasks"] = json::array({"Exponents", json{{"Liouville", {1.6, 2.0, -0.5, -1.5}}}});
    const fs::path cache = work_dir() / "exponents.jsonl";
    fs::remove(cache);
    j["cache"] = cache.string();
    const RunConfig c = parse_config(j);

    using clk = std::chrono::steady_clock;
    auto t0 = clk::now();
    REQUIRE(run(c, quiet()) == kOk);
    const double cold = std::chrono::duration<double>(clk::now() - t0).count();
    t0 = clk::now();
    REQUIRE(run(c, quiet()) == kOk);
    const double warm = std::chrono::duration<double>(clk::now() - t0).count();
    INFO("cold " << cold << " s, warm " << warm << " s");
    CHECK(cold >= 5 * warm);

    const auto ex = csv_rows(c.output + ".exponents.csv");
    REQUIRE(ex.size() == 3);
    CHECK(std::stod(ex[1][1]) == doctest::Approx(1.5).epsilon(1e-2));
    CHECK(std::stod(ex[2][1]) == doctest::Approx(-0.5).epsilon(1e-2));
    const json exr = json::parse(slurp(c.output + ".exponents.json"));
    CHECK(exr["results"]["cache_hit"] == true);

    const auto lv = csv_rows(c.output + ".liouville.csv");
    REQUIRE(lv.size() == 5);
    CHECK(lv[1][3] == "NoPositiveSupersolution");
    CHECK(lv[2][3] == "Inconclusive");
    CHECK(lv[3][3] == "NoPositiveSupersolution");
    CHECK(lv[4][3] == "UnboundedSupersolutionsOnly");

    std::ostringstream listing;
    CHECK(show_cache(cache.string(), listing) == 0);
    CHECK(listing.str().find("BetaPlus") != std::string::npos);
  }

  TEST_CASE("tightened tolerance without refinement fails with ToleranceNotMet") {
    AcceptanceSettings s;
    s.only = {5};
    s.threads = 1;
    std::vector<CriterionResult> loose = run_acceptance(s);
    REQUIRE(loose.size() == 1);
    CHECK(loose[0].pass);
    s.quadrature.tol /= 100;
    const auto tight = run_acceptance(s);
    REQUIRE(tight.size() == 1);
    CHECK_FALSE(tight[0].pass);
    CHECK(tight[0].code == "ToleranceNotMet");
    CHECK(format_line(tight[0]).find("FAIL") != std::string::npos);
  }
}
