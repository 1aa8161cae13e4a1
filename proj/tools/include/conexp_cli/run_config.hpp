#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "conexp/model.hpp"
#include "conexp/model_json.hpp"

namespace conexp::cli {

enum class TaskKind { Symbol, DimensionLike, Exponents, Branch, Kelvin, Barriers, Liouville, Verify };

struct Task {
  TaskKind kind = TaskKind::Exponents;
  std::vector<double> p;  // Liouville powers
};

struct RunConfig {
  OperatorSpec op;
  ConeSpec cone;
  QuadratureConfig quadrature;
  GridSpec grid;
  std::vector<Task> tasks;
  std::string output = "cone_exp";
  std::string cache;                // empty: no cache
  std::vector<double> symbol_betas;  // empty: 40 points in (-2alpha + 0.05, N - 0.05)
  std::vector<double> branch_betas;  // empty: derived from beta+
  json raw;                          // the parsed document, echoed into reports
};

// Throws Error(InvalidConfig) on any schema or validation problem.
RunConfig parse_config(const json& j);
RunConfig load_config(const std::filesystem::path& path);

// Lower-case file stem used in report names.
std::string task_name(TaskKind kind);
TaskKind task_kind_from_string(const std::string& s);

// Tasks sorted into dependency order, duplicates removed (Liouville lists merge).
std::vector<Task> ordered_tasks(const std::vector<Task>& tasks);

}  // namespace conexp::cli
