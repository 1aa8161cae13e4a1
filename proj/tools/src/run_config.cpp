#include "conexp_cli/run_config.hpp"

#include <algorithm>
#include <fstream>

#include "conexp/error.hpp"

namespace conexp::cli {

namespace {

const std::vector<std::pair<TaskKind, std::string>>& task_names() {
  static const std::vector<std::pair<TaskKind, std::string>> n{
      {TaskKind::Symbol, "Symbol"},   {TaskKind::DimensionLike, "DimensionLike"}, {TaskKind::Exponents, "Exponents"},
      {TaskKind::Branch, "Branch"},   {TaskKind::Kelvin, "Kelvin"},               {TaskKind::Barriers, "Barriers"},
      {TaskKind::Liouville, "Liouville"}, {TaskKind::Verify, "Verify"}};
  return n;
}

void fail(const std::string& msg) { throw Error(ErrorCode::InvalidConfig, msg); }

Task parse_task(const json& t) {
  Task task;
  if (t.is_string()) {
    task.kind = task_kind_from_string(t.get<std::string>());
    if (task.kind == TaskKind::Liouville) fail("Liouville task needs a list of powers: {\"Liouville\": [...]}");
    return task;
  }
  if (t.is_object() && t.size() == 1) {
    task.kind = task_kind_from_string(t.begin().key());
    if (task.kind != TaskKind::Liouville) fail("only the Liouville task takes arguments");
    if (!t.begin().value().is_array() || t.begin().value().empty()) fail("Liouville powers must be a nonempty list");
    task.p = t.begin().value().get<std::vector<double>>();
    return task;
  }
  fail("task entries are names or {\"Liouville\": [p, ...]}");
  return task;
}

}  // namespace

std::string task_name(TaskKind kind) {
  switch (kind) {
    case TaskKind::Symbol: return "symbol";
    case TaskKind::DimensionLike: return "dimension_like";
    case TaskKind::Exponents: return "exponents";
    case TaskKind::Branch: return "branch";
    case TaskKind::Kelvin: return "kelvin";
    case TaskKind::Barriers: return "barriers";
    case TaskKind::Liouville: return "liouville";
    case TaskKind::Verify: return "verify";
  }
  return "?";
}

TaskKind task_kind_from_string(const std::string& s) {
  for (const auto& [k, n] : task_names())
    if (n == s || task_name(k) == s) return k;
  fail("unknown task '" + s + "'");
  return TaskKind::Symbol;
}

std::vector<Task> ordered_tasks(const std::vector<Task>& tasks) {
  std::vector<Task> out;
  for (const auto& t : tasks) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Task& o) { return o.kind == t.kind; });
    if (it == out.end())
      out.push_back(t);
    else
      it->p.insert(it->p.end(), t.p.begin(), t.p.end());
  }
  std::stable_sort(out.begin(), out.end(), [](const Task& a, const Task& b) { return a.kind < b.kind; });
  return out;
}

RunConfig parse_config(const json& j) {
  if (!j.is_object()) fail("config must be a JSON object");
  RunConfig c;
  c.raw = j;
  try {
    if (!j.contains("operator")) fail("missing 'operator'");
    if (!j.contains("cone")) fail("missing 'cone'");
    j.at("operator").get_to(c.op);
    j.at("cone").get_to(c.cone);
    if (j.contains("quadrature")) j.at("quadrature").get_to(c.quadrature);
    if (j.contains("grid")) j.at("grid").get_to(c.grid);
    if (!j.contains("tasks") || !j.at("tasks").is_array()) fail("missing 'tasks' list");
    for (const auto& t : j.at("tasks")) c.tasks.push_back(parse_task(t));
    if (j.contains("output")) c.output = j.at("output").get<std::string>();
    if (j.contains("cache")) c.cache = j.at("cache").get<std::string>();
    if (j.contains("symbol_betas")) c.symbol_betas = j.at("symbol_betas").get<std::vector<double>>();
    if (j.contains("branch_betas")) c.branch_betas = j.at("branch_betas").get<std::vector<double>>();
  } catch (const json::exception& e) {
    fail(std::string("config schema: ") + e.what());
  }
  if (c.tasks.empty()) fail("tasks must be nonempty");
  std::vector<std::string> problems = validate(c.op);
  for (auto& p : validate(c.cone)) problems.push_back(p);
  for (auto& p : validate(c.quadrature)) problems.push_back(p);
  if (c.grid.nodes < 4) problems.push_back("grid.nodes must be at least 4");
  if (c.cone.dimension != 2 && c.cone.dimension != 3) problems.push_back("dimension must be 2 or 3");
  if (!problems.empty()) {
    std::string msg = problems.front();
    for (std::size_t i = 1; i < problems.size(); ++i) msg += "; " + problems[i];
    fail(msg);
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

}  // namespace conexp::cli
