#include "conexp_cli/app.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "conexp/cache.hpp"
#include "conexp/error.hpp"
#include "conexp/exponents.hpp"
#include "conexp/liouville.hpp"
#include "conexp/parallel.hpp"
#include "conexp_cli/acceptance.hpp"

namespace conexp::cli {

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string timestamp() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

struct Report {
  std::string task;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  json results = json::object();
  std::string status = "ok";
  std::string error;
  std::string error_code;
  bool verified = true;
  double seconds = 0;
};

void write_report(const RunConfig& c, const Report& r) {
  const std::filesystem::path prefix(c.output);
  if (prefix.has_parent_path()) std::filesystem::create_directories(prefix.parent_path());
  const std::string base = c.output + "." + r.task;
  std::ofstream csv(base + ".csv");
  if (!csv) throw Error(ErrorCode::InvalidConfig, "cannot write " + base + ".csv");
  for (std::size_t i = 0; i < r.header.size(); ++i) csv << (i ? "," : "") << r.header[i];
  csv << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) csv << (i ? "," : "") << csv_field(row[i]);
    csv << '\n';
  }
  json j{{"task", r.task},
         {"status", r.status},
         {"verification_passed", r.verified},
         {"results", r.results},
         {"config", c.raw},
         {"grid_meta", GridMeta{c.quadrature, c.grid}},
         {"generated_at", timestamp()},
         {"elapsed_seconds", r.seconds}};
  if (!r.error.empty()) {
    j["error"] = r.error;
    j["error_code"] = r.error_code;
  }
  std::ofstream js(base + ".json");
  if (!js) throw Error(ErrorCode::InvalidConfig, "cannot write " + base + ".json");
  js << j.dump(2) << '\n';
}

std::vector<std::string> exponent_row(const std::string& kind, const std::optional<ExponentResult>& e) {
  if (!e) return {kind, "", "", "", "", "absent"};
  return {kind, num(e->value), num(e->residual), num(e->bracket.first), num(e->bracket.second), "found"};
}

class Session {
 public:
  Session(const RunConfig& c, const RunOptions& o) : c_(c), o_(o) {
    threads_ = o.threads > 0 ? o.threads : default_threads();
    const auto path = resolve_cache_path(c.cache);
    if (!path.empty()) cache_ = std::make_unique<ExponentCache>(path);
  }

  int threads() const { return threads_; }
  ExponentCache* cache() { return cache_.get(); }
  std::ostream& log() { return o_.log ? *o_.log : null_; }

  const CriticalExponents& exponents(bool* hit = nullptr) {
    if (!ex_) {
      ScanOptions so;
      so.threads = threads_;
      bool h = false;
      ex_ = cached_critical_exponents(cache_.get(), c_.cone, c_.op, c_.quadrature, c_.grid, so, &h);
      hit_ = h;
    }
    if (hit) *hit = hit_;
    return *ex_;
  }

  void task(const Task& t, Report& r) {
    switch (t.kind) {
      case TaskKind::Symbol: symbol(r); break;
      case TaskKind::DimensionLike: dimension(r); break;
      case TaskKind::Exponents: exps(r); break;
      case TaskKind::Branch: branch(r); break;
      case TaskKind::Kelvin: kelvin(r); break;
      case TaskKind::Barriers: barriers(r); break;
      case TaskKind::Liouville: liouville(t, r); break;
      case TaskKind::Verify: verify_task(r); break;
    }
  }

 private:
  const RunConfig& c_;
  RunOptions o_;
  int threads_ = 1;
  std::unique_ptr<ExponentCache> cache_;
  std::optional<CriticalExponents> ex_;
  bool hit_ = false;
  std::ostream null_{nullptr};

  int N() const { return c_.cone.dimension; }

  void symbol(Report& r) {
    std::vector<double> betas = c_.symbol_betas;
    if (betas.empty()) {
      const double lo = -2 * c_.op.alpha + 0.05, hi = N() - 0.05;
      for (int i = 0; i < 40; ++i) betas.push_back(lo + (hi - lo) * i / 39);
    }
    const auto curve = symbol_curve(betas, c_.op, N(), c_.quadrature);
    r.header = {"beta", "c", "g"};
    int changes = 0;
    for (std::size_t i = 0; i < betas.size(); ++i) {
      const double b = betas[i], cv = curve.values[i];
      r.rows.push_back({num(b), num(cv), b == 0 ? "" : num(g_from_symbol(b, cv))});
      if (i > 0 && (cv > 0) != (curve.values[i - 1] > 0)) ++changes;
    }
    r.results["sign_changes"] = changes;
  }

  void dimension(Report& r) {
    const auto d = dimension_like(c_.op, N(), c_.quadrature);
    r.header = {"kind", "value", "residual", "bracket_lo", "bracket_hi", "status"};
    r.rows.push_back(exponent_row("NTildePlus", d.plus));
    r.rows.push_back(exponent_row("NTildeMinus", d.minus));
    r.results["n_tilde_plus"] = d.plus;
    r.results["n_tilde_minus"] = d.minus;
  }

  void exps(Report& r) {
    bool hit = false;
    const auto& ce = exponents(&hit);
    r.header = {"kind", "value", "residual", "bracket_lo", "bracket_hi", "status"};
    r.rows.push_back(exponent_row("BetaPlus", ce.beta_plus));
    r.rows.push_back(exponent_row("BetaMinus", ce.beta_minus));
    r.results["beta_plus"] = ce.beta_plus;
    r.results["beta_minus"] = ce.beta_minus ? json(*ce.beta_minus) : json(nullptr);
    r.results["diagnostics"] = ce.diagnostics;
    r.results["cache_hit"] = hit;
    r.results["scan"] = json{{"beta", ce.scan.betas}, {"mu", ce.scan.values}};
    std::vector<std::string> problems = validate(ce.beta_plus, N(), c_.op.alpha);
    if (ce.beta_minus)
      for (auto& p : validate(*ce.beta_minus, N(), c_.op.alpha)) problems.push_back(p);
    r.results["bound_violations"] = problems;
    r.verified = problems.empty();
  }

  void branch(Report& r) {
    const auto& ce = exponents();
    const double bp = ce.beta_plus.value;
    std::vector<double> betas = c_.branch_betas;
    if (betas.empty())
      for (int i = 0; i < 10; ++i) betas.push_back(bp * (0.6 + 0.37 * i / 9));
    const auto br = fixed_point_branch(c_.cone, c_.op, c_.quadrature, c_.grid, betas, bp);
    r.header = {"beta", "norm", "iterations", "converged"};
    for (const auto& p : br.points)
      r.rows.push_back({num(p.beta), num(p.norm), std::to_string(p.iterations), p.converged ? "1" : "0"});
    const double dev = std::abs(br.blowup - bp);
    r.results["beta_plus"] = bp;
    r.results["gamma_initial"] = br.gamma_initial;
    r.results["gamma_final"] = br.gamma_final;
    r.results["blowup"] = br.blowup;
    r.results["deviation"] = dev;
    r.verified = std::isfinite(dev) && dev < 5e-2;
  }

  void kelvin(Report& r) {
    r.header = {"target", "deviation", "status"};
    if (c_.op.kind != OperatorKind::FractionalLaplacian) {
      r.rows.push_back({num(N() - 2 * c_.op.alpha), "", "skipped"});
      r.results["skipped"] = "the Kelvin relation is checked for the fractional Laplacian only";
      return;
    }
    const double dev = kelvin_relation_check(c_.cone, c_.op.alpha, c_.quadrature, c_.grid);
    r.verified = dev < 2e-2;
    r.rows.push_back({num(N() - 2 * c_.op.alpha), num(dev), r.verified ? "pass" : "fail"});
    r.results["deviation"] = dev;
  }

  void barriers(Report& r) {
    const auto& ce = exponents();
    BarrierOptions bo;
    bo.threads = threads_;
    r.header = {"check", "beta", "parameter", "observed", "pass"};
    json checks = json::array();
    auto add = [&](const std::string& name, double beta, const BarrierCheck& b) {
      r.rows.push_back({name, num(beta), num(b.parameter), num(b.observed), b.pass ? "1" : "0"});
      checks.push_back(json{{"check", name}, {"beta", beta}, {"observed", b.observed}, {"pass", b.pass},
                            {"parameter", b.parameter}, {"notes", b.notes}});
      r.verified = r.verified && b.pass;
    };
    for (double shift : {0.1, 0.3}) {
      const double beta = ce.beta_plus.value + shift;
      if (beta < N()) add("subsolution", beta, barrier_subsolution_check(c_.cone, c_.op, beta, ce, c_.quadrature, c_.grid, bo));
    }
    if (ce.beta_minus) {
      const double beta = ce.beta_minus->value - 0.1;
      if (beta > -2 * c_.op.alpha)
        add("supersolution", beta, barrier_supersolution_check(c_.cone, c_.op, beta, ce, c_.quadrature, c_.grid, bo));
      const Interval h = hopf_window(ce.beta_minus->value, c_.op.alpha);
      r.results["hopf_window"] = {h.lo, h.hi};
    }
    r.results["checks"] = checks;
  }

  void liouville(const Task& t, Report& r) {
    VerdictContext ctx;
    ctx.exponents = exponents();
    const auto& ce = *ctx.exponents;
    const double pp = liouville_threshold(ce.beta_plus.value, c_.op.alpha);
    const double pm = ce.beta_minus ? liouville_threshold(ce.beta_minus->value, c_.op.alpha) : std::nan("");
    r.header = {"p", "p_star_plus", "p_star_minus", "verdict"};
    json verdicts = json::array();
    for (double p : t.p) {
      const auto v = liouville_verdict(p, c_.cone, c_.op, c_.quadrature, ctx);
      r.rows.push_back({num(p), num(pp), num(pm), to_string(v)});
      verdicts.push_back(json{{"p", p}, {"verdict", to_string(v)}});
    }
    r.results["p_star_plus"] = pp;
    r.results["p_star_minus"] = std::isnan(pm) ? json(nullptr) : json(pm);
    r.results["verdicts"] = verdicts;
  }

  void verify_task(Report& r) {
    AcceptanceSettings s;
    s.quadrature = c_.quadrature;
    s.grid = c_.grid;
    s.threads = threads_;
    s.cache = cache_.get();
    const auto results = run_acceptance(s, [&](const CriterionResult& cr) { log() << format_line(cr) << std::endl; });
    r.header = {"id", "name", "pass", "code", "detail"};
    json arr = json::array();
    for (const auto& cr : results) {
      r.rows.push_back({std::to_string(cr.id), cr.name, cr.pass ? "PASS" : "FAIL", cr.code, cr.detail});
      arr.push_back(json{{"id", cr.id}, {"name", cr.name}, {"pass", cr.pass}, {"code", cr.code},
                         {"detail", cr.detail}, {"seconds", cr.seconds}});
      r.verified = r.verified && cr.pass;
    }
    r.results["criteria"] = arr;
  }
};

int run_tasks(const RunConfig& config, const std::vector<Task>& tasks, const RunOptions& options) {
  std::unique_ptr<Session> session;
  try {
    session = std::make_unique<Session>(config, options);
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return kConfigError;
  }
  int code = kOk;
  for (const Task& t : ordered_tasks(tasks)) {
    Report r;
    r.task = task_name(t.kind);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      session->task(t, r);
    } catch (const Error& e) {
      r.status = "error";
      r.error = e.what();
      r.error_code = to_string(e.code());
      r.verified = false;
    } catch (const std::exception& e) {
      r.status = "error";
      r.error = e.what();
      r.error_code = "Unexpected";
      r.verified = false;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    try {
      write_report(config, r);
    } catch (const std::exception& e) {
      std::cerr << e.what() << '\n';
      return kConfigError;
    }
    if (r.status == "error") {
      session->log() << r.task << ": error: " << r.error << '\n';
      code = r.error_code == "InvalidConfig" ? std::max(code, int(kConfigError)) : int(kNumericalFailure);
    } else {
      session->log() << r.task << ": " << (r.verified ? "ok" : "verification failed") << " (" << r.seconds << " s)\n";
      if (!r.verified && code == kOk) code = kVerificationFailed;
    }
  }
  return code;
}

}  // namespace

int run(const RunConfig& config, const RunOptions& options) { return run_tasks(config, config.tasks, options); }

int verify(const RunConfig& config, const RunOptions& options) {
  return run_tasks(config, {Task{TaskKind::Verify, {}}}, options);
}

int sweep(const RunConfig& config, const std::string& param, double from, double to, int steps,
          const RunOptions& options) {
  if (steps < 1) {
    std::cerr << "steps must be positive\n";
    return kConfigError;
  }
  std::unique_ptr<ExponentCache> cache;
  const auto path = resolve_cache_path(config.cache);
  Report r;
  r.task = "sweep";
  r.header = {param, "beta_plus", "beta_minus", "residual_plus", "residual_minus"};
  r.results["param"] = param;
  const auto t0 = std::chrono::steady_clock::now();
  ScanOptions so;
  so.threads = options.threads > 0 ? options.threads : default_threads();
  int code = kOk;
  try {
    if (!path.empty()) cache = std::make_unique<ExponentCache>(path);
    for (int i = 0; i < steps; ++i) {
      const double v = steps == 1 ? from : from + (to - from) * i / (steps - 1);
      RunConfig c = config;
      if (param == "aperture") {
        if (c.cone.shape != ConeShape::PlanarSector) throw Error(ErrorCode::InvalidConfig, "aperture sweeps need a PlanarSector");
        c.cone.aperture = v;
      } else if (param == "half_angle") {
        if (c.cone.shape != ConeShape::AxisymmetricCap) throw Error(ErrorCode::InvalidConfig, "half_angle sweeps need an AxisymmetricCap");
        c.cone.half_angle = v;
      } else if (param == "alpha") {
        c.op.alpha = v;
      } else if (param == "lambda") {
        c.op.lambda = v;
      } else if (param == "Lambda") {
        c.op.Lambda = v;
      } else {
        throw Error(ErrorCode::InvalidConfig, "unknown sweep parameter '" + param + "'");
      }
      for (const auto& p : validate(c.op)) throw Error(ErrorCode::InvalidConfig, p);
      for (const auto& p : validate(c.cone)) throw Error(ErrorCode::InvalidConfig, p);
      const auto ce = cached_critical_exponents(cache.get(), c.cone, c.op, c.quadrature, c.grid, so);
      so.predict_plus = ce.beta_plus.value;
      so.predict_minus = ce.beta_minus ? ce.beta_minus->value : std::nan("");
      r.rows.push_back({num(v), num(ce.beta_plus.value), ce.beta_minus ? num(ce.beta_minus->value) : "",
                        num(ce.beta_plus.residual), ce.beta_minus ? num(ce.beta_minus->residual) : ""});
      if (options.log) *options.log << param << " = " << num(v) << ": beta+ " << num(ce.beta_plus.value) << '\n';
    }
  } catch (const Error& e) {
    r.status = "error";
    r.error = e.what();
    r.error_code = to_string(e.code());
    code = e.code() == ErrorCode::InvalidConfig ? kConfigError : kNumericalFailure;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  try {
    write_report(config, r);
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kConfigError;
  }
  if (code != kOk) std::cerr << r.error << '\n';
  return code;
}

int show_cache(const std::string& path, std::ostream& out) {
  if (!std::filesystem::exists(path)) {
    std::cerr << "no cache at " << path << '\n';
    return kConfigError;
  }
  const ExponentCache cache(path);
  out << "kind,operator,alpha,cone,value,residual\n";
  for (const auto& rec : cache.records()) {
    const auto& k = rec.key;
    std::string cone = k.at("cone").at("shape").get<std::string>() + "/N=" + std::to_string(k.at("cone").at("dimension").get<int>());
    if (k.at("cone").contains("aperture")) cone += "/aperture=" + num(k.at("cone").at("aperture").get<double>());
    if (k.at("cone").contains("half_angle")) cone += "/half_angle=" + num(k.at("cone").at("half_angle").get<double>());
    out << k.at("kind").get<std::string>() << ',' << k.at("operator").at("kind").get<std::string>() << ','
        << num(k.at("operator").at("alpha").get<double>()) << ',' << cone << ','
        << (rec.result ? num(rec.result->value) : "absent") << ',' << (rec.result ? num(rec.result->residual) : "")
        << '\n';
  }
  if (cache.skipped_lines()) out << "# skipped " << cache.skipped_lines() << " malformed lines\n";
  return kOk;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Critical exponents of nonlocal extremal operators in cones"};
  app.require_subcommand(1);
  int threads = 0;
  bool quiet = false;
  app.add_option("--threads", threads, "worker threads (default: all cores)")->check(CLI::NonNegativeNumber);
  app.add_flag("-q,--quiet", quiet, "suppress progress output");

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "execute the tasks of a config file");
  run_cmd->add_option("config", config_path, "JSON config")->required();
  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite at the configured resolution");
  verify_cmd->add_option("config", config_path, "JSON config")->required();
  std::string param;
  double from = 0, to = 0;
  int steps = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "critical exponents over a parameter range");
  sweep_cmd->add_option("--param", param, "aperture, half_angle, alpha, lambda or Lambda")->required();
  sweep_cmd->add_option("--from", from)->required();
  sweep_cmd->add_option("--to", to)->required();
  sweep_cmd->add_option("--steps", steps)->required();
  sweep_cmd->add_option("config", config_path, "JSON config")->required();
  std::string cache_path;
  auto* show_cmd = app.add_subcommand("show-cache", "list the records of an exponent cache");
  show_cmd->add_option("path", cache_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  if (show_cmd->parsed()) return show_cache(cache_path, std::cout);

  RunConfig config;
  try {
    config = load_config(config_path);
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return kConfigError;
  }
  RunOptions opt;
  opt.threads = threads;
  opt.log = quiet ? nullptr : &std::cout;
  if (run_cmd->parsed()) return run(config, opt);
  if (verify_cmd->parsed()) {
    RunOptions vo = opt;
    vo.log = &std::cout;
    return verify(config, vo);
  }
  return sweep(config, param, from, to, steps, opt);
}

}  // namespace conexp::cli
