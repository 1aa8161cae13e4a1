#include "conexp/cache.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "conexp/error.hpp"

namespace conexp {

namespace {

json key_json(const CacheKey& k) {
  return json{{"operator", k.op},     {"cone", canonicalize(k.cone)}, {"quadrature", k.quadrature},
              {"grid", k.grid},       {"kind", to_string(k.kind)},    {"request", k.request}};
}

}  // namespace

std::string CacheKey::fingerprint() const { return key_json(*this).dump(); }

ExponentCache::ExponentCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      CacheRecord rec;
      rec.key = j.at("key");
      if (!j.at("result").is_null()) rec.result = j.at("result").get<ExponentResult>();
      const std::string fp = rec.key.dump();
      // Later lines win, so a rerun can supersede an older record.
      auto it = std::find_if(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == fp; });
      if (it != entries_.end())
        it->second = std::move(rec);
      else
        entries_.emplace_back(fp, std::move(rec));
    } catch (const std::exception&) {
      ++skipped_;
    }
  }
}

std::optional<std::optional<ExponentResult>> ExponentCache::find(const CacheKey& key) const {
  const std::string fp = key.fingerprint();
  std::lock_guard lock(mutex_);
  for (const auto& [f, rec] : entries_)
    if (f == fp) return rec.result;
  return std::nullopt;
}

void ExponentCache::store(const CacheKey& key, const std::optional<ExponentResult>& result) {
  CacheRecord rec{key_json(key), result};
  const std::string fp = rec.key.dump();
  json line{{"key", rec.key}, {"result", result ? json(*result) : json(nullptr)}};
  std::lock_guard lock(mutex_);
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  std::ofstream out(path_, std::ios::app);
  if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write cache " + path_.string());
  out << line.dump() << '\n';
  out.flush();
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == fp; });
  if (it != entries_.end())
    it->second = std::move(rec);
  else
    entries_.emplace_back(fp, std::move(rec));
}

std::vector<CacheRecord> ExponentCache::records() const {
  std::lock_guard lock(mutex_);
  std::vector<CacheRecord> out;
  for (const auto& e : entries_) out.push_back(e.second);
  return out;
}

std::filesystem::path resolve_cache_path(const std::string& configured) {
  const char* env = std::getenv("CONE_EXP_CACHE");
  if (env && *env) return env;
  return configured;
}

CriticalExponents cached_critical_exponents(ExponentCache* cache, const ConeSpec& cone, const OperatorSpec& op,
                                            const QuadratureConfig& cfg, const GridSpec& grid,
                                            const ScanOptions& options, bool* hit) {
  if (hit) *hit = false;
  if (!cache) return critical_exponents(cone, op, cfg, grid, options);
  const int N = canonicalize(cone).dimension;
  CacheKey kp{op, cone, cfg, grid, ExponentKind::BetaPlus, json{{"interval", {0, N}}, {"root_tol", options.root_tol}}};
  CacheKey km{op, cone, cfg, grid, ExponentKind::BetaMinus,
              json{{"interval", {-2 * op.alpha, 0}}, {"root_tol", options.root_tol}}};
  auto fp = cache->find(kp);
  auto fm = options.want_minus ? cache->find(km) : std::optional<std::optional<ExponentResult>>{std::nullopt};
  if (fp && *fp && (!options.want_minus || fm)) {
    CriticalExponents out;
    out.beta_plus = **fp;
    if (options.want_minus) {
      out.beta_minus = *fm;
      if (!*fm) out.diagnostics.push_back("beta- absent (cached)");
    }
    if (hit) *hit = true;
    return out;
  }
  CriticalExponents out = critical_exponents(cone, op, cfg, grid, options);
  cache->store(kp, out.beta_plus);
  if (options.want_minus) cache->store(km, out.beta_minus);
  return out;
}

}  // namespace conexp
