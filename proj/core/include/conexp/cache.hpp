#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "conexp/exponents.hpp"
#include "conexp/model_json.hpp"

namespace conexp {

// Everything an exponent depends on. Two keys match only when every field is
// identical after cone canonicalization.
struct CacheKey {
  OperatorSpec op;
  ConeSpec cone;
  QuadratureConfig quadrature;
  GridSpec grid;
  ExponentKind kind = ExponentKind::BetaPlus;
  json request = json::object();  // search interval and root tolerance

  std::string fingerprint() const;
};

struct CacheRecord {
  json key;
  std::optional<ExponentResult> result;  // empty: the exponent was searched for and is absent
};

// Append-only JSON-lines store of exponent results. Lookups may run
// concurrently; writes are serialized and flushed line by line.
class ExponentCache {
 public:
  explicit ExponentCache(std::filesystem::path path);

  // nullopt: not cached. Inner nullopt: cached as absent.
  std::optional<std::optional<ExponentResult>> find(const CacheKey& key) const;
  void store(const CacheKey& key, const std::optional<ExponentResult>& result);

  const std::filesystem::path& path() const { return path_; }
  std::vector<CacheRecord> records() const;
  std::size_t skipped_lines() const { return skipped_; }

 private:
  std::filesystem::path path_;
  mutable std::mutex mutex_;
  std::vector<std::pair<std::string, CacheRecord>> entries_;
  std::size_t skipped_ = 0;
};

// CONE_EXP_CACHE, when set and nonempty, wins over the configured path.
std::filesystem::path resolve_cache_path(const std::string& configured);

// critical_exponents through the cache. On a hit the scan and eigenprofiles
// are empty.
CriticalExponents cached_critical_exponents(ExponentCache* cache, const ConeSpec& cone, const OperatorSpec& op,
                                            const QuadratureConfig& cfg, const GridSpec& grid,
                                            const ScanOptions& options = {}, bool* hit = nullptr);

}  // namespace conexp
