#pragma once

#include <functional>
#include <string>
#include <vector>

#include "conexp/cache.hpp"
#include "conexp/model.hpp"

namespace conexp::cli {

struct AcceptanceSettings {
  QuadratureConfig quadrature;
  GridSpec grid;
  // Resolution of the operator/aperture sweeps (criterion 6).
  QuadratureConfig sweep_quadrature = [] {
    QuadratureConfig q;
    q.n_radial = 4;
    q.n_angular = 4;
    return q;
  }();
  GridSpec sweep_grid{16, 0};
  int threads = 0;
  ExponentCache* cache = nullptr;
  std::vector<int> only;  // empty: all criteria
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  std::string code;  // error code name when the criterion failed through an error or a tolerance
  double seconds = 0;
};

inline constexpr int kCriterionCount = 12;

std::vector<CriterionResult> run_acceptance(const AcceptanceSettings& settings,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

std::string format_line(const CriterionResult& r);

}  // namespace conexp::cli
