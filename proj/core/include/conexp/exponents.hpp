#pragma once

// Radial symbol c(beta), dimension-like numbers, the principal eigenvalue map mu(beta)
// of -G_beta on the cone section, critical exponents beta+- and the fixed-point branch
// of the auxiliary problem.

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "conexp/model.hpp"
#include "conexp/operator_eval.hpp"

namespace conexp {

struct SymbolCurve {
  enum class Kind { RadialSymbol, ConeEigenvalue };
  std::vector<double> betas;
  std::vector<double> values;
  Kind kind = Kind::RadialSymbol;
};

struct BranchState {
  double beta = 0;
  double gamma = 0;
  std::vector<double> psi;
  std::vector<double> u;
  double norm = 0;
};

// F(|x|^-beta) = c(beta) |x|^(-beta-2alpha) in the whole space (evaluated at e_N).
double c_of_beta(double beta, const OperatorSpec& op, int N, const QuadratureConfig& cfg);
// max{c, -beta} for beta > 0, max{c, beta} for beta < 0.
double g_of_beta(double beta, const OperatorSpec& op, int N, const QuadratureConfig& cfg);
double g_from_symbol(double beta, double c);

SymbolCurve symbol_curve(const std::vector<double>& betas, const OperatorSpec& op, int N,
                         const QuadratureConfig& cfg);

struct DimensionLike {
  ExponentResult plus;   // from M+ (lambda, Lambda)
  ExponentResult minus;  // from M- (lambda, Lambda)
};

DimensionLike dimension_like(const OperatorSpec& op, int N, const QuadratureConfig& cfg);

struct EigenPair {
  double mu = 0;
  Eigen::VectorXd f;  // positive at the nodes, sup f = 1
  double cw_lo = 0, cw_hi = 0;  // Collatz-Wielandt interval
  double residual = 0;          // sup |G[f] + mu f|
  int policy_iterations = 0;
};

// Principal eigenpair of -G_beta for an assembled system; warm starts the policy.
EigenPair principal_eigenpair(const ReducedSystem& sys, const Eigen::VectorXd* warm = nullptr);

EigenPair principal_eigenvalue(double beta, const ConeSpec& cone, const OperatorSpec& op,
                               const QuadratureConfig& cfg, const GridSpec& grid,
                               const Eigen::VectorXd* warm = nullptr);

struct ScanOptions {
  // Starting points of the bracket scans; NaN picks a default.
  double predict_plus = std::numeric_limits<double>::quiet_NaN();
  double predict_minus = std::numeric_limits<double>::quiet_NaN();
  double root_tol = 1e-3;
  bool want_minus = true;
  int threads = 0;
};

struct CriticalExponents {
  ExponentResult beta_plus;
  std::optional<ExponentResult> beta_minus;
  SymbolCurve scan;                   // all mu evaluations, sorted by beta
  std::vector<std::string> diagnostics;
  Eigen::VectorXd f_plus, f_minus;    // eigenprofiles at the returned roots
};

CriticalExponents critical_exponents(const ConeSpec& cone, const OperatorSpec& op, const QuadratureConfig& cfg,
                                     const GridSpec& grid, const ScanOptions& options = {});

struct AuxiliaryOptions {
  std::optional<Eigen::VectorXd> initial;  // initial guess (policy seed)
  double c_star = 0;                       // lower bound for c*; the current beta is always included
  int max_iterations = 50;
};

struct AuxiliaryResult {
  Eigen::VectorXd u;
  double k = 0;       // supersolution level
  double c = 0;       // radial symbol used
  double g = 0;
  double c_star = 0;
  int iterations = 0;
};

// Solves  -G[u] + g(u - psi) = beta psi - gamma u + beta  (beta, gamma > 0) or
//         -G[u] + g(u - psi) = gamma u - beta psi - beta  (beta, gamma < 0) at the nodes.
AuxiliaryResult solve_auxiliary(const ReducedSystem& sys, double gamma, const Eigen::VectorXd& psi,
                                const AuxiliaryOptions& options = {});
AuxiliaryResult solve_auxiliary(double beta, double gamma, const Eigen::VectorXd& psi, const ConeSpec& cone,
                                const OperatorSpec& op, const QuadratureConfig& cfg, const GridSpec& grid,
                                const AuxiliaryOptions& options = {});

struct BranchPoint {
  double beta = 0;
  double norm = 0;
  int iterations = 0;
  bool converged = false;
};

struct BranchResult {
  std::vector<BranchPoint> points;
  double gamma_initial = 0;
  double gamma_final = 0;
  double blowup = 0;  // zero of the linear extrapolation of 1/norm
  std::vector<BranchState> states;
};

BranchResult fixed_point_branch(const ConeSpec& cone, const OperatorSpec& op, const QuadratureConfig& cfg,
                                const GridSpec& grid, const std::vector<double>& beta_grid, double beta_plus,
                                int max_iterations = 5000);

// |beta+ + beta- - (N - 2alpha)| for the fractional Laplacian.
double kelvin_relation_check(const ConeSpec& cone, double alpha, const QuadratureConfig& cfg, const GridSpec& grid);

// Bracketing root finder (Illinois variant of regula falsi with bisection guard).
struct RootResult {
  double x = 0, fx = 0;
  double a = 0, b = 0;
  int evaluations = 0;
};
RootResult find_root(const std::function<double(double)>& f, double a, double fa, double b, double fb,
                     double xtol, int max_eval = 60);

}  // namespace conexp
