#include "conexp/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "conexp/engine.hpp"
#include "conexp/error.hpp"
#include "conexp/field.hpp"

namespace conexp {

namespace {

struct One {
  double operator()(double) const { return 1.0; }
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

OperatorSpec pucci(const OperatorSpec& op, OperatorKind kind) { return {kind, op.lambda, op.Lambda, op.alpha, {}}; }

}  // namespace

RootResult find_root(const std::function<double(double)>& f, double a, double fa, double b, double fb, double xtol,
                     int max_eval) {
  if (a > b) std::swap(a, b), std::swap(fa, fb);
  RootResult r;
  if (fa == 0 || fb == 0) {
    r.x = fa == 0 ? a : b;
    r.a = r.b = r.x;
    return r;
  }
  if ((fa > 0) == (fb > 0)) throw Error(ErrorCode::RootNotBracketed, "no sign change on [" + num(a) + ", " + num(b) + "]");
  double wa = fa, wb = fb;  // Illinois-weighted values
  int side = 0;
  double width_prev = b - a;
  int stall = 0;
  while (b - a > xtol && r.evaluations < max_eval) {
    double c = (a * wb - b * wa) / (wb - wa);
    // Step slightly past the interpolated root so the bracket closes from both sides.
    if (c - a < b - c)
      c = std::min(c + 0.4 * xtol, 0.5 * (a + b));
    else
      c = std::max(c - 0.4 * xtol, 0.5 * (a + b));
    const double margin = 0.05 * xtol;
    if (stall >= 3 || !(c > a + margin && c < b - margin)) {
      c = 0.5 * (a + b);
      stall = 0;
    }
    const double fc = f(c);
    ++r.evaluations;
    if (fc == 0) {
      a = b = c;
      fa = fb = 0;
      break;
    }
    if ((fc > 0) == (fa > 0)) {
      a = c, fa = wa = fc;
      if (side == -1) wb *= 0.5;
      side = -1;
    } else {
      b = c, fb = wb = fc;
      if (side == 1) wa *= 0.5;
      side = 1;
    }
    const double width = b - a;
    stall = width > 0.5 * width_prev ? stall + 1 : 0;
    width_prev = width;
  }
  r.a = a;
  r.b = b;
  if (std::abs(fa) <= std::abs(fb)) {
    r.x = a, r.fx = fa;
  } else {
    r.x = b, r.fx = fb;
  }
  return r;
}

double c_of_beta(double beta, const OperatorSpec& op, int N, const QuadratureConfig& cfg) {
  if (!(beta > -2 * op.alpha && beta < N)) throw Error(ErrorCode::BetaOutOfRange, "beta must lie in (-2alpha, N)");
  if (N != 2 && N != 3) throw Error(ErrorCode::PreconditionViolated, "radial symbol is evaluated for N = 2, 3");
  const auto vq = validate(cfg);
  if (!vq.empty()) throw Error(ErrorCode::InvalidConfig, vq.front());
  if (beta == 0) return 0.0;
  ConeSpec full{N, ConeShape::FullSpace, {}, 0, 0};
  ProfileField<One> field{frame_of(full), RadialLaw{RadialLaw::Mode::Power, beta, 0}, One{}};
  detail::EngineOptions eo;
  eo.cfg = cfg;
  eo.alpha = op.alpha;
  eo.axisymmetric = op.kind != OperatorKind::IsaacsFinite;
  const Vec3 e = cone_axis(N);
  switch (op.kind) {
    case OperatorKind::FractionalLaplacian:
      return detail::integrate(field, e, detail::PolicyWeight{op.Lambda, op.Lambda}, eo, nullptr).total();
    case OperatorKind::PucciPlus:
      return detail::integrate(field, e, detail::PolicyWeight{op.Lambda, op.lambda}, eo, nullptr).total();
    case OperatorKind::PucciMinus:
      return detail::integrate(field, e, detail::PolicyWeight{op.lambda, op.Lambda}, eo, nullptr).total();
    case OperatorKind::IsaacsFinite: {
      std::map<int, double> sup;
      for (const auto& k : op.kernels) {
        const double v = detail::integrate(field, e, detail::DensityWeight{N, &k}, eo, nullptr).total();
        auto it = sup.find(k.a);
        if (it == sup.end() || v > it->second) sup[k.a] = v;
      }
      double inf = 0;
      bool first = true;
      for (auto [a, v] : sup)
        if (first || v < inf) inf = v, first = false;
      return inf;
    }
  }
  return 0;
}

double g_from_symbol(double beta, double c) {
  if (beta == 0) throw Error(ErrorCode::PreconditionViolated, "g(beta) needs beta != 0");
  return beta > 0 ? std::max(c, -beta) : std::max(c, beta);
}

double g_of_beta(double beta, const OperatorSpec& op, int N, const QuadratureConfig& cfg) {
  return g_from_symbol(beta, c_of_beta(beta, op, N, cfg));
}

SymbolCurve symbol_curve(const std::vector<double>& betas, const OperatorSpec& op, int N,
                         const QuadratureConfig& cfg) {
  SymbolCurve s;
  s.kind = SymbolCurve::Kind::RadialSymbol;
  s.betas = betas;
  for (double b : betas) s.values.push_back(c_of_beta(b, op, N, cfg));
  return s;
}

namespace {

// Nonzero root of the radial symbol of op; Ntilde = root + 2 alpha.
ExponentResult symbol_root(const OperatorSpec& op, int N, const QuadratureConfig& cfg, ExponentKind kind) {
  auto c = [&](double b) { return c_of_beta(b, op, N, cfg); };
  const double step = 0.05 * N;
  std::vector<std::pair<double, double>> scan;
  double prev_b = step, prev_c = c(prev_b);
  scan.emplace_back(prev_b, prev_c);
  std::optional<RootResult> root;
  if (prev_c < 0) {
    // Root in (0, N): c < 0 just above zero.
    for (double b = prev_b + step; b < N; b += step) {
      const double cb = c(b);
      scan.emplace_back(b, cb);
      if (cb > 0) {
        root = find_root(c, prev_b, prev_c, b, cb, 1e-6);
        break;
      }
      prev_b = b, prev_c = cb;
    }
  } else {
    // c > 0 just above zero: the nonzero root is negative (Ntilde < 2 alpha).
    const double nstep = 0.05 * 2 * op.alpha;
    prev_b = -nstep;
    prev_c = c(prev_b);
    scan.emplace_back(prev_b, prev_c);
    for (double b = prev_b - nstep; b > -2 * op.alpha; b -= nstep) {
      if (prev_c < 0) break;
      const double cb = c(b);
      scan.emplace_back(b, cb);
      if (cb < 0) {
        root = find_root(c, b, cb, prev_b, prev_c, 1e-6);
        break;
      }
      prev_b = b, prev_c = cb;
    }
  }
  if (!root) {
    std::string msg = "radial symbol has no nonzero sign change; scan:";
    for (auto [b, v] : scan) msg += " (" + num(b) + ", " + num(v) + ")";
    throw Error(ErrorCode::RootNotBracketed, msg);
  }
  ExponentResult r;
  r.kind = kind;
  r.value = root->x + 2 * op.alpha;
  r.residual = std::abs(root->fx);
  r.bracket = {root->a + 2 * op.alpha, root->b + 2 * op.alpha};
  r.grid_meta.quadrature = cfg;
  return r;
}

}  // namespace

DimensionLike dimension_like(const OperatorSpec& op, int N, const QuadratureConfig& cfg) {
  if (op.kind == OperatorKind::IsaacsFinite)
    throw Error(ErrorCode::PreconditionViolated, "dimension-like numbers are defined for Pucci / fractional operators");
  DimensionLike d;
  d.plus = symbol_root(pucci(op, OperatorKind::PucciPlus), N, cfg, ExponentKind::NTildePlus);
  d.minus = symbol_root(pucci(op, OperatorKind::PucciMinus), N, cfg, ExponentKind::NTildeMinus);
  return d;
}

namespace {

struct MatrixPair {
  double mu;
  Eigen::VectorXd v;
};

// Principal eigenpair of a (nearly) Z-matrix T: the smallest real eigenvalue whose
// eigenvector has one sign.
MatrixPair principal_of_matrix(const Eigen::MatrixXd& T) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(T);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "dense eigensolver failed");
  const auto& ev = es.eigenvalues();
  int best = -1;
  Eigen::VectorXd best_v;
  for (int k = 0; k < ev.size(); ++k) {
    if (std::abs(ev[k].imag()) > 1e-8 * (1 + std::abs(ev[k].real()))) continue;
    Eigen::VectorXd v = es.eigenvectors().col(k).real();
    Eigen::Index imax;
    v.cwiseAbs().maxCoeff(&imax);
    v /= v[imax];
    if (v.minCoeff() < -1e-6) continue;
    if (best < 0 || ev[k].real() < ev[best].real()) best = k, best_v = v;
  }
  if (best < 0) throw Error(ErrorCode::LostPositivity, "no eigenvector of one sign; grid too coarse");
  best_v = best_v.cwiseMax(1e-14);
  // One step of shifted inverse iteration polishes the vector.
  const double mu = ev[best].real();
  const double shift = mu - 1e-6 * (1 + std::abs(mu));
  Eigen::MatrixXd S = T - shift * Eigen::MatrixXd::Identity(T.rows(), T.cols());
  Eigen::VectorXd w = S.partialPivLu().solve(best_v);
  if (w.allFinite() && w.minCoeff() > 0) best_v = w / w.maxCoeff();
  return {mu, best_v};
}

void collatz_wielandt(const Eigen::VectorXd& Tf, const Eigen::VectorXd& f, double& lo, double& hi) {
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  for (int i = 0; i < f.size(); ++i) {
    if (!(f[i] > 0)) throw Error(ErrorCode::LostPositivity, "eigenprofile vanished at node " + std::to_string(i));
    const double r = Tf[i] / f[i];
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
}

}  // namespace

EigenPair principal_eigenpair(const ReducedSystem& sys, const Eigen::VectorXd* warm) {
  const double tol = sys.spec().cfg.tol;
  Eigen::VectorXd f = warm && warm->size() == sys.size() && warm->minCoeff() > 0 ? *warm : sys.weight_profile();
  f /= f.maxCoeff();
  double lo = 0, hi = 0;
  constexpr int kMaxPolicy = 30;
  for (int k = 0; k <= kMaxPolicy; ++k) {
    const Eigen::MatrixXd A = sys.linearize(f);
    const Eigen::VectorXd Tf = -A * f;
    if (k > 0) {
      collatz_wielandt(Tf, f, lo, hi);
      const double mid = 0.5 * (lo + hi);
      if (hi - lo <= tol * std::max(1.0, std::abs(mid))) {
        EigenPair p;
        p.mu = mid;
        p.f = f;
        p.cw_lo = lo;
        p.cw_hi = hi;
        p.residual = (Tf - mid * f).cwiseAbs().maxCoeff();
        p.policy_iterations = k;
        return p;
      }
    }
    f = principal_of_matrix(-A).v;
  }
  throw Error(ErrorCode::NoConvergence,
              "policy iteration did not settle; last Collatz-Wielandt interval [" + num(lo) + ", " + num(hi) + "]");
}

EigenPair principal_eigenvalue(double beta, const ConeSpec& cone, const OperatorSpec& op,
                               const QuadratureConfig& cfg, const GridSpec& grid, const Eigen::VectorXd* warm) {
  const ReducedSystem sys({op, cone, beta, cfg, grid});
  return principal_eigenpair(sys, warm);
}

namespace {

struct MuScanner {
  const ConeSpec& cone;
  const OperatorSpec& op;
  const QuadratureConfig& cfg;
  const GridSpec& grid;
  int threads;
  std::map<double, EigenPair> seen;
  Eigen::VectorXd warm;

  double operator()(double beta) {
    auto it = seen.find(beta);
    if (it != seen.end()) return it->second.mu;
    const ReducedSystem sys({op, cone, beta, cfg, grid}, threads);
    EigenPair p = principal_eigenpair(sys, warm.size() ? &warm : nullptr);
    warm = p.f;
    const double mu = p.mu;
    seen.emplace(beta, std::move(p));
    return mu;
  }
};

std::optional<RootResult> scan_for_root(MuScanner& mu, double lo, double hi, double start, double step, bool upward,
                                        double tol) {
  // mu > 0 inside (beta-, beta+): for beta+ the root is where mu turns negative going up,
  // for beta- where it turns negative going down.
  const double dir = upward ? 1.0 : -1.0;
  start = std::clamp(start, lo, hi);
  double b = start;
  double mb = mu(b);
  if (mb > 0) {
    for (;;) {
      double nb = b + dir * step;
      if (upward ? nb >= hi : nb <= lo) {
        if (b == (upward ? hi : lo)) return std::nullopt;
        nb = upward ? hi : lo;
      }
      const double mn = mu(nb);
      if (mn <= 0) return find_root(std::ref(mu), b, mb, nb, mn, tol);
      b = nb, mb = mn;
    }
  }
  for (;;) {
    double nb = b - dir * step;
    if (upward ? nb <= lo : nb >= hi) {
      if (b == (upward ? lo : hi)) return std::nullopt;
      nb = upward ? lo : hi;
    }
    const double mn = mu(nb);
    if (mn > 0) return find_root(std::ref(mu), nb, mn, b, mb, tol);
    b = nb, mb = mn;
  }
}

ExponentResult to_result(const RootResult& r, ExponentKind kind, const QuadratureConfig& cfg, const GridSpec& grid) {
  ExponentResult e;
  e.kind = kind;
  e.value = r.x;
  e.residual = std::abs(r.fx);
  e.bracket = {r.a, r.b};
  e.grid_meta = {cfg, grid};
  return e;
}

}  // namespace

CriticalExponents critical_exponents(const ConeSpec& cone_in, const OperatorSpec& op, const QuadratureConfig& cfg,
                                     const GridSpec& grid, const ScanOptions& options) {
  const ConeSpec cone = canonicalize(cone_in);
  if (is_full_space(cone)) throw Error(ErrorCode::PreconditionViolated, "critical exponents need a proper cone");
  const int N = cone.dimension;
  const double a2 = 2 * op.alpha;
  MuScanner mu{cone, op, cfg, grid, options.threads, {}, {}};
  CriticalExponents out;

  // beta+ in (0, N).
  double start = options.predict_plus;
  if (!std::isfinite(start)) {
    start = 0.5 * N;
    if (op.kind != OperatorKind::IsaacsFinite) {
      try {
        // The whole-space root is a lower bound for beta+ of any proper cone.
        start = symbol_root(op.kind == OperatorKind::FractionalLaplacian ? op : pucci(op, op.kind), N, cfg,
                            ExponentKind::NTildePlus)
                    .value -
                a2;
      } catch (const Error&) {
      }
      start = std::max(start, 0.05 * N);
    }
  }
  const double margin_plus = 0.005 * N;
  auto rp = scan_for_root(mu, margin_plus, N - margin_plus, start, 0.05 * N, true, options.root_tol);
  if (!rp) {
    std::string msg = "mu has no sign change on (0, N); scan:";
    for (auto& [b, p] : mu.seen) msg += " (" + num(b) + ", " + num(p.mu) + ")";
    throw Error(ErrorCode::RootNotBracketed, msg);
  }
  out.beta_plus = to_result(*rp, ExponentKind::BetaPlus, cfg, grid);
  out.f_plus = mu.seen.at(rp->x).f;

  if (options.want_minus) {
    double sm = options.predict_minus;
    if (!std::isfinite(sm)) sm = -0.5 * a2;
    mu.warm.resize(0);
    const double margin_minus = 0.005 * a2;
    auto rm = scan_for_root(mu, -a2 + margin_minus, -margin_minus, sm, 0.05 * a2, false, options.root_tol);
    if (rm) {
      out.beta_minus = to_result(*rm, ExponentKind::BetaMinus, cfg, grid);
      out.f_minus = mu.seen.at(rm->x).f;
      const double theta0 = cone_half_angle(cone);
      if (theta0 > std::numbers::pi / 2 + 1e-12 && op.kind != OperatorKind::PucciPlus)
        out.beta_minus->notes.push_back(
            "cone is not contained in a half-space; existence hypotheses for beta- are not verified");
    } else {
      out.diagnostics.push_back("beta- absent: mu has no sign change on (-2alpha, 0)");
    }
  }
  out.scan.kind = SymbolCurve::Kind::ConeEigenvalue;
  for (auto& [b, p] : mu.seen) {
    out.scan.betas.push_back(b);
    out.scan.values.push_back(p.mu);
  }
  // Report every sign change of the scan; more than one per side indicates noise.
  int changes = 0;
  for (std::size_t i = 1; i < out.scan.values.size(); ++i)
    if ((out.scan.values[i] > 0) != (out.scan.values[i - 1] > 0)) ++changes;
  if (changes > 2) out.diagnostics.push_back("mu scan shows " + std::to_string(changes) + " sign changes");
  return out;
}

AuxiliaryResult solve_auxiliary(const ReducedSystem& sys, double gamma, const Eigen::VectorXd& psi,
                                const AuxiliaryOptions& options) {
  const auto& R = sys.spec();
  const double beta = R.beta;
  const int n = sys.size();
  if (psi.size() != n) throw Error(ErrorCode::GridMismatch, "psi size does not match grid");
  if (!((beta > 0 && gamma > 0) || (beta < 0 && gamma < 0)))
    throw Error(ErrorCode::PreconditionViolated, "beta and gamma must be nonzero with the same sign");
  if (psi.minCoeff() < 0) throw Error(ErrorCode::PreconditionViolated, "psi must be nonnegative");

  AuxiliaryResult res;
  // Radial symbol of M+ with the same ellipticity: F(w) <= M+(w) = k c |x|^(-beta-2alpha).
  const OperatorSpec mp = pucci(R.op, R.op.kind == OperatorKind::FractionalLaplacian ? OperatorKind::FractionalLaplacian
                                                                                    : OperatorKind::PucciPlus);
  double c = c_of_beta(beta, mp, R.cone.dimension, R.cfg);
  // Discrete consistency: the constant nodal profile must be a supersolution of the
  // discrete problem, so use the largest of c and G[1] at the nodes.
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  c = std::max(c, sys.apply(ones).maxCoeff());
  const double g = g_from_symbol(beta, c);
  const double sup_psi = psi.maxCoeff();
  const bool pos = beta > 0;
  const double cs_here = pos ? (g + beta) / beta : (g - beta) / (-beta);
  const double c_star = std::max(options.c_star, cs_here);
  const double k = pos ? beta * (1 + c_star * sup_psi) / (g - c + gamma) : -beta * (1 + c_star * sup_psi) / (g - c - gamma);
  const double diag = pos ? g + gamma : g - gamma;
  const Eigen::VectorXd rhs = pos ? Eigen::VectorXd((g + beta) * psi + beta * ones)
                                  : Eigen::VectorXd((g - beta) * psi - beta * ones);
  res.c = c;
  res.g = g;
  res.c_star = c_star;
  res.k = k;

  Eigen::VectorXd u = options.initial ? *options.initial : Eigen::VectorXd::Zero(n);
  // Policy iteration on  (-A(u) + diag I) u = rhs  (a single linear solve when G is linear).
  for (int it = 1; it <= options.max_iterations; ++it) {
    const Eigen::VectorXd seed = u.cwiseAbs().maxCoeff() > 0 ? u : ones;
    const Eigen::MatrixXd M = -sys.linearize(seed) + diag * Eigen::MatrixXd::Identity(n, n);
    const Eigen::VectorXd next = M.partialPivLu().solve(rhs);
    const double change = (next - u).cwiseAbs().maxCoeff();
    u = next;
    res.iterations = it;
    if (sys.linear() || change <= 1e-10 * std::max(1.0, u.cwiseAbs().maxCoeff())) break;
    if (it == options.max_iterations)
      throw Error(ErrorCode::NoConvergence, "auxiliary policy iteration did not settle (change " + num(change) + ")");
  }
  const double lo = u.minCoeff(), hi = u.maxCoeff();
  if (lo < -1e-9 * std::max(1.0, k)) throw Error(ErrorCode::LostPositivity, "auxiliary solution negative: " + num(lo));
  if (hi > k * (1 + 1e-6)) throw Error(ErrorCode::BoundViolated, "sup u = " + num(hi) + " exceeds k = " + num(k));
  res.u = u.cwiseMax(0.0);
  return res;
}

AuxiliaryResult solve_auxiliary(double beta, double gamma, const Eigen::VectorXd& psi, const ConeSpec& cone,
                                const OperatorSpec& op, const QuadratureConfig& cfg, const GridSpec& grid,
                                const AuxiliaryOptions& options) {
  const ReducedSystem sys({op, cone, beta, cfg, grid});
  return solve_auxiliary(sys, gamma, psi, options);
}

namespace {

double extrapolate_blowup(const std::vector<BranchPoint>& pts) {
  // Least-squares line through the last three (beta, 1/norm) points; its zero.
  std::vector<std::pair<double, double>> q;
  for (auto it = pts.rbegin(); it != pts.rend() && q.size() < 3; ++it)
    if (it->converged && it->norm > 0) q.emplace_back(it->beta, 1 / it->norm);
  if (q.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : q) sx += x, sy += y, sxx += x * x, sxy += x * y;
  const double m = static_cast<double>(q.size());
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double icpt = (sy - slope * sx) / m;
  return -icpt / slope;
}

}  // namespace

BranchResult fixed_point_branch(const ConeSpec& cone, const OperatorSpec& op, const QuadratureConfig& cfg,
                                const GridSpec& grid, const std::vector<double>& beta_grid, double beta_plus,
                                int max_iterations) {
  for (std::size_t i = 1; i < beta_grid.size(); ++i)
    if (!(beta_grid[i] > beta_grid[i - 1])) throw Error(ErrorCode::PreconditionViolated, "beta grid must increase");
  BranchResult out;
  out.gamma_initial = beta_plus;
  std::vector<std::unique_ptr<ReducedSystem>> systems;
  for (double b : beta_grid) systems.push_back(std::make_unique<ReducedSystem>(ReducedOperator{op, cone, b, cfg, grid}));

  auto pass = [&](double gamma, bool keep_states) {
    std::vector<BranchPoint> pts;
    Eigen::VectorXd u = Eigen::VectorXd::Zero(systems.front()->size());
    for (std::size_t i = 0; i < beta_grid.size(); ++i) {
      const ReducedSystem& sys = *systems[i];
      BranchPoint bp;
      bp.beta = beta_grid[i];
      if (!(bp.beta < gamma)) {
        pts.push_back(bp);
        continue;
      }
      u = Eigen::VectorXd::Zero(sys.size());
      Eigen::VectorXd psi = u;
      try {
        for (int it = 1; it <= max_iterations; ++it) {
          AuxiliaryOptions ao;
          ao.initial = u;
          const AuxiliaryResult ar = solve_auxiliary(sys, gamma, psi, ao);
          const double change = (ar.u - u).cwiseAbs().maxCoeff();
          u = ar.u;
          psi = u;
          bp.iterations = it;
          if (change <= 1e-9 * std::max(1.0, u.maxCoeff())) {
            bp.converged = true;
            break;
          }
        }
      } catch (const Error&) {
        bp.converged = false;
      }
      bp.norm = u.maxCoeff();
      pts.push_back(bp);
      if (keep_states) {
        BranchState st;
        st.beta = bp.beta;
        st.gamma = gamma;
        st.psi.assign(psi.data(), psi.data() + psi.size());
        st.u.assign(u.data(), u.data() + u.size());
        st.norm = bp.norm;
        out.states.push_back(std::move(st));
      }
    }
    return pts;
  };

  auto first = pass(beta_plus, false);
  double blow = extrapolate_blowup(first);
  out.gamma_final = std::isfinite(blow) && blow > beta_grid.back() ? blow : beta_plus;
  out.points = pass(out.gamma_final, true);
  out.blowup = extrapolate_blowup(out.points);
  return out;
}

double kelvin_relation_check(const ConeSpec& cone, double alpha, const QuadratureConfig& cfg, const GridSpec& grid) {
  const OperatorSpec op{OperatorKind::FractionalLaplacian, 1, 1, alpha, {}};
  const CriticalExponents ce = critical_exponents(cone, op, cfg, grid);
  if (!ce.beta_minus) throw Error(ErrorCode::RootNotBracketed, "beta- absent; Kelvin relation cannot be checked");
  return std::abs(ce.beta_plus.value + ce.beta_minus->value - (cone.dimension - 2 * alpha));
}

}  // namespace conexp
