#include "conexp/operator_eval.hpp"

#include <algorithm>
#include <cmath>

#include "conexp/engine.hpp"
#include "conexp/error.hpp"
#include "conexp/field.hpp"
#include "conexp/parallel.hpp"

namespace conexp {

namespace {

enum Mode { kPolicy = 0, kKernelBase = 1 };

detail::EngineOptions engine_options(const ReducedOperator& R) {
  detail::EngineOptions eo;
  eo.cfg = R.cfg;
  eo.alpha = R.op.alpha;
  return eo;
}

detail::PolicyWeight policy_weight(const OperatorSpec& op) {
  switch (op.kind) {
    case OperatorKind::PucciPlus: return {op.Lambda, op.lambda};
    case OperatorKind::PucciMinus: return {op.lambda, op.Lambda};
    default: return {op.Lambda, op.Lambda};
  }
}

void check(const ReducedOperator& R) {
  const auto vo = validate(R.op);
  if (!vo.empty()) throw Error(ErrorCode::InvalidConfig, vo.front());
  const auto vc = validate(R.cone);
  if (!vc.empty()) throw Error(ErrorCode::InvalidConfig, vc.front());
  const auto vq = validate(R.cfg);
  if (!vq.empty()) throw Error(ErrorCode::InvalidConfig, vq.front());
  if (!(R.beta > -2 * R.op.alpha && R.beta < R.cone.dimension))
    throw Error(ErrorCode::BetaOutOfRange, "beta must lie in (-2alpha, N)");
}

}  // namespace

ReducedSystem::ReducedSystem(const ReducedOperator& R, int threads)
    : R_((check(R), R)),
      threads_(threads > 0 ? threads : default_threads()),
      grid_(canonicalize(R.cone), R.grid.nodes, R.grid.grading, R.op.alpha),
      basis_(grid_) {}

Eigen::VectorXd ReducedSystem::weight_profile() const {
  Eigen::VectorXd w(size());
  for (int i = 0; i < size(); ++i) w[i] = grid_.weight(grid_.nodes()[i]);
  return w;
}

Eigen::MatrixXd ReducedSystem::assemble(const Eigen::VectorXd& f, int mode) const {
  const int n = size();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  const BasisField field{frame_of(canonicalize(R_.cone)), RadialLaw{RadialLaw::Mode::Power, R_.beta, 0}, &basis_,
                         f.data()};
  const auto eo = engine_options(R_);
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  parallel_for(n, threads_, [&](int i) {
    const Vec3 x = meridian_direction(grid_.dim(), grid_.nodes()[i]);
    if (mode == kPolicy) {
      detail::integrate(field, x, policy_weight(R_.op), eo, rows[i].data());
    } else {
      const AngularKernel& k = R_.op.kernels[mode - kKernelBase];
      detail::integrate(field, x, detail::DensityWeight{grid_.dim(), &k}, eo, rows[i].data());
    }
  });
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = rows[i][j];
  return A;
}

const std::vector<Eigen::MatrixXd>& ReducedSystem::kernel_matrices() const {
  if (kernel_mats_.empty()) {
    const Eigen::VectorXd dummy = weight_profile();
    if (R_.op.kind == OperatorKind::IsaacsFinite) {
      for (std::size_t k = 0; k < R_.op.kernels.size(); ++k)
        kernel_mats_.push_back(assemble(dummy, kKernelBase + static_cast<int>(k)));
    } else {
      kernel_mats_.push_back(assemble(dummy, kPolicy));
    }
  }
  return kernel_mats_;
}

Eigen::MatrixXd ReducedSystem::linearize(const Eigen::VectorXd& f) const {
  if (f.size() != size()) throw Error(ErrorCode::GridMismatch, "profile size does not match grid");
  switch (R_.op.kind) {
    case OperatorKind::FractionalLaplacian: return kernel_matrices().front();
    case OperatorKind::PucciPlus:
    case OperatorKind::PucciMinus: return assemble(f, kPolicy);
    case OperatorKind::IsaacsFinite: {
      const auto& mats = kernel_matrices();
      const auto& ks = R_.op.kernels;
      Eigen::MatrixXd A(size(), size());
      for (int i = 0; i < size(); ++i) {
        // Row i: inf over a of sup over b of (A_ab f)_i.
        int best = -1;
        double best_val = 0;
        std::vector<int> as;
        for (const auto& k : ks) as.push_back(k.a);
        std::sort(as.begin(), as.end());
        as.erase(std::unique(as.begin(), as.end()), as.end());
        for (int a : as) {
          int arg = -1;
          double sup = 0;
          for (std::size_t k = 0; k < ks.size(); ++k) {
            if (ks[k].a != a) continue;
            const double v = mats[k].row(i).dot(f);
            if (arg < 0 || v > sup) sup = v, arg = static_cast<int>(k);
          }
          if (best < 0 || sup < best_val) best_val = sup, best = arg;
        }
        A.row(i) = mats[best].row(i);
      }
      return A;
    }
  }
  return {};
}

Eigen::VectorXd ReducedSystem::apply(const Eigen::VectorXd& f) const { return linearize(f) * f; }

double ReducedSystem::evaluate_at(const Eigen::VectorXd& f, const Vec3& x) const {
  const BasisField field{frame_of(canonicalize(R_.cone)), RadialLaw{RadialLaw::Mode::Power, R_.beta, 0}, &basis_,
                         f.data()};
  const auto eo = engine_options(R_);
  if (R_.op.kind != OperatorKind::IsaacsFinite)
    return detail::integrate(field, x, policy_weight(R_.op), eo, nullptr).total();
  std::vector<int> as;
  for (const auto& k : R_.op.kernels) as.push_back(k.a);
  std::sort(as.begin(), as.end());
  as.erase(std::unique(as.begin(), as.end()), as.end());
  double inf = 0;
  bool first = true;
  for (int a : as) {
    double sup = 0;
    bool fs = true;
    for (const auto& k : R_.op.kernels) {
      if (k.a != a) continue;
      const double v = detail::integrate(field, x, detail::DensityWeight{grid_.dim(), &k}, eo, nullptr).total();
      if (fs || v > sup) sup = v, fs = false;
    }
    if (first || sup < inf) inf = sup, first = false;
  }
  return inf;
}

HomogeneousProfile make_profile(const ReducedOperator& R, const Eigen::VectorXd& f) {
  HomogeneousProfile p;
  p.beta = R.beta;
  p.cone = R.cone;
  p.samples.assign(f.data(), f.data() + f.size());
  p.boundary_grading = R.grid.grading > 0 ? R.grid.grading : R.op.alpha;
  return p;
}

namespace {

Eigen::VectorXd samples_for(const ReducedSystem& sys, const HomogeneousProfile& f) {
  const double g = sys.grid().grading();
  if (static_cast<int>(f.samples.size()) != sys.size() || std::abs(f.boundary_grading - g) > 1e-12 ||
      !(canonicalize(f.cone) == canonicalize(sys.spec().cone)))
    throw Error(ErrorCode::GridMismatch, "profile grid differs from operator grid");
  return Eigen::Map<const Eigen::VectorXd>(f.samples.data(), sys.size());
}

}  // namespace

std::vector<double> apply(const ReducedOperator& R, const HomogeneousProfile& f) {
  if (std::abs(f.beta - R.beta) > 1e-14) throw Error(ErrorCode::GridMismatch, "profile beta differs from operator beta");
  const ReducedSystem sys(R);
  const Eigen::VectorXd v = sys.apply(samples_for(sys, f));
  return {v.data(), v.data() + v.size()};
}

double scale_invariance_check(const ReducedOperator& R, const HomogeneousProfile& f, double r) {
  const ReducedSystem sys(R);
  const Eigen::VectorXd s = samples_for(sys, f);
  const double scale = std::pow(r, -R.beta - 2 * R.op.alpha);
  double dev = 0;
  for (int i = 0; i < sys.size(); ++i) {
    const Vec3 e = meridian_direction(sys.grid().dim(), sys.grid().nodes()[i]);
    const double at_e = sys.evaluate_at(s, e);
    const double at_re = r == 1 ? at_e : sys.evaluate_at(s, r * e);
    dev = std::max(dev, std::abs(at_re - scale * at_e));
  }
  return dev;
}

std::pair<double, double> pucci_sandwich_check(const HomogeneousProfile& f, double beta, const ConeSpec& cone,
                                               const QuadratureConfig& cfg, const OperatorSpec& isaacs,
                                               const GridSpec& grid) {
  if (isaacs.kind != OperatorKind::IsaacsFinite)
    throw Error(ErrorCode::PreconditionViolated, "sandwich check needs an IsaacsFinite operator");
  OperatorSpec mp{OperatorKind::PucciPlus, isaacs.lambda, isaacs.Lambda, isaacs.alpha, {}};
  OperatorSpec mm{OperatorKind::PucciMinus, isaacs.lambda, isaacs.Lambda, isaacs.alpha, {}};
  const ReducedSystem si({isaacs, cone, beta, cfg, grid});
  const ReducedSystem sp({mp, cone, beta, cfg, grid});
  const ReducedSystem sm({mm, cone, beta, cfg, grid});
  const Eigen::VectorXd s = samples_for(si, f);
  const Eigen::VectorXd vi = si.apply(s), vp = sp.apply(s), vm = sm.apply(s);
  return {(vi - vm).minCoeff(), (vp - vi).minCoeff()};
}

}  // namespace conexp
