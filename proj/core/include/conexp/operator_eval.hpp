#pragma once

// The reduced operator G_beta acting on angular profiles:
//   G_beta[f](e) = F(f(x/|x|) |x|^-beta)(e),  e a collocation node on the unit sphere.

#include <Eigen/Dense>
#include <memory>
#include <utility>
#include <vector>

#include "conexp/angular.hpp"
#include "conexp/geometry.hpp"
#include "conexp/model.hpp"

namespace conexp {

struct ReducedOperator {
  OperatorSpec op;
  ConeSpec cone;
  double beta = 0;
  QuadratureConfig cfg;
  GridSpec grid;
};

class ReducedSystem {
 public:
  explicit ReducedSystem(const ReducedOperator& R, int threads = 0);

  const ReducedOperator& spec() const { return R_; }
  const AngularGrid& grid() const { return grid_; }
  const AngularBasis& basis() const { return basis_; }
  int size() const { return grid_.size(); }
  // True when G_beta is linear (fractional Laplacian).
  bool linear() const { return R_.op.kind == OperatorKind::FractionalLaplacian; }

  // G_beta[f] at every node.
  Eigen::VectorXd apply(const Eigen::VectorXd& f) const;
  // Matrix A with A f = G_beta[f], the kernel choice frozen at f (exact for linear G).
  Eigen::MatrixXd linearize(const Eigen::VectorXd& f) const;
  // Evaluates F(u) at an arbitrary point x for u = f(x/|x|)|x|^-beta.
  double evaluate_at(const Eigen::VectorXd& f, const Vec3& x) const;

  // Profile of the boundary weight at the nodes (g = 1).
  Eigen::VectorXd weight_profile() const;

 private:
  Eigen::MatrixXd assemble(const Eigen::VectorXd& f, int mode) const;
  const std::vector<Eigen::MatrixXd>& kernel_matrices() const;

  ReducedOperator R_;
  int threads_;
  AngularGrid grid_;
  AngularBasis basis_;
  mutable std::vector<Eigen::MatrixXd> kernel_mats_;
};

// G_beta[f] at the nodes of R's grid; f must carry the grid's node count and grading.
std::vector<double> apply(const ReducedOperator& R, const HomogeneousProfile& f);

// max over nodes of |F(u)(r e) - r^(-beta-2alpha) F(u)(e)|, both evaluated directly.
double scale_invariance_check(const ReducedOperator& R, const HomogeneousProfile& f, double r);

// (min over nodes of Isaacs - M^-, min over nodes of M^+ - Isaacs).
std::pair<double, double> pucci_sandwich_check(const HomogeneousProfile& f, double beta, const ConeSpec& cone,
                                               const QuadratureConfig& cfg, const OperatorSpec& isaacs,
                                               const GridSpec& grid);

HomogeneousProfile make_profile(const ReducedOperator& R, const Eigen::VectorXd& f);

}  // namespace conexp
