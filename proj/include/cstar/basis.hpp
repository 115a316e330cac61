#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "cstar/algebra.hpp"
#include "cstar/rng.hpp"

namespace cstar {

// The finite-dimensional subspace V = Span{v_1,...,v_l}^N with
// v_i(z) = exp(-gamma * ||z_i - z||^2).
struct BasisSpec {
  AnchorSetPtr anchors;
  double gamma = 10.0;
};

inline double rbf(double gamma, const Eigen::Ref<const Eigen::VectorXd>& x,
                  const Eigen::Ref<const Eigen::VectorXd>& y) {
  return std::exp(-gamma * (x - y).squaredNorm());
}

// phi(z) = [v_1(z), ..., v_l(z)]
Eigen::VectorXd basis_values(const BasisSpec& basis, const Eigen::Ref<const Eigen::VectorXd>& z);

Eigen::MatrixXd gram_matrix(const BasisSpec& basis);

// Kernel ridge regression onto V: coeffs = (G + mu I)^{-1} s, fitted samples
// re-evaluated as G * coeffs. The SPD factorization is computed once and
// reused for every solve, so a projection costs one l x l triangular solve.
class RidgeProjector {
 public:
  RidgeProjector(BasisSpec basis, double mu);

  const BasisSpec& basis() const { return basis_; }
  double mu() const { return mu_; }
  const Eigen::MatrixXd& gram() const { return gram_; }
  // min|d| / max|d| of the LDLT diagonal, a cheap conditioning estimate.
  double rcond() const { return rcond_; }

  AElement project(const Eigen::Ref<const Eigen::VectorXd>& samples) const;
  AElement project(const Eigen::Ref<const Eigen::VectorXd>& samples,
                   const AnchorSetPtr& anchors) const;

  // Row-wise fit for a whole parameter stack: returns the N x l coefficient
  // matrix for N sample rows.
  Eigen::MatrixXd fit_coeffs(const Eigen::MatrixXd& samples) const;

  AVector project_vector(const AVector& theta) const;

 private:
  BasisSpec basis_;
  double mu_;
  Eigen::MatrixXd gram_;
  Eigen::LDLT<Eigen::MatrixXd> solver_;
  double rcond_ = 0.0;
};

// Uniform distribution on the union of closed balls of the given radius
// around the centers (the regularization measure D).
struct MeasureD {
  AnchorSetPtr centers;
  double radius = 0.05;
};

Eigen::VectorXd sample_measure(const MeasureD& d, Rng& rng);

// Monte Carlo integral of a under D with n_mc draws; deterministic per seed.
// The integrand is affine in the basis values, so the mean is evaluated as
// offset + coeffs . mean(phi), which integrates constants exactly.
double integrate(const AElement& a, const MeasureD& d, int n_mc, std::uint64_t seed);

// Mean basis-value vector over explicit draws (shared by the optimizer so one
// set of draws serves all N elements of a step).
Eigen::VectorXd mean_basis_values(const BasisSpec& basis,
                                  const std::vector<Eigen::VectorXd>& draws);

// sup_r |d/dr exp(-gamma r^2)| = sqrt(2 gamma) e^{-1/2}
double rbf_lipschitz_constant(double gamma);

// Uniform Lipschitz bound sum_i |coeffs[i]| * L_v for one span element.
double lipschitz_bound(const AElement& a);

// The nine fixed points of the density-estimation experiment:
// z_1 = [0,0], z_{4i+j+1} = [(2+i) sin(2 pi (j-1+0.5 i)/4), (2+i) cos(...)],
// inside Z = [-4,4]^2.
AnchorSetPtr make_paper_anchors();

// Numerical proxy for uniform convergence of the parameter functions: per
// checkpoint the largest Lipschitz bound over elements, and between
// consecutive checkpoints the sup over a dense grid of |theta_a - theta_b|.
struct ConvergenceDiagnostic {
  std::vector<double> coeff_bounds;
  std::vector<double> sup_gaps;
};

ConvergenceDiagnostic uniform_convergence_diagnostic(std::span<const AVector> checkpoints,
                                                     int grid_resolution);

}  // namespace cstar
