#include "cstar/basis.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cstar {

Eigen::VectorXd basis_values(const BasisSpec& basis, const Eigen::Ref<const Eigen::VectorXd>& z) {
  const auto& pts = basis.anchors->points();
  Eigen::VectorXd phi(pts.rows());
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    phi[i] = std::exp(-basis.gamma * (pts.row(i).transpose() - z).squaredNorm());
  }
  return phi;
}

Eigen::MatrixXd gram_matrix(const BasisSpec& basis) {
  const auto& pts = basis.anchors->points();
  const Eigen::Index l = pts.rows();
  Eigen::MatrixXd g(l, l);
  for (Eigen::Index i = 0; i < l; ++i) {
    g(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < l; ++j) {
      g(i, j) = g(j, i) = std::exp(-basis.gamma * (pts.row(i) - pts.row(j)).squaredNorm());
    }
  }
  return g;
}

RidgeProjector::RidgeProjector(BasisSpec basis, double mu) : basis_(std::move(basis)), mu_(mu) {
  if (!basis_.anchors) throw std::invalid_argument("RidgeProjector: null anchors");
  if (basis_.gamma <= 0.0) throw std::invalid_argument("RidgeProjector: gamma must be positive");
  if (mu_ < 0.0) throw std::invalid_argument("RidgeProjector: mu must be nonnegative");
  gram_ = gram_matrix(basis_);
  Eigen::MatrixXd reg = gram_;
  reg.diagonal().array() += mu_;
  solver_.compute(reg);
  const Eigen::VectorXd d = solver_.vectorD();
  const double dmax = d.cwiseAbs().maxCoeff();
  const double dmin = d.cwiseAbs().minCoeff();
  rcond_ = (dmax > 0.0) ? dmin / dmax : 0.0;
  if (solver_.info() != Eigen::Success || !d.allFinite() || d.minCoeff() <= 0.0 ||
      rcond_ < 1e-14) {
    std::ostringstream msg;
    msg << "RidgeProjector: (G + mu I) numerically singular (mu=" << mu_
        << ", rcond=" << rcond_ << ")";
    throw std::runtime_error(msg.str());
  }
}

AElement RidgeProjector::project(const Eigen::Ref<const Eigen::VectorXd>& samples) const {
  return project(samples, basis_.anchors);
}

AElement RidgeProjector::project(const Eigen::Ref<const Eigen::VectorXd>& samples,
                                 const AnchorSetPtr& anchors) const {
  if (samples.size() != basis_.anchors->count()) {
    throw std::invalid_argument("RidgeProjector::project: sample length != l");
  }
  if (anchors != basis_.anchors && !same_anchors(*anchors, *basis_.anchors)) {
    throw std::invalid_argument("RidgeProjector::project: anchor set mismatch");
  }
  VRep rep;
  rep.gamma = basis_.gamma;
  rep.coeffs = solver_.solve(samples);
  rep.offset = 0.0;
  Eigen::VectorXd fitted = gram_ * rep.coeffs;
  return AElement(anchors, std::move(fitted), std::move(rep));
}

Eigen::MatrixXd RidgeProjector::fit_coeffs(const Eigen::MatrixXd& samples) const {
  if (samples.cols() != basis_.anchors->count()) {
    throw std::invalid_argument("RidgeProjector::fit_coeffs: column count != l");
  }
  return solver_.solve(samples.transpose()).transpose();
}

AVector RidgeProjector::project_vector(const AVector& theta) const {
  if (theta.anchors() != basis_.anchors && !same_anchors(*theta.anchors(), *basis_.anchors)) {
    throw std::invalid_argument("RidgeProjector::project_vector: anchor set mismatch");
  }
  AVector::Rep rep;
  rep.gamma = basis_.gamma;
  rep.coeffs = fit_coeffs(theta.samples());
  rep.offsets = Eigen::VectorXd::Zero(theta.size());
  Eigen::MatrixXd fitted = rep.coeffs * gram_;  // G symmetric
  return AVector(theta.anchors(), std::move(fitted), std::move(rep));
}

Eigen::VectorXd sample_measure(const MeasureD& d, Rng& rng) {
  const int c = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(d.centers->count())));
  const int dim = d.centers->dim();
  Eigen::VectorXd z = d.centers->point(c);
  if (dim == 2) {
    // Polar with sqrt-radius is uniform on the disk.
    const double r = d.radius * std::sqrt(rng.uniform());
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    z[0] += r * std::cos(phi);
    z[1] += r * std::sin(phi);
    return z;
  }
  // General dimension: rejection from the bounding cube.
  Eigen::VectorXd offset(dim);
  do {
    for (int k = 0; k < dim; ++k) offset[k] = rng.uniform(-d.radius, d.radius);
  } while (offset.squaredNorm() > d.radius * d.radius);
  return z + offset;
}

double integrate(const AElement& a, const MeasureD& d, int n_mc, std::uint64_t seed) {
  if (!a.has_rep()) {
    throw std::logic_error("integrate: element has no V representation");
  }
  if (n_mc <= 0) throw std::invalid_argument("integrate: n_mc must be positive");
  Rng rng(seed);
  BasisSpec basis{a.anchors(), a.rep().gamma};
  Eigen::VectorXd phi_sum = Eigen::VectorXd::Zero(a.anchors()->count());
  for (int k = 0; k < n_mc; ++k) {
    phi_sum += basis_values(basis, sample_measure(d, rng));
  }
  return a.rep().offset + a.rep().coeffs.dot(phi_sum / static_cast<double>(n_mc));
}

Eigen::VectorXd mean_basis_values(const BasisSpec& basis,
                                  const std::vector<Eigen::VectorXd>& draws) {
  Eigen::VectorXd phi_sum = Eigen::VectorXd::Zero(basis.anchors->count());
  for (const auto& z : draws) phi_sum += basis_values(basis, z);
  return phi_sum / static_cast<double>(draws.size());
}

double rbf_lipschitz_constant(double gamma) {
  return std::sqrt(2.0 * gamma) * std::exp(-0.5);
}

double lipschitz_bound(const AElement& a) {
  return a.rep().coeffs.cwiseAbs().sum() * rbf_lipschitz_constant(a.rep().gamma);
}

AnchorSetPtr make_paper_anchors() {
  Eigen::MatrixXd pts(9, 2);
  pts.row(0) << 0.0, 0.0;
  for (int i = 0; i <= 1; ++i) {
    for (int j = 1; j <= 4; ++j) {
      const double radius = 2.0 + i;
      const double angle = 2.0 * std::numbers::pi * (j - 1 + 0.5 * i) / 4.0;
      pts.row(4 * i + j) << radius * std::sin(angle), radius * std::cos(angle);
    }
  }
  return AnchorSet::create(std::move(pts), Box::cube(2, -4.0, 4.0));
}

ConvergenceDiagnostic uniform_convergence_diagnostic(std::span<const AVector> checkpoints,
                                                     int grid_resolution) {
  ConvergenceDiagnostic out;
  if (checkpoints.empty()) return out;
  const auto& anchors = *checkpoints.front().anchors();
  const int dim = anchors.dim();

  // Dense grid over the box (grid_resolution per axis, capped to 2-D; higher
  // dimensional parameter spaces fall back to the anchor points themselves).
  std::vector<Eigen::VectorXd> grid;
  if (dim <= 2) {
    const auto& box = anchors.box();
    if (dim == 1) {
      for (int i = 0; i < grid_resolution; ++i) {
        Eigen::VectorXd z(1);
        z[0] = box.lo[0] + (box.hi[0] - box.lo[0]) * i / double(grid_resolution - 1);
        grid.push_back(z);
      }
    } else {
      for (int i = 0; i < grid_resolution; ++i) {
        for (int j = 0; j < grid_resolution; ++j) {
          Eigen::VectorXd z(2);
          z[0] = box.lo[0] + (box.hi[0] - box.lo[0]) * i / double(grid_resolution - 1);
          z[1] = box.lo[1] + (box.hi[1] - box.lo[1]) * j / double(grid_resolution - 1);
          grid.push_back(z);
        }
      }
    }
  } else {
    for (int i = 0; i < anchors.count(); ++i) grid.push_back(anchors.point(i));
  }

  BasisSpec basis{checkpoints.front().anchors(), checkpoints.front().rep().gamma};
  Eigen::MatrixXd phi(anchors.count(), static_cast<Eigen::Index>(grid.size()));
  for (std::size_t g = 0; g < grid.size(); ++g) {
    phi.col(static_cast<Eigen::Index>(g)) = basis_values(basis, grid[g]);
  }

  for (const auto& theta : checkpoints) {
    double bound = 0.0;
    for (int j = 0; j < theta.size(); ++j) {
      bound = std::max(bound, theta.rep().coeffs.row(j).cwiseAbs().sum());
    }
    out.coeff_bounds.push_back(bound * rbf_lipschitz_constant(basis.gamma));
  }
  for (std::size_t k = 0; k + 1 < checkpoints.size(); ++k) {
    const auto& a = checkpoints[k];
    const auto& b = checkpoints[k + 1];
    Eigen::MatrixXd diff = (a.rep().coeffs - b.rep().coeffs) * phi;
    diff.colwise() += a.rep().offsets - b.rep().offsets;
    out.sup_gaps.push_back(diff.cwiseAbs().maxCoeff());
  }
  return out;
}

}  // namespace cstar
