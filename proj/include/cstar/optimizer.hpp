#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <span>

#include "cstar/algebra.hpp"
#include "cstar/autodiff.hpp"
#include "cstar/basis.hpp"

namespace cstar {

struct GDConfig {
  double eta0 = 1e-3;
  double decay_rate = 0.5;
  double lambda_tilde = 0.3;
  enum class Kind { sgd, adam };
  Kind kind = Kind::adam;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  int epochs = 3000;
  std::uint64_t seed = 0;
  int n_mc_step = 4096;
  // When true the regularization term carries the step size, i.e. the update
  // is eta_t * (P(grad) + lambda * integral(P(grad)) . 1_A), which is the
  // gradient-descent-on-L_reg form. When false the integral term enters
  // unscaled, the scheme verbatim. The unscaled form diverges at the
  // experiment's lambda, so the scaled form is the default.
  bool scale_reg_by_lr = true;
};

// eta_t = eta0 * (1 + t)^(-decay_rate)
double lr(int t, const GDConfig& cfg);

// Either the kernel-ridge map into V, or the identity on samples (the
// discrete / ensemble configuration, which keeps per-anchor trajectories
// bit-exact with independent classical trainings).
class Projection {
 public:
  static Projection identity() { return Projection(nullptr); }
  static Projection ridge(std::shared_ptr<const RidgeProjector> proj) {
    return Projection(std::move(proj));
  }

  bool is_identity() const { return proj_ == nullptr; }
  const RidgeProjector& projector() const;

  AVector apply(const AVector& grad) const;

 private:
  explicit Projection(std::shared_ptr<const RidgeProjector> proj) : proj_(std::move(proj)) {}
  std::shared_ptr<const RidgeProjector> proj_;
};

// Loss builder for one anchor: receives theta(z_i) as tape inputs and returns
// the scalar loss on the same tape. Restricting the callback to the samples
// at one anchor is what makes L(theta)(z) = L~(theta(z), z) hold by
// construction.
using LossAt = std::function<Var(Tape&, std::span<const Var>, int z_index)>;

// The A-valued gradient: samples at z_i are the classical gradient of
// L~(., z_i), computed by reverse accumulation, in parallel across anchors.
AVector a_gradient(const LossAt& loss, const AVector& theta);

// grad + lambda * (integral of each element under D) . 1_A
AVector reg_gradient(const AVector& grad, double lambda_tilde, const MeasureD& d, int n_mc,
                     Rng& rng);

// One step of the practical scheme:
//   theta' = theta - eta_t P(grad) - reg_scale * integral(P(grad)) . 1_A
// where reg_scale is lambda (verbatim) or eta_t * lambda (see GDConfig).
// Draws exactly cfg.n_mc_step measure samples from `rng` when the integral
// term is active, shared across all N elements.
AVector step(const AVector& theta, const AVector& grad, const GDConfig& cfg, int t,
             const Projection& projection, const MeasureD* d, Rng& rng);

// Per-anchor Adam moments, partitioned so anchors never share mutable state.
class AdamState {
 public:
  AdamState(int n, int l)
      : m_(Eigen::MatrixXd::Zero(n, l)), v_(Eigen::MatrixXd::Zero(n, l)) {}

  Eigen::MatrixXd& m() { return m_; }
  Eigen::MatrixXd& v() { return v_; }
  std::int64_t steps() const { return steps_; }
  void bump() { ++steps_; }

 private:
  Eigen::MatrixXd m_, v_;
  std::int64_t steps_ = 0;
};

// Shared Adam kernel (also used by the classical reference trainers so the
// reduction configurations match bit for bit). `t` is the 1-based step count.
void adam_direction(std::span<const double> grad, std::span<double> m, std::span<double> v,
                    std::int64_t t, const GDConfig& cfg, std::span<double> dir_out);

// Adam variant of the scheme: moments accumulate on P(grad) samples, the
// resulting direction is refit into V, and the same integral term as `step`
// is applied.
AVector adam_step(const AVector& theta, const AVector& grad, AdamState& state,
                  const GDConfig& cfg, int t, const Projection& projection, const MeasureD* d,
                  Rng& rng);

}  // namespace cstar
