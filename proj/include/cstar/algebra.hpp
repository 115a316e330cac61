#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <vector>

namespace cstar {

class RidgeProjector;

// Axis-aligned compact box for the parameter space Z.
struct Box {
  Eigen::VectorXd lo, hi;

  bool contains(const Eigen::Ref<const Eigen::VectorXd>& z) const {
    if (z.size() != lo.size()) return false;
    for (Eigen::Index k = 0; k < z.size(); ++k) {
      if (z[k] < lo[k] || z[k] > hi[k]) return false;
    }
    return true;
  }

  static Box cube(int dim, double lo, double hi);
};

// The fixed evaluation points z_1, ..., z_l inside a compact box.
// Points must be pairwise distinct and inside the box.
class AnchorSet {
 public:
  AnchorSet(Eigen::MatrixXd points, Box box);

  static std::shared_ptr<const AnchorSet> create(Eigen::MatrixXd points, Box box) {
    return std::make_shared<const AnchorSet>(std::move(points), std::move(box));
  }

  int count() const { return static_cast<int>(points_.rows()); }
  int dim() const { return static_cast<int>(points_.cols()); }
  const Eigen::MatrixXd& points() const { return points_; }
  Eigen::VectorXd point(int i) const { return points_.row(i); }
  const Box& box() const { return box_; }

 private:
  Eigen::MatrixXd points_;  // l x d
  Box box_;
};

using AnchorSetPtr = std::shared_ptr<const AnchorSet>;

// Functional representation of an element: an explicit constant term plus a
// combination of Gaussian RBFs centered at the anchors,
//   a(z) = offset + sum_i coeffs[i] * exp(-gamma * ||z_i - z||^2).
// The offset makes constant functions (in particular 1_A) exact; ridge
// projection produces pure-span elements with offset 0.
struct VRep {
  Eigen::VectorXd coeffs;
  double offset = 0.0;
  double gamma = 0.0;
};

// An element of A = C(Z), real valued, stored as its samples at the anchors.
// Off-anchor evaluation requires the VRep.
class AElement {
 public:
  AElement(AnchorSetPtr anchors, Eigen::VectorXd samples);
  AElement(AnchorSetPtr anchors, Eigen::VectorXd samples, VRep rep);

  static AElement constant(AnchorSetPtr anchors, double value);

  const AnchorSetPtr& anchors() const { return anchors_; }
  const Eigen::VectorXd& samples() const { return samples_; }
  bool has_rep() const { return rep_.has_value(); }
  const VRep& rep() const;

  // Evaluates the functional form at z. Throws if no representation is
  // attached or z is outside the box of Z.
  double eval(const Eigen::Ref<const Eigen::VectorXd>& z) const;

  bool is_finite() const { return samples_.allFinite(); }

 private:
  AnchorSetPtr anchors_;
  Eigen::VectorXd samples_;
  std::optional<VRep> rep_;
};

enum class PointwiseOp { add, sub, mul };

// Pointwise algebra on C(Z): (a op b)(z_i) at every anchor. add/sub carry the
// functional representation linearly; mul leaves the span, so the result only
// regains one if a projector is supplied to refit it.
AElement pointwise(const AElement& a, const AElement& b, PointwiseOp op,
                   const RidgeProjector* refit = nullptr);

// Sup norm over the anchor samples (exact for elements determined by their
// samples; the documented approximation for general span members).
double a_norm(const AElement& a);

// c >= 0 on Z, checked at the anchors.
bool is_positive(const AElement& a, double tol = 1e-10);

// Stacked representation of A^N sharing one anchor set: samples(i, k) is
// element i evaluated at anchor k. The optional representation stores the RBF
// coefficients row-wise plus one offset per element.
class AVector {
 public:
  struct Rep {
    Eigen::MatrixXd coeffs;   // N x l
    Eigen::VectorXd offsets;  // N
    double gamma = 0.0;
  };

  AVector(AnchorSetPtr anchors, Eigen::MatrixXd samples);
  AVector(AnchorSetPtr anchors, Eigen::MatrixXd samples, Rep rep);
  explicit AVector(const std::vector<AElement>& elems);

  static AVector zero(AnchorSetPtr anchors, int n);
  static AVector constant(AnchorSetPtr anchors, const Eigen::VectorXd& values);

  int size() const { return static_cast<int>(samples_.rows()); }
  const AnchorSetPtr& anchors() const { return anchors_; }
  const Eigen::MatrixXd& samples() const { return samples_; }
  Eigen::MatrixXd& mutable_samples() { return samples_; }
  bool has_rep() const { return rep_.has_value(); }
  const Rep& rep() const;
  Rep& mutable_rep();
  void set_rep(Rep rep) { rep_ = std::move(rep); }
  void drop_rep() { rep_.reset(); }

  AElement element(int i) const;

  // theta(z) for arbitrary z in the box; requires the representation.
  Eigen::VectorXd eval(const Eigen::Ref<const Eigen::VectorXd>& z) const;

 private:
  AnchorSetPtr anchors_;
  Eigen::MatrixXd samples_;  // N x l
  std::optional<Rep> rep_;
};

// The A-valued inner product of Hilbert C*-module A^N: <u,v> = sum_i u_i* v_i
// (the involution is the identity on real-valued functions).
AElement inner_product(const AVector& u, const AVector& v);

// ||u|| = ||<u,u>||_A^(1/2); composed literally so the C*-identity holds at
// sample level by construction.
double norm(const AVector& u);

bool same_anchors(const AnchorSet& a, const AnchorSet& b);

}  // namespace cstar
