#include "cstar/algebra.hpp"

#include <cmath>
#include <stdexcept>

#include "cstar/basis.hpp"

namespace cstar {

Box Box::cube(int dim, double lo, double hi) {
  Box b;
  b.lo = Eigen::VectorXd::Constant(dim, lo);
  b.hi = Eigen::VectorXd::Constant(dim, hi);
  return b;
}

AnchorSet::AnchorSet(Eigen::MatrixXd points, Box box)
    : points_(std::move(points)), box_(std::move(box)) {
  if (points_.rows() < 1) throw std::invalid_argument("AnchorSet: need at least one point");
  if (box_.lo.size() != points_.cols() || box_.hi.size() != points_.cols()) {
    throw std::invalid_argument("AnchorSet: box dimension mismatch");
  }
  for (Eigen::Index i = 0; i < points_.rows(); ++i) {
    if (!box_.contains(points_.row(i))) {
      throw std::invalid_argument("AnchorSet: point outside the declared box");
    }
    for (Eigen::Index j = i + 1; j < points_.rows(); ++j) {
      if ((points_.row(i) - points_.row(j)).norm() == 0.0) {
        throw std::invalid_argument("AnchorSet: points must be pairwise distinct");
      }
    }
  }
}

bool same_anchors(const AnchorSet& a, const AnchorSet& b) {
  if (&a == &b) return true;
  return a.points().rows() == b.points().rows() &&
         a.points().cols() == b.points().cols() && a.points() == b.points();
}

namespace {

void require_same_anchors(const AnchorSetPtr& a, const AnchorSetPtr& b) {
  if (a == b) return;
  if (!a || !b || !same_anchors(*a, *b)) {
    throw std::invalid_argument("anchor set mismatch");
  }
}

}  // namespace

AElement::AElement(AnchorSetPtr anchors, Eigen::VectorXd samples)
    : anchors_(std::move(anchors)), samples_(std::move(samples)) {
  if (!anchors_) throw std::invalid_argument("AElement: null anchor set");
  if (samples_.size() != anchors_->count()) {
    throw std::invalid_argument("AElement: sample count != anchor count");
  }
  if (!samples_.allFinite()) throw std::invalid_argument("AElement: non-finite samples");
}

AElement::AElement(AnchorSetPtr anchors, Eigen::VectorXd samples, VRep rep)
    : AElement(std::move(anchors), std::move(samples)) {
  if (rep.coeffs.size() != anchors_->count()) {
    throw std::invalid_argument("AElement: coeff count != anchor count");
  }
  if (!rep.coeffs.allFinite() || !std::isfinite(rep.offset)) {
    throw std::invalid_argument("AElement: non-finite representation");
  }
  rep_ = std::move(rep);
}

AElement AElement::constant(AnchorSetPtr anchors, double value) {
  const int l = anchors->count();
  VRep rep;
  rep.coeffs = Eigen::VectorXd::Zero(l);
  rep.offset = value;
  return AElement(std::move(anchors), Eigen::VectorXd::Constant(l, value), std::move(rep));
}

const VRep& AElement::rep() const {
  if (!rep_) throw std::logic_error("AElement: no functional representation attached");
  return *rep_;
}

double AElement::eval(const Eigen::Ref<const Eigen::VectorXd>& z) const {
  if (!rep_) {
    throw std::logic_error("AElement::eval: off-anchor evaluation requires the V representation");
  }
  if (!anchors_->box().contains(z)) {
    throw std::domain_error("AElement::eval: z outside the compact box of Z");
  }
  double acc = rep_->offset;
  const auto& pts = anchors_->points();
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    acc += rep_->coeffs[i] * std::exp(-rep_->gamma * (pts.row(i).transpose() - z).squaredNorm());
  }
  return acc;
}

AElement pointwise(const AElement& a, const AElement& b, PointwiseOp op,
                   const RidgeProjector* refit) {
  require_same_anchors(a.anchors(), b.anchors());
  Eigen::VectorXd samples;
  switch (op) {
    case PointwiseOp::add: samples = a.samples() + b.samples(); break;
    case PointwiseOp::sub: samples = a.samples() - b.samples(); break;
    case PointwiseOp::mul: samples = a.samples().cwiseProduct(b.samples()); break;
  }
  if (op == PointwiseOp::mul) {
    // Products leave the RBF span; refit from samples when asked to.
    if (refit != nullptr) return refit->project(samples, a.anchors());
    return AElement(a.anchors(), std::move(samples));
  }
  if (a.has_rep() && b.has_rep() && a.rep().gamma == b.rep().gamma) {
    VRep rep;
    rep.gamma = a.rep().gamma;
    const double sign = (op == PointwiseOp::add) ? 1.0 : -1.0;
    rep.coeffs = a.rep().coeffs + sign * b.rep().coeffs;
    rep.offset = a.rep().offset + sign * b.rep().offset;
    return AElement(a.anchors(), std::move(samples), std::move(rep));
  }
  return AElement(a.anchors(), std::move(samples));
}

double a_norm(const AElement& a) { return a.samples().cwiseAbs().maxCoeff(); }

bool is_positive(const AElement& a, double tol) { return a.samples().minCoeff() >= -tol; }

AVector::AVector(AnchorSetPtr anchors, Eigen::MatrixXd samples)
    : anchors_(std::move(anchors)), samples_(std::move(samples)) {
  if (!anchors_) throw std::invalid_argument("AVector: null anchor set");
  if (samples_.rows() < 1) throw std::invalid_argument("AVector: N must be >= 1");
  if (samples_.cols() != anchors_->count()) {
    throw std::invalid_argument("AVector: sample columns != anchor count");
  }
}

AVector::AVector(AnchorSetPtr anchors, Eigen::MatrixXd samples, Rep rep)
    : AVector(std::move(anchors), std::move(samples)) {
  if (rep.coeffs.rows() != samples_.rows() || rep.coeffs.cols() != samples_.cols() ||
      rep.offsets.size() != samples_.rows()) {
    throw std::invalid_argument("AVector: representation shape mismatch");
  }
  rep_ = std::move(rep);
}

AVector::AVector(const std::vector<AElement>& elems) {
  if (elems.empty()) throw std::invalid_argument("AVector: N must be >= 1");
  anchors_ = elems.front().anchors();
  const int l = anchors_->count();
  samples_.resize(static_cast<Eigen::Index>(elems.size()), l);
  const bool all_rep = std::all_of(elems.begin(), elems.end(), [&](const AElement& e) {
    return e.has_rep() && e.rep().gamma == elems.front().rep().gamma;
  });
  if (all_rep) {
    Rep rep;
    rep.gamma = elems.front().rep().gamma;
    rep.coeffs.resize(samples_.rows(), l);
    rep.offsets.resize(samples_.rows());
    rep_ = std::move(rep);
  }
  for (std::size_t i = 0; i < elems.size(); ++i) {
    require_same_anchors(anchors_, elems[i].anchors());
    samples_.row(static_cast<Eigen::Index>(i)) = elems[i].samples();
    if (rep_) {
      rep_->coeffs.row(static_cast<Eigen::Index>(i)) = elems[i].rep().coeffs;
      rep_->offsets[static_cast<Eigen::Index>(i)] = elems[i].rep().offset;
    }
  }
}

AVector AVector::zero(AnchorSetPtr anchors, int n) {
  const int l = anchors->count();
  Rep rep;
  rep.coeffs = Eigen::MatrixXd::Zero(n, l);
  rep.offsets = Eigen::VectorXd::Zero(n);
  return AVector(std::move(anchors), Eigen::MatrixXd::Zero(n, l), std::move(rep));
}

AVector AVector::constant(AnchorSetPtr anchors, const Eigen::VectorXd& values) {
  const int l = anchors->count();
  Rep rep;
  rep.coeffs = Eigen::MatrixXd::Zero(values.size(), l);
  rep.offsets = values;
  return AVector(std::move(anchors), values.replicate(1, l), std::move(rep));
}

const AVector::Rep& AVector::rep() const {
  if (!rep_) throw std::logic_error("AVector: no functional representation attached");
  return *rep_;
}

AVector::Rep& AVector::mutable_rep() {
  if (!rep_) throw std::logic_error("AVector: no functional representation attached");
  return *rep_;
}

AElement AVector::element(int i) const {
  if (i < 0 || i >= size()) throw std::out_of_range("AVector::element");
  if (rep_) {
    VRep r;
    r.coeffs = rep_->coeffs.row(i);
    r.offset = rep_->offsets[i];
    r.gamma = rep_->gamma;
    return AElement(anchors_, samples_.row(i), std::move(r));
  }
  return AElement(anchors_, samples_.row(i));
}

Eigen::VectorXd AVector::eval(const Eigen::Ref<const Eigen::VectorXd>& z) const {
  if (!rep_) throw std::logic_error("AVector::eval requires the V representation");
  if (!anchors_->box().contains(z)) {
    throw std::domain_error("AVector::eval: z outside the compact box of Z");
  }
  const auto& pts = anchors_->points();
  Eigen::VectorXd phi(pts.rows());
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    phi[i] = std::exp(-rep_->gamma * (pts.row(i).transpose() - z).squaredNorm());
  }
  return rep_->offsets + rep_->coeffs * phi;
}

AElement inner_product(const AVector& u, const AVector& v) {
  require_same_anchors(u.anchors(), v.anchors());
  if (u.size() != v.size()) throw std::invalid_argument("inner_product: length mismatch");
  Eigen::VectorXd samples =
      (u.samples().array() * v.samples().array()).colwise().sum().transpose();
  return AElement(u.anchors(), std::move(samples));
}

double norm(const AVector& u) { return std::sqrt(a_norm(inner_product(u, u))); }

}  // namespace cstar
