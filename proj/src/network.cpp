#include "cstar/network.hpp"

#include <cmath>
#include <stdexcept>

namespace cstar {

int CStarNet::param_count(std::span<const LayerSpec> layers) {
  if (layers.empty()) throw std::invalid_argument("CStarNet: empty layer list");
  int n = 0;
  int prev = layers.front().in_dim;
  for (const auto& layer : layers) {
    if (layer.in_dim < 1 || layer.out_dim < 1) {
      throw std::invalid_argument("CStarNet: layer dims must be >= 1");
    }
    if (layer.in_dim != prev) throw std::invalid_argument("CStarNet: layer dims do not chain");
    n += layer.in_dim * layer.out_dim;
    prev = layer.out_dim;
  }
  return n;
}

CStarNet::CStarNet(std::vector<LayerSpec> layers, AVector weights)
    : layers_(std::move(layers)), weights_(std::move(weights)) {
  if (param_count(layers_) != weights_.size()) {
    throw std::invalid_argument("CStarNet: weight count != sum of layer sizes");
  }
}

AVector lift_constant(AnchorSetPtr anchors, const Eigen::VectorXd& x) {
  return AVector::constant(std::move(anchors), x);
}

namespace {

void apply_activation(Activation act, Eigen::VectorXd& v) {
  switch (act) {
    case Activation::identity:
      return;
    case Activation::tanh:
      v = v.array().tanh();
      return;
    case Activation::relu:
      v = v.cwiseMax(0.0);
      return;
    case Activation::softmax: {
      std::vector<double> logits(v.data(), v.data() + v.size());
      const auto ls = log_softmax<double>(logits);
      for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = std::exp(ls[static_cast<std::size_t>(i)]);
      return;
    }
  }
}

}  // namespace

Eigen::VectorXd forward_at(const CStarNet& net, const AVector& x, int z_index) {
  if (x.size() != net.layers().front().in_dim) {
    throw std::invalid_argument("forward_at: input dimension mismatch");
  }
  if (z_index < 0 || z_index >= net.anchors()->count()) {
    throw std::out_of_range("forward_at: anchor index");
  }
  Eigen::VectorXd h = x.samples().col(z_index);
  int offset = 0;
  for (const auto& layer : net.layers()) {
    Eigen::VectorXd next(layer.out_dim);
    for (int r = 0; r < layer.out_dim; ++r) {
      double acc = 0.0;
      for (int c = 0; c < layer.in_dim; ++c) {
        acc += net.weights().samples()(offset + r * layer.in_dim + c, z_index) * h[c];
      }
      next[r] = acc;
    }
    apply_activation(layer.act, next);
    h = std::move(next);
    offset += layer.in_dim * layer.out_dim;
  }
  return h;
}

AVector forward(const CStarNet& net, const AVector& x, const RidgeProjector* proj) {
  const int l = net.anchors()->count();
  const int out_dim = net.layers().back().out_dim;
  Eigen::MatrixXd samples(out_dim, l);
  for (int k = 0; k < l; ++k) samples.col(k) = forward_at(net, x, k);
  AVector out(net.anchors(), std::move(samples));
  if (proj != nullptr) {
    AVector::Rep rep;
    rep.gamma = proj->basis().gamma;
    rep.coeffs = proj->fit_coeffs(out.samples());
    rep.offsets = Eigen::VectorXd::Zero(out_dim);
    out.mutable_samples() = rep.coeffs * proj->gram();
    out.set_rep(std::move(rep));
  }
  return out;
}

std::vector<LayerMatrices> unflatten(const CStarNet& net) {
  const int l = net.anchors()->count();
  std::vector<LayerMatrices> out;
  int offset = 0;
  for (const auto& layer : net.layers()) {
    LayerMatrices per_anchor(static_cast<std::size_t>(l));
    for (int k = 0; k < l; ++k) {
      Eigen::MatrixXd w(layer.out_dim, layer.in_dim);
      for (int r = 0; r < layer.out_dim; ++r) {
        for (int c = 0; c < layer.in_dim; ++c) {
          w(r, c) = net.weights().samples()(offset + r * layer.in_dim + c, k);
        }
      }
      per_anchor[static_cast<std::size_t>(k)] = std::move(w);
    }
    out.push_back(std::move(per_anchor));
    offset += layer.in_dim * layer.out_dim;
  }
  return out;
}

AVector flatten(AnchorSetPtr anchors, std::span<const LayerSpec> layers,
                const std::vector<LayerMatrices>& mats) {
  const int n = CStarNet::param_count(layers);
  if (mats.size() != layers.size()) throw std::invalid_argument("flatten: layer count mismatch");
  const int l = anchors->count();
  Eigen::MatrixXd samples(n, l);
  int offset = 0;
  for (std::size_t li = 0; li < layers.size(); ++li) {
    const auto& layer = layers[li];
    if (mats[li].size() != static_cast<std::size_t>(l)) {
      throw std::invalid_argument("flatten: anchor count mismatch");
    }
    for (int k = 0; k < l; ++k) {
      const auto& w = mats[li][static_cast<std::size_t>(k)];
      if (w.rows() != layer.out_dim || w.cols() != layer.in_dim) {
        throw std::invalid_argument("flatten: matrix shape mismatch");
      }
      for (int r = 0; r < layer.out_dim; ++r) {
        for (int c = 0; c < layer.in_dim; ++c) {
          samples(offset + r * layer.in_dim + c, k) = w(r, c);
        }
      }
    }
    offset += layer.in_dim * layer.out_dim;
  }
  return AVector(std::move(anchors), std::move(samples));
}

}  // namespace cstar
