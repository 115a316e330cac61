#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "cstar/algebra.hpp"
#include "cstar/autodiff.hpp"
#include "cstar/basis.hpp"

namespace cstar {

enum class Activation { identity, tanh, relu, softmax };

struct LayerSpec {
  int in_dim = 1;
  int out_dim = 1;
  Activation act = Activation::identity;
};

// Feedforward model with function-valued weights: at every anchor z_i the
// flattened parameter vector theta(z_i) instantiates an ordinary real network,
// and activations act pointwise per anchor.
class CStarNet {
 public:
  CStarNet(std::vector<LayerSpec> layers, AVector weights);

  static int param_count(std::span<const LayerSpec> layers);

  const std::vector<LayerSpec>& layers() const { return layers_; }
  const AVector& weights() const { return weights_; }
  AVector& mutable_weights() { return weights_; }
  const AnchorSetPtr& anchors() const { return weights_.anchors(); }

 private:
  std::vector<LayerSpec> layers_;
  AVector weights_;
};

// x == x as a constant function: identical samples at every anchor, exact
// constant representation (offset term), so eval returns x anywhere on Z.
AVector lift_constant(AnchorSetPtr anchors, const Eigen::VectorXd& x);

// Runs the real network with weights theta(z_i) on the input samples at that
// anchor.
Eigen::VectorXd forward_at(const CStarNet& net, const AVector& x, int z_index);

// forward_at for every anchor; output coefficients fitted through `proj` when
// one is supplied.
AVector forward(const CStarNet& net, const AVector& x, const RidgeProjector* proj = nullptr);

// Weight layout: layers in order, each W row-major (out x in). Matrices are
// indexed per layer then per anchor.
using LayerMatrices = std::vector<Eigen::MatrixXd>;  // one out x in matrix per anchor
std::vector<LayerMatrices> unflatten(const CStarNet& net);
AVector flatten(AnchorSetPtr anchors, std::span<const LayerSpec> layers,
                const std::vector<LayerMatrices>& mats);

// Numerically stable log softmax, shared by the real and tape paths.
template <class T>
std::vector<T> log_softmax(std::span<const T> logits) {
  std::size_t arg = 0;
  for (std::size_t i = 1; i < logits.size(); ++i) {
    if (value_of(logits[i]) > value_of(logits[arg])) arg = i;
  }
  const T m = logits[arg];
  T sum = exp(logits[0] - m);
  for (std::size_t i = 1; i < logits.size(); ++i) sum = sum + exp(logits[i] - m);
  const T lse = m + log(sum);
  std::vector<T> out;
  out.reserve(logits.size());
  for (const T& v : logits) out.push_back(v - lse);
  return out;
}

template <class T>
T relu(const T& x) {
  if (value_of(x) > 0.0) return x;
  return promote(x, 0.0);
}

}  // namespace cstar
