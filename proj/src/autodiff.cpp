#include "cstar/autodiff.hpp"

namespace cstar {

Var Tape::record(Op op, Var x, Var y) {
  switch (op) {
    case Op::add: return add(x, y);
    case Op::sub: return sub(x, y);
    case Op::mul: return mul(x, y);
    case Op::div: return div(x, y);
    case Op::exp: return exp_op(x);
    case Op::log: return log_op(x);
    case Op::tanh: return tanh_op(x);
    case Op::neg: return neg(x);
    case Op::square: return square(x);
  }
  throw std::invalid_argument("tape: unknown op");
}

const std::vector<double>& Tape::backward(const Var& output) {
  if (output.tape != this || output.idx < 0 ||
      static_cast<std::size_t>(output.idx) >= nodes_.size()) {
    throw std::invalid_argument("tape: output does not belong to this tape");
  }
  adjoint_.assign(nodes_.size(), 0.0);
  adjoint_[static_cast<std::size_t>(output.idx)] = 1.0;
  for (std::size_t i = static_cast<std::size_t>(output.idx) + 1; i-- > 0;) {
    const double w = adjoint_[i];
    if (w == 0.0) continue;
    const Node& n = nodes_[i];
    if (n.a >= 0) adjoint_[static_cast<std::size_t>(n.a)] += n.pa * w;
    if (n.b >= 0) adjoint_[static_cast<std::size_t>(n.b)] += n.pb * w;
  }
  return adjoint_;
}

}  // namespace cstar
