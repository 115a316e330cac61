#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace cstar {

enum class Op : std::uint8_t { add, sub, mul, div, exp, log, tanh, neg, square };

class Tape;

// Handle to a tape node. Carries the value so recording can compute local
// partials without chasing indices.
struct Var {
  Tape* tape = nullptr;
  std::int32_t idx = -1;
  double val = 0.0;
};

// Reverse-mode tape over real scalars. Nodes store parent indices and the
// local partials, so the backward sweep is a single branch-light loop.
// Tapes are short-lived, one per (anchor, minibatch) evaluation, and are
// never shared between threads.
class Tape {
 public:
  void clear() { nodes_.clear(); }
  std::size_t size() const { return nodes_.size(); }

  Var input(double v) { return leaf(v); }
  Var constant(double v) { return leaf(v); }

  // The generic recording entry point; unary ops ignore y.
  Var record(Op op, Var x, Var y = {});

  Var add(Var x, Var y) { return push(x.val + y.val, x.idx, y.idx, 1.0, 1.0); }
  Var sub(Var x, Var y) { return push(x.val - y.val, x.idx, y.idx, 1.0, -1.0); }
  Var mul(Var x, Var y) { return push(x.val * y.val, x.idx, y.idx, y.val, x.val); }
  Var div(Var x, Var y) {
    if (y.val == 0.0) throw std::domain_error("tape: division by zero");
    return push(x.val / y.val, x.idx, y.idx, 1.0 / y.val, -x.val / (y.val * y.val));
  }
  Var exp_op(Var x) {
    const double v = std::exp(x.val);
    return push(v, x.idx, -1, v, 0.0);
  }
  Var log_op(Var x) {
    if (x.val <= 0.0) throw std::domain_error("tape: log of nonpositive value");
    return push(std::log(x.val), x.idx, -1, 1.0 / x.val, 0.0);
  }
  Var tanh_op(Var x) {
    const double v = std::tanh(x.val);
    return push(v, x.idx, -1, 1.0 - v * v, 0.0);
  }
  Var neg(Var x) { return push(-x.val, x.idx, -1, -1.0, 0.0); }
  Var square(Var x) { return push(x.val * x.val, x.idx, -1, 2.0 * x.val, 0.0); }

  // Fused variable/constant forms; they keep tapes small in the hot loops.
  Var add_const(Var x, double c) { return push(x.val + c, x.idx, -1, 1.0, 0.0); }
  Var mul_const(Var x, double c) { return push(x.val * c, x.idx, -1, c, 0.0); }
  Var sub_from_const(double c, Var x) { return push(c - x.val, x.idx, -1, -1.0, 0.0); }

  // Reverse accumulation from `output`. Returns the adjoint of every node;
  // inputs not on any path to the output keep adjoint 0.
  const std::vector<double>& backward(const Var& output);

  double adjoint(const Var& v) const { return adjoint_[static_cast<std::size_t>(v.idx)]; }

 private:
  struct Node {
    std::int32_t a, b;
    double pa, pb;
  };

  Var leaf(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("tape: non-finite leaf value");
    nodes_.push_back({-1, -1, 0.0, 0.0});
    return Var{this, static_cast<std::int32_t>(nodes_.size() - 1), v};
  }

  Var push(double v, std::int32_t a, std::int32_t b, double pa, double pb) {
    nodes_.push_back({a, b, pa, pb});
    return Var{this, static_cast<std::int32_t>(nodes_.size() - 1), v};
  }

  std::vector<Node> nodes_;
  std::vector<double> adjoint_;
};

// Operator sugar so templated numeric code works on Var and double alike.
inline Var operator+(Var x, Var y) { return x.tape->add(x, y); }
inline Var operator-(Var x, Var y) { return x.tape->sub(x, y); }
inline Var operator*(Var x, Var y) { return x.tape->mul(x, y); }
inline Var operator/(Var x, Var y) { return x.tape->div(x, y); }
inline Var operator+(Var x, double c) { return x.tape->add_const(x, c); }
inline Var operator+(double c, Var x) { return x.tape->add_const(x, c); }
inline Var operator-(Var x, double c) { return x.tape->add_const(x, -c); }
inline Var operator-(double c, Var x) { return x.tape->sub_from_const(c, x); }
inline Var operator*(Var x, double c) { return x.tape->mul_const(x, c); }
inline Var operator*(double c, Var x) { return x.tape->mul_const(x, c); }
inline Var operator-(Var x) { return x.tape->neg(x); }
inline Var exp(Var x) { return x.tape->exp_op(x); }
inline Var log(Var x) { return x.tape->log_op(x); }
inline Var tanh(Var x) { return x.tape->tanh_op(x); }
inline Var square(Var x) { return x.tape->square(x); }
inline double square(double x) { return x * x; }
inline double value_of(const Var& x) { return x.val; }
inline double value_of(double x) { return x; }

// promote(like, c): lift a plain double into the scalar type of `like`.
inline double promote(double, double c) { return c; }
inline Var promote(const Var& like, double c) { return like.tape->constant(c); }

// Max relative error between reverse-mode gradients and central finite
// differences of `f` at x. `f` is any callable (Tape&, span<const Var>) -> Var.
// Relative error uses max(1e-6, |fd|) as the denominator so near-zero
// components are judged on an absolute scale.
template <class F>
double finite_diff_check(F&& f, std::span<const double> x, double step) {
  Tape tape;
  std::vector<Var> vars;
  vars.reserve(x.size());
  for (double v : x) vars.push_back(tape.input(v));
  Var out = f(tape, std::span<const Var>(vars));
  tape.backward(out);

  std::vector<double> shifted(x.begin(), x.end());
  auto eval = [&](std::span<const double> point) {
    Tape t;
    std::vector<Var> vs;
    vs.reserve(point.size());
    for (double v : point) vs.push_back(t.input(v));
    return f(t, std::span<const Var>(vs)).val;
  };

  double worst = 0.0;
  for (std::size_t i = 0; i < shifted.size(); ++i) {
    const double keep = shifted[i];
    shifted[i] = keep + step;
    const double up = eval(shifted);
    shifted[i] = keep - step;
    const double down = eval(shifted);
    shifted[i] = keep;
    const double fd = (up - down) / (2.0 * step);
    const double ad = tape.adjoint(vars[i]);
    const double denom = std::max(1e-6, std::abs(fd));
    worst = std::max(worst, std::abs(ad - fd) / denom);
  }
  return worst;
}

}  // namespace cstar
