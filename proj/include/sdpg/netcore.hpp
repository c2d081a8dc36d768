#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace sdpg {

enum class Activation { identity, relu, tanh };

/// Plain feedforward network: affine layers with an elementwise activation
/// between them. Value semantics throughout; no hidden state, no RNG.
struct DenseNet {
  std::vector<int> layer_dims;              // input, hidden..., output widths
  std::vector<Eigen::MatrixXd> weights;     // weights[k]: dims[k+1] x dims[k]
  std::vector<Eigen::VectorXd> biases;      // biases[k]: dims[k+1]
  Activation hidden_activation = Activation::relu;
  Activation output_activation = Activation::identity;

  int input_dim() const { return layer_dims.front(); }
  int output_dim() const { return layer_dims.back(); }
  int layer_count() const { return static_cast<int>(weights.size()); }
};

/// Builds a network with weights drawn uniformly from +-1/sqrt(fan_in) per
/// layer and zero biases. Same seed, same parameters.
DenseNet make_dense_net(const std::vector<int>& layer_dims, Activation hidden,
                        Activation output, std::uint64_t seed);

Eigen::VectorXd forward(const DenseNet& net, const Eigen::VectorXd& x);

/// Row-wise forward over a batch (one input per row). Bit-identical to
/// calling forward() on each row.
Eigen::MatrixXd forward_batch(const DenseNet& net, const Eigen::MatrixXd& inputs);

/// Cached activations from a batched forward pass, consumed by
/// backward_traced. post[k] holds the post-activation rows of layer k;
/// the input rows live in `input`.
struct ForwardTrace {
  Eigen::MatrixXd input;
  std::vector<Eigen::MatrixXd> pre;
  std::vector<Eigen::MatrixXd> post;
};

/// Batched forward (GEMM path) that records activations for a later
/// backward pass. Returns the output rows (also kept in trace.post.back()).
/// Agrees with forward() to roundoff but not necessarily bit-for-bit.
const Eigen::MatrixXd& forward_traced(const DenseNet& net, const Eigen::MatrixXd& inputs,
                                      ForwardTrace& trace);

/// Gradients of upstream . output with respect to every parameter and to the
/// input vector. Shapes mirror the network exactly.
struct GradBundle {
  std::vector<Eigen::MatrixXd> weight_grads;
  std::vector<Eigen::VectorXd> bias_grads;
  Eigen::VectorXd input_grad;
};

GradBundle zero_grads(const DenseNet& net);

/// Accumulates `scale * other` into `into`. Shapes must match.
void axpy_grads(double scale, const GradBundle& other, GradBundle& into);

/// Reverse-mode gradients for a single input: param_grads and input_grad of
/// d(upstream . output). ReLU subgradient at 0 is 0.
GradBundle backward(const DenseNet& net, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& upstream);

/// Batched reverse pass over a recorded trace. `upstream` holds one row per
/// traced input row. Parameter gradients are summed over rows into
/// `param_accum` (if non-null, must be pre-shaped via zero_grads); per-row
/// input gradients are written to `input_grads` (if non-null).
void backward_traced(const DenseNet& net, const ForwardTrace& trace,
                     const Eigen::MatrixXd& upstream, GradBundle* param_accum,
                     Eigen::MatrixXd* input_grads);

enum class StepDirection { minimize, maximize };

/// SGD or Adam over a DenseNet's parameters. Adam moments are sized lazily
/// on the first step and afterwards must match the network's shapes.
struct Optimizer {
  enum class Kind { sgd, adam };
  Kind kind = Kind::sgd;
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  long step_count = 0;
  std::vector<Eigen::MatrixXd> weight_m, weight_v;
  std::vector<Eigen::VectorXd> bias_m, bias_v;
};

Optimizer make_optimizer(Optimizer::Kind kind, double learning_rate);

/// One parameter update. minimize: p <- p - lr*g (sgd) or the Adam recursion
/// with bias correction; maximize flips the gradient sign.
void apply_step(Optimizer& opt, DenseNet& net, const GradBundle& grads,
                StepDirection direction);

void copy_params(const DenseNet& src, DenseNet& dst);

/// dst <- tau*src + (1-tau)*dst, tau in (0,1]. tau=1 reproduces copy_params.
void soft_update(const DenseNet& src, DenseNet& dst, double tau);

}  // namespace sdpg
