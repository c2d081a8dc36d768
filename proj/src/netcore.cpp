#include "sdpg/netcore.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace sdpg {

namespace {

void apply_activation(Activation act, Eigen::MatrixXd& m) {
  switch (act) {
    case Activation::identity:
      break;
    case Activation::relu:
      m = m.cwiseMax(0.0);
      break;
    case Activation::tanh:
      m = m.array().tanh().matrix();
      break;
  }
}

// Derivative of the activation given pre- and post-activation values.
// ReLU uses the pre-activation sign with the subgradient at 0 taken as 0.
Eigen::MatrixXd activation_deriv(Activation act, const Eigen::MatrixXd& pre,
                                 const Eigen::MatrixXd& post) {
  switch (act) {
    case Activation::identity:
      return Eigen::MatrixXd::Ones(pre.rows(), pre.cols());
    case Activation::relu:
      return (pre.array() > 0.0).cast<double>().matrix();
    case Activation::tanh:
      return (1.0 - post.array().square()).matrix();
  }
  return {};
}

void check_same_shape(const DenseNet& net, const GradBundle& grads) {
  if (grads.weight_grads.size() != net.weights.size() ||
      grads.bias_grads.size() != net.biases.size()) {
    throw std::invalid_argument("gradient bundle layer count does not match network");
  }
  for (std::size_t k = 0; k < net.weights.size(); ++k) {
    if (grads.weight_grads[k].rows() != net.weights[k].rows() ||
        grads.weight_grads[k].cols() != net.weights[k].cols() ||
        grads.bias_grads[k].size() != net.biases[k].size()) {
      throw std::invalid_argument("gradient shape mismatch at layer " + std::to_string(k));
    }
  }
}

void check_same_shape(const DenseNet& a, const DenseNet& b) {
  if (a.layer_dims != b.layer_dims) {
    throw std::invalid_argument("network shape mismatch");
  }
}

}  // namespace

DenseNet make_dense_net(const std::vector<int>& layer_dims, Activation hidden,
                        Activation output, std::uint64_t seed) {
  if (layer_dims.size() < 2) {
    throw std::invalid_argument("network needs at least input and output dims");
  }
  for (int d : layer_dims) {
    if (d <= 0) throw std::invalid_argument("layer dims must be positive");
  }
  DenseNet net;
  net.layer_dims = layer_dims;
  net.hidden_activation = hidden;
  net.output_activation = output;
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k + 1 < layer_dims.size(); ++k) {
    const int fan_in = layer_dims[k];
    const int fan_out = layer_dims[k + 1];
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    std::uniform_real_distribution<double> unif(-bound, bound);
    Eigen::MatrixXd w(fan_out, fan_in);
    for (int r = 0; r < fan_out; ++r) {
      for (int c = 0; c < fan_in; ++c) w(r, c) = unif(rng);
    }
    net.weights.push_back(std::move(w));
    net.biases.push_back(Eigen::VectorXd::Zero(fan_out));
  }
  return net;
}

Eigen::VectorXd forward(const DenseNet& net, const Eigen::VectorXd& x) {
  if (x.size() != net.input_dim()) {
    throw std::invalid_argument("forward: input has " + std::to_string(x.size()) +
                                " entries, expected " + std::to_string(net.input_dim()));
  }
  Eigen::VectorXd h = x;
  const int layers = net.layer_count();
  for (int k = 0; k < layers; ++k) {
    Eigen::VectorXd z = net.weights[k] * h + net.biases[k];
    const Activation act =
        (k + 1 == layers) ? net.output_activation : net.hidden_activation;
    switch (act) {
      case Activation::identity:
        break;
      case Activation::relu:
        z = z.cwiseMax(0.0);
        break;
      case Activation::tanh:
        z = z.array().tanh().matrix();
        break;
    }
    h = std::move(z);
  }
  return h;
}

Eigen::MatrixXd forward_batch(const DenseNet& net, const Eigen::MatrixXd& inputs) {
  if (inputs.cols() != net.input_dim()) {
    throw std::invalid_argument("forward_batch: rows must have " +
                                std::to_string(net.input_dim()) + " entries");
  }
  Eigen::MatrixXd out(inputs.rows(), net.output_dim());
  for (Eigen::Index r = 0; r < inputs.rows(); ++r) {
    out.row(r) = forward(net, inputs.row(r).transpose()).transpose();
  }
  return out;
}

const Eigen::MatrixXd& forward_traced(const DenseNet& net, const Eigen::MatrixXd& inputs,
                                      ForwardTrace& trace) {
  if (inputs.cols() != net.input_dim()) {
    throw std::invalid_argument("forward_traced: rows must have " +
                                std::to_string(net.input_dim()) + " entries");
  }
  const int layers = net.layer_count();
  trace.input = inputs;
  trace.pre.resize(layers);
  trace.post.resize(layers);
  const Eigen::MatrixXd* h = &trace.input;
  for (int k = 0; k < layers; ++k) {
    trace.pre[k].noalias() = (*h) * net.weights[k].transpose();
    trace.pre[k].rowwise() += net.biases[k].transpose();
    trace.post[k] = trace.pre[k];
    const Activation act =
        (k + 1 == layers) ? net.output_activation : net.hidden_activation;
    apply_activation(act, trace.post[k]);
    h = &trace.post[k];
  }
  return trace.post.back();
}

GradBundle zero_grads(const DenseNet& net) {
  GradBundle g;
  for (std::size_t k = 0; k < net.weights.size(); ++k) {
    g.weight_grads.emplace_back(
        Eigen::MatrixXd::Zero(net.weights[k].rows(), net.weights[k].cols()));
    g.bias_grads.emplace_back(Eigen::VectorXd::Zero(net.biases[k].size()));
  }
  g.input_grad = Eigen::VectorXd::Zero(net.input_dim());
  return g;
}

void axpy_grads(double scale, const GradBundle& other, GradBundle& into) {
  for (std::size_t k = 0; k < into.weight_grads.size(); ++k) {
    into.weight_grads[k] += scale * other.weight_grads[k];
    into.bias_grads[k] += scale * other.bias_grads[k];
  }
  if (into.input_grad.size() == other.input_grad.size()) {
    into.input_grad += scale * other.input_grad;
  }
}

void backward_traced(const DenseNet& net, const ForwardTrace& trace,
                     const Eigen::MatrixXd& upstream, GradBundle* param_accum,
                     Eigen::MatrixXd* input_grads) {
  const int layers = net.layer_count();
  if (upstream.rows() != trace.input.rows() || upstream.cols() != net.output_dim()) {
    throw std::invalid_argument("backward_traced: upstream shape mismatch");
  }
  if (!upstream.allFinite()) {
    throw std::domain_error("backward_traced: non-finite upstream gradient");
  }
  Eigen::MatrixXd delta =
      upstream.cwiseProduct(activation_deriv(net.output_activation,
                                             trace.pre[layers - 1],
                                             trace.post[layers - 1]));
  for (int k = layers - 1; k >= 0; --k) {
    const Eigen::MatrixXd& below = (k == 0) ? trace.input : trace.post[k - 1];
    if (param_accum) {
      param_accum->weight_grads[k].noalias() += delta.transpose() * below;
      param_accum->bias_grads[k] += delta.colwise().sum().transpose();
    }
    if (k > 0) {
      Eigen::MatrixXd next;
      next.noalias() = delta * net.weights[k];
      delta = next.cwiseProduct(
          activation_deriv(net.hidden_activation, trace.pre[k - 1], trace.post[k - 1]));
    } else if (input_grads) {
      input_grads->noalias() = delta * net.weights[0];
    }
  }
}

GradBundle backward(const DenseNet& net, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& upstream) {
  if (upstream.size() != net.output_dim()) {
    throw std::invalid_argument("backward: upstream length must equal output dim");
  }
  ForwardTrace trace;
  forward_traced(net, x.transpose(), trace);
  GradBundle grads = zero_grads(net);
  Eigen::MatrixXd input_grads(1, net.input_dim());
  backward_traced(net, trace, upstream.transpose(), &grads, &input_grads);
  grads.input_grad = input_grads.row(0).transpose();
  return grads;
}

Optimizer make_optimizer(Optimizer::Kind kind, double learning_rate) {
  if (learning_rate <= 0.0) {
    throw std::invalid_argument("learning rate must be positive");
  }
  Optimizer opt;
  opt.kind = kind;
  opt.learning_rate = learning_rate;
  return opt;
}

void apply_step(Optimizer& opt, DenseNet& net, const GradBundle& grads,
                StepDirection direction) {
  check_same_shape(net, grads);
  const double sign = (direction == StepDirection::minimize) ? 1.0 : -1.0;
  if (opt.kind == Optimizer::Kind::sgd) {
    for (std::size_t k = 0; k < net.weights.size(); ++k) {
      net.weights[k] -= (sign * opt.learning_rate) * grads.weight_grads[k];
      net.biases[k] -= (sign * opt.learning_rate) * grads.bias_grads[k];
    }
    ++opt.step_count;
    return;
  }
  // Adam. Lazily size the moment buffers on first use.
  if (opt.weight_m.empty()) {
    for (std::size_t k = 0; k < net.weights.size(); ++k) {
      opt.weight_m.emplace_back(
          Eigen::MatrixXd::Zero(net.weights[k].rows(), net.weights[k].cols()));
      opt.weight_v.emplace_back(
          Eigen::MatrixXd::Zero(net.weights[k].rows(), net.weights[k].cols()));
      opt.bias_m.emplace_back(Eigen::VectorXd::Zero(net.biases[k].size()));
      opt.bias_v.emplace_back(Eigen::VectorXd::Zero(net.biases[k].size()));
    }
  }
  if (opt.weight_m.size() != net.weights.size()) {
    throw std::invalid_argument("optimizer state does not match network");
  }
  ++opt.step_count;
  const double t = static_cast<double>(opt.step_count);
  const double bc1 = 1.0 - std::pow(opt.beta1, t);
  const double bc2 = 1.0 - std::pow(opt.beta2, t);
  for (std::size_t k = 0; k < net.weights.size(); ++k) {
    const Eigen::MatrixXd gw = sign * grads.weight_grads[k];
    opt.weight_m[k] = opt.beta1 * opt.weight_m[k] + (1.0 - opt.beta1) * gw;
    opt.weight_v[k] = opt.beta2 * opt.weight_v[k] + (1.0 - opt.beta2) * gw.cwiseProduct(gw);
    net.weights[k].array() -= opt.learning_rate * (opt.weight_m[k].array() / bc1) /
                              ((opt.weight_v[k].array() / bc2).sqrt() + opt.epsilon);
    const Eigen::VectorXd gb = sign * grads.bias_grads[k];
    opt.bias_m[k] = opt.beta1 * opt.bias_m[k] + (1.0 - opt.beta1) * gb;
    opt.bias_v[k] = opt.beta2 * opt.bias_v[k] + (1.0 - opt.beta2) * gb.cwiseProduct(gb);
    net.biases[k].array() -= opt.learning_rate * (opt.bias_m[k].array() / bc1) /
                             ((opt.bias_v[k].array() / bc2).sqrt() + opt.epsilon);
  }
}

void copy_params(const DenseNet& src, DenseNet& dst) {
  check_same_shape(src, dst);
  dst.weights = src.weights;
  dst.biases = src.biases;
}

void soft_update(const DenseNet& src, DenseNet& dst, double tau) {
  check_same_shape(src, dst);
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw std::invalid_argument("soft_update: tau must be in (0, 1]");
  }
  for (std::size_t k = 0; k < dst.weights.size(); ++k) {
    dst.weights[k] = tau * src.weights[k] + (1.0 - tau) * dst.weights[k];
    dst.biases[k] = tau * src.biases[k] + (1.0 - tau) * dst.biases[k];
  }
}

}  // namespace sdpg
