#pragma once

#include <string>

#include <Eigen/Core>

namespace gabp::net {

struct NetShape {
    Eigen::Index inputs = 8;
    Eigen::Index hidden = 10;
    Eigen::Index outputs = 1;

    /// Genes needed to encode a network of this shape:
    /// inputs*hidden + hidden + hidden*outputs + outputs.
    Eigen::Index gene_count() const {
        return inputs * hidden + hidden + hidden * outputs + outputs;
    }
    bool operator==(const NetShape&) const = default;
};

enum class Activation { Tanh, Sigmoid };

const char* activation_name(Activation a);
Activation activation_from_name(const std::string& name);

/// Three-layer feedforward network: hidden activation (tanh by default),
/// identity output.
struct Network {
    NetShape shape;
    Eigen::MatrixXd w1; // hidden x inputs
    Eigen::VectorXd b1; // hidden thresholds
    Eigen::MatrixXd w2; // outputs x hidden
    Eigen::VectorXd b2; // output thresholds
    Activation hidden_activation = Activation::Tanh;
};

/// Zero-parameter network of the given shape.
Network make_network(NetShape shape, Activation hidden = Activation::Tanh);

/// Flat real-valued encoding of all weights and thresholds. Gene order is
/// fixed: w1 row-major, b1, w2 row-major, b2. The bounds are GA metadata and
/// play no role in the codec.
struct Chromosome {
    Eigen::VectorXd genes;
    double min_gene = -1.0;
    double max_gene = 1.0;
};

Chromosome encode(const Network& net);
/// Errors: LengthMismatch when genes do not fit the shape.
Network decode(const Chromosome& c, NetShape shape, Activation hidden = Activation::Tanh);

/// Single-sample forward pass. Errors: DimensionMismatch.
Eigen::VectorXd forward(const Network& net, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Batch forward pass; rows of X are samples, rows of the result are outputs.
Eigen::MatrixXd forward_batch(const Network& net, const Eigen::Ref<const Eigen::MatrixXd>& X);

/// Mean squared error over the batch: (1/N) sum_i |o_i - y_i|^2.
double mse_loss(const Network& net, const Eigen::Ref<const Eigen::MatrixXd>& X,
                const Eigen::Ref<const Eigen::MatrixXd>& Y);

struct Gradients {
    Eigen::MatrixXd w1;
    Eigen::VectorXd b1;
    Eigen::MatrixXd w2;
    Eigen::VectorXd b2;
};

/// Analytic gradient of mse_loss with respect to every parameter.
Gradients backprop(const Network& net, const Eigen::Ref<const Eigen::MatrixXd>& X,
                   const Eigen::Ref<const Eigen::MatrixXd>& Y);

struct BpConfig {
    double learning_rate = 0.3;
    int epochs = 1000;
};

struct TrainResult {
    Network net;
    Eigen::VectorXd loss_trace; // MSE at the start of each epoch
};

/// Full-batch gradient descent on MSE. Deterministic: identical inputs give
/// bit-identical parameters. Errors: NonFiniteLoss on divergence.
TrainResult train_bp(Network net, const Eigen::Ref<const Eigen::MatrixXd>& X,
                     const Eigen::Ref<const Eigen::MatrixXd>& Y, double learning_rate,
                     int epochs);

/// GA fitness: G = k * sum over samples and outputs of |y - o|.
double fitness_error(const Network& net, const Eigen::Ref<const Eigen::MatrixXd>& X,
                     const Eigen::Ref<const Eigen::MatrixXd>& Y, double k = 1.0);

} // namespace gabp::net
