#include "gabp/network.hpp"

#include <cmath>

#include "gabp/error.hpp"

namespace gabp::net {

const char* activation_name(Activation a) {
    return a == Activation::Tanh ? "tanh" : "sigmoid";
}

Activation activation_from_name(const std::string& name) {
    if (name == "tanh") return Activation::Tanh;
    if (name == "sigmoid") return Activation::Sigmoid;
    fail(Errc::BadConfig, "network: unknown activation '" + name + "'");
}

Network make_network(NetShape shape, Activation hidden) {
    Network n;
    n.shape = shape;
    n.w1 = Eigen::MatrixXd::Zero(shape.hidden, shape.inputs);
    n.b1 = Eigen::VectorXd::Zero(shape.hidden);
    n.w2 = Eigen::MatrixXd::Zero(shape.outputs, shape.hidden);
    n.b2 = Eigen::VectorXd::Zero(shape.outputs);
    n.hidden_activation = hidden;
    return n;
}

Chromosome encode(const Network& net) {
    const NetShape& s = net.shape;
    Chromosome c;
    c.genes.resize(s.gene_count());
    Eigen::Index g = 0;
    for (Eigen::Index i = 0; i < s.hidden; ++i)
        for (Eigen::Index j = 0; j < s.inputs; ++j) c.genes[g++] = net.w1(i, j);
    for (Eigen::Index i = 0; i < s.hidden; ++i) c.genes[g++] = net.b1[i];
    for (Eigen::Index i = 0; i < s.outputs; ++i)
        for (Eigen::Index j = 0; j < s.hidden; ++j) c.genes[g++] = net.w2(i, j);
    for (Eigen::Index i = 0; i < s.outputs; ++i) c.genes[g++] = net.b2[i];
    return c;
}

Network decode(const Chromosome& c, NetShape shape, Activation hidden) {
    if (c.genes.size() != shape.gene_count())
        fail(Errc::LengthMismatch, "network: chromosome of length " +
                                       std::to_string(c.genes.size()) + " does not fit shape (" +
                                       std::to_string(shape.inputs) + "," +
                                       std::to_string(shape.hidden) + "," +
                                       std::to_string(shape.outputs) + "), expected " +
                                       std::to_string(shape.gene_count()));
    Network net = make_network(shape, hidden);
    Eigen::Index g = 0;
    for (Eigen::Index i = 0; i < shape.hidden; ++i)
        for (Eigen::Index j = 0; j < shape.inputs; ++j) net.w1(i, j) = c.genes[g++];
    for (Eigen::Index i = 0; i < shape.hidden; ++i) net.b1[i] = c.genes[g++];
    for (Eigen::Index i = 0; i < shape.outputs; ++i)
        for (Eigen::Index j = 0; j < shape.hidden; ++j) net.w2(i, j) = c.genes[g++];
    for (Eigen::Index i = 0; i < shape.outputs; ++i) net.b2[i] = c.genes[g++];
    return net;
}

namespace {

inline Eigen::MatrixXd activate(const Eigen::MatrixXd& z, Activation a) {
    if (a == Activation::Tanh) return z.array().tanh();
    return 1.0 / (1.0 + (-z.array()).exp());
}

// Derivative expressed through the activation value.
inline Eigen::ArrayXXd activate_deriv(const Eigen::MatrixXd& h, Activation a) {
    if (a == Activation::Tanh) return 1.0 - h.array().square();
    return h.array() * (1.0 - h.array());
}

} // namespace

Eigen::VectorXd forward(const Network& net, const Eigen::Ref<const Eigen::VectorXd>& x) {
    if (x.size() != net.shape.inputs)
        fail(Errc::DimensionMismatch, "network: input of size " + std::to_string(x.size()) +
                                          ", expected " + std::to_string(net.shape.inputs));
    const Eigen::VectorXd h = activate(net.w1 * x + net.b1, net.hidden_activation);
    return net.w2 * h + net.b2;
}

Eigen::MatrixXd forward_batch(const Network& net, const Eigen::Ref<const Eigen::MatrixXd>& X) {
    if (X.cols() != net.shape.inputs)
        fail(Errc::DimensionMismatch, "network: batch has " + std::to_string(X.cols()) +
                                          " columns, expected " +
                                          std::to_string(net.shape.inputs));
    const Eigen::MatrixXd h =
        activate((X * net.w1.transpose()).rowwise() + net.b1.transpose(),
                 net.hidden_activation);
    return (h * net.w2.transpose()).rowwise() + net.b2.transpose();
}

double mse_loss(const Network& net, const Eigen::Ref<const Eigen::MatrixXd>& X,
                const Eigen::Ref<const Eigen::MatrixXd>& Y) {
    const Eigen::MatrixXd o = forward_batch(net, X);
    return (o - Y).squaredNorm() / static_cast<double>(X.rows());
}

Gradients backprop(const Network& net, const Eigen::Ref<const Eigen::MatrixXd>& X,
                   const Eigen::Ref<const Eigen::MatrixXd>& Y) {
    const Eigen::Index n = X.rows();
    if (Y.rows() != n || Y.cols() != net.shape.outputs)
        fail(Errc::DimensionMismatch, "network: target shape does not match batch/outputs");

    const Eigen::MatrixXd h =
        activate((X * net.w1.transpose()).rowwise() + net.b1.transpose(),
                 net.hidden_activation);                                   // n x hidden
    const Eigen::MatrixXd o = (h * net.w2.transpose()).rowwise() + net.b2.transpose();
    const Eigen::MatrixXd d_out = (o - Y) * (2.0 / static_cast<double>(n)); // n x outputs
    const Eigen::MatrixXd d_hidden =
        (d_out * net.w2).array() * activate_deriv(h, net.hidden_activation); // n x hidden

    Gradients g;
    g.w2 = d_out.transpose() * h;
    g.b2 = d_out.colwise().sum();
    g.w1 = d_hidden.transpose() * X;
    g.b1 = d_hidden.colwise().sum();
    return g;
}

TrainResult train_bp(Network net, const Eigen::Ref<const Eigen::MatrixXd>& X,
                     const Eigen::Ref<const Eigen::MatrixXd>& Y, double learning_rate,
                     int epochs) {
    if (!(learning_rate > 0.0))
        throw std::invalid_argument("network: learning rate must be positive");
    if (epochs < 1) throw std::invalid_argument("network: epochs must be >= 1");
    if (X.rows() == 0) fail(Errc::EmptyInput, "network: empty training batch");

    TrainResult r;
    r.loss_trace.resize(epochs);
    for (int e = 0; e < epochs; ++e) {
        const Eigen::MatrixXd h =
            activate((X * net.w1.transpose()).rowwise() + net.b1.transpose(),
                     net.hidden_activation);
        const Eigen::MatrixXd o = (h * net.w2.transpose()).rowwise() + net.b2.transpose();
        const double loss = (o - Y).squaredNorm() / static_cast<double>(X.rows());
        if (!std::isfinite(loss))
            fail(Errc::NonFiniteLoss,
                 "network: loss diverged at epoch " + std::to_string(e) +
                     " (learning rate too large?)");
        r.loss_trace[e] = loss;

        const Eigen::MatrixXd d_out = (o - Y) * (2.0 / static_cast<double>(X.rows()));
        const Eigen::MatrixXd d_hidden =
            (d_out * net.w2).array() * activate_deriv(h, net.hidden_activation);

        net.w2 -= learning_rate * (d_out.transpose() * h);
        net.b2 -= learning_rate * d_out.colwise().sum().transpose();
        net.w1 -= learning_rate * (d_hidden.transpose() * X);
        net.b1 -= learning_rate * d_hidden.colwise().sum().transpose();
    }
    r.net = std::move(net);
    return r;
}

double fitness_error(const Network& net, const Eigen::Ref<const Eigen::MatrixXd>& X,
                     const Eigen::Ref<const Eigen::MatrixXd>& Y, double k) {
    if (!(k > 0.0)) throw std::invalid_argument("network: fitness coefficient k must be > 0");
    const Eigen::MatrixXd o = forward_batch(net, X);
    return k * (o - Y).cwiseAbs().sum();
}

} // namespace gabp::net
