#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gabp/features.hpp"
#include "gabp/network.hpp"

namespace gabp::model_io {

/// Everything needed to run `predict` on fresh data without retraining:
/// the network (as genes in codec order), the feature recipe and the
/// train-fitted normalization parameters.
struct Model {
    net::NetShape shape;
    Eigen::VectorXd genes;
    net::Activation hidden_activation = net::Activation::Tanh;
    std::vector<std::string> feature_names;
    std::vector<features::NormParams> norm;
    features::FeatureColumns columns;
    int vol_window = 21;
    double z_threshold = 5.0;
};

Model from_network(const net::Network& n, const features::Dataset& d,
                   const features::FeatureColumns& cols, int vol_window, double z_threshold);

net::Network to_network(const Model& m);

void save(const std::filesystem::path& path, const Model& m);

/// Errors: ModelParseError on any structural or value problem.
Model load(const std::filesystem::path& path);

} // namespace gabp::model_io
