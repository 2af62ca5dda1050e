#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gabp/ingest.hpp"

namespace gabp::features {

/// Log returns; one shorter than the price series. Each return carries the
/// later of the two dates it spans.
struct ReturnSeries {
    std::vector<std::string> dates;
    Eigen::VectorXd values;
};

/// Realized volatility per day over a forward window: the value at index t is
/// the deviation of returns t..t+window around their window mean, divided by
/// `window` under the square root. Length = len(returns) - window.
struct VolSeries {
    std::vector<std::string> dates;
    Eigen::VectorXd values;
    int window = 0;
};

struct NormParams {
    double min = 0;
    double max = 0;
};

/// Names of the six source columns the feature builder reads.
struct FeatureColumns {
    std::string close = "close";
    std::string volume = "volume";
    std::string sse50 = "sse50";
    std::string bond3m = "bond3m";
    std::string bond6m = "bond6m";
    std::string fx = "fx";
};

/// Unnormalized supervised rows: X has the eight feature columns, y is the
/// next-step realized volatility in natural units.
struct FeatureMatrix {
    std::vector<std::string> feature_names;
    std::vector<std::string> dates;
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
};

/// Normalized dataset with a random train/test split. X is min-max scaled to
/// [-1, 1] using parameters fitted on the training rows only; y stays in
/// natural units. Index sets are sorted ascending (date order).
struct Dataset {
    std::vector<std::string> feature_names;
    std::vector<std::string> dates;
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    std::vector<NormParams> norm;
    std::vector<Eigen::Index> train_idx;
    std::vector<Eigen::Index> test_idx;
    std::uint64_t seed = 0;

    Eigen::Index rows() const { return X.rows(); }
};

Eigen::VectorXd log_returns(const Eigen::Ref<const Eigen::VectorXd>& prices);
ReturnSeries log_returns(const std::vector<std::string>& dates,
                         const Eigen::Ref<const Eigen::VectorXd>& prices);

Eigen::VectorXd realized_vol(const Eigen::Ref<const Eigen::VectorXd>& returns, int window);
VolSeries realized_vol(const ReturnSeries& r, int window);

/// Linear map with min -> -1 and max -> +1.
double normalize(double v, double min, double max);
double denormalize(double u, double min, double max);

FeatureMatrix build_features(const ingest::PriceTable& t, const FeatureColumns& cols,
                             int vol_window);

/// Scale columns of X with the given per-feature parameters (no clipping).
Eigen::MatrixXd apply_norm(const Eigen::Ref<const Eigen::MatrixXd>& X,
                           const std::vector<NormParams>& norm);

Dataset build_dataset(const ingest::PriceTable& t, const FeatureColumns& cols, int vol_window,
                      std::uint64_t seed, double train_frac = 0.8);

} // namespace gabp::features
