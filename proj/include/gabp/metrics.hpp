#pragma once

#include <optional>

#include <Eigen/Core>

namespace gabp::metrics {

/// The four forecast-error statistics plus the per-sample error series.
///   MFE  = mean(sigma - rv)            (signed)
///   RMSE = sqrt(mean((sigma - rv)^2))
///   MAE  = mean(|sigma - rv|)
///   MAPE = mean(|(sigma - rv) / rv|)   (fraction, not percent)
/// MSE = RMSE^2 is included as a convenience. MAPE is absent when any
/// realized value is exactly zero; the corresponding error_pct entries are
/// NaN.
struct EvalReport {
    double mfe = 0;
    double rmse = 0;
    double mae = 0;
    std::optional<double> mape;
    double mse = 0;
    Eigen::Index n = 0;
    Eigen::VectorXd error;     // sigma - rv
    Eigen::VectorXd error_pct; // (sigma - rv) / rv
};

/// Errors: LengthMismatch, EmptyInput.
EvalReport evaluate(const Eigen::Ref<const Eigen::VectorXd>& predicted,
                    const Eigen::Ref<const Eigen::VectorXd>& realized);

} // namespace gabp::metrics
