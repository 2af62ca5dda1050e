#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "gabp/ingest.hpp"

namespace gabp::synth {

/// GARCH(1,1) return process:
///   r_t = mu + sigma_t * z_t,   sigma^2_t = omega + alpha r^2_{t-1} + beta sigma^2_{t-1}
/// with z_t iid standard normal and sigma^2_1 at the unconditional variance
/// omega / (1 - alpha - beta). Requires alpha + beta < 1 and omega > 0.
struct GarchParams {
    double omega = 1e-6;
    double alpha = 0.1;
    double beta = 0.85;
    double mu = 0.0005;
    Eigen::Index n = 2783;
    std::uint64_t seed = 0;
};

struct GarchPath {
    Eigen::VectorXd returns;
    Eigen::VectorXd cond_vol; // sigma_t
};

/// Errors: NonStationary (alpha + beta >= 1, or invalid omega/alpha/beta).
GarchPath simulate(const GarchParams& p);
Eigen::VectorXd garch_returns(const GarchParams& p);

/// Full synthetic market table with columns close, volume, sse50, bond3m,
/// bond6m, fx over synthesized weekday dates. The bond yields load on the
/// conditional volatility, so the exogenous features carry real signal.
/// Deterministic: the same seed reproduces the table exactly.
ingest::RawTable generate(const GarchParams& p);

} // namespace gabp::synth
