#include "gabp/metrics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gabp/error.hpp"

namespace gabp::metrics {

EvalReport evaluate(const Eigen::Ref<const Eigen::VectorXd>& predicted,
                    const Eigen::Ref<const Eigen::VectorXd>& realized) {
    if (predicted.size() != realized.size())
        fail(Errc::LengthMismatch, "metrics: " + std::to_string(predicted.size()) +
                                       " predictions vs " + std::to_string(realized.size()) +
                                       " realized values");
    const Eigen::Index n = predicted.size();
    if (n == 0) fail(Errc::EmptyInput, "metrics: nothing to evaluate");

    EvalReport r;
    r.n = n;
    r.error = predicted - realized;
    r.mfe = r.error.mean();
    r.mae = r.error.cwiseAbs().mean();
    r.mse = r.error.squaredNorm() / static_cast<double>(n);
    r.rmse = std::sqrt(r.mse);

    r.error_pct.resize(n);
    bool any_zero = false;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (realized[i] == 0.0) {
            any_zero = true;
            r.error_pct[i] = std::numeric_limits<double>::quiet_NaN();
        } else {
            r.error_pct[i] = r.error[i] / realized[i];
        }
    }
    if (!any_zero) r.mape = r.error_pct.cwiseAbs().mean();
    return r;
}

} // namespace gabp::metrics
