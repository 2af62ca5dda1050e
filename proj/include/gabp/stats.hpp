#pragma once

#include <Eigen/Core>

namespace gabp::stats {

/// Descriptive statistics plus the two volatility-clustering diagnostics
/// (Ljung-Box on the squared demeaned series, Engle's ARCH-LM), both at the
/// same lag.
struct SeriesSummary {
    Eigen::Index n_obs = 0;
    double mean = 0, max = 0, min = 0;
    double std_dev = 0;         // sample (n-1) denominator
    double skewness = 0;        // population standardization
    double excess_kurtosis = 0; // population standardization
    double q2_stat = 0;
    double arch_stat = 0;
    int lag = 0;
};

/// Errors: SeriesTooShort (n < lag + 2), DegenerateSeries (zero variance).
SeriesSummary summarize(const Eigen::Ref<const Eigen::VectorXd>& x, int lag = 10);

/// Ljung-Box Q statistic of the squared demeaned series:
///   Q = n(n+2) sum_{k=1..lag} rho_k^2 / (n-k),
/// where rho_k is the lag-k sample autocorrelation of (x - mean(x))^2.
/// A constant squared series has all rho_k defined as 0, hence Q = 0.
double ljung_box_squared(const Eigen::Ref<const Eigen::VectorXd>& x, int lag);

/// Engle's ARCH-LM statistic: with e = x - mean(x), regress e_t^2 on a
/// constant and e^2 at lags 1..lag; statistic = n_eff * R^2 with
/// n_eff = n - lag. Demeaning keeps the statistic shift-invariant. The normal
/// equations are solved by partial-pivot elimination; a pivot smaller than
/// 1e-12 times the largest initial pivot raises SingularRegression.
double arch_lm(const Eigen::Ref<const Eigen::VectorXd>& x, int lag);

/// Upper critical value of the chi-square distribution. Supported levels:
/// 0.90, 0.95, 0.99; df 1..30.
double chi2_critical(int df, double level);

} // namespace gabp::stats
