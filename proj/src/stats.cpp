#include "gabp/stats.hpp"

#include <cmath>
#include <string>

#include "gabp/error.hpp"

namespace gabp::stats {

namespace {

// Sample autocorrelations of y at lags 1..lag, n-denominator autocovariance.
// Returns all-zero when y is constant.
Eigen::VectorXd autocorr(const Eigen::Ref<const Eigen::VectorXd>& y, int lag) {
    const Eigen::Index n = y.size();
    const Eigen::VectorXd yc = y.array() - y.mean();
    const double c0 = yc.squaredNorm() / static_cast<double>(n);
    Eigen::VectorXd rho = Eigen::VectorXd::Zero(lag);
    if (c0 == 0.0) return rho;
    for (int k = 1; k <= lag; ++k) {
        const double ck =
            yc.tail(n - k).dot(yc.head(n - k)) / static_cast<double>(n);
        rho[k - 1] = ck / c0;
    }
    return rho;
}

// Solve A x = b (A symmetric positive semi-definite normal-equations matrix)
// by Gaussian elimination with partial pivoting. Throws SingularRegression
// when a pivot falls below 1e-12 times the largest initial diagonal entry.
Eigen::VectorXd solve_normal_equations(Eigen::MatrixXd a, Eigen::VectorXd b) {
    const Eigen::Index p = a.rows();
    const double ref_pivot = a.diagonal().cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < p; ++k) {
        Eigen::Index piv = k;
        for (Eigen::Index i = k + 1; i < p; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (std::abs(a(piv, k)) < 1e-12 * ref_pivot)
            fail(Errc::SingularRegression, "stats: singular regressor matrix");
        if (piv != k) {
            a.row(piv).swap(a.row(k));
            std::swap(b[piv], b[k]);
        }
        for (Eigen::Index i = k + 1; i < p; ++i) {
            const double f = a(i, k) / a(k, k);
            a.row(i).tail(p - k) -= f * a.row(k).tail(p - k);
            b[i] -= f * b[k];
        }
    }
    Eigen::VectorXd x(p);
    for (Eigen::Index k = p - 1; k >= 0; --k) {
        double s = b[k];
        for (Eigen::Index j = k + 1; j < p; ++j) s -= a(k, j) * x[j];
        x[k] = s / a(k, k);
    }
    return x;
}

} // namespace

double ljung_box_squared(const Eigen::Ref<const Eigen::VectorXd>& x, int lag) {
    const Eigen::Index n = x.size();
    if (lag < 1) throw std::invalid_argument("stats: lag must be >= 1");
    if (n <= lag)
        fail(Errc::SeriesTooShort, "stats: ljung_box_squared needs more than lag=" +
                                       std::to_string(lag) + " observations, got " +
                                       std::to_string(n));
    const Eigen::VectorXd y = (x.array() - x.mean()).square();
    const Eigen::VectorXd rho = autocorr(y, lag);
    double q = 0.0;
    for (int k = 1; k <= lag; ++k)
        q += rho[k - 1] * rho[k - 1] / static_cast<double>(n - k);
    return static_cast<double>(n) * static_cast<double>(n + 2) * q;
}

double arch_lm(const Eigen::Ref<const Eigen::VectorXd>& x, int lag) {
    const Eigen::Index n = x.size();
    if (lag < 1) throw std::invalid_argument("stats: lag must be >= 1");
    if (n <= 2 * lag)
        fail(Errc::SeriesTooShort, "stats: arch_lm needs more than 2*lag=" +
                                       std::to_string(2 * lag) + " observations, got " +
                                       std::to_string(n));

    const Eigen::VectorXd s = (x.array() - x.mean()).square();
    const Eigen::Index n_eff = n - lag;
    const Eigen::Index p = lag + 1;

    Eigen::MatrixXd design(n_eff, p);
    Eigen::VectorXd y(n_eff);
    for (Eigen::Index t = 0; t < n_eff; ++t) {
        y[t] = s[t + lag];
        design(t, 0) = 1.0;
        for (int k = 1; k <= lag; ++k) design(t, k) = s[t + lag - k];
    }

    const Eigen::MatrixXd xtx = design.transpose() * design;
    const Eigen::VectorXd xty = design.transpose() * y;
    const Eigen::VectorXd beta = solve_normal_equations(xtx, xty);

    const Eigen::VectorXd resid = y - design * beta;
    const double sst = (y.array() - y.mean()).square().sum();
    if (sst == 0.0) fail(Errc::SingularRegression, "stats: constant regressand");
    double r2 = 1.0 - resid.squaredNorm() / sst;
    r2 = std::min(std::max(r2, 0.0), 1.0);
    return static_cast<double>(n_eff) * r2;
}

SeriesSummary summarize(const Eigen::Ref<const Eigen::VectorXd>& x, int lag) {
    const Eigen::Index n = x.size();
    if (n < lag + 2)
        fail(Errc::SeriesTooShort, "stats: summarize needs at least lag+2=" +
                                       std::to_string(lag + 2) + " observations, got " +
                                       std::to_string(n));

    SeriesSummary s;
    s.n_obs = n;
    s.lag = lag;
    s.mean = x.mean();
    s.max = x.maxCoeff();
    s.min = x.minCoeff();

    const Eigen::ArrayXd c = x.array() - s.mean;
    const double ss = c.square().sum();
    s.std_dev = std::sqrt(ss / static_cast<double>(n - 1));
    if (!(s.std_dev > 0.0))
        fail(Errc::DegenerateSeries, "stats: zero-variance series");

    const double s_pop = std::sqrt(ss / static_cast<double>(n));
    const Eigen::ArrayXd z = c / s_pop;
    s.skewness = z.cube().sum() / static_cast<double>(n);
    s.excess_kurtosis = z.pow(4).sum() / static_cast<double>(n) - 3.0;

    s.q2_stat = ljung_box_squared(x, lag);
    s.arch_stat = arch_lm(x, lag);
    return s;
}

double chi2_critical(int df, double level) {
    // Upper quantiles of chi-square for df 1..30 at 90/95/99%.
    static const double table[30][3] = {
        {2.705543, 3.841459, 6.634897},    {4.605170, 5.991465, 9.210340},
        {6.251389, 7.814728, 11.344867},   {7.779440, 9.487729, 13.276704},
        {9.236357, 11.070498, 15.086272},  {10.644641, 12.591587, 16.811894},
        {12.017037, 14.067140, 18.475307}, {13.361566, 15.507313, 20.090235},
        {14.683657, 16.918978, 21.665994}, {15.987179, 18.307038, 23.209251},
        {17.275009, 19.675138, 24.724970}, {18.549348, 21.026070, 26.216967},
        {19.811929, 22.362032, 27.688250}, {21.064144, 23.684791, 29.141238},
        {22.307130, 24.995790, 30.577914}, {23.541829, 26.296228, 31.999927},
        {24.769035, 27.587112, 33.408664}, {25.989423, 28.869299, 34.805306},
        {27.203571, 30.143527, 36.190869}, {28.411981, 31.410433, 37.566235},
        {29.615089, 32.670573, 38.932173}, {30.813282, 33.924438, 40.289360},
        {32.006900, 35.172462, 41.638398}, {33.196244, 36.415029, 42.979820},
        {34.381587, 37.652484, 44.314105}, {35.563171, 38.885139, 45.641683},
        {36.741217, 40.113272, 46.962942}, {37.915923, 41.337138, 48.278236},
        {39.087470, 42.556968, 49.587884}, {40.256024, 43.772972, 50.892181},
    };
    if (df < 1 || df > 30)
        throw std::invalid_argument("stats: chi2_critical supports df 1..30");
    int col;
    if (level == 0.90)
        col = 0;
    else if (level == 0.95)
        col = 1;
    else if (level == 0.99)
        col = 2;
    else
        throw std::invalid_argument("stats: chi2_critical supports levels 0.90/0.95/0.99");
    return table[df - 1][col];
}

} // namespace gabp::stats
