#include "gabp/features.hpp"

#include <cmath>
#include <numeric>

#include "gabp/error.hpp"
#include "gabp/rng.hpp"

namespace gabp::features {

Eigen::VectorXd log_returns(const Eigen::Ref<const Eigen::VectorXd>& prices) {
    const Eigen::Index n = prices.size();
    if (n < 2) fail(Errc::SeriesTooShort, "features: need at least 2 prices");
    if ((prices.array() <= 0.0).any())
        fail(Errc::NonPositivePrice, "features: log returns require positive prices");
    return (prices.tail(n - 1).array() / prices.head(n - 1).array()).log();
}

ReturnSeries log_returns(const std::vector<std::string>& dates,
                         const Eigen::Ref<const Eigen::VectorXd>& prices) {
    ReturnSeries r;
    r.values = log_returns(prices);
    r.dates.assign(dates.begin() + 1, dates.end());
    return r;
}

Eigen::VectorXd realized_vol(const Eigen::Ref<const Eigen::VectorXd>& returns, int window) {
    const Eigen::Index n = returns.size();
    if (window < 1) throw std::invalid_argument("features: window must be >= 1");
    if (n < window + 1)
        fail(Errc::WindowTooLarge, "features: window " + std::to_string(window) +
                                       " needs at least " + std::to_string(window + 1) +
                                       " returns, got " + std::to_string(n));
    // window+1 returns per value, deviations around the window mean, divisor = window
    Eigen::VectorXd out(n - window);
    for (Eigen::Index t = 0; t + window < n; ++t) {
        const auto w = returns.segment(t, window + 1);
        const double mean = w.mean();
        out[t] = std::sqrt((w.array() - mean).square().sum() / static_cast<double>(window));
    }
    return out;
}

VolSeries realized_vol(const ReturnSeries& r, int window) {
    VolSeries v;
    v.values = realized_vol(r.values, window);
    v.window = window;
    v.dates.assign(r.dates.begin(), r.dates.begin() + v.values.size());
    return v;
}

double normalize(double v, double min, double max) {
    if (!(max > min)) fail(Errc::DegenerateRange, "features: normalize requires max > min");
    return 2.0 * (v - min) / (max - min) - 1.0;
}

double denormalize(double u, double min, double max) {
    if (!(max > min)) fail(Errc::DegenerateRange, "features: denormalize requires max > min");
    return min + (u + 1.0) * (max - min) / 2.0;
}

FeatureMatrix build_features(const ingest::PriceTable& t, const FeatureColumns& cols,
                             int vol_window) {
    const Eigen::Index rows = t.rows();
    const Eigen::VectorXd close = t.col(cols.close);
    const Eigen::VectorXd volume = t.col(cols.volume);
    const Eigen::VectorXd sse50 = t.col(cols.sse50);
    const Eigen::VectorXd bond3m = t.col(cols.bond3m);
    const Eigen::VectorXd bond6m = t.col(cols.bond6m);
    const Eigen::VectorXd fx = t.col(cols.fx);

    // Row i usable when return_i, lagged vol rv_{i-1} and target rv_i all
    // exist: i in [2, rows-1-window].
    const Eigen::Index first = 2;
    const Eigen::Index last = rows - 1 - vol_window; // inclusive
    const Eigen::Index n = last - first + 1;
    if (n < 1)
        fail(Errc::InsufficientRows, "features: " + std::to_string(rows) +
                                         " rows leave no usable samples for window " +
                                         std::to_string(vol_window));

    const Eigen::VectorXd ret = log_returns(close);     // ret[i-1] is the return at row i
    const Eigen::VectorXd rv = realized_vol(ret, vol_window); // rv[i-1] is the vol at row i
    const Eigen::VectorXd sse_ret = log_returns(sse50);

    FeatureMatrix f;
    f.feature_names = {"close",           "log_return", "volume",     "lagged_realized_vol",
                       "sse50_log_return", "bond3m_diff", "bond6m_diff", "fx_rate"};
    f.X.resize(n, 8);
    f.y.resize(n);
    f.dates.reserve(static_cast<std::size_t>(n));

    for (Eigen::Index i = first; i <= last; ++i) {
        const Eigen::Index k = i - first;
        f.X(k, 0) = close[i];
        f.X(k, 1) = ret[i - 1];
        f.X(k, 2) = volume[i];
        f.X(k, 3) = rv[i - 2]; // realized vol at row i-1
        f.X(k, 4) = sse_ret[i - 1];
        f.X(k, 5) = bond3m[i] - bond3m[i - 1];
        f.X(k, 6) = bond6m[i] - bond6m[i - 1];
        f.X(k, 7) = fx[i];
        f.y[k] = rv[i - 1]; // realized vol at row i
        f.dates.push_back(t.dates[static_cast<std::size_t>(i)]);
    }
    return f;
}

Eigen::MatrixXd apply_norm(const Eigen::Ref<const Eigen::MatrixXd>& X,
                           const std::vector<NormParams>& norm) {
    if (static_cast<std::size_t>(X.cols()) != norm.size())
        fail(Errc::DimensionMismatch, "features: norm parameter count does not match columns");
    Eigen::MatrixXd out(X.rows(), X.cols());
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        const auto& p = norm[static_cast<std::size_t>(j)];
        for (Eigen::Index i = 0; i < X.rows(); ++i)
            out(i, j) = normalize(X(i, j), p.min, p.max);
    }
    return out;
}

Dataset build_dataset(const ingest::PriceTable& t, const FeatureColumns& cols, int vol_window,
                      std::uint64_t seed, double train_frac) {
    if (!(train_frac > 0.0 && train_frac < 1.0))
        throw std::invalid_argument("features: train_frac must be in (0, 1)");

    FeatureMatrix f = build_features(t, cols, vol_window);
    const Eigen::Index n = f.X.rows();

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    rng::Engine engine = rng::make_engine(rng::derive(seed, rng::stream::kSplit));
    rng::shuffle(order, engine);

    const Eigen::Index n_train =
        static_cast<Eigen::Index>(static_cast<double>(n) * train_frac);
    if (n_train < 1 || n_train >= n)
        fail(Errc::InsufficientRows, "features: split leaves an empty train or test set (" +
                                         std::to_string(n) + " samples)");

    Dataset d;
    d.feature_names = std::move(f.feature_names);
    d.dates = std::move(f.dates);
    d.y = std::move(f.y);
    d.seed = seed;
    d.train_idx.assign(order.begin(), order.begin() + n_train);
    d.test_idx.assign(order.begin() + n_train, order.end());
    std::sort(d.train_idx.begin(), d.train_idx.end());
    std::sort(d.test_idx.begin(), d.test_idx.end());

    d.norm.resize(8);
    for (Eigen::Index j = 0; j < 8; ++j) {
        double lo = f.X(d.train_idx.front(), j);
        double hi = lo;
        for (const Eigen::Index i : d.train_idx) {
            lo = std::min(lo, f.X(i, j));
            hi = std::max(hi, f.X(i, j));
        }
        if (!(hi > lo))
            fail(Errc::ConstantFeature, "features: column '" +
                                            d.feature_names[static_cast<std::size_t>(j)] +
                                            "' is constant on the training rows");
        d.norm[static_cast<std::size_t>(j)] = NormParams{lo, hi};
    }
    d.X = apply_norm(f.X, d.norm);
    return d;
}

} // namespace gabp::features
