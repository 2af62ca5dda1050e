#include "gabp/synth.hpp"

#include <cmath>

#include "gabp/dates.hpp"
#include "gabp/error.hpp"
#include "gabp/rng.hpp"

namespace gabp::synth {

namespace {

void validate(const GarchParams& p) {
    if (!(p.omega > 0.0) || p.alpha < 0.0 || p.beta < 0.0)
        fail(Errc::NonStationary,
             "synth: GARCH requires omega > 0 and non-negative alpha, beta");
    if (p.alpha + p.beta >= 1.0)
        fail(Errc::NonStationary, "synth: alpha + beta must be < 1 for stationarity");
    if (p.n < 2) throw std::invalid_argument("synth: need at least 2 rows");
}

} // namespace

GarchPath simulate(const GarchParams& p) {
    validate(p);
    rng::Engine shocks = rng::make_engine(rng::derive(p.seed, rng::stream::kGarchShocks));

    GarchPath path;
    path.returns.resize(p.n);
    path.cond_vol.resize(p.n);

    double var = p.omega / (1.0 - p.alpha - p.beta); // unconditional start
    for (Eigen::Index t = 0; t < p.n; ++t) {
        if (t > 0)
            var = p.omega + p.alpha * path.returns[t - 1] * path.returns[t - 1] +
                  p.beta * path.cond_vol[t - 1] * path.cond_vol[t - 1];
        path.cond_vol[t] = std::sqrt(var);
        path.returns[t] = p.mu + path.cond_vol[t] * rng::normal(shocks);
    }
    return path;
}

Eigen::VectorXd garch_returns(const GarchParams& p) { return simulate(p).returns; }

ingest::RawTable generate(const GarchParams& p) {
    const GarchPath path = simulate(p);
    const Eigen::Index n = p.n;

    rng::Engine volume_rng = rng::make_engine(rng::derive(p.seed, rng::stream::kVolume));
    rng::Engine sse_rng = rng::make_engine(rng::derive(p.seed, rng::stream::kSse50));
    rng::Engine b3_rng = rng::make_engine(rng::derive(p.seed, rng::stream::kBond3m));
    rng::Engine b6_rng = rng::make_engine(rng::derive(p.seed, rng::stream::kBond6m));
    rng::Engine fx_rng = rng::make_engine(rng::derive(p.seed, rng::stream::kFx));

    ingest::RawTable t;
    t.columns = {"close", "volume", "sse50", "bond3m", "bond6m", "fx"};
    t.cells.assign(6, {});
    for (auto& c : t.cells) c.reserve(static_cast<std::size_t>(n));

    std::int64_t day = dates::days_from_civil({2014, 5, 6});
    double log_close = std::log(100.0);
    double log_sse = std::log(80.0);
    double log_fx = std::log(7.0);

    for (Eigen::Index i = 0; i < n; ++i) {
        while (dates::weekday(day) >= 5) ++day; // skip Sat/Sun
        t.dates.push_back(dates::format_iso(dates::civil_from_days(day)));
        ++day;

        log_close += path.returns[i];
        log_sse += 0.8 * path.returns[i] + 0.005 * rng::normal(sse_rng);
        log_fx += 0.002 * rng::normal(fx_rng);

        t.cells[0].push_back(std::exp(log_close));
        t.cells[1].push_back(1.0e6 * std::exp(0.4 * rng::normal(volume_rng)));
        t.cells[2].push_back(std::exp(log_sse));
        t.cells[3].push_back(2.2 + 15.0 * path.cond_vol[i] + 0.02 * rng::normal(b3_rng));
        t.cells[4].push_back(2.5 + 10.0 * path.cond_vol[i] + 0.02 * rng::normal(b6_rng));
        t.cells[5].push_back(std::exp(log_fx));
    }
    return t;
}

} // namespace gabp::synth
