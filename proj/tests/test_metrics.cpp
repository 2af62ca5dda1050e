#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gabp/metrics.hpp"
#include "gabp/rng.hpp"
#include "helpers.hpp"

using namespace gabp;

namespace {

struct Brute {
    double mfe = 0, rmse = 0, mae = 0, mape = 0;
};

// independent loop-based evaluation of the four formulas
Brute brute_force(const Eigen::VectorXd& sigma, const Eigen::VectorXd& rv) {
    Brute b;
    const auto n = static_cast<double>(sigma.size());
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        const double e = sigma[i] - rv[i];
        b.mfe += e / n;
        b.rmse += e * e / n;
        b.mae += std::abs(e) / n;
        b.mape += std::abs(e / rv[i]) / n;
    }
    b.rmse = std::sqrt(b.rmse);
    return b;
}

} // namespace

TEST_CASE("perfect predictions give all zeros") {
    const Eigen::VectorXd rv = Eigen::VectorXd::LinSpaced(10, 0.1, 1.0);
    const auto r = metrics::evaluate(rv, rv);
    CHECK(r.mfe == 0.0);
    CHECK(r.rmse == 0.0);
    CHECK(r.mae == 0.0);
    CHECK(*r.mape == 0.0);
    CHECK(r.error.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("worked example") {
    Eigen::VectorXd sigma(2), rv(2);
    sigma << 0.2, 0.3;
    rv << 0.1, 0.2;
    const auto r = metrics::evaluate(sigma, rv);
    CHECK(std::abs(r.mfe - 0.1) < 1e-15);
    CHECK(std::abs(r.mae - 0.1) < 1e-15);
    CHECK(std::abs(r.rmse - 0.1) < 1e-15);
    CHECK(std::abs(*r.mape - 0.75) < 1e-15);
}

TEST_CASE("cancellation zeroes MFE but not MAE") {
    Eigen::VectorXd sigma(2), rv(2);
    sigma << 0.1, 0.3;
    rv << 0.2, 0.2;
    const auto r = metrics::evaluate(sigma, rv);
    CHECK(std::abs(r.mfe) < 1e-16);
    CHECK(r.mae == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(r.rmse == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("errors") {
    CHECK_ERRC(metrics::evaluate(Eigen::VectorXd::Ones(3), Eigen::VectorXd::Ones(4)),
               Errc::LengthMismatch);
    CHECK_ERRC(metrics::evaluate(Eigen::VectorXd(), Eigen::VectorXd()), Errc::EmptyInput);
}

TEST_CASE("zero realized value leaves MAPE undefined, other metrics intact") {
    Eigen::VectorXd sigma(3), rv(3);
    sigma << 0.1, 0.2, 0.3;
    rv << 0.1, 0.0, 0.3;
    const auto r = metrics::evaluate(sigma, rv);
    CHECK(!r.mape.has_value());
    CHECK(std::isnan(r.error_pct[1]));
    CHECK(r.mae == doctest::Approx(0.2 / 3.0).epsilon(1e-14));
}

TEST_CASE("matches brute force and satisfies the metric inequalities") {
    rng::Engine e = rng::make_engine(31337);
    for (int round = 0; round < 300; ++round) {
        const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng::below(e, 40));
        Eigen::VectorXd sigma(n), rv(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            sigma[i] = rng::uniform(e, -1.0, 1.0);
            rv[i] = rng::uniform(e, 0.05, 1.0);
        }
        const auto r = metrics::evaluate(sigma, rv);
        const Brute b = brute_force(sigma, rv);
        CHECK(std::abs(r.mfe - b.mfe) < 1e-12);
        CHECK(std::abs(r.rmse - b.rmse) < 1e-12);
        CHECK(std::abs(r.mae - b.mae) < 1e-12);
        CHECK(std::abs(*r.mape - b.mape) < 1e-12);
        CHECK(r.mae <= r.rmse + 1e-15);
        CHECK(std::abs(r.mfe) <= r.mae + 1e-15);
        CHECK(r.mse == doctest::Approx(r.rmse * r.rmse).epsilon(1e-14));
    }
}

TEST_CASE("translation leaves MFE/MAE/RMSE fixed; scaling is homogeneous") {
    rng::Engine e = rng::make_engine(99);
    Eigen::VectorXd sigma(50), rv(50);
    for (int i = 0; i < 50; ++i) {
        sigma[i] = rng::uniform(e, 0.1, 0.5);
        rv[i] = rng::uniform(e, 0.1, 0.5);
    }
    const auto base = metrics::evaluate(sigma, rv);

    const double c = 0.732;
    const auto shifted = metrics::evaluate(sigma.array() + c, rv.array() + c);
    CHECK(shifted.mfe == doctest::Approx(base.mfe).epsilon(1e-10));
    CHECK(shifted.mae == doctest::Approx(base.mae).epsilon(1e-10));
    CHECK(shifted.rmse == doctest::Approx(base.rmse).epsilon(1e-10));

    const auto scaled = metrics::evaluate(2.5 * sigma, 2.5 * rv);
    CHECK(scaled.mfe == doctest::Approx(2.5 * base.mfe).epsilon(1e-10));
    CHECK(scaled.mae == doctest::Approx(2.5 * base.mae).epsilon(1e-10));
    CHECK(scaled.rmse == doctest::Approx(2.5 * base.rmse).epsilon(1e-10));
    CHECK(*scaled.mape == doctest::Approx(*base.mape).epsilon(1e-10));
}
