#include "measaudit/errors.hpp"
#include "measaudit/metrics.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace measaudit;

TEST_CASE("mse") {
    Eigen::VectorXd y(3), yhat(3);
    y << 1, 2, 3;
    yhat = y;
    CHECK(mse(y, yhat) == 0.0);
    Eigen::VectorXd a(2), b(2);
    a << 0, 0;
    b << 1, -1;
    CHECK(mse(a, b) == 1.0);
    yhat << 1, 1, 1;
    CHECK(mse(y, yhat) == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
    Eigen::VectorXd empty(0);
    CHECK_THROWS_AS(mse(empty, empty), EmptyInputError);
    CHECK_THROWS_AS(mse(y, a), DimensionMismatchError);
}

TEST_CASE("inv_norm_cdf: exact center, antisymmetry, domain") {
    CHECK(inv_norm_cdf(0.5) == 0.0);
    for (double p : {0.01, 0.1, 0.3, 0.45, 0.9, 0.999})
        CHECK(std::abs(inv_norm_cdf(p) + inv_norm_cdf(1.0 - p)) <= 1e-12);
    CHECK_THROWS_AS(inv_norm_cdf(0.0), DomainError);
    CHECK_THROWS_AS(inv_norm_cdf(1.0), DomainError);
    CHECK_THROWS_AS(inv_norm_cdf(-0.1), DomainError);
}

TEST_CASE("inv_norm_cdf: 97.5% quantile vs quadrature oracle") {
    const double z = inv_norm_cdf(0.975);
    CHECK(z == doctest::Approx(1.959964).epsilon(1e-6));
    CHECK(std::abs(oracles::norm_cdf_quadrature(z) - 0.975) < 1e-9);
}

TEST_CASE("inv_norm_cdf: round trip against the erf-based CDF") {
    for (int i = 1; i <= 1000; ++i) {
        const double p = static_cast<double>(i) / 1001.0;
        CHECK(std::abs(norm_cdf(inv_norm_cdf(p)) - p) <= 1e-10);
    }
}

TEST_CASE("calibration_curve: perfect predictions cover everything") {
    Eigen::VectorXd y(5);
    y << 1, 2, 3, 4, 5;
    const auto curve = calibration_curve(y, y, 0.5, default_calibration_levels());
    CHECK((curve.coverage.array() == 1.0).all());
}

TEST_CASE("calibration_curve: far-off single point covers nothing") {
    Eigen::VectorXd y(1), yhat(1);
    y << 100.0;
    yhat << 0.0;
    const auto curve = calibration_curve(y, yhat, 1.0, default_calibration_levels());
    CHECK((curve.coverage.array() == 0.0).all());
}

TEST_CASE("calibration_curve: coverage is monotone in the level") {
    RngStream rng(5);
    Eigen::VectorXd y(500), yhat(500);
    for (Eigen::Index i = 0; i < 500; ++i) {
        yhat[i] = rng.gaussian(0, 2);
        y[i] = yhat[i] + rng.gaussian(0, 1.3);
    }
    const auto curve = calibration_curve(y, yhat, 1.0, default_calibration_levels());
    for (Eigen::Index k = 1; k < curve.coverage.size(); ++k)
        CHECK(curve.coverage[k] >= curve.coverage[k - 1]);
}

TEST_CASE("calibration_curve: errors") {
    Eigen::VectorXd y(2);
    y << 0, 1;
    CHECK_THROWS_AS(calibration_curve(y, y, 0.0, default_calibration_levels()),
                    NonPositiveSigmaError);
}

namespace {

TrainedRealization synthetic_realization(const Eigen::VectorXd& beta,
                                         double intercept) {
    TrainedRealization r;
    r.spec.id = "syn";
    r.spec.target_column = "y";
    for (Eigen::Index j = 0; j < beta.size(); ++j)
        r.spec.feature_columns.push_back("x" + std::to_string(j));
    r.standardizer.means = Eigen::VectorXd::Zero(beta.size());
    r.standardizer.scales = Eigen::VectorXd::Ones(beta.size());
    r.model.coefficients = beta;
    r.model.intercept = intercept;
    r.model.feature_names = r.spec.feature_columns;
    r.residual_sigma = 1.0;
    return r;
}

}  // namespace

TEST_CASE("robustness_sweep: zero level equals clean MSE bitwise") {
    Eigen::VectorXd beta(2);
    beta << 1.0, -0.5;
    const auto r = synthetic_realization(beta, 0.2);
    RngStream rng(9);
    Eigen::MatrixXd X(200, 2);
    Eigen::VectorXd y(200);
    for (Eigen::Index i = 0; i < 200; ++i) {
        X(i, 0) = rng.gaussian();
        X(i, 1) = rng.gaussian();
        y[i] = rng.gaussian();
    }
    const auto curve = robustness_sweep(r, X, y, default_noise_levels(), RngStream(0));
    CHECK(curve.mse[0] == mse(y, predict(r.model, X)));
}

TEST_CASE("robustness_sweep: intercept-only model is flat") {
    const auto r = synthetic_realization(Eigen::VectorXd::Zero(2), 1.5);
    Eigen::MatrixXd X(50, 2);
    X.setRandom();
    Eigen::VectorXd y = Eigen::VectorXd::Constant(50, 2.0);
    const auto curve = robustness_sweep(r, X, y, default_noise_levels(), RngStream(0));
    CHECK((curve.mse.array() == curve.mse[0]).all());
}

TEST_CASE("robustness_sweep: deterministic given the stream path") {
    Eigen::VectorXd beta(1);
    beta << 2.0;
    const auto r = synthetic_realization(beta, 0.0);
    Eigen::MatrixXd X(30, 1);
    X.setRandom();
    Eigen::VectorXd y = predict(r.model, X);
    const auto c1 = robustness_sweep(r, X, y, default_noise_levels(), RngStream(3));
    const auto c2 = robustness_sweep(r, X, y, default_noise_levels(), RngStream(3));
    CHECK((c1.mse.array() == c2.mse.array()).all());
    const auto c3 = robustness_sweep(r, X, y, default_noise_levels(), RngStream(4));
    CHECK(!(c1.mse.array() == c3.mse.array()).all());
}

TEST_CASE("robustness_sweep: rejects negative levels") {
    Eigen::VectorXd beta(1);
    beta << 1.0;
    const auto r = synthetic_realization(beta, 0.0);
    Eigen::MatrixXd X(5, 1);
    X.setRandom();
    Eigen::VectorXd y(5);
    y.setZero();
    Eigen::VectorXd levels(2);
    levels << 0.0, -1.0;
    CHECK_THROWS_AS(robustness_sweep(r, X, y, levels, RngStream(0)),
                    NegativeNoiseLevelError);
}

TEST_CASE("linspace matches the endpoint convention") {
    const auto v = linspace(0.1, 0.9, 9);
    REQUIRE(v.size() == 9);
    CHECK(v[0] == 0.1);
    CHECK(v[8] == 0.9);
    CHECK(v[4] == doctest::Approx(0.5).epsilon(1e-15));
    const auto w = linspace(0.0, 1.0, 8);
    CHECK(w[7] == 1.0);
    CHECK(w[1] == doctest::Approx(1.0 / 7.0).epsilon(1e-15));
}
