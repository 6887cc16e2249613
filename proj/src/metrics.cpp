#include "measaudit/metrics.hpp"

#include "measaudit/errors.hpp"

#include <cmath>

namespace measaudit {

Eigen::VectorXd linspace(double lo, double hi, Eigen::Index n) {
    Eigen::VectorXd v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = lo + static_cast<double>(i) * step;
    v[n - 1] = hi;
    return v;
}

double mse(const Eigen::VectorXd& y, const Eigen::VectorXd& yhat) {
    if (y.size() == 0) throw EmptyInputError("mse of empty vectors");
    if (y.size() != yhat.size())
        throw DimensionMismatchError("mse: length mismatch");
    return (y - yhat).squaredNorm() / static_cast<double>(y.size());
}

double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double inv_norm_cdf(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw DomainError("inv_norm_cdf requires p in (0, 1)");
    // Work in the lower half only: 1 - p is exact here (Sterbenz), and the
    // erfc-based CDF keeps full relative precision in the lower tail, so the
    // Halley refinement never cancels. The upper tail would lose ~5 digits.
    if (p > 0.5) return -inv_norm_cdf(1.0 - p);

    // Acklam's rational approximation (relative error < 1.15e-9).
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // One Halley step against the erfc-based CDF.
    const double e = norm_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    x = x - u / (1.0 + x * u / 2.0);
    return x;
}

CoverageCurve calibration_curve(const Eigen::VectorXd& y, const Eigen::VectorXd& yhat,
                                double sigma, const Eigen::VectorXd& levels) {
    if (!(sigma > 0.0)) throw NonPositiveSigmaError("sigma must be positive");
    if (y.size() != yhat.size())
        throw DimensionMismatchError("calibration_curve: length mismatch");
    if (y.size() == 0) throw EmptyInputError("calibration_curve: empty vectors");

    CoverageCurve curve;
    curve.levels = levels;
    curve.coverage.resize(levels.size());
    const double n = static_cast<double>(y.size());
    for (Eigen::Index k = 0; k < levels.size(); ++k) {
        const double alpha = levels[k];
        if (!(alpha > 0.0 && alpha < 1.0))
            throw DomainError("confidence level outside (0, 1)");
        const double z = inv_norm_cdf(1.0 - (1.0 - alpha) / 2.0);
        Eigen::Index inside = 0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const double lower = yhat[i] - z * sigma;
            const double upper = yhat[i] + z * sigma;
            if (y[i] >= lower && y[i] <= upper) ++inside;
        }
        curve.coverage[k] = static_cast<double>(inside) / n;
    }
    return curve;
}

RobustnessCurve robustness_sweep(const TrainedRealization& r,
                                 const Eigen::MatrixXd& X_test_std,
                                 const Eigen::VectorXd& y_test,
                                 const Eigen::VectorXd& noise_levels,
                                 const RngStream& rng) {
    RobustnessCurve curve;
    curve.noise_levels = noise_levels;
    curve.mse.resize(noise_levels.size());
    const RngStream base = rng.substream(r.spec.id).substream("noise");
    for (Eigen::Index k = 0; k < noise_levels.size(); ++k) {
        const double s = noise_levels[k];
        if (s < 0.0) throw NegativeNoiseLevelError("negative noise level");
        if (s == 0.0) {
            curve.mse[k] = mse(y_test, predict(r.model, X_test_std));
            continue;
        }
        RngStream stream = base.substream(std::to_string(k));
        Eigen::MatrixXd noisy = X_test_std;
        for (Eigen::Index i = 0; i < noisy.rows(); ++i)
            for (Eigen::Index j = 0; j < noisy.cols(); ++j)
                noisy(i, j) += stream.gaussian(0.0, s);
        curve.mse[k] = mse(y_test, predict(r.model, noisy));
    }
    return curve;
}

EvaluationReport evaluate_realization(const TrainedRealization& r,
                                      const SplitDataset& split,
                                      const Eigen::VectorXd& levels,
                                      const Eigen::VectorXd& noise_levels,
                                      const RngStream& rng) {
    const Eigen::MatrixXd X_train = apply_standardizer(
        r.standardizer, split.train.columns(r.spec.feature_columns));
    const Eigen::MatrixXd X_test = apply_standardizer(
        r.standardizer, split.test.columns(r.spec.feature_columns));
    const Eigen::VectorXd y_train = split.train.column(r.spec.target_column);
    const Eigen::VectorXd y_test = split.test.column(r.spec.target_column);

    EvaluationReport report;
    report.mse_train = mse(y_train, predict(r.model, X_train));
    const Eigen::VectorXd pred_test = predict(r.model, X_test);
    report.mse_test = mse(y_test, pred_test);
    report.calibration = calibration_curve(y_test, pred_test, r.residual_sigma, levels);
    report.robustness = robustness_sweep(r, X_test, y_test, noise_levels, rng);
    return report;
}

}  // namespace measaudit
