#include "measaudit/modeling.hpp"

#include "measaudit/errors.hpp"

#include <cmath>

namespace measaudit {

double population_std(const Eigen::VectorXd& v) {
    if (v.size() == 0) return 0.0;
    const double mean = v.mean();
    return std::sqrt((v.array() - mean).square().sum() /
                     static_cast<double>(v.size()));
}

Standardizer fit_standardizer(const Eigen::MatrixXd& X) {
    if (X.rows() < 2) throw TooFewRowsError("standardizer needs >= 2 rows");
    Standardizer s;
    s.means = X.colwise().mean();
    s.scales.resize(X.cols());
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        const double sd = population_std(X.col(j));
        s.scales[j] = sd > 0.0 ? sd : 1.0;
    }
    return s;
}

Eigen::MatrixXd apply_standardizer(const Standardizer& s, const Eigen::MatrixXd& X) {
    if (X.cols() != s.means.size())
        throw DimensionMismatchError("standardizer expects " +
                                     std::to_string(s.means.size()) + " columns, got " +
                                     std::to_string(X.cols()));
    return (X.rowwise() - s.means.transpose()).array().rowwise() /
           s.scales.transpose().array();
}

LinearModel fit_ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                    std::vector<std::string> feature_names) {
    const Eigen::Index n = X.rows(), p = X.cols();
    if (n != y.size())
        throw DimensionMismatchError("X has " + std::to_string(n) + " rows, y has " +
                                     std::to_string(y.size()));
    if (n < p + 1) throw TooFewRowsError("need at least cols+1 rows for OLS");
    if (!feature_names.empty() &&
        static_cast<Eigen::Index>(feature_names.size()) != p)
        throw DimensionMismatchError("feature name count mismatch");

    Eigen::MatrixXd design(n, p + 1);
    design.leftCols(p) = X;
    design.col(p).setOnes();

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    const Eigen::MatrixXd& R = qr.matrixR();
    const double lead = std::abs(R(0, 0));
    for (Eigen::Index j = 0; j < p + 1; ++j)
        if (std::abs(R(j, j)) <= 1e-10 * lead)
            throw RankDeficientError("design matrix is numerically rank-deficient");

    Eigen::VectorXd beta = qr.solve(y);
    LinearModel m;
    m.coefficients = beta.head(p);
    m.intercept = beta[p];
    m.feature_names = std::move(feature_names);
    if (!beta.allFinite()) throw RankDeficientError("non-finite OLS solution");
    return m;
}

Eigen::VectorXd predict(const LinearModel& m, const Eigen::MatrixXd& X) {
    if (X.cols() != m.coefficients.size())
        throw DimensionMismatchError("model expects " +
                                     std::to_string(m.coefficients.size()) +
                                     " columns, got " + std::to_string(X.cols()));
    return (X * m.coefficients).array() + m.intercept;
}

TrainedRealization train_realization(const SplitDataset& split,
                                     const RealizationSpec& spec) {
    const Eigen::MatrixXd X_raw = split.train.columns(spec.feature_columns);
    const Eigen::VectorXd y = split.train.column(spec.target_column);

    TrainedRealization r;
    r.spec = spec;
    r.standardizer = fit_standardizer(X_raw);
    const Eigen::MatrixXd X = apply_standardizer(r.standardizer, X_raw);
    r.model = fit_ols(X, y, spec.feature_columns);
    r.residual_sigma = population_std(y - predict(r.model, X));
    return r;
}

}  // namespace measaudit
