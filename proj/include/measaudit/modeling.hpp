#pragma once

// Standardization and ordinary least squares: the learned measurement
// function together with its observation-to-representation mapping.

#include "measaudit/split.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace measaudit {

struct Standardizer {
    Eigen::VectorXd means;
    Eigen::VectorXd scales;  // population standard deviations; 1 if constant
};

struct LinearModel {
    Eigen::VectorXd coefficients;
    double intercept = 0.0;
    std::vector<std::string> feature_names;
};

struct RealizationSpec {
    std::string id;
    std::vector<std::string> feature_columns;
    std::string target_column;
};

struct TrainedRealization {
    RealizationSpec spec;
    Standardizer standardizer;
    LinearModel model;
    double residual_sigma = 0.0;  // population std of train residuals
};

double population_std(const Eigen::VectorXd& v);

/// Per-column mean and population std (divide by n). Zero-variance
/// columns get scale 1.
Standardizer fit_standardizer(const Eigen::MatrixXd& X);

Eigen::MatrixXd apply_standardizer(const Standardizer& s, const Eigen::MatrixXd& X);

/// Intercept-augmented least squares via Householder QR. Rank-deficient
/// designs (tolerance 1e-10 relative to the leading R diagonal) throw.
LinearModel fit_ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                    std::vector<std::string> feature_names = {});

Eigen::VectorXd predict(const LinearModel& m, const Eigen::MatrixXd& X);

/// select columns -> fit standardizer on train -> OLS -> train residual sigma.
TrainedRealization train_realization(const SplitDataset& split,
                                     const RealizationSpec& spec);

}  // namespace measaudit
