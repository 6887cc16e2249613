#pragma once

// Standard-criteria evaluators: generalization error, calibration
// coverage and input-noise robustness.

#include "measaudit/modeling.hpp"
#include "measaudit/rng.hpp"

#include <Eigen/Dense>

#include <vector>

namespace measaudit {

struct CoverageCurve {
    Eigen::VectorXd levels;    // nominal confidence levels, strictly increasing
    Eigen::VectorXd coverage;  // empirical coverage per level
};

struct RobustnessCurve {
    Eigen::VectorXd noise_levels;
    Eigen::VectorXd mse;
};

struct EvaluationReport {
    double mse_train = 0.0;
    double mse_test = 0.0;
    CoverageCurve calibration;
    RobustnessCurve robustness;
};

/// n equally spaced points from lo to hi inclusive.
Eigen::VectorXd linspace(double lo, double hi, Eigen::Index n);

inline Eigen::VectorXd default_calibration_levels() { return linspace(0.1, 0.9, 9); }
inline Eigen::VectorXd default_noise_levels() { return linspace(0.0, 1.0, 8); }

double mse(const Eigen::VectorXd& y, const Eigen::VectorXd& yhat);

/// Standard normal quantile: z with Phi(z) = p. Rational initial
/// approximation refined by one Halley step against the erf-based CDF;
/// absolute error <= 1e-9 on [1e-12, 1 - 1e-12].
double inv_norm_cdf(double p);

/// Standard normal CDF via erfc.
double norm_cdf(double z);

/// Empirical coverage of symmetric Gaussian intervals yhat +- z*sigma
/// at each nominal level (inclusive bounds).
CoverageCurve calibration_curve(const Eigen::VectorXd& y, const Eigen::VectorXd& yhat,
                                double sigma, const Eigen::VectorXd& levels);

/// MSE under zero-mean Gaussian noise of increasing std added to the
/// (already standardized) test inputs. Level 0 adds no noise. Noise for
/// level k is drawn from the substream (realization id, "noise", k).
RobustnessCurve robustness_sweep(const TrainedRealization& r,
                                 const Eigen::MatrixXd& X_test_std,
                                 const Eigen::VectorXd& y_test,
                                 const Eigen::VectorXd& noise_levels,
                                 const RngStream& rng);

EvaluationReport evaluate_realization(const TrainedRealization& r,
                                      const SplitDataset& split,
                                      const Eigen::VectorXd& levels,
                                      const Eigen::VectorXd& noise_levels,
                                      const RngStream& rng);

}  // namespace measaudit
