#pragma once

// Pairwise measurement-disagreement diagnostics across admissible
// realizations, and the stability verdict.

#include "measaudit/metrics.hpp"
#include "measaudit/modeling.hpp"

#include <string>
#include <utility>
#include <vector>

namespace measaudit {

struct DisagreementReport {
    std::pair<std::string, std::string> pair;
    double mean_disagreement = 0.0;
    double std_disagreement = 0.0;
    double relative_mean_disagreement = 0.0;  // mean / population std of y_true
    double slope = 0.0;       // OLS slope of disagreement on y_true
    double pearson_r = 0.0;   // 0 by convention when either variance is 0
    double r_squared = 0.0;
    Eigen::Index n = 0;
    Eigen::VectorXd disagreement;  // raw vector, kept for panel (d)
};

struct StabilityThresholds {
    double max_abs_relative_mean = 0.05;
    double max_abs_pearson_r = 0.2;
    std::string equivalence_scale = "identity";
};

struct PairVerdict {
    bool stable = true;
    std::vector<std::string> reasons;  // empty when stable
};

struct StabilityReport {
    std::vector<DisagreementReport> pairs;
    std::vector<PairVerdict> verdicts;  // aligned with pairs
    StabilityThresholds thresholds;
    bool overall = true;  // stable iff all pairs stable
};

struct ContrastSummary {
    std::vector<std::string> realization_ids;
    std::vector<RobustnessCurve> robustness;     // per realization
    std::vector<bool> individually_robust;       // monotone, bounded degradation
    StabilityReport stability;
    bool robust_but_unstable = false;  // all robust AND some pair unstable
};

DisagreementReport disagreement_stats(const Eigen::VectorXd& pred_a,
                                      const Eigen::VectorXd& pred_b,
                                      const Eigen::VectorXd& y_true);

/// Definition check over every unordered realization pair on the shared
/// test rows; each realization applies its own column selection and
/// standardizer. Pairs are ordered by id.
StabilityReport stability_audit(const std::vector<TrainedRealization>& realizations,
                                const SplitDataset& split,
                                const StabilityThresholds& thresholds);

/// Per-step tolerance used when judging a robustness curve monotone.
inline constexpr double kRobustnessStepTolerance = 0.02;

bool robustness_curve_is_monotone(const RobustnessCurve& curve,
                                  double step_tolerance = kRobustnessStepTolerance);

ContrastSummary robustness_vs_stability_contrast(
    const std::vector<TrainedRealization>& realizations, const SplitDataset& split,
    const Eigen::VectorXd& noise_levels, const StabilityThresholds& thresholds,
    const RngStream& rng);

}  // namespace measaudit
