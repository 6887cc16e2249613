#include "measaudit/stability.hpp"

#include "measaudit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace measaudit {

DisagreementReport disagreement_stats(const Eigen::VectorXd& pred_a,
                                      const Eigen::VectorXd& pred_b,
                                      const Eigen::VectorXd& y_true) {
    const Eigen::Index n = y_true.size();
    if (pred_a.size() != n || pred_b.size() != n)
        throw DimensionMismatchError("disagreement_stats: length mismatch");
    if (n < 2) throw TooFewPointsError("disagreement_stats needs >= 2 points");

    DisagreementReport rep;
    rep.n = n;
    rep.disagreement = pred_a - pred_b;
    const Eigen::VectorXd& d = rep.disagreement;

    rep.mean_disagreement = d.mean();
    rep.std_disagreement = population_std(d);

    const double y_mean = y_true.mean();
    const double y_std = population_std(y_true);
    rep.relative_mean_disagreement =
        y_std > 0.0 ? rep.mean_disagreement / y_std : 0.0;

    // simple regression of d on y_true
    const double cov =
        ((d.array() - rep.mean_disagreement) * (y_true.array() - y_mean)).sum() /
        static_cast<double>(n);
    if (rep.std_disagreement == 0.0 || y_std == 0.0) {
        rep.slope = 0.0;
        rep.pearson_r = 0.0;  // degenerate convention
    } else {
        rep.slope = cov / (y_std * y_std);
        rep.pearson_r = cov / (rep.std_disagreement * y_std);
        rep.pearson_r = std::clamp(rep.pearson_r, -1.0, 1.0);
    }
    rep.r_squared = rep.pearson_r * rep.pearson_r;
    return rep;
}

namespace {

PairVerdict judge(const DisagreementReport& rep, const StabilityThresholds& t) {
    PairVerdict v;
    if (std::abs(rep.relative_mean_disagreement) > t.max_abs_relative_mean) {
        v.stable = false;
        v.reasons.push_back("|relative_mean_disagreement| exceeds " +
                            std::to_string(t.max_abs_relative_mean));
    }
    if (std::abs(rep.pearson_r) > t.max_abs_pearson_r) {
        v.stable = false;
        v.reasons.push_back("|pearson_r| exceeds " +
                            std::to_string(t.max_abs_pearson_r));
    }
    return v;
}

}  // namespace

StabilityReport stability_audit(const std::vector<TrainedRealization>& realizations,
                                const SplitDataset& split,
                                const StabilityThresholds& thresholds) {
    if (realizations.size() < 2)
        throw FewerThanTwoRealizationsError("stability audit needs >= 2 realizations");

    // order-normalized: realizations sorted by id
    std::vector<const TrainedRealization*> sorted;
    sorted.reserve(realizations.size());
    for (const auto& r : realizations) sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(),
              [](auto* a, auto* b) { return a->spec.id < b->spec.id; });

    // Every realization sees the same underlying test rows through its
    // own column selection and standardizer.
    std::vector<Eigen::VectorXd> preds;
    preds.reserve(sorted.size());
    Eigen::VectorXd y_true = split.test.column(sorted.front()->spec.target_column);
    for (const auto* r : sorted) {
        const Eigen::MatrixXd X = apply_standardizer(
            r->standardizer, split.test.columns(r->spec.feature_columns));
        preds.push_back(predict(r->model, X));
    }

    StabilityReport report;
    report.thresholds = thresholds;
    for (size_t i = 0; i < sorted.size(); ++i) {
        for (size_t j = i + 1; j < sorted.size(); ++j) {
            DisagreementReport rep = disagreement_stats(preds[i], preds[j], y_true);
            rep.pair = {sorted[i]->spec.id, sorted[j]->spec.id};
            PairVerdict v = judge(rep, thresholds);
            report.overall = report.overall && v.stable;
            report.pairs.push_back(std::move(rep));
            report.verdicts.push_back(std::move(v));
        }
    }
    return report;
}

bool robustness_curve_is_monotone(const RobustnessCurve& curve,
                                  double step_tolerance) {
    for (Eigen::Index k = 1; k < curve.mse.size(); ++k)
        if (curve.mse[k] < curve.mse[k - 1] * (1.0 - step_tolerance)) return false;
    return true;
}

ContrastSummary robustness_vs_stability_contrast(
    const std::vector<TrainedRealization>& realizations, const SplitDataset& split,
    const Eigen::VectorXd& noise_levels, const StabilityThresholds& thresholds,
    const RngStream& rng) {
    if (realizations.size() < 2)
        throw FewerThanTwoRealizationsError("contrast needs >= 2 realizations");

    ContrastSummary summary;
    summary.stability = stability_audit(realizations, split, thresholds);

    std::vector<const TrainedRealization*> sorted;
    for (const auto& r : realizations) sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(),
              [](auto* a, auto* b) { return a->spec.id < b->spec.id; });

    bool all_robust = true;
    for (const auto* r : sorted) {
        const Eigen::MatrixXd X = apply_standardizer(
            r->standardizer, split.test.columns(r->spec.feature_columns));
        const Eigen::VectorXd y = split.test.column(r->spec.target_column);
        RobustnessCurve curve = robustness_sweep(*r, X, y, noise_levels, rng);
        const bool robust = robustness_curve_is_monotone(curve);
        all_robust = all_robust && robust;
        summary.realization_ids.push_back(r->spec.id);
        summary.robustness.push_back(std::move(curve));
        summary.individually_robust.push_back(robust);
    }
    summary.robust_but_unstable = all_robust && !summary.stability.overall;
    return summary;
}

}  // namespace measaudit
