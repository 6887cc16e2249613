#include "measaudit/audit.hpp"

#include "measaudit/errors.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>

namespace measaudit {

namespace {

std::string iso_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

AuditResult run_audit(const AuditConfig& config) {
    if (config.realizations.size() < 2)
        throw FewerThanTwoRealizationsError("audit requires >= 2 realizations");

    AuditResult result;
    result.config_echo = config.echo();
    result.provenance.master_seed = config.master_seed;
    result.provenance.dataset_hash = hash_file(config.data.path);
    result.provenance.timestamp =
        config.output.reproducible ? "1970-01-01T00:00:00Z" : iso_utc_now();

    const Dataset data = load_table(config.data.path, config.data.format);
    const SplitDataset split = temporal_split(data, config.split);
    result.y_test = split.test.column(config.data.target_column);

    const RngStream rng(config.master_seed);
    std::vector<TrainedRealization> trained;
    for (const auto& spec : config.realizations) {
        RealizationResult rr;
        rr.trained = train_realization(split, spec);
        rr.evaluation = evaluate_realization(rr.trained, split,
                                             config.calibration_levels,
                                             config.noise_levels, rng);
        trained.push_back(rr.trained);
        result.realizations.push_back(std::move(rr));
    }

    result.stability = stability_audit(trained, split, config.thresholds);
    result.contrast = robustness_vs_stability_contrast(
        trained, split, config.noise_levels, config.thresholds, rng);
    return result;
}

void write_outputs(const AuditResult& result, const OutputConfig& output) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(output.directory, ec);

    std::ofstream out(fs::path(output.directory) / "report.json", std::ios::binary);
    if (!out) throw IoError("cannot write report.json");
    emit_report(result, out);
    out.close();

    emit_panel_data(result, output.directory);
    if (output.emit_figure)
        render_figure(result, (fs::path(output.directory) / "figure.svg").string());
}

}  // namespace measaudit
