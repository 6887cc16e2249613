// measaudit: audits learned regression models used as measurement
// instruments. `audit` trains every configured realization, evaluates
// generalization/calibration/robustness and checks pairwise measurement
// stability; `synth` generates ground-truthed synthetic sensor data;
// `render` redraws the figure from an existing report.
//
// Exit codes for `audit`: 0 stable, 10 audit succeeded but the
// stability check failed, 1 operational error.

#include "measaudit/audit.hpp"
#include "measaudit/errors.hpp"
#include "measaudit/synth.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <iostream>
#include <sstream>

namespace {

int cmd_audit(const std::string& config_path, const std::string& out_dir,
              const std::optional<std::uint64_t>& seed, bool reproducible) {
    measaudit::AuditConfig config = measaudit::load_config(config_path);
    if (!out_dir.empty()) config.output.directory = out_dir;
    if (seed) config.master_seed = *seed;
    if (reproducible) config.output.reproducible = true;

    const measaudit::AuditResult result = measaudit::run_audit(config);
    measaudit::write_outputs(result, config.output);

    for (const auto& r : result.realizations)
        std::cout << r.trained.spec.id
                  << ": mse_train=" << r.evaluation.mse_train
                  << " mse_test=" << r.evaluation.mse_test << '\n';
    for (size_t i = 0; i < result.stability.pairs.size(); ++i) {
        const auto& p = result.stability.pairs[i];
        const auto& v = result.stability.verdicts[i];
        std::cout << p.pair.first << " vs " << p.pair.second
                  << ": relative_mean=" << p.relative_mean_disagreement
                  << " pearson_r=" << p.pearson_r << " -> "
                  << (v.stable ? "stable" : "UNSTABLE") << '\n';
    }
    std::cout << "overall: "
              << (result.stability.overall ? "STABLE" : "UNSTABLE") << '\n';
    if (result.contrast.robust_but_unstable)
        std::cout << "note: all realizations are individually robust, yet the "
                     "pair disagrees systematically\n";
    std::cout << "report written to " << config.output.directory << '\n';
    return result.stability.overall ? measaudit::kExitStable
                                    : measaudit::kExitUnstable;
}

int cmd_synth(const std::string& spec_path, const std::string& out_path,
              std::uint64_t seed) {
    std::ifstream in(spec_path, std::ios::binary);
    if (!in) throw measaudit::IoError("cannot open spec " + spec_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const auto spec = measaudit::parse_synth_spec(buf.str());
    const auto data =
        measaudit::generate_synthetic(spec, measaudit::RngStream(seed));
    measaudit::write_csv(data, out_path);
    std::cout << "wrote " << data.n_rows() << " rows to " << out_path << '\n';
    return 0;
}

int cmd_render(const std::string& report_path, const std::string& out_path) {
    std::ifstream in(report_path, std::ios::binary);
    if (!in) throw measaudit::IoError("cannot open report " + report_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const auto result = measaudit::read_report(buf.str());
    measaudit::render_figure(result, out_path);
    std::cout << "wrote " << out_path << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"measurement-stability audit for learned regression models"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::optional<std::uint64_t> audit_seed;
    bool reproducible = false;
    auto* audit = app.add_subcommand("audit", "run the full stability audit");
    audit->add_option("--config", config_path, "audit configuration file")
        ->required();
    audit->add_option("--out", out_dir, "output directory (overrides config)");
    audit->add_option("--seed", audit_seed, "master seed (overrides config)");
    audit->add_flag("--reproducible", reproducible,
                    "byte-identical reports (fixed timestamp)");

    std::string spec_path, synth_out;
    std::uint64_t synth_seed = 0;
    auto* synth = app.add_subcommand("synth", "generate synthetic sensor data");
    synth->add_option("--spec", spec_path, "synthetic process spec (JSON)")
        ->required();
    synth->add_option("--out", synth_out, "output CSV path")->required();
    synth->add_option("--seed", synth_seed, "master seed");

    std::string report_path, render_out;
    auto* render = app.add_subcommand("render", "render the figure from a report");
    render->add_option("--report", report_path, "report.json path")->required();
    render->add_option("--out", render_out, "output SVG path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(audit))
            return cmd_audit(config_path, out_dir, audit_seed, reproducible);
        if (app.got_subcommand(synth))
            return cmd_synth(spec_path, synth_out, synth_seed);
        return cmd_render(report_path, render_out);
    } catch (const measaudit::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return measaudit::kExitError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return measaudit::kExitError;
    }
}
