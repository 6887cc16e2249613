#include "measaudit/audit.hpp"
#include "measaudit/errors.hpp"
#include "measaudit/report.hpp"
#include "measaudit/synth.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace measaudit;

namespace {

AuditResult small_result() {
    SynthSpec spec;
    spec.n_rows = 120;
    spec.latent = {2.0, 24.0, 0.8, 0.3};
    spec.channels = {{"s1", 1.0, 0.7, 0.0, 0.05}, {"s2", -0.8, -0.8, 0.1, 0.05}};
    spec.shift_row = 72;
    spec.target_noise_std = 0.1;
    const Dataset data = generate_synthetic(spec, RngStream(99));
    const SplitDataset split = temporal_split(data, SplitSpec{0.6, 0.2});

    AuditResult result;
    result.config_echo = {{"data.path", "synthetic"}, {"split.train_frac", "0.6"}};
    RngStream rng(99);
    const Eigen::VectorXd levels = default_calibration_levels();
    const Eigen::VectorXd noise = default_noise_levels();
    std::vector<TrainedRealization> trained;
    for (const auto& id : {std::string("A"), std::string("B")}) {
        RealizationSpec rs{id, {id == "A" ? "s1" : "s2"}, "z"};
        auto t = train_realization(split, rs);
        result.realizations.push_back(
            {t, evaluate_realization(t, split, levels, noise, rng)});
        trained.push_back(std::move(t));
    }
    StabilityThresholds thresholds;
    result.stability = stability_audit(trained, split, thresholds);
    result.contrast =
        robustness_vs_stability_contrast(trained, split, noise, thresholds, rng);
    result.y_test = split.test.column("z");
    result.provenance = {kToolVersion, 99, "fnv1a64:0000000000000000",
                         "1970-01-01T00:00:00Z"};
    return result;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("format_double: shortest exact representation") {
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-2.5) == "-2.5");
    CHECK(format_double(0.1) == "0.10000000000000001");
    const double third = 1.0 / 3.0;
    std::istringstream in(format_double(third));
    double back = 0.0;
    in >> back;
    CHECK(back == third);
}

TEST_CASE("hash_file: deterministic and content sensitive") {
    const std::string p1 = "build_test_hash_1.txt";
    const std::string p2 = "build_test_hash_2.txt";
    std::ofstream(p1, std::ios::binary) << "hello";
    std::ofstream(p2, std::ios::binary) << "hellp";
    const std::string h1 = hash_file(p1);
    CHECK(h1 == hash_file(p1));
    CHECK(h1 != hash_file(p2));
    CHECK(h1.rfind("fnv1a64:", 0) == 0);
    CHECK(h1.size() == 8 + 16);
    std::remove(p1.c_str());
    std::remove(p2.c_str());
    CHECK_THROWS_AS(hash_file("no_such_file_anywhere.bin"), IoError);
}

TEST_CASE("emit_report: byte-identical across calls") {
    const auto result = small_result();
    CHECK(emit_report(result) == emit_report(result));
}

TEST_CASE("emit_report: fixed top-level key order") {
    const std::string json = emit_report(small_result());
    const auto pos = [&](const char* key) { return json.find(key); };
    CHECK(pos("\"schema\"") < pos("\"provenance\""));
    CHECK(pos("\"provenance\"") < pos("\"config\""));
    CHECK(pos("\"config\"") < pos("\"realizations\""));
    CHECK(pos("\"realizations\"") < pos("\"stability\""));
    CHECK(pos("\"stability\"") < pos("\"contrast\""));
    CHECK(pos("\"contrast\"") < pos("\"y_test\""));
    CHECK(json.find("measaudit-report/1") != std::string::npos);
}

TEST_CASE("read_report: full round trip reproduces the byte stream") {
    const auto result = small_result();
    const std::string once = emit_report(result);
    const AuditResult parsed = read_report(once);
    CHECK(emit_report(parsed) == once);
    CHECK(parsed.provenance.master_seed == 99);
    CHECK(parsed.realizations.size() == 2);
    CHECK(parsed.stability.pairs.size() == 1);
    CHECK(parsed.stability.overall == result.stability.overall);
    CHECK((parsed.y_test.array() == result.y_test.array()).all());
}

TEST_CASE("read_report: rejects malformed documents") {
    CHECK_THROWS_AS(read_report("{"), Error);
    CHECK_THROWS_AS(read_report("{\"schema\": \"something-else/9\"}"), Error);
}

TEST_CASE("emit_panel_data: four CSVs with the documented headers") {
    namespace fs = std::filesystem;
    const auto result = small_result();
    const std::string dir = "build_test_panels";
    fs::create_directories(dir);
    emit_panel_data(result, dir);
    const std::string a = slurp(dir + "/panel_a.csv");
    const std::string b = slurp(dir + "/panel_b.csv");
    const std::string c = slurp(dir + "/panel_c.csv");
    const std::string d = slurp(dir + "/panel_d.csv");
    fs::remove_all(dir);
    CHECK(a.rfind("realization,split,mse", 0) == 0);
    CHECK(b.rfind("realization,level,coverage", 0) == 0);
    CHECK(c.rfind("realization,noise_level,mse", 0) == 0);
    CHECK(d.rfind("row,y_true,disagreement_A-B", 0) == 0);
    // panel b: one line per (realization, level) plus header
    const auto lines = std::count(b.begin(), b.end(), '\n');
    CHECK(lines == 1 + 2 * 9);
}

TEST_CASE("render_figure: four labelled panel groups") {
    namespace fs = std::filesystem;
    const std::string path = "build_test_figure.svg";
    render_figure(small_result(), path);
    const std::string svg = slurp(path);
    fs::remove(path);
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("<svg") != std::string::npos);
    for (const char* id : {"panel_a", "panel_b", "panel_c", "panel_d"})
        CHECK(svg.find(std::string("id='") + id + "'") != std::string::npos);
    CHECK(svg.find("Nominal coverage") != std::string::npos);
    CHECK(svg.find("Input noise level") != std::string::npos);
    CHECK(svg.find("Prediction difference") != std::string::npos);
}
