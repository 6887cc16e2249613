#include "measaudit/report.hpp"

#include "measaudit/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace measaudit {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char chunk[65536];
    while (in.read(chunk, sizeof chunk) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(chunk[i]);
            h *= 0x100000001b3ULL;
        }
        if (!in) break;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

namespace {

// Minimal ordered JSON writer; numbers go through format_double so
// emission is byte-deterministic.
class JsonWriter {
public:
    explicit JsonWriter(std::ostream& out) : out_(out) {}

    void begin_object() { separator(); out_ << '{'; stack_.push_back(0); }
    void end_object() { out_ << '}'; stack_.pop_back(); }
    void begin_array() { separator(); out_ << '['; stack_.push_back(0); }
    void end_array() { out_ << ']'; stack_.pop_back(); }

    void key(std::string_view k) {
        separator();
        write_string(k);
        out_ << ':';
        pending_value_ = true;
    }
    void value(std::string_view s) { separator(); write_string(s); }
    void value(double v) { separator(); out_ << format_double(v); }
    void value(std::uint64_t v) { separator(); out_ << v; }
    void value(std::int64_t v) { separator(); out_ << v; }
    void value(bool b) { separator(); out_ << (b ? "true" : "false"); }
    void value(const Eigen::VectorXd& v) {
        begin_array();
        for (Eigen::Index i = 0; i < v.size(); ++i) value(v[i]);
        end_array();
    }
    void value(const std::vector<std::string>& v) {
        begin_array();
        for (const auto& s : v) value(s);
        end_array();
    }

private:
    void separator() {
        if (pending_value_) {
            pending_value_ = false;
            return;
        }
        if (!stack_.empty() && stack_.back()++ > 0) out_ << ',';
    }
    void write_string(std::string_view s) {
        out_ << '"';
        for (char c : s) {
            switch (c) {
                case '"': out_ << "\\\""; break;
                case '\\': out_ << "\\\\"; break;
                case '\n': out_ << "\\n"; break;
                case '\t': out_ << "\\t"; break;
                case '\r': out_ << "\\r"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        out_ << buf;
                    } else {
                        out_ << c;
                    }
            }
        }
        out_ << '"';
    }

    std::ostream& out_;
    std::vector<int> stack_;
    bool pending_value_ = false;
};

Eigen::VectorXd to_vector(const nlohmann::ordered_json& arr) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
    Eigen::Index i = 0;
    for (const auto& x : arr) v[i++] = x.get<double>();
    return v;
}

}  // namespace

void emit_report(const AuditResult& result, std::ostream& out) {
    JsonWriter w(out);
    w.begin_object();
    w.key("schema");
    w.value(std::string_view(kReportSchema));

    w.key("provenance");
    w.begin_object();
    w.key("tool_version");
    w.value(std::string_view(result.provenance.tool_version));
    w.key("master_seed");
    w.value(result.provenance.master_seed);
    w.key("dataset_hash");
    w.value(std::string_view(result.provenance.dataset_hash));
    w.key("timestamp");
    w.value(std::string_view(result.provenance.timestamp));
    w.end_object();

    w.key("config");
    w.begin_object();
    for (const auto& [k, v] : result.config_echo) {
        w.key(k);
        w.value(std::string_view(v));
    }
    w.end_object();

    w.key("realizations");
    w.begin_array();
    for (const auto& r : result.realizations) {
        w.begin_object();
        w.key("id");
        w.value(std::string_view(r.trained.spec.id));
        w.key("features");
        w.value(r.trained.spec.feature_columns);
        w.key("target");
        w.value(std::string_view(r.trained.spec.target_column));
        w.key("standardizer");
        w.begin_object();
        w.key("means");
        w.value(r.trained.standardizer.means);
        w.key("scales");
        w.value(r.trained.standardizer.scales);
        w.end_object();
        w.key("model");
        w.begin_object();
        w.key("coefficients");
        w.value(r.trained.model.coefficients);
        w.key("intercept");
        w.value(r.trained.model.intercept);
        w.end_object();
        w.key("residual_sigma");
        w.value(r.trained.residual_sigma);
        w.key("evaluation");
        w.begin_object();
        w.key("mse_train");
        w.value(r.evaluation.mse_train);
        w.key("mse_test");
        w.value(r.evaluation.mse_test);
        w.key("calibration");
        w.begin_object();
        w.key("levels");
        w.value(r.evaluation.calibration.levels);
        w.key("coverage");
        w.value(r.evaluation.calibration.coverage);
        w.end_object();
        w.key("robustness");
        w.begin_object();
        w.key("noise_levels");
        w.value(r.evaluation.robustness.noise_levels);
        w.key("mse");
        w.value(r.evaluation.robustness.mse);
        w.end_object();
        w.end_object();
        w.end_object();
    }
    w.end_array();

    w.key("stability");
    w.begin_object();
    w.key("thresholds");
    w.begin_object();
    w.key("max_abs_relative_mean");
    w.value(result.stability.thresholds.max_abs_relative_mean);
    w.key("max_abs_pearson_r");
    w.value(result.stability.thresholds.max_abs_pearson_r);
    w.key("equivalence_scale");
    w.value(std::string_view(result.stability.thresholds.equivalence_scale));
    w.end_object();
    w.key("overall");
    w.value(std::string_view(result.stability.overall ? "stable" : "unstable"));
    w.key("pairs");
    w.begin_array();
    for (size_t i = 0; i < result.stability.pairs.size(); ++i) {
        const auto& p = result.stability.pairs[i];
        const auto& v = result.stability.verdicts[i];
        w.begin_object();
        w.key("a");
        w.value(std::string_view(p.pair.first));
        w.key("b");
        w.value(std::string_view(p.pair.second));
        w.key("n");
        w.value(static_cast<std::int64_t>(p.n));
        w.key("mean_disagreement");
        w.value(p.mean_disagreement);
        w.key("std_disagreement");
        w.value(p.std_disagreement);
        w.key("relative_mean_disagreement");
        w.value(p.relative_mean_disagreement);
        w.key("slope");
        w.value(p.slope);
        w.key("pearson_r");
        w.value(p.pearson_r);
        w.key("r_squared");
        w.value(p.r_squared);
        w.key("stable");
        w.value(v.stable);
        w.key("reasons");
        w.value(v.reasons);
        w.key("disagreement");
        w.value(p.disagreement);
        w.end_object();
    }
    w.end_array();
    w.end_object();

    w.key("contrast");
    w.begin_object();
    w.key("realizations");
    w.begin_array();
    for (size_t i = 0; i < result.contrast.realization_ids.size(); ++i) {
        w.begin_object();
        w.key("id");
        w.value(std::string_view(result.contrast.realization_ids[i]));
        w.key("individually_robust");
        w.value(static_cast<bool>(result.contrast.individually_robust[i]));
        w.end_object();
    }
    w.end_array();
    w.key("robust_but_unstable");
    w.value(result.contrast.robust_but_unstable);
    w.end_object();

    w.key("y_test");
    w.value(result.y_test);
    w.end_object();
    out << '\n';
}

std::string emit_report(const AuditResult& result) {
    std::ostringstream out;
    emit_report(result, out);
    return out.str();
}

AuditResult read_report(const std::string& json_text) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("report is not valid JSON: ") + e.what());
    }
    if (doc.value("schema", "") != kReportSchema)
        throw IoError("unrecognized report schema");

    AuditResult r;
    const auto& prov = doc.at("provenance");
    r.provenance.tool_version = prov.at("tool_version").get<std::string>();
    r.provenance.master_seed = prov.at("master_seed").get<std::uint64_t>();
    r.provenance.dataset_hash = prov.at("dataset_hash").get<std::string>();
    r.provenance.timestamp = prov.at("timestamp").get<std::string>();

    for (const auto& [k, v] : doc.at("config").items())
        r.config_echo.emplace_back(k, v.get<std::string>());

    for (const auto& rj : doc.at("realizations")) {
        RealizationResult rr;
        rr.trained.spec.id = rj.at("id").get<std::string>();
        rr.trained.spec.feature_columns =
            rj.at("features").get<std::vector<std::string>>();
        rr.trained.spec.target_column = rj.at("target").get<std::string>();
        rr.trained.standardizer.means = to_vector(rj.at("standardizer").at("means"));
        rr.trained.standardizer.scales = to_vector(rj.at("standardizer").at("scales"));
        rr.trained.model.coefficients = to_vector(rj.at("model").at("coefficients"));
        rr.trained.model.intercept = rj.at("model").at("intercept").get<double>();
        rr.trained.model.feature_names = rr.trained.spec.feature_columns;
        rr.trained.residual_sigma = rj.at("residual_sigma").get<double>();
        const auto& ev = rj.at("evaluation");
        rr.evaluation.mse_train = ev.at("mse_train").get<double>();
        rr.evaluation.mse_test = ev.at("mse_test").get<double>();
        rr.evaluation.calibration.levels = to_vector(ev.at("calibration").at("levels"));
        rr.evaluation.calibration.coverage =
            to_vector(ev.at("calibration").at("coverage"));
        rr.evaluation.robustness.noise_levels =
            to_vector(ev.at("robustness").at("noise_levels"));
        rr.evaluation.robustness.mse = to_vector(ev.at("robustness").at("mse"));
        r.realizations.push_back(std::move(rr));
    }

    const auto& st = doc.at("stability");
    r.stability.thresholds.max_abs_relative_mean =
        st.at("thresholds").at("max_abs_relative_mean").get<double>();
    r.stability.thresholds.max_abs_pearson_r =
        st.at("thresholds").at("max_abs_pearson_r").get<double>();
    r.stability.thresholds.equivalence_scale =
        st.at("thresholds").at("equivalence_scale").get<std::string>();
    r.stability.overall = st.at("overall").get<std::string>() == "stable";
    for (const auto& pj : st.at("pairs")) {
        DisagreementReport p;
        p.pair = {pj.at("a").get<std::string>(), pj.at("b").get<std::string>()};
        p.n = pj.at("n").get<Eigen::Index>();
        p.mean_disagreement = pj.at("mean_disagreement").get<double>();
        p.std_disagreement = pj.at("std_disagreement").get<double>();
        p.relative_mean_disagreement =
            pj.at("relative_mean_disagreement").get<double>();
        p.slope = pj.at("slope").get<double>();
        p.pearson_r = pj.at("pearson_r").get<double>();
        p.r_squared = pj.at("r_squared").get<double>();
        p.disagreement = to_vector(pj.at("disagreement"));
        PairVerdict v;
        v.stable = pj.at("stable").get<bool>();
        v.reasons = pj.at("reasons").get<std::vector<std::string>>();
        r.stability.pairs.push_back(std::move(p));
        r.stability.verdicts.push_back(std::move(v));
    }

    const auto& ct = doc.at("contrast");
    for (const auto& cj : ct.at("realizations")) {
        r.contrast.realization_ids.push_back(cj.at("id").get<std::string>());
        r.contrast.individually_robust.push_back(
            cj.at("individually_robust").get<bool>());
    }
    r.contrast.robust_but_unstable = ct.at("robust_but_unstable").get<bool>();
    r.contrast.stability = r.stability;
    for (const auto& rr : r.realizations)
        r.contrast.robustness.push_back(rr.evaluation.robustness);

    r.y_test = to_vector(doc.at("y_test"));
    return r;
}

void emit_panel_data(const AuditResult& result, const std::string& directory) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(directory, ec);

    auto open = [&](const char* name) {
        std::ofstream out(fs::path(directory) / name, std::ios::binary);
        if (!out) throw IoError(std::string("cannot write ") + name);
        return out;
    };

    {
        auto out = open("panel_a.csv");
        out << "realization,split,mse\n";
        for (const auto& r : result.realizations) {
            out << r.trained.spec.id << ",train,"
                << format_double(r.evaluation.mse_train) << '\n';
            out << r.trained.spec.id << ",test,"
                << format_double(r.evaluation.mse_test) << '\n';
        }
    }
    {
        auto out = open("panel_b.csv");
        out << "realization,level,coverage\n";
        for (const auto& r : result.realizations)
            for (Eigen::Index k = 0; k < r.evaluation.calibration.levels.size(); ++k)
                out << r.trained.spec.id << ','
                    << format_double(r.evaluation.calibration.levels[k]) << ','
                    << format_double(r.evaluation.calibration.coverage[k]) << '\n';
    }
    {
        auto out = open("panel_c.csv");
        out << "realization,noise_level,mse\n";
        for (const auto& r : result.realizations)
            for (Eigen::Index k = 0; k < r.evaluation.robustness.noise_levels.size(); ++k)
                out << r.trained.spec.id << ','
                    << format_double(r.evaluation.robustness.noise_levels[k]) << ','
                    << format_double(r.evaluation.robustness.mse[k]) << '\n';
    }
    {
        auto out = open("panel_d.csv");
        out << "row,y_true";
        for (const auto& p : result.stability.pairs)
            out << ",disagreement_" << p.pair.first << '-' << p.pair.second;
        out << '\n';
        for (Eigen::Index i = 0; i < result.y_test.size(); ++i) {
            out << i << ',' << format_double(result.y_test[i]);
            for (const auto& p : result.stability.pairs)
                out << ',' << format_double(p.disagreement[i]);
            out << '\n';
        }
    }
}

// ---------------------------------------------------------------------------
// SVG figure

namespace {

struct PanelBox {
    double x0, y0;               // plot-area origin (top-left), pixels
    double w = 260.0, h = 260.0;
};

struct AxisScale {
    double lo, hi;
    double px0, px1;
    double map(double v) const { return px0 + (v - lo) / (hi - lo) * (px1 - px0); }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

void panel_frame(std::ostream& out, const PanelBox& b, const std::string& title,
                 const std::string& xlabel, const std::string& ylabel) {
    out << "<rect x='" << b.x0 << "' y='" << b.y0 << "' width='" << b.w
        << "' height='" << b.h << "' fill='none' stroke='black'/>\n";
    out << "<text x='" << b.x0 + b.w / 2 << "' y='" << b.y0 - 12
        << "' text-anchor='middle' font-size='14'>" << title << "</text>\n";
    out << "<text x='" << b.x0 + b.w / 2 << "' y='" << b.y0 + b.h + 34
        << "' text-anchor='middle' font-size='12'>" << xlabel << "</text>\n";
    out << "<text x='" << b.x0 - 42 << "' y='" << b.y0 + b.h / 2
        << "' text-anchor='middle' font-size='12' transform='rotate(-90 "
        << b.x0 - 42 << ' ' << b.y0 + b.h / 2 << ")'>" << ylabel << "</text>\n";
}

void axis_ticks(std::ostream& out, const PanelBox& b, const AxisScale& x,
                const AxisScale& y) {
    for (int i = 0; i <= 4; ++i) {
        const double xv = x.lo + (x.hi - x.lo) * i / 4.0;
        const double yv = y.lo + (y.hi - y.lo) * i / 4.0;
        out << "<text x='" << x.map(xv) << "' y='" << b.y0 + b.h + 16
            << "' text-anchor='middle' font-size='10'>" << num(xv) << "</text>\n";
        out << "<text x='" << b.x0 - 6 << "' y='" << y.map(yv) + 3
            << "' text-anchor='end' font-size='10'>" << num(yv) << "</text>\n";
    }
}

void polyline(std::ostream& out, const AxisScale& x, const AxisScale& y,
              const Eigen::VectorXd& xs, const Eigen::VectorXd& ys,
              const std::string& color, bool dashed = false) {
    out << "<polyline fill='none' stroke='" << color << "'"
        << (dashed ? " stroke-dasharray='5,4'" : "") << " points='";
    for (Eigen::Index i = 0; i < xs.size(); ++i)
        out << x.map(xs[i]) << ',' << y.map(ys[i]) << ' ';
    out << "'/>\n";
}

const char* shade(size_t i) {
    static const char* shades[] = {"#333333", "#999999", "#666666", "#bbbbbb"};
    return shades[i % 4];
}

}  // namespace

void render_figure(const AuditResult& result, const std::string& destination) {
    std::ofstream out(destination, std::ios::binary);
    if (!out) throw IoError("cannot write " + destination);

    const double W = 4 * 360 + 40, H = 400;
    out << "<?xml version='1.0' encoding='UTF-8'?>\n"
        << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='"
        << H << "' viewBox='0 0 " << W << ' ' << H
        << "' font-family='sans-serif'>\n";

    const auto& reals = result.realizations;
    const size_t nr = reals.size();

    // (a) grouped train/test MSE bars
    {
        PanelBox b{70, 50};
        out << "<g id='panel_a'>\n";
        double max_mse = 0;
        for (const auto& r : reals)
            max_mse = std::max({max_mse, r.evaluation.mse_train, r.evaluation.mse_test});
        AxisScale y{0, max_mse * 1.15, b.y0 + b.h, b.y0};
        panel_frame(out, b, "(a) Predictive performance", "", "MSE");
        const double group_w = b.w / 2.0;
        for (int g = 0; g < 2; ++g) {
            const double gx = b.x0 + g * group_w;
            const double bar_w = group_w / (static_cast<double>(nr) + 1.0);
            for (size_t i = 0; i < nr; ++i) {
                const double v = g == 0 ? reals[i].evaluation.mse_train
                                        : reals[i].evaluation.mse_test;
                const double bx = gx + bar_w * (0.5 + static_cast<double>(i));
                out << "<rect x='" << bx << "' y='" << y.map(v) << "' width='"
                    << bar_w * 0.9 << "' height='" << y.map(0) - y.map(v)
                    << "' fill='" << shade(i) << "'/>\n";
            }
            out << "<text x='" << gx + group_w / 2 << "' y='" << b.y0 + b.h + 16
                << "' text-anchor='middle' font-size='11'>"
                << (g == 0 ? "Train" : "Test") << "</text>\n";
        }
        for (size_t i = 0; i < nr; ++i)
            out << "<text x='" << b.x0 + 8 << "' y='" << b.y0 + 16 + 14 * i
                << "' font-size='11' fill='" << shade(i) << "'>"
                << reals[i].trained.spec.id << "</text>\n";
        out << "</g>\n";
    }

    // (b) calibration curves + ideal diagonal
    {
        PanelBox b{430, 50};
        out << "<g id='panel_b'>\n";
        AxisScale x{0, 1, b.x0, b.x0 + b.w};
        AxisScale y{0, 1, b.y0 + b.h, b.y0};
        panel_frame(out, b, "(b) Calibration", "Nominal coverage",
                    "Empirical coverage");
        axis_ticks(out, b, x, y);
        Eigen::VectorXd diag(2);
        diag << 0, 1;
        polyline(out, x, y, diag, diag, "#888888", true);
        for (size_t i = 0; i < nr; ++i)
            polyline(out, x, y, reals[i].evaluation.calibration.levels,
                     reals[i].evaluation.calibration.coverage, shade(i));
        out << "</g>\n";
    }

    // (c) MSE vs noise level
    {
        PanelBox b{790, 50};
        out << "<g id='panel_c'>\n";
        double max_mse = 0, max_s = 0;
        for (const auto& r : reals) {
            max_mse = std::max(max_mse, r.evaluation.robustness.mse.maxCoeff());
            max_s = std::max(max_s, r.evaluation.robustness.noise_levels.maxCoeff());
        }
        AxisScale x{0, max_s, b.x0, b.x0 + b.w};
        AxisScale y{0, max_mse * 1.1, b.y0 + b.h, b.y0};
        panel_frame(out, b, "(c) Robustness", "Input noise level", "MSE");
        axis_ticks(out, b, x, y);
        for (size_t i = 0; i < nr; ++i)
            polyline(out, x, y, reals[i].evaluation.robustness.noise_levels,
                     reals[i].evaluation.robustness.mse, shade(i));
        out << "</g>\n";
    }

    // (d) disagreement vs true target, dashed zero line
    {
        PanelBox b{1150, 50};
        out << "<g id='panel_d'>\n";
        double dmax = 1e-12;
        for (const auto& p : result.stability.pairs)
            dmax = std::max(dmax, p.disagreement.cwiseAbs().maxCoeff());
        const double ylo = result.y_test.size() ? result.y_test.minCoeff() : 0;
        const double yhi = result.y_test.size() ? result.y_test.maxCoeff() : 1;
        AxisScale x{ylo, yhi > ylo ? yhi : ylo + 1, b.x0, b.x0 + b.w};
        AxisScale y{-dmax * 1.1, dmax * 1.1, b.y0 + b.h, b.y0};
        std::string pair_label = "Prediction difference";
        if (result.stability.pairs.size() == 1)
            pair_label += " (" + result.stability.pairs[0].pair.first + " - " +
                          result.stability.pairs[0].pair.second + ")";
        panel_frame(out, b, "(d) Measurement stability", "True temperature (T)",
                    pair_label);
        axis_ticks(out, b, x, y);
        Eigen::VectorXd zx(2), zy(2);
        zx << x.lo, x.hi;
        zy << 0, 0;
        polyline(out, x, y, zx, zy, "#888888", true);
        for (size_t pi = 0; pi < result.stability.pairs.size(); ++pi) {
            const auto& p = result.stability.pairs[pi];
            for (Eigen::Index i = 0; i < p.disagreement.size(); ++i)
                out << "<circle cx='" << x.map(result.y_test[i]) << "' cy='"
                    << y.map(p.disagreement[i])
                    << "' r='2' fill='" << shade(pi) << "' fill-opacity='0.45'/>\n";
        }
        out << "</g>\n";
    }

    out << "</svg>\n";
    if (!out) throw IoError("write failed: " + destination);
}

}  // namespace measaudit
