#include "measaudit/config.hpp"

#include "measaudit/errors.hpp"
#include "measaudit/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace measaudit {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == ',') {
            auto item = trim(s.substr(start, i - start));
            if (!item.empty()) out.push_back(item);
            start = i + 1;
        }
    }
    return out;
}

double parse_real(const std::string& path, const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size() || v.empty())
        throw ConfigError("InvalidValue", path, "expected a number, got '" + v + "'");
    return x;
}

std::uint64_t parse_u64(const std::string& path, const std::string& v) {
    std::uint64_t x = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw ConfigError("InvalidValue", path, "expected an unsigned integer");
    return x;
}

bool parse_bool(const std::string& path, const std::string& v) {
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw ConfigError("InvalidValue", path, "expected true/false");
}

char parse_char(const std::string& path, const std::string& v) {
    if (v.size() != 1)
        throw ConfigError("InvalidValue", path, "expected a single character");
    return v[0];
}

// Either "linspace(lo, hi, n)" or an explicit comma list of numbers.
Eigen::VectorXd parse_levels(const std::string& path, const std::string& v) {
    if (v.rfind("linspace(", 0) == 0 && v.back() == ')') {
        auto args = split_list(v.substr(9, v.size() - 10));
        if (args.size() != 3)
            throw ConfigError("InvalidValue", path, "linspace takes (lo, hi, n)");
        const double lo = parse_real(path, args[0]);
        const double hi = parse_real(path, args[1]);
        const auto n = static_cast<Eigen::Index>(parse_u64(path, args[2]));
        if (n < 1) throw ConfigError("InvalidValue", path, "n must be >= 1");
        return linspace(lo, hi, n);
    }
    auto items = split_list(v);
    if (items.empty()) throw ConfigError("InvalidValue", path, "empty list");
    Eigen::VectorXd out(static_cast<Eigen::Index>(items.size()));
    for (size_t i = 0; i < items.size(); ++i)
        out[static_cast<Eigen::Index>(i)] = parse_real(path, items[i]);
    return out;
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += items[i];
    }
    return out;
}

std::string format_levels(const Eigen::VectorXd& v) {
    std::string out;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_double(v[i]);
    }
    return out;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> AuditConfig::echo() const {
    std::vector<std::pair<std::string, std::string>> e;
    e.emplace_back("data.path", data.path);
    e.emplace_back("data.field_separator", std::string(1, data.format.field_separator));
    e.emplace_back("data.decimal_separator",
                   std::string(1, data.format.decimal_separator));
    e.emplace_back("data.drop_unnamed_trailing",
                   data.format.drop_unnamed_trailing ? "true" : "false");
    e.emplace_back("data.sentinel_missing", format_double(data.format.sentinel_missing));
    e.emplace_back("data.target_column", data.target_column);
    e.emplace_back("data.metadata_columns", join(data.metadata_columns));
    e.emplace_back("split.train_frac", format_double(split.train_frac));
    e.emplace_back("split.gap_frac", format_double(split.gap_frac));
    for (const auto& r : realizations)
        e.emplace_back("realization." + r.id + ".features", join(r.feature_columns));
    e.emplace_back("evaluation.calibration_levels", format_levels(calibration_levels));
    e.emplace_back("evaluation.noise_levels", format_levels(noise_levels));
    e.emplace_back("evaluation.master_seed", std::to_string(master_seed));
    e.emplace_back("thresholds.max_abs_relative_mean",
                   format_double(thresholds.max_abs_relative_mean));
    e.emplace_back("thresholds.max_abs_pearson_r",
                   format_double(thresholds.max_abs_pearson_r));
    e.emplace_back("thresholds.equivalence_scale", thresholds.equivalence_scale);
    e.emplace_back("output.directory", output.directory);
    e.emplace_back("output.emit_figure", output.emit_figure ? "true" : "false");
    e.emplace_back("output.reproducible", output.reproducible ? "true" : "false");
    return e;
}

AuditConfig parse_config(const std::string& document) {
    AuditConfig cfg;
    std::istringstream in(document);
    std::string line, section;
    bool saw_path = false, saw_target = false;

    while (std::getline(in, line)) {
        // strip comments
        if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("InvalidValue", line, "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            const bool is_realization = section.rfind("realization.", 0) == 0 &&
                                        section.size() > 12;
            if (section != "data" && section != "split" && section != "evaluation" &&
                section != "thresholds" && section != "output" && !is_realization)
                throw ConfigError("UnknownKey", section, "unknown section");
            if (is_realization) {
                const std::string id = section.substr(12);
                for (const auto& r : cfg.realizations)
                    if (r.id == id)
                        throw ConfigError("InvalidValue", section,
                                          "duplicate realization id");
                cfg.realizations.push_back(RealizationSpec{id, {}, ""});
            }
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("InvalidValue", line, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string path = section.empty() ? key : section + "." + key;
        if (section.empty())
            throw ConfigError("UnknownKey", path, "key outside any section");

        if (section == "data") {
            if (key == "path") { cfg.data.path = value; saw_path = true; }
            else if (key == "target_column") { cfg.data.target_column = value; saw_target = true; }
            else if (key == "metadata_columns") cfg.data.metadata_columns = split_list(value);
            else if (key == "dialect") {
                if (value == "uci") cfg.data.format = TableFormat::uci();
                else if (value == "standard") cfg.data.format = TableFormat::standard();
                else throw ConfigError("InvalidValue", path, "expected uci or standard");
            }
            else if (key == "field_separator") cfg.data.format.field_separator = parse_char(path, value);
            else if (key == "decimal_separator") cfg.data.format.decimal_separator = parse_char(path, value);
            else if (key == "drop_unnamed_trailing") cfg.data.format.drop_unnamed_trailing = parse_bool(path, value);
            else if (key == "sentinel_missing") cfg.data.format.sentinel_missing = parse_real(path, value);
            else throw ConfigError("UnknownKey", path);
        } else if (section == "split") {
            if (key == "train_frac") cfg.split.train_frac = parse_real(path, value);
            else if (key == "gap_frac") cfg.split.gap_frac = parse_real(path, value);
            else throw ConfigError("UnknownKey", path);
        } else if (section == "evaluation") {
            if (key == "calibration_levels") cfg.calibration_levels = parse_levels(path, value);
            else if (key == "noise_levels") cfg.noise_levels = parse_levels(path, value);
            else if (key == "master_seed") cfg.master_seed = parse_u64(path, value);
            else throw ConfigError("UnknownKey", path);
        } else if (section == "thresholds") {
            if (key == "max_abs_relative_mean") cfg.thresholds.max_abs_relative_mean = parse_real(path, value);
            else if (key == "max_abs_pearson_r") cfg.thresholds.max_abs_pearson_r = parse_real(path, value);
            else if (key == "equivalence_scale") cfg.thresholds.equivalence_scale = value;
            else throw ConfigError("UnknownKey", path);
        } else if (section == "output") {
            if (key == "directory") cfg.output.directory = value;
            else if (key == "emit_figure") cfg.output.emit_figure = parse_bool(path, value);
            else if (key == "reproducible") cfg.output.reproducible = parse_bool(path, value);
            else throw ConfigError("UnknownKey", path);
        } else {  // realization.<id>
            if (key == "features") cfg.realizations.back().feature_columns = split_list(value);
            else throw ConfigError("UnknownKey", path);
        }
    }

    if (!saw_path) throw ConfigError("MissingRequired", "data.path");
    if (!saw_target) throw ConfigError("MissingRequired", "data.target_column");
    if (cfg.realizations.empty())
        throw ConfigError("MissingRequired", "realization.*",
                          "at least one realization section required");
    if (cfg.data.format.field_separator == cfg.data.format.decimal_separator)
        throw ConfigError("InvalidValue", "data.decimal_separator",
                          "must differ from field separator");
    for (auto& r : cfg.realizations) {
        const std::string rpath = "realization." + r.id + ".features";
        if (r.feature_columns.empty()) throw ConfigError("MissingRequired", rpath);
        auto sorted = r.feature_columns;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ConfigError("InvalidValue", rpath, "duplicate feature column");
        r.target_column = cfg.data.target_column;
        if (std::find(r.feature_columns.begin(), r.feature_columns.end(),
                      r.target_column) != r.feature_columns.end())
            throw ConfigError("InvalidValue", rpath,
                              "target column cannot be a feature");
    }
    if (!cfg.split.valid())
        throw ConfigError("InvalidValue", "split.train_frac",
                          "fractions must satisfy 0 < train, gap >= 0, "
                          "train + gap < 1");
    if (cfg.thresholds.max_abs_relative_mean < 0.0 ||
        cfg.thresholds.max_abs_pearson_r < 0.0 ||
        cfg.thresholds.max_abs_pearson_r > 1.0)
        throw ConfigError("InvalidValue", "thresholds.max_abs_pearson_r",
                          "bounds must be non-negative (pearson in [0,1])");
    for (Eigen::Index i = 0; i < cfg.calibration_levels.size(); ++i) {
        const double a = cfg.calibration_levels[i];
        if (!(a > 0.0 && a < 1.0))
            throw ConfigError("InvalidValue", "evaluation.calibration_levels",
                              "levels must lie in (0, 1)");
        if (i > 0 && a <= cfg.calibration_levels[i - 1])
            throw ConfigError("InvalidValue", "evaluation.calibration_levels",
                              "levels must be strictly increasing");
    }
    for (Eigen::Index i = 0; i < cfg.noise_levels.size(); ++i) {
        if (cfg.noise_levels[i] < 0.0)
            throw ConfigError("InvalidValue", "evaluation.noise_levels",
                              "noise levels must be non-negative");
        if (i > 0 && cfg.noise_levels[i] < cfg.noise_levels[i - 1])
            throw ConfigError("InvalidValue", "evaluation.noise_levels",
                              "noise levels must be non-decreasing");
    }
    return cfg;
}

AuditConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace measaudit
