#pragma once

// Strict INI-style configuration for the audit pipeline. Unknown keys
// are fatal; defaults follow the standard protocol constants
// (0.6/0.2 split, 9 calibration levels, 8 noise levels, seed 0).

#include "measaudit/ingest.hpp"
#include "measaudit/metrics.hpp"
#include "measaudit/modeling.hpp"
#include "measaudit/split.hpp"
#include "measaudit/stability.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace measaudit {

struct DataConfig {
    std::string path;
    TableFormat format = TableFormat::uci();
    std::string target_column;
    std::vector<std::string> metadata_columns;
};

struct OutputConfig {
    std::string directory = "out";
    bool emit_figure = true;
    bool reproducible = false;
};

struct AuditConfig {
    DataConfig data;
    SplitSpec split;
    std::vector<RealizationSpec> realizations;
    Eigen::VectorXd calibration_levels = default_calibration_levels();
    Eigen::VectorXd noise_levels = default_noise_levels();
    std::uint64_t master_seed = 0;
    StabilityThresholds thresholds;
    OutputConfig output;

    /// Every resolved value, in report order, for the config echo.
    std::vector<std::pair<std::string, std::string>> echo() const;
};

AuditConfig parse_config(const std::string& document);
AuditConfig load_config(const std::string& path);

}  // namespace measaudit
