#pragma once

// Audit result serialization: JSON report, per-panel CSVs and the
// four-panel SVG figure.

#include "measaudit/metrics.hpp"
#include "measaudit/stability.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace measaudit {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "measaudit-report/1";

struct Provenance {
    std::string tool_version = kToolVersion;
    std::uint64_t master_seed = 0;
    std::string dataset_hash;
    std::string timestamp;
};

struct RealizationResult {
    TrainedRealization trained;
    EvaluationReport evaluation;
};

struct AuditResult {
    std::vector<std::pair<std::string, std::string>> config_echo;
    std::vector<RealizationResult> realizations;
    StabilityReport stability;
    ContrastSummary contrast;
    Eigen::VectorXd y_test;  // shared test targets, for panel (d)
    Provenance provenance;
};

/// %.17g: exact binary round trip, diff-able output.
std::string format_double(double v);

/// FNV-1a 64 hash of a file's bytes, as "fnv1a64:<hex>".
std::string hash_file(const std::string& path);

/// Single JSON document with fixed key order and 17-significant-digit
/// numbers; byte-identical for structurally equal results.
void emit_report(const AuditResult& result, std::ostream& destination);
std::string emit_report(const AuditResult& result);

AuditResult read_report(const std::string& json_text);

/// panel_a.csv, panel_b.csv, panel_c.csv, panel_d.csv under `directory`.
void emit_panel_data(const AuditResult& result, const std::string& directory);

/// Standalone four-panel SVG.
void render_figure(const AuditResult& result, const std::string& destination);

}  // namespace measaudit
