#pragma once

// End-to-end orchestration: ingest -> split -> train -> evaluate ->
// stability audit -> contrast -> assembled result.

#include "measaudit/config.hpp"
#include "measaudit/report.hpp"

namespace measaudit {

/// Exit-code contract for the audit command.
enum ExitCode : int { kExitStable = 0, kExitError = 1, kExitUnstable = 10 };

AuditResult run_audit(const AuditConfig& config);

/// Write report.json, the four panel CSVs and (optionally) figure.svg
/// into config.output.directory.
void write_outputs(const AuditResult& result, const OutputConfig& output);

}  // namespace measaudit
