#pragma once

// Synthetic data-generating processes with a known latent quantity,
// used as ground truth for verifying stability verdicts.

#include "measaudit/ingest.hpp"
#include "measaudit/rng.hpp"

#include <string>
#include <vector>

namespace measaudit {

struct LatentProcess {
    double amplitude = 1.0;
    double period = 24.0;
    double ar_coeff = 0.0;      // additive AR(1) component
    double ar_noise_std = 0.0;
};

struct SynthChannel {
    std::string name;
    double loading_train = 1.0;
    double loading_shift = 1.0;  // applies from shift_row onward
    double bias = 0.0;
    double noise_std = 0.0;
};

struct SynthSpec {
    Eigen::Index n_rows = 0;
    LatentProcess latent;
    std::vector<SynthChannel> channels;
    Eigen::Index shift_row = 0;     // 0 < shift_row < n_rows
    double target_noise_std = 0.0;
    std::string target_name = "z";
};

/// Columns: one per channel, then the (noisy) target. Rows are
/// time-ordered; fully deterministic given (spec, rng).
Dataset generate_synthetic(const SynthSpec& spec, const RngStream& rng);

/// Parse a SynthSpec from a JSON document.
SynthSpec parse_synth_spec(const std::string& json_text);

/// Write a dataset in the plain ','-separated, '.'-decimal dialect.
void write_csv(const Dataset& data, const std::string& path);

}  // namespace measaudit
