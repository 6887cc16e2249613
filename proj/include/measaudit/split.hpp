#pragma once

// Deterministic temporal train/gap/test partitioning.

#include "measaudit/ingest.hpp"

#include <string>

namespace measaudit {

struct SplitSpec {
    double train_frac = 0.6;
    double gap_frac = 0.2;

    bool valid() const {
        return train_frac > 0.0 && gap_frac >= 0.0 && train_frac + gap_frac < 1.0;
    }
};

struct SplitDataset {
    Dataset train;
    Dataset test;
    std::string train_context = "in-distribution";
    std::string test_context = "temporally-shifted";
};

/// train = rows [0, floor(train_frac*n)); test = rows
/// [floor((train_frac+gap_frac)*n), n); the gap is discarded.
SplitDataset temporal_split(const Dataset& data, const SplitSpec& spec);

}  // namespace measaudit
