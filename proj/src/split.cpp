#include "measaudit/split.hpp"

#include "measaudit/errors.hpp"

namespace measaudit {

namespace {

Dataset take_rows(const Dataset& data, Eigen::Index begin, Eigen::Index end) {
    Dataset out;
    out.column_names = data.column_names;
    out.values = data.values.middleRows(begin, end - begin);
    out.metadata_names = data.metadata_names;
    out.metadata_columns.resize(data.metadata_columns.size());
    for (size_t j = 0; j < data.metadata_columns.size(); ++j)
        out.metadata_columns[j].assign(
            data.metadata_columns[j].begin() + begin,
            data.metadata_columns[j].begin() + end);
    return out;
}

}  // namespace

SplitDataset temporal_split(const Dataset& data, const SplitSpec& spec) {
    if (!spec.valid())
        throw InvalidSplitError("split fractions must satisfy train_frac > 0, "
                                "gap_frac >= 0, train_frac + gap_frac < 1");
    const Eigen::Index n = data.n_rows();
    // truncation toward zero, matching int(frac * n)
    const auto train_end =
        static_cast<Eigen::Index>(spec.train_frac * static_cast<double>(n));
    const auto gap_end = static_cast<Eigen::Index>(
        (spec.train_frac + spec.gap_frac) * static_cast<double>(n));
    if (train_end <= 0) throw EmptyTrainError("train split is empty");
    if (gap_end >= n) throw EmptyTestError("test split is empty");

    SplitDataset out;
    out.train = take_rows(data, 0, train_end);
    out.test = take_rows(data, gap_end, n);
    return out;
}

}  // namespace measaudit
