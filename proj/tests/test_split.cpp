#include "measaudit/errors.hpp"
#include "measaudit/split.hpp"

#include <doctest.h>

using namespace measaudit;

namespace {

Dataset sequence_dataset(Eigen::Index n) {
    Dataset d;
    d.column_names = {"x"};
    d.values.resize(n, 1);
    for (Eigen::Index i = 0; i < n; ++i) d.values(i, 0) = static_cast<double>(i);
    return d;
}

}  // namespace

TEST_CASE("temporal_split: 0.6/0.2 on ten rows") {
    const auto s = temporal_split(sequence_dataset(10), SplitSpec{0.6, 0.2});
    REQUIRE(s.train.n_rows() == 6);
    REQUIRE(s.test.n_rows() == 2);
    CHECK(s.train.values(0, 0) == 0.0);
    CHECK(s.train.values(5, 0) == 5.0);
    CHECK(s.test.values(0, 0) == 8.0);
    CHECK(s.test.values(1, 0) == 9.0);
}

TEST_CASE("temporal_split: no gap") {
    const auto s = temporal_split(sequence_dataset(10), SplitSpec{0.5, 0.0});
    CHECK(s.train.n_rows() == 5);
    CHECK(s.test.n_rows() == 5);
    CHECK(s.test.values(0, 0) == 5.0);
}

TEST_CASE("temporal_split: floor arithmetic on tiny input") {
    // floor(2.7) = 2, floor(2.97) = 2
    const auto s = temporal_split(sequence_dataset(3), SplitSpec{0.9, 0.09});
    CHECK(s.train.n_rows() == 2);
    CHECK(s.test.n_rows() == 1);
    CHECK(s.test.values(0, 0) == 2.0);
}

TEST_CASE("temporal_split: empty splits and bad specs") {
    CHECK_THROWS_AS(temporal_split(sequence_dataset(3), SplitSpec{0.1, 0.0}),
                    EmptyTrainError);
    CHECK_THROWS_AS(temporal_split(sequence_dataset(10), SplitSpec{0.6, 0.5}),
                    InvalidSplitError);
    CHECK_THROWS_AS(temporal_split(sequence_dataset(10), SplitSpec{0.0, 0.2}),
                    InvalidSplitError);
}

TEST_CASE("temporal_split: partition sizes always add up") {
    for (Eigen::Index n : {3, 7, 10, 11, 97, 1000}) {
        for (double tf : {0.2, 0.5, 0.6, 0.77}) {
            for (double gf : {0.0, 0.1, 0.2}) {
                const SplitSpec spec{tf, gf};
                const auto data = sequence_dataset(n);
                SplitDataset s;
                try {
                    s = temporal_split(data, spec);
                } catch (const Error&) {
                    continue;
                }
                const auto train_end = static_cast<Eigen::Index>(tf * double(n));
                const auto gap_end = static_cast<Eigen::Index>((tf + gf) * double(n));
                CHECK(s.train.n_rows() == train_end);
                CHECK(s.test.n_rows() == n - gap_end);
                CHECK(s.train.n_rows() + (gap_end - train_end) + s.test.n_rows() == n);
                // no shared row: last train value < first test value
                CHECK(s.train.values(s.train.n_rows() - 1, 0) < s.test.values(0, 0));
            }
        }
    }
}

TEST_CASE("temporal_split: monotone in train_frac") {
    Eigen::Index prev = 0;
    for (double tf = 0.1; tf < 0.75; tf += 0.05) {
        const auto s = temporal_split(sequence_dataset(53), SplitSpec{tf, 0.2});
        CHECK(s.train.n_rows() >= prev);
        prev = s.train.n_rows();
    }
}

TEST_CASE("temporal_split: context labels") {
    const auto s = temporal_split(sequence_dataset(10), SplitSpec{0.6, 0.2});
    CHECK(s.train_context == "in-distribution");
    CHECK(s.test_context == "temporally-shifted");
}
