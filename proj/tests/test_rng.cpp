#include "measaudit/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace measaudit;

TEST_CASE("fnv1a64 reference values") {
    // Published FNV-1a 64-bit test vectors.
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("streams with equal seed and path agree exactly") {
    RngStream a(42, {"x", "y"});
    RngStream b(42, {"x", "y"});
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct paths decorrelate") {
    RngStream a(42, {"x"});
    RngStream b(42, {"y"});
    int equal = 0;
    for (int i = 0; i < 64; ++i)
        if (a.next_u64() == b.next_u64()) ++equal;
    CHECK(equal == 0);
}

TEST_CASE("substream derivation does not advance the parent") {
    RngStream parent(7);
    RngStream copy(7);
    (void)parent.substream("child");
    CHECK(parent.next_u64() == copy.next_u64());
}

TEST_CASE("substream equals directly constructed stream") {
    RngStream derived = RngStream(7, {"a"}).substream("b");
    RngStream direct(7, {"a", "b"});
    for (int i = 0; i < 20; ++i) CHECK(derived.next_u64() == direct.next_u64());
}

TEST_CASE("uniform stays in [0, 1)") {
    RngStream rng(1);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("gaussian sample moments") {
    RngStream rng(9);
    const int n = 200000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = rng.gaussian();
        sum += g;
        sum_sq += g * g;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("gaussian(mean, stddev) is an affine transform") {
    RngStream a(3), b(3);
    for (int i = 0; i < 50; ++i)
        CHECK(a.gaussian(2.0, 0.5) == doctest::Approx(2.0 + 0.5 * b.gaussian())
                                          .epsilon(1e-15));
}

TEST_CASE("sequences reproduce after reconstruction") {
    std::vector<std::uint64_t> first;
    {
        RngStream rng(123456789, {"run"});
        for (int i = 0; i < 10; ++i) first.push_back(rng.next_u64());
    }
    RngStream again(123456789, {"run"});
    for (std::uint64_t expected : first) CHECK(again.next_u64() == expected);
}
