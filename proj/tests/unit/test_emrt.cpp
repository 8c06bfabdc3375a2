#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "expect_error.hpp"
#include "oracles.hpp"
#include "revert/emrt.hpp"
#include "revert/ou.hpp"
#include "revert/rng.hpp"

using namespace revert;

namespace {

std::vector<int> kinds_of(const Series& s, double c) {
    std::vector<int> k(s.size(), 0);
    for (const auto& p : find_important_extremes(s, c)) k[p.index] = p.kind == ExtremeKind::Minimum ? -1 : 1;
    return k;
}

Series ou_path(double mu, std::uint64_t seed, std::size_t n = 1000) {
    SimConfig c;
    c.params = {mu, 0.0, 1.0};
    c.horizon = 1.0;
    c.n_steps = n;
    c.seed = seed;
    return simulate_ou(c);
}

}  // namespace

TEST_SUITE("emrt") {

TEST_CASE("monotone series has no important extremes") {
    std::vector<double> v;
    for (int i = 0; i < 100; ++i) v.push_back(0.5 * i);
    Series s(v);
    CHECK(find_important_extremes(s, 2.0).empty());
    CHECK_ERRC(build_tau_sequence(s, {}), Errc::NoExtremes);
    CHECK_ERRC(compute_emrt(s, {}), Errc::NoExtremes);
}

TEST_CASE("zigzag example") {
    Series s({0, 3, 0, -3, 0, 3, 0});
    auto ex = find_important_extremes(s, 1.0);
    REQUIRE(ex.size() == 3);
    CHECK(ex[0] == ExtremePoint{1, ExtremeKind::Maximum, 3.0});
    CHECK(ex[1] == ExtremePoint{3, ExtremeKind::Minimum, -3.0});
    CHECK(ex[2] == ExtremePoint{5, ExtremeKind::Maximum, 3.0});
    CHECK(kinds_of(s, 1.0) == oracle::important_extremes_bruteforce(s.values, 1.0));
}

TEST_CASE("degenerate inputs") {
    CHECK_ERRC(find_important_extremes(Series({1, 1, 1, 1}), 2.0), Errc::DegenerateSeries);
    CHECK_ERRC(find_important_extremes(Series({1, 2}), 2.0), Errc::DegenerateSeries);
    CHECK_ERRC(find_important_extremes(Series({1, 2, 1}), 0.0), Errc::InvalidArgument);
}

TEST_CASE("scan matches the brute-force oracle on random series") {
    Rng rng = make_rng(1234, "emrt/oracle");
    std::uniform_int_distribution<int> len(3, 50);
    std::uniform_int_distribution<int> ticks(-4, 4);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> cdist(0.2, 2.5);
    std::size_t mismatches = 0;
    for (int rep = 0; rep < 500; ++rep) {
        std::vector<double> v(static_cast<std::size_t>(len(rng)));
        // Integer-valued walks exercise ties; Gaussian walks the generic case.
        double x = 0.0;
        for (double& e : v) e = (x += rep % 2 ? ticks(rng) : normal(rng));
        if (oracle::sample_std(v) == 0.0) v.back() += 1.0;
        const double c = cdist(rng);
        if (kinds_of(Series(v), c) != oracle::important_extremes_bruteforce(v, c)) ++mismatches;
    }
    CHECK(mismatches == 0);
}

TEST_CASE("sinusoid EMRT is a quarter period") {
    for (std::size_t period : {40u, 64u, 100u}) {
        std::vector<double> v;
        for (std::size_t t = 0; t < 10 * period; ++t)
            v.push_back(std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(period)));
        const double e = compute_emrt(Series(v), EmrtConfig{1.0, std::nullopt, ExtremeMode::Both});
        CHECK(std::abs(e - static_cast<double>(period) / 4.0) <= 1.0);
    }
}

TEST_CASE("single pair of length four") {
    // One important maximum at t = 10, next crossing of the sample mean at t = 14.
    std::vector<double> v(10, 0.0);
    for (double x : {10.0, 6.0, 4.0, 2.0, -1.0, -1.0}) v.push_back(x);
    Series s(v);
    TauSequence seq = build_tau_sequence(s, EmrtConfig{1.0, std::nullopt, ExtremeMode::Both});
    CHECK(seq.taus == std::vector<std::size_t>{10, 14});
    CHECK(seq.kinds == std::vector<TauKind>{TauKind::Extreme, TauKind::Crossing});
    CHECK(compute_emrt(s, EmrtConfig{1.0, std::nullopt, ExtremeMode::Both}) == 4.0);
}

TEST_CASE("extreme without a later crossing") {
    Series s({10, 10, 10, 10, 0, 2.5});
    auto ex = find_important_extremes(s, 0.5);
    REQUIRE(ex.size() == 1);
    CHECK(ex[0].index == 4);
    TauSequence seq = build_tau_sequence(s, EmrtConfig{0.5, std::nullopt, ExtremeMode::Both});
    CHECK(seq.taus == std::vector<std::size_t>{4});
    CHECK(seq.pairs() == 0);
    CHECK_ERRC(compute_emrt(s, EmrtConfig{0.5, std::nullopt, ExtremeMode::Both}), Errc::NoCompletePairs);
}

TEST_CASE("trailing extreme is dropped from the average") {
    Series s({0, 3, 0, -3, 0, 6, 1});
    EmrtConfig cfg{1.0, 0.0, ExtremeMode::Both};
    TauSequence seq = build_tau_sequence(s, cfg);
    // max@1 -> crossing@2; min@3 -> crossing@4; max@5 has no crossing.
    CHECK(seq.taus == std::vector<std::size_t>{1, 2, 3, 4, 5});
    CHECK(compute_emrt(s, cfg) == 1.0);
}

TEST_CASE("maxima-only mode") {
    Series s({0, 3, 0, -3, 0, 3, 0});
    EmrtConfig cfg{1.0, 0.0, ExtremeMode::MaximaOnly};
    TauSequence seq = build_tau_sequence(s, cfg);
    CHECK(seq.taus == std::vector<std::size_t>{1, 2, 5, 6});
}

TEST_CASE("tau sequence alternates and increases") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Series s = ou_path(8.0, seed);
        TauSequence seq = build_tau_sequence(s, {});
        for (std::size_t i = 0; i < seq.taus.size(); ++i) {
            CHECK(seq.kinds[i] == (i % 2 ? TauKind::Crossing : TauKind::Extreme));
            if (i) CHECK(seq.taus[i] > seq.taus[i - 1]);
            CHECK(seq.taus[i] < s.size());
        }
    }
}

TEST_CASE("EMRT is invariant to positive affine maps and sign flips") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Series s = ou_path(5.0, seed);
        const double e = compute_emrt(s, {});
        Series scaled = s, flipped = s;
        for (double& v : scaled.values) v = 4.0 * v + 8.0;
        for (double& v : flipped.values) v = -v;
        CHECK(compute_emrt(scaled, {}) == e);
        CHECK(compute_emrt(flipped, {}) == e);
    }
}

TEST_CASE("explicit reference mean is used") {
    Series s({0, 3, 0, -3, 0, 3, 0});
    CHECK(build_tau_sequence(s, EmrtConfig{1.0, 0.0, ExtremeMode::Both}).reference_mean == 0.0);
    CHECK(build_tau_sequence(s, EmrtConfig{1.0, std::nullopt, ExtremeMode::Both}).reference_mean ==
          doctest::Approx(3.0 / 7.0));
    CHECK_ERRC(compute_emrt(s, EmrtConfig{-1.0, std::nullopt, ExtremeMode::Both}), Errc::InvalidArgument);
}

}
