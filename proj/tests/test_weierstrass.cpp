#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fractalmsg/errors.hpp"
#include "fractalmsg/weierstrass.hpp"
#include "oracles.hpp"

using namespace fractalmsg;

namespace {
const FractalParams kHalfThree(0.5, 3.0);
const std::string kHi = "011010000110100100100001";
} // namespace

TEST_CASE("eval_weierstrass at closed-form points") {
    CHECK(eval_weierstrass(kHalfThree, 10, 0.0) == 1.9990234375);
    CHECK(eval_weierstrass(kHalfThree, 10, 1.0) == -1.9990234375);
    CHECK(std::abs(eval_weierstrass(kHalfThree, 10, 0.5)) < 1e-12);
}

TEST_CASE("eval_weierstrass matches the term-by-term oracle") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> t_dist(-5.0, 5.0);
    for (int i = 0; i < 2000; ++i) {
        const double t = t_dist(rng);
        CHECK(eval_weierstrass(kHalfThree, 12, t) == doctest::Approx(oracle::weierstrass(0.5, 3.0, 12, t)).epsilon(1e-9));
    }
    const FractalParams hardy(0.4, 2.5);
    for (int i = 0; i < 500; ++i) {
        const double t = t_dist(rng);
        CHECK(eval_weierstrass(hardy, 8, t) == doctest::Approx(oracle::weierstrass(0.4, 2.5, 8, t)).epsilon(1e-9));
    }
}

TEST_CASE("eval_mask windows") {
    const auto msg = BitStream::parse("10");
    CHECK(eval_mask(msg, kHalfThree, 0, 1.0));
    CHECK_FALSE(eval_mask(msg, kHalfThree, 0, 3.0));
    CHECK(eval_mask(msg, kHalfThree, 0, 5.0));
    // u(0) = 1: the boundary belongs to the window it opens.
    CHECK(eval_mask(msg, kHalfThree, 0, 0.0));
    CHECK_FALSE(eval_mask(msg, kHalfThree, 0, 2.0));
    CHECK(eval_mask(msg, kHalfThree, 0, 4.0));
    // negative times extend periodically
    CHECK_FALSE(eval_mask(msg, kHalfThree, 0, -1.0));
    CHECK(eval_mask(msg, kHalfThree, 0, -3.0));
    // component 1 windows are 2/3 long
    CHECK(eval_mask(msg, kHalfThree, 1, 0.5));
    CHECK_FALSE(eval_mask(msg, kHalfThree, 1, 0.9));
}

TEST_CASE("eval_mask agrees with the Heaviside-sum oracle") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> t_dist(-60.0, 60.0);
    const auto msg = BitStream::parse(kHi);
    for (unsigned m = 0; m <= 6; ++m) {
        for (int i = 0; i < 500; ++i) {
            const double t = t_dist(rng);
            CHECK(static_cast<double>(eval_mask(msg, kHalfThree, m, t)) == oracle::mask(kHi, 3.0, static_cast<int>(m), t));
        }
    }
}

TEST_CASE("eval_masked_component examples") {
    CHECK(eval_masked_component(BitStream::parse(kHi), kHalfThree, 0, 0.0) == 0.0);
    CHECK(eval_masked_component(BitStream::parse("10"), kHalfThree, 0, 0.0) == 1.0);
    // Unit-amplitude sine carrier masked by "10", read at t = 0.2.
    const double value = static_cast<double>(eval_mask(BitStream::parse("10"), kHalfThree, 0, 0.2)) *
                         std::sin(std::numbers::pi * 0.2);
    CHECK(value == doctest::Approx(0.588).epsilon(1e-3));
}

TEST_CASE("fractal message degenerate messages") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> t_dist(-50.0, 50.0);
    const auto ones = BitStream::filled(24, true);
    const auto zeros = BitStream::filled(24, false);
    const FractalParams hardy(0.4, 2.5);
    for (int i = 0; i < 2000; ++i) {
        const double t = t_dist(rng);
        CHECK(eval_fractal_message(ones, kHalfThree, 10, t) == eval_weierstrass(kHalfThree, 10, t));
        CHECK(eval_fractal_message(ones, hardy, 7, t) == eval_weierstrass(hardy, 7, t));
        CHECK(eval_fractal_message(zeros, kHalfThree, 10, t) == 0.0);
    }
}

TEST_CASE("fractal message for 'hi!' matches brute-force summation over [0, 48]") {
    const auto msg = BitStream::parse(kHi);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> t_dist(0.0, 48.0);
    double worst = 0.0;
    for (int i = 0; i < 5000; ++i) {
        const double t = t_dist(rng);
        worst = std::max(worst, std::abs(eval_fractal_message(msg, kHalfThree, 10, t) -
                                         oracle::fractal_message(kHi, 0.5, 3.0, 10, t)));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("sample") {
    const auto zero = sample([](double) { return 0.0; }, 10.0, 0.0, 1.0);
    CHECK(zero.size() == 10);
    for (double v : zero.samples) CHECK(v == 0.0);

    const auto ramp = sample([](double t) { return t; }, 4.0, 0.0, 1.0);
    REQUIRE(ramp.size() == 4);
    CHECK(ramp.samples == std::vector<double>{0.0, 0.25, 0.5, 0.75});

    const auto w = sample([](double t) { return eval_weierstrass(kHalfThree, 10, t); }, 16384.0, 0.0, 2.0);
    CHECK(w.size() == 32768);
    double peak = 0.0;
    for (double v : w.samples) peak = std::max(peak, std::abs(v));
    CHECK(peak <= amplitude_bound(kHalfThree, 10) * (1 + 1e-12));
    CHECK(amplitude_bound(kHalfThree, 10) == doctest::Approx(1.9990234375));

    CHECK(sample([](double) { return 0.0; }, 10.0, 0.0, 0.3).size() == 3);
    CHECK_THROWS_AS(sample([](double) { return 0.0; }, 10.0, 1.0, 1.0), ParameterError);
    CHECK_THROWS_AS(sample([](double) { return 0.0; }, 0.0, 0.0, 1.0), ParameterError);
}

TEST_CASE("mask invariants over random times") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> t_dist(-30.0, 30.0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto msg = BitStream::parse(oracle::random_bits(rng, 1 + trial * 3));
        const double L = static_cast<double>(msg.size());
        for (const auto& params : {kHalfThree, FractalParams(0.5, 5.0), FractalParams(0.4, 2.5)}) {
            for (unsigned m = 0; m <= 5; ++m) {
                for (int i = 0; i < 50; ++i) {
                    const double t = t_dist(rng);
                    const bool here = eval_mask(msg, params, m, t);
                    CHECK(eval_mask(msg, params, m, t + 2.0 * L / params.frequency_scale(m)) == here);
                    CHECK(eval_mask(msg, params, m, params.b() * t) == eval_mask(msg, params, m + 1, t));
                }
            }
        }
    }
}

TEST_CASE("exact truncated self-similarity and amplitude bound") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> t_dist(0.0, 48.0);
    for (const auto& params : {kHalfThree, FractalParams(0.4, 2.5)}) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto msg = BitStream::parse(oracle::random_bits(rng, 24));
            const double bound = amplitude_bound(params, 10);
            for (int i = 0; i < 1000; ++i) {
                const double t = t_dist(rng);
                const double lhs = params.a() * eval_fractal_message(msg, params, 10, params.b() * t) +
                                   eval_masked_component(msg, params, 0, t);
                const double rhs = eval_fractal_message(msg, params, 11, t);
                CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
                CHECK(std::abs(rhs) <= amplitude_bound(params, 11) * (1 + 1e-12));
                CHECK(std::abs(eval_fractal_message(msg, params, 10, t)) <= bound * (1 + 1e-12));
            }
        }
    }
}
