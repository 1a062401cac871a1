#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fractalmsg/channel.hpp"
#include "fractalmsg/codec.hpp"
#include "fractalmsg/errors.hpp"
#include "fractalmsg/weierstrass.hpp"
#include "oracles.hpp"

using namespace fractalmsg;

namespace {

const FractalParams kHalfThree(0.5, 3.0);
const std::string kHi = "011010000110100100100001";

// 'hi!' with a = 1/2, b = 3, M = 6, rate 8 * 3^6, T = 48.
const SampledSignal& hi_signal() {
    static const SampledSignal s = encode(BitStream::parse(kHi), {kHalfThree, 6, 5832.0, 48.0});
    return s;
}

} // namespace

TEST_CASE("text_to_bits") {
    CHECK(text_to_bits("hi!").to_string() == kHi);
    CHECK(text_to_bits("A").to_string() == "01000001");
    CHECK_THROWS_AS(text_to_bits(""), EncodingError);
    try {
        text_to_bits("ab\xc3\xa9");
        FAIL("expected EncodingError");
    } catch (const EncodingError& e) {
        CHECK(std::string(e.what()).find("index 2") != std::string::npos);
    }
}

TEST_CASE("bits_to_text") {
    CHECK(bits_to_text(BitStream::parse(kHi)) == "hi!");
    CHECK(bits_to_text(BitStream::parse("01000001")) == "A");
    CHECK_THROWS_AS(bits_to_text(BitStream::parse("0110100")), EncodingError);
    CHECK_THROWS_AS(bits_to_text(BitStream::parse("10000001")), EncodingError);
}

TEST_CASE("bits_to_text inverts text_to_bits for random ASCII") {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> ch(0, 127);
    std::uniform_int_distribution<int> len(1, 40);
    for (int trial = 0; trial < 200; ++trial) {
        std::string s;
        const int n = len(rng);
        for (int i = 0; i < n; ++i) s.push_back(static_cast<char>(ch(rng)));
        const auto bits = text_to_bits(s);
        CHECK(bits.size() == 8 * s.size());
        CHECK(bits_to_text(bits) == s);
        CHECK(text_to_bits(bits_to_text(bits)) == bits);
    }
}

TEST_CASE("encode degenerate messages") {
    const EncodeConfig cfg{kHalfThree, 5, 4.0 * 243.0, 4.0};
    const auto ones = encode(BitStream::filled(2, true), cfg);
    const auto w = sample([&](double t) { return eval_weierstrass(kHalfThree, 5, t); }, cfg.rate, 0.0, cfg.duration);
    CHECK(ones.t0 == 0.0);
    CHECK(ones.samples == w.samples);

    const auto zeros = encode(BitStream::filled(2, false), cfg);
    for (double v : zeros.samples) CHECK(v == 0.0);
}

TEST_CASE("encode samples match eval_fractal_message and respect the bound") {
    const auto& s = hi_signal();
    const auto msg = BitStream::parse(kHi);
    CHECK(s.size() == 279936);
    const double bound = amplitude_bound(kHalfThree, 6) * (1 + 1e-12);
    for (std::size_t k = 0; k < s.size(); k += 97) {
        CHECK(s.samples[k] == eval_fractal_message(msg, kHalfThree, 6, static_cast<double>(k) / 5832.0));
    }
    for (double v : s.samples) REQUIRE(std::abs(v) <= bound);
}

TEST_CASE("encode refuses sub-Nyquist rates") {
    const EncodeConfig cfg{kHalfThree, 6, 1000.0, 48.0};
    try {
        encode(BitStream::parse(kHi), cfg);
        FAIL("expected InfeasibleError");
    } catch (const InfeasibleError& e) {
        CHECK(std::string(e.what()).find("1458") != std::string::npos);
    }
    CHECK_NOTHROW(encode(BitStream::parse("1"), {kHalfThree, 2, 18.0, 2.0}));
    CHECK_THROWS_AS(encode(BitStream::parse("1"), {kHalfThree, 2, 18.0, 0.0}), ParameterError);
}

TEST_CASE("decode_component of a zero signal") {
    const SampledSignal zero(5832.0, 0.0, std::vector<double>(5832 * 48, 0.0));
    for (unsigned m = 0; m <= 4; ++m) {
        const auto r = decode_component(zero, kHalfThree, m, 24);
        CHECK(r.bits == BitStream::filled(24, false));
        for (double s : r.scores) CHECK(s == 0.0);
    }
}

TEST_CASE("decode_component recovers 'hi!' on component 0") {
    const auto r = decode_component(hi_signal(), kHalfThree, 0, 24);
    CHECK(r.bits.to_string() == kHi);
    CHECK(r.repetitions == 1);
    CHECK(r.threshold == 0.25);
}

TEST_CASE("decode_component scores agree with direct numerical integration") {
    // score_i = (1/2) * integral over [2i, 2i+2) of F(t) cos(pi t) dt for
    // m = 0, evaluated with the brute-force oracle and composite Simpson.
    const auto r = decode_component(hi_signal(), kHalfThree, 0, 24);
    constexpr int kIntervals = 8192;
    for (int i = 0; i < 24; ++i) {
        const double lo = 2.0 * i;
        const double h = 2.0 / kIntervals;
        double acc = 0.0;
        for (int j = 0; j <= kIntervals; ++j) {
            const double t = lo + j * h;
            const double f = oracle::fractal_message(kHi, 0.5, 3.0, 6, t) * std::cos(std::numbers::pi * t);
            const double w = (j == 0 || j == kIntervals) ? 1.0 : (j % 2 ? 4.0 : 2.0);
            acc += w * f;
        }
        const double integral = acc * h / 3.0;
        CHECK(r.scores[i] == doctest::Approx(integral / 2.0).scale(1.0).epsilon(2e-3));
    }
}

TEST_CASE("decode_component on the Weierstrass function reads all ones") {
    const auto w = sample([](double t) { return eval_weierstrass(kHalfThree, 6, t); }, 5832.0, 0.0, 48.0);
    const auto r = decode_component(w, kHalfThree, 2, 24);
    CHECK(r.bits == BitStream::filled(24, true));
    for (double s : r.scores) CHECK(s == doctest::Approx(0.125).epsilon(0.5));
}

TEST_CASE("decode_component infeasibility") {
    const auto& s = hi_signal();
    CHECK_THROWS_AS(decode_component(SampledSignal(s.sample_rate, 0.5, s.samples), kHalfThree, 0, 24),
                    InfeasibleError);
    // rate 5832 does not exceed 2 * 3^8
    CHECK_THROWS_AS(decode_component(s, kHalfThree, 8, 24), InfeasibleError);
    const SampledSignal shortened(5832.0, 0.0, std::vector<double>(s.samples.begin(), s.samples.begin() + 5832 * 40));
    CHECK_THROWS_AS(decode_component(shortened, kHalfThree, 0, 24), InfeasibleError);
    CHECK_NOTHROW(decode_component(shortened, kHalfThree, 1, 24));
    CHECK(component_infeasibility(s, kHalfThree, 0, 24).empty());
    CHECK(component_infeasibility(s, kHalfThree, 8, 24).find("sample rate") != std::string::npos);
}

TEST_CASE("decode recovers 'hi!' by consensus over all components") {
    const auto r = decode(hi_signal(), kHalfThree, 6, 24);
    CHECK(r.consensus.to_string() == kHi);
    CHECK(r.components_used == std::vector<unsigned>{0, 1, 2, 3, 4, 5, 6});
    for (const auto& [m, comp] : r.per_component) {
        CHECK(comp.bits.size() == 24);
        CHECK(comp.bits.to_string() == kHi);
    }
}

TEST_CASE("decode edge cases") {
    const SampledSignal zero(100.0, 0.0, std::vector<double>(4800, 0.0));
    CHECK(decode(zero, kHalfThree, 3, 24).consensus == BitStream::filled(24, false));

    const auto one = encode(BitStream::parse("1"), {kHalfThree, 4, 4.0 * 81.0, 2.0});
    const auto r = decode(one, kHalfThree, 4, 1);
    CHECK(r.consensus.to_string() == "1");

    // Only components whose preconditions hold are used.
    const auto partial = decode(hi_signal(), kHalfThree, 9, 24);
    CHECK(partial.components_used.back() == 7);

    const SampledSignal unsynced(5832.0, 1.0, hi_signal().samples);
    CHECK_THROWS_AS(decode(unsynced, kHalfThree, 6, 24), InfeasibleError);
}

TEST_CASE("decode ties go to the lowest component") {
    // Component 0 carries a 1 and component 1 carries nothing.
    const auto c0 = sample([](double t) { return std::cos(std::numbers::pi * t); }, 64.0, 0.0, 2.0);
    CHECK(decode(c0, kHalfThree, 1, 1).consensus.to_string() == "1");
    const auto c1 = sample([](double t) { return 0.5 * std::cos(3.0 * std::numbers::pi * t); }, 64.0, 0.0, 2.0);
    const auto r = decode(c1, kHalfThree, 1, 1);
    CHECK(r.per_component.at(1).bits.to_string() == "1");
    CHECK(r.consensus.to_string() == "0");
}

TEST_CASE("round trip over random messages, b in {3, 5, 7}") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> len(1, 64);
    struct Case {
        double b;
        unsigned max_m;
    };
    // Larger b get fewer components to keep the sample count bounded.
    for (const Case c : {Case{3.0, 6}, Case{5.0, 4}, Case{7.0, 3}}) {
        const FractalParams params(0.5, c.b);
        std::uniform_int_distribution<unsigned> m_dist(0, c.max_m);
        for (int trial = 0; trial < 8; ++trial) {
            const auto msg = BitStream::parse(oracle::random_bits(rng, len(rng)));
            const unsigned M = trial == 0 ? c.max_m : m_dist(rng);
            const double L = static_cast<double>(msg.size());
            const auto s = encode(msg, {params, M, 4.0 * params.frequency_scale(M), 2.0 * L});
            const auto r = decode(s, params, M, msg.size());
            CAPTURE(c.b);
            CAPTURE(M);
            CAPTURE(msg.to_string());
            CHECK(r.consensus == msg);
        }
    }
}

TEST_CASE("carrier orthogonality for integer b") {
    for (double b : {3.0, 5.0, 7.0}) {
        for (int m = 0; m <= 2; ++m) {
            for (int dm = 1; dm <= 4; ++dm) {
                const double period = 2.0 / std::pow(b, m);
                const auto n = static_cast<std::size_t>(1024 * std::pow(b, dm));
                const double h = period / static_cast<double>(n);
                double acc = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double t = static_cast<double>(k) * h;
                    acc += std::cos(std::pow(b, m + dm) * std::numbers::pi * t) *
                           std::cos(std::pow(b, m) * std::numbers::pi * t);
                }
                CHECK(std::abs(acc * h) < 1e-6);
            }
        }
    }
}

namespace {

std::vector<BitStream> margin_messages() {
    std::mt19937_64 rng(99);
    std::vector<BitStream> msgs{BitStream::parse(kHi)};
    for (int trial = 0; trial < 5; ++trial) msgs.push_back(BitStream::parse(oracle::random_bits(rng, 24)));
    return msgs;
}

} // namespace

TEST_CASE("noiseless scores fall on the correct side of the threshold") {
    for (const auto& msg : margin_messages()) {
        const auto s = encode(msg, {kHalfThree, 6, 5832.0, 48.0});
        for (unsigned m = 0; m <= 6; ++m) {
            const auto r = decode_component(s, kHalfThree, m, 24);
            for (std::size_t i = 0; i < 24; ++i) {
                if (msg[i]) {
                    CHECK(r.scores[i] >= r.threshold);
                } else {
                    CHECK(r.scores[i] < r.threshold);
                }
            }
        }
    }
    // 'hi!' keeps the 1-bit half of the 50% margin on m <= M - 2.
    const auto r = decode_component(hi_signal(), kHalfThree, 4, 24);
    for (std::size_t i = 0; i < 24; ++i) {
        if (kHi[i] == '1') CHECK(r.scores[i] >= 1.5 * r.threshold);
    }
}

// The 50% margin on both sides does not hold for the window-mean detector:
// component m-1 leaks about +-0.2 a^m into a third of the component-m
// windows, against a threshold of a^m / 4.
TEST_CASE("threshold margin of 50% on both sides for m <= M - 2" * doctest::should_fail()) {
    for (const auto& msg : margin_messages()) {
        const auto s = encode(msg, {kHalfThree, 6, 5832.0, 48.0});
        for (unsigned m = 0; m <= 4; ++m) {
            const auto r = decode_component(s, kHalfThree, m, 24);
            for (std::size_t i = 0; i < 24; ++i) {
                if (msg[i]) {
                    CHECK(r.scores[i] >= 1.5 * r.threshold);
                } else {
                    CHECK(r.scores[i] < 0.5 * r.threshold);
                }
            }
        }
    }
}

TEST_CASE("detect_time_scale") {
    CHECK(detect_time_scale(hi_signal(), kHalfThree) == doctest::Approx(1.0).epsilon(0.05));
    const auto dilated = time_dilate(hi_signal(), 3.0);
    CHECK(detect_time_scale(dilated, kHalfThree) == doctest::Approx(3.0).epsilon(0.05));
    const auto slowed = time_dilate(hi_signal(), 0.5);
    CHECK(detect_time_scale(slowed, kHalfThree) == doctest::Approx(0.5).epsilon(0.05));
    const SampledSignal zero(100.0, 0.0, std::vector<double>(1000, 0.0));
    CHECK_THROWS_AS(detect_time_scale(zero, kHalfThree), DegenerateInputError);
}
