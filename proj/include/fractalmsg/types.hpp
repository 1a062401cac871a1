#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fractalmsg {

// Which constraint set the (a, b) pair is validated against.
enum class Constraint {
    Hardy,        // 0 < a < 1 < b, a*b >= 1
    Weierstrass,  // additionally b odd integer, a*b > 1 + 3*pi/2
};

// Amplitude ratio a and frequency ratio b of the Weierstrass family.
// Always valid once constructed.
class FractalParams {
public:
    FractalParams(double a, double b, Constraint constraint = Constraint::Hardy);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    Constraint constraint() const noexcept { return constraint_; }

    // a^m and b^m by repeated multiplication, so integer b stays exact.
    double amplitude(unsigned m) const noexcept;
    double frequency_scale(unsigned m) const noexcept;

    // Carrier frequency of component m in cycles per unit time: b^m / 2.
    double component_frequency(unsigned m) const noexcept { return frequency_scale(m) / 2.0; }

    bool integer_b() const noexcept;

private:
    double a_;
    double b_;
    Constraint constraint_;
};

// Ordered, non-empty sequence of bits.
class BitStream {
public:
    explicit BitStream(std::vector<std::uint8_t> bits);
    // Parses a string of '0'/'1' characters.
    static BitStream parse(std::string_view text);
    static BitStream filled(std::size_t length, bool value);

    std::size_t size() const noexcept { return bits_.size(); }
    bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }
    std::string to_string() const;

    BitStream complement() const;

    friend bool operator==(const BitStream&, const BitStream&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

// Uniformly sampled real signal: sample k sits at t0 + k / sample_rate.
struct SampledSignal {
    SampledSignal(double sample_rate, double t0, std::vector<double> samples);

    double sample_rate;
    double t0;
    std::vector<double> samples;

    std::size_t size() const noexcept { return samples.size(); }
    double time_at(std::size_t k) const noexcept { return t0 + static_cast<double>(k) / sample_rate; }
    // Span covered by the samples, N / rate.
    double duration() const noexcept { return static_cast<double>(samples.size()) / sample_rate; }
};

} // namespace fractalmsg
