#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "fractalmsg/types.hpp"

namespace fractalmsg {

struct NoiseInfo {
    std::string generator;
    std::uint64_t seed;
    double variance;
};

struct NoisySignal {
    SampledSignal signal;
    NoiseInfo noise;
};

// Adds zero-mean Gaussian noise of variance P / 10^(snr_db / 10), P being
// the mean square of the input. snr_db = +inf returns the input unchanged.
NoisySignal add_awgn(const SampledSignal& signal, double snr_db, std::uint64_t seed);

// Returns s(t * factor) on the same sample grid using linear interpolation;
// the output lasts 1 / factor as long as the input.
SampledSignal time_dilate(const SampledSignal& signal, double factor);

// Zeroes every DFT bin whose frequency lies outside [f_lo, f_hi].
SampledSignal band_select(const SampledSignal& signal, double f_lo, double f_hi);

double bit_error_rate(const BitStream& sent, const BitStream& received);

struct Band {
    double lo;
    double hi;
};

struct ChannelSpec {
    double snr_db = std::numeric_limits<double>::infinity();
    double dilation = 1.0;
    std::optional<Band> band;
    double gain = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
};

// Dilation, then band selection, then gain, then noise.
NoisySignal apply_channel(const SampledSignal& signal, const ChannelSpec& spec);

} // namespace fractalmsg
