#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fractalmsg/types.hpp"

namespace fractalmsg {

// 8 bits per character, most significant bit first. Rejects empty text and
// characters outside 7-bit ASCII.
BitStream text_to_bits(std::string_view text);
std::string bits_to_text(const BitStream& bits);

struct EncodeConfig {
    FractalParams params;
    unsigned M;
    double rate;      // samples per unit time
    double duration;  // T

    // Smallest rate synthesis accepts: 2 * b^M.
    double minimum_rate() const { return 2.0 * params.frequency_scale(M); }
};

// Samples F_M(bits, k / rate) for k in [0, ceil(T * rate)). Throws
// InfeasibleError when rate < 2 b^M.
SampledSignal encode(const BitStream& bits, const EncodeConfig& cfg);

struct ComponentDecode {
    BitStream bits;
    // Mean of sample * carrier over each bit window, averaged over the
    // complete message repetitions. Ideal value for a 1-bit is a^m / 2.
    std::vector<double> scores;
    double threshold;
    unsigned repetitions;
};

// Empty string when component m can be decoded from the signal, otherwise
// the reason it cannot.
std::string component_infeasibility(const SampledSignal& signal, const FractalParams& params, unsigned m,
                                    std::size_t L);

// Matched-filter detection of the L bits carried by component m. Assumes the
// signal is synchronized (t0 = 0).
ComponentDecode decode_component(const SampledSignal& signal, const FractalParams& params, unsigned m,
                                 std::size_t L);

struct DecodeResult {
    std::map<unsigned, ComponentDecode> per_component;
    BitStream consensus;
    std::vector<unsigned> components_used;
};

// Decodes every feasible component in [0, M] and takes a per-bit majority.
// Ties go to the lowest component used.
DecodeResult decode(const SampledSignal& signal, const FractalParams& params, unsigned M, std::size_t L);

// Estimates the time dilation d of a received signal from the frequency of
// its strongest spectral line, taken to be component 0 (d * b^0 / 2).
// Throws DegenerateInputError when no line stands out.
double detect_time_scale(const SampledSignal& signal, const FractalParams& params);

} // namespace fractalmsg
