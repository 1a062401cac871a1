#pragma once

#include <span>
#include <vector>

#include "fractalmsg/types.hpp"

namespace fractalmsg {

// 2 + log_b(a).
double theoretical_dimension(const FractalParams& params);

struct DimensionEstimate {
    double dimension;
    double r_squared;
    std::vector<double> box_sizes;          // 2^-k, strictly decreasing
    std::vector<std::size_t> box_counts;
};

// Box-counting dimension of the sampled graph after mapping it onto the unit
// square. For each epsilon = 2^-k, k in [k_min, k_max], every column counts
// the boxes spanned vertically by the polyline through the samples.
DimensionEstimate box_count_dimension(const SampledSignal& signal, int k_min, int k_max);

struct SpectrumBin {
    double frequency;
    double magnitude;
};

// One-sided DFT magnitudes |X_k| / N at k * rate / N, k in [0, N/2]. A unit
// cosine on a bin frequency gives 0.5 there.
std::vector<SpectrumBin> power_spectrum(const SampledSignal& signal);

// Mean square of the samples recovered from a one-sided spectrum of a signal
// with `sample_count` samples (Parseval under the normalization above).
double spectrum_mean_power(std::span<const SpectrumBin> spectrum, std::size_t sample_count);

// max_t |a F_M(msg, b t) + mask_0(t) cos(pi t) - F_{M+1}(msg, t)|.
double self_similarity_residual(const BitStream& msg, const FractalParams& params, unsigned M,
                                std::span<const double> t_samples);

} // namespace fractalmsg
