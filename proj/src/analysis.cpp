#include "fractalmsg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fft.hpp"
#include "fractalmsg/errors.hpp"
#include "fractalmsg/weierstrass.hpp"

namespace fractalmsg {

double theoretical_dimension(const FractalParams& params) {
    return 2.0 + std::log(params.a()) / std::log(params.b());
}

namespace {

std::size_t count_boxes(std::span<const double> y, std::size_t columns) {
    const std::size_t n = y.size();
    const double cols = static_cast<double>(columns);
    std::vector<double> lo(columns, std::numeric_limits<double>::infinity());
    std::vector<double> hi(columns, -std::numeric_limits<double>::infinity());

    auto touch = [&](std::size_t col, double v) {
        lo[col] = std::min(lo[col], v);
        hi[col] = std::max(hi[col], v);
    };

    const double last = static_cast<double>(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = static_cast<double>(j) / last;
        touch(std::min(static_cast<std::size_t>(x * cols), columns - 1), y[j]);
    }
    // The polyline is linear between samples, so within a column its
    // extremes sit at samples or at the column edges.
    for (std::size_t c = 1; c < columns; ++c) {
        const double pos = static_cast<double>(c) / cols * last;
        const auto i = std::min(static_cast<std::size_t>(pos), n - 2);
        const double frac = pos - static_cast<double>(i);
        const double v = y[i] + frac * (y[i + 1] - y[i]);
        touch(c - 1, v);
        touch(c, v);
    }

    const auto top = static_cast<long long>(columns) - 1;
    std::size_t count = 0;
    for (std::size_t c = 0; c < columns; ++c) {
        const long long first = std::clamp(static_cast<long long>(std::floor(lo[c] * cols)), 0LL, top);
        const long long end = std::clamp(static_cast<long long>(std::ceil(hi[c] * cols)) - 1, first, top);
        count += static_cast<std::size_t>(end - first + 1);
    }
    return count;
}

} // namespace

DimensionEstimate box_count_dimension(const SampledSignal& signal, int k_min, int k_max) {
    if (k_min < 2) throw ParameterError("k_min must be at least 2");
    if (k_max <= k_min) throw ParameterError("k_max must exceed k_min");
    if (k_max > 28) throw ParameterError("k_max too large");
    const std::size_t needed = std::size_t{1} << (k_max + 2);
    if (signal.size() < needed) {
        throw ParameterError("box counting up to k = " + std::to_string(k_max) + " needs at least " +
                             std::to_string(needed) + " samples, got " + std::to_string(signal.size()));
    }

    const auto [min_it, max_it] = std::minmax_element(signal.samples.begin(), signal.samples.end());
    const double span = *max_it - *min_it;
    if (!(span > 0.0)) throw DegenerateInputError("signal is constant; its graph has no vertical extent");

    std::vector<double> y(signal.size());
    for (std::size_t j = 0; j < y.size(); ++j) y[j] = (signal.samples[j] - *min_it) / span;

    DimensionEstimate est{};
    std::vector<double> xs;
    std::vector<double> ys;
    for (int k = k_min; k <= k_max; ++k) {
        const std::size_t columns = std::size_t{1} << k;
        const std::size_t count = count_boxes(y, columns);
        est.box_sizes.push_back(1.0 / static_cast<double>(columns));
        est.box_counts.push_back(count);
        xs.push_back(static_cast<double>(k) * std::log(2.0));
        ys.push_back(std::log(static_cast<double>(count)));
    }

    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    est.dimension = sxy / sxx;
    est.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return est;
}

std::vector<SpectrumBin> power_spectrum(const SampledSignal& signal) {
    if (signal.size() < 2) throw ParameterError("spectrum needs at least 2 samples");
    const auto bins = detail::real_dft(signal.samples);
    const double n = static_cast<double>(signal.size());
    std::vector<SpectrumBin> out(bins.size());
    for (std::size_t k = 0; k < bins.size(); ++k) {
        out[k] = {static_cast<double>(k) * signal.sample_rate / n, std::abs(bins[k]) / n};
    }
    return out;
}

double spectrum_mean_power(std::span<const SpectrumBin> spectrum, std::size_t sample_count) {
    double power = 0.0;
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        const double m2 = spectrum[k].magnitude * spectrum[k].magnitude;
        const bool unpaired = k == 0 || (sample_count % 2 == 0 && 2 * k == sample_count);
        power += unpaired ? m2 : 2.0 * m2;
    }
    return power;
}

double self_similarity_residual(const BitStream& msg, const FractalParams& params, unsigned M,
                                std::span<const double> t_samples) {
    double worst = 0.0;
    for (double t : t_samples) {
        const double lhs = params.a() * eval_fractal_message(msg, params, M, params.b() * t) +
                           eval_masked_component(msg, params, 0, t);
        const double rhs = eval_fractal_message(msg, params, M + 1, t);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

} // namespace fractalmsg
