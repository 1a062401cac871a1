#include "fractalmsg/codec.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fractalmsg/analysis.hpp"
#include "fractalmsg/errors.hpp"
#include "fractalmsg/weierstrass.hpp"

namespace fractalmsg {
namespace {

// Tolerance when comparing a duration against a whole number of message
// repetitions, so that T = 2L/b^m computed in floating point still counts.
constexpr double kRepetitionSlack = 1e-9;

std::size_t complete_repetitions(const SampledSignal& signal, double scale, std::size_t L) {
    const double reps = signal.duration() * scale / (2.0 * static_cast<double>(L));
    return static_cast<std::size_t>(std::floor(reps + kRepetitionSlack));
}

} // namespace

BitStream text_to_bits(std::string_view text) {
    if (text.empty()) throw EncodingError("message text is empty");
    std::vector<std::uint8_t> bits;
    bits.reserve(8 * text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        const auto code = static_cast<unsigned char>(text[i]);
        if (code > 127) {
            throw EncodingError("character at index " + std::to_string(i) + " is not 7-bit ASCII");
        }
        for (int bit = 7; bit >= 0; --bit) bits.push_back((code >> bit) & 1U);
    }
    return BitStream(std::move(bits));
}

std::string bits_to_text(const BitStream& bits) {
    if (bits.size() % 8 != 0) {
        throw EncodingError("bit count " + std::to_string(bits.size()) + " is not a multiple of 8");
    }
    std::string text;
    text.reserve(bits.size() / 8);
    for (std::size_t byte = 0; byte < bits.size() / 8; ++byte) {
        unsigned code = 0;
        for (std::size_t j = 0; j < 8; ++j) code = (code << 1) | (bits[8 * byte + j] ? 1U : 0U);
        if (code >= 128) {
            throw EncodingError("byte " + std::to_string(byte) + " is outside 7-bit ASCII");
        }
        text.push_back(static_cast<char>(code));
    }
    return text;
}

SampledSignal encode(const BitStream& bits, const EncodeConfig& cfg) {
    if (!std::isfinite(cfg.rate) || cfg.rate < cfg.minimum_rate()) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "sample rate " << cfg.rate << " is below the minimum 2*b^M = " << cfg.minimum_rate();
        throw InfeasibleError(msg.str());
    }
    if (!(cfg.duration > 0.0) || !std::isfinite(cfg.duration)) {
        throw ParameterError("duration must be positive");
    }
    return sample([&](double t) { return eval_fractal_message(bits, cfg.params, cfg.M, t); }, cfg.rate, 0.0,
                  cfg.duration);
}

std::string component_infeasibility(const SampledSignal& signal, const FractalParams& params, unsigned m,
                                    std::size_t L) {
    std::ostringstream why;
    why.precision(17);
    const double scale = params.frequency_scale(m);
    if (L == 0) return "bit count must be positive";
    if (signal.t0 != 0.0) {
        why << "signal is not synchronized: t0 = " << signal.t0 << ", expected 0";
    } else if (!(signal.sample_rate > 2.0 * scale)) {
        why << "component " << m << ": sample rate " << signal.sample_rate << " does not exceed 2*b^m = "
            << 2.0 * scale;
    } else if (complete_repetitions(signal, scale, L) == 0) {
        why << "component " << m << ": duration " << signal.duration()
            << " is shorter than one message repetition 2L/b^m = " << 2.0 * static_cast<double>(L) / scale;
    }
    return why.str();
}

ComponentDecode decode_component(const SampledSignal& signal, const FractalParams& params, unsigned m,
                                 std::size_t L) {
    if (auto why = component_infeasibility(signal, params, m, L); !why.empty()) throw InfeasibleError(why);

    const double scale = params.frequency_scale(m);
    const std::size_t reps = complete_repetitions(signal, scale, L);
    const std::size_t windows = reps * L;

    std::vector<double> acc(L, 0.0);
    for (std::size_t k = 0; k < signal.size(); ++k) {
        const double x = scale * (static_cast<double>(k) / signal.sample_rate);
        const double w = std::floor(x / 2.0);
        if (w >= static_cast<double>(windows)) break;
        const auto window = static_cast<std::size_t>(w);
        acc[window % L] += signal.samples[k] * std::cos(std::numbers::pi * std::fmod(x, 2.0));
    }

    const double norm = scale / 2.0 / signal.sample_rate / static_cast<double>(reps);
    const double threshold = params.amplitude(m) / 4.0;
    std::vector<double> scores(L);
    std::vector<std::uint8_t> bits(L);
    for (std::size_t i = 0; i < L; ++i) {
        scores[i] = acc[i] * norm;
        bits[i] = scores[i] >= threshold ? 1 : 0;
    }
    return ComponentDecode{BitStream(std::move(bits)), std::move(scores), threshold,
                           static_cast<unsigned>(reps)};
}

DecodeResult decode(const SampledSignal& signal, const FractalParams& params, unsigned M, std::size_t L) {
    std::map<unsigned, ComponentDecode> per_component;
    std::vector<unsigned> used;
    std::string first_reason;
    for (unsigned m = 0; m <= M; ++m) {
        if (auto why = component_infeasibility(signal, params, m, L); !why.empty()) {
            if (first_reason.empty()) first_reason = why;
            continue;
        }
        per_component.emplace(m, decode_component(signal, params, m, L));
        used.push_back(m);
    }
    if (used.empty()) throw InfeasibleError("no decodable component: " + first_reason);

    const ComponentDecode& tie_breaker = per_component.at(used.front());
    std::vector<std::uint8_t> consensus(L);
    for (std::size_t i = 0; i < L; ++i) {
        std::size_t ones = 0;
        for (unsigned m : used) ones += per_component.at(m).bits[i] ? 1 : 0;
        const std::size_t zeros = used.size() - ones;
        if (ones != zeros) {
            consensus[i] = ones > zeros ? 1 : 0;
        } else {
            consensus[i] = tie_breaker.bits[i] ? 1 : 0;
        }
    }
    return DecodeResult{std::move(per_component), BitStream(std::move(consensus)), std::move(used)};
}

double detect_time_scale(const SampledSignal& signal, const FractalParams& params) {
    if (signal.size() < 4) throw DegenerateInputError("too few samples to detect a time scale");
    const auto spectrum = power_spectrum(signal);

    double mean = 0.0;
    std::size_t peak = 1;
    for (std::size_t k = 1; k < spectrum.size(); ++k) {
        mean += spectrum[k].magnitude;
        if (spectrum[k].magnitude > spectrum[peak].magnitude) peak = k;
    }
    mean /= static_cast<double>(spectrum.size() - 1);
    const double floor = 4.0 * mean;
    if (!(spectrum[peak].magnitude > 1e-12) || !(spectrum[peak].magnitude > floor)) {
        throw DegenerateInputError("no spectral line stands above the noise floor");
    }

    double dilation = spectrum[peak].frequency / params.component_frequency(0);

    // Higher rungs of the ladder pin the scale with finer relative
    // resolution. Use the highest one that still stands out.
    const double bin = signal.sample_rate / static_cast<double>(signal.size());
    const double nyquist = signal.sample_rate / 2.0;
    const double coarse = dilation;
    for (unsigned m = 1; m < 64; ++m) {
        const double expected = coarse * params.component_frequency(m);
        const double half_width = std::max(0.02 * expected, 1.5 * bin);
        if (expected + half_width >= nyquist) break;
        const auto lo = static_cast<std::size_t>(std::ceil((expected - half_width) / bin));
        const auto hi = std::min(static_cast<std::size_t>(std::floor((expected + half_width) / bin)),
                                 spectrum.size() - 1);
        if (lo > hi) break;
        std::size_t best = lo;
        for (std::size_t k = lo; k <= hi; ++k) {
            if (spectrum[k].magnitude > spectrum[best].magnitude) best = k;
        }
        if (!(spectrum[best].magnitude > floor)) break;
        dilation = spectrum[best].frequency / params.component_frequency(m);
    }
    return dilation;
}

} // namespace fractalmsg
