#include "fractalmsg/channel.hpp"

#include <cmath>
#include <random>

#include "fft.hpp"
#include "fractalmsg/errors.hpp"

namespace fractalmsg {

NoisySignal add_awgn(const SampledSignal& signal, double snr_db, std::uint64_t seed) {
    if (std::isnan(snr_db)) throw ParameterError("SNR must be a number");
    if (snr_db == std::numeric_limits<double>::infinity()) {
        return {signal, {"none", seed, 0.0}};
    }
    double power = 0.0;
    for (double v : signal.samples) power += v * v;
    power /= static_cast<double>(signal.size());
    if (!(power > 0.0)) throw ParameterError("cannot set a finite SNR on a zero-power signal");

    const double variance = power / std::pow(10.0, snr_db / 10.0);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, std::sqrt(variance));
    SampledSignal out = signal;
    for (double& v : out.samples) v += noise(rng);
    return {std::move(out), {"mt19937_64/normal_distribution", seed, variance}};
}

SampledSignal time_dilate(const SampledSignal& signal, double factor) {
    if (!(factor > 0.0) || !std::isfinite(factor)) throw ParameterError("dilation factor must be positive");
    const std::size_t n = signal.size();
    const double last = static_cast<double>(n - 1);
    const auto count = static_cast<std::size_t>(std::floor(last / factor + 1e-9)) + 1;
    if (count < 2 || n < 2) throw ParameterError("dilated signal would have fewer than 2 samples");

    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double pos = std::min(static_cast<double>(k) * factor, last);
        const auto i = static_cast<std::size_t>(pos);
        if (i >= n - 1) {
            out[k] = signal.samples.back();
            continue;
        }
        const double frac = pos - static_cast<double>(i);
        out[k] = frac == 0.0 ? signal.samples[i]
                             : signal.samples[i] * (1.0 - frac) + signal.samples[i + 1] * frac;
    }
    return SampledSignal(signal.sample_rate, signal.t0 / factor, std::move(out));
}

SampledSignal band_select(const SampledSignal& signal, double f_lo, double f_hi) {
    const double nyquist = signal.sample_rate / 2.0;
    if (!(f_lo >= 0.0) || !(f_lo < f_hi) || !(f_hi <= nyquist)) {
        throw ParameterError("band must satisfy 0 <= f_lo < f_hi <= rate/2");
    }
    auto bins = detail::real_dft(signal.samples);
    const double n = static_cast<double>(signal.size());
    for (std::size_t k = 0; k < bins.size(); ++k) {
        const double f = static_cast<double>(k) * signal.sample_rate / n;
        if (f < f_lo || f > f_hi) bins[k] = 0.0;
    }
    // The c2r transform assumes Hermitian symmetry, so the output is real.
    return SampledSignal(signal.sample_rate, signal.t0, detail::real_inverse_dft(bins, signal.size()));
}

double bit_error_rate(const BitStream& sent, const BitStream& received) {
    if (sent.size() != received.size()) {
        throw ParameterError("bit streams differ in length: " + std::to_string(sent.size()) + " vs " +
                             std::to_string(received.size()));
    }
    std::size_t errors = 0;
    for (std::size_t i = 0; i < sent.size(); ++i) errors += sent[i] != received[i] ? 1 : 0;
    return static_cast<double>(errors) / static_cast<double>(sent.size());
}

void ChannelSpec::validate() const {
    if (std::isnan(snr_db)) throw ParameterError("SNR must be a number");
    if (!(dilation > 0.0) || !std::isfinite(dilation)) throw ParameterError("dilation must be positive");
    if (!(gain > 0.0) || !std::isfinite(gain)) throw ParameterError("gain must be positive");
    if (band && !(band->lo < band->hi)) throw ParameterError("band requires f_lo < f_hi");
}

NoisySignal apply_channel(const SampledSignal& signal, const ChannelSpec& spec) {
    spec.validate();
    SampledSignal s = spec.dilation == 1.0 ? signal : time_dilate(signal, spec.dilation);
    if (spec.band) s = band_select(s, spec.band->lo, spec.band->hi);
    if (spec.gain != 1.0) {
        for (double& v : s.samples) v *= spec.gain;
    }
    return add_awgn(s, spec.snr_db, spec.seed);
}

} // namespace fractalmsg
