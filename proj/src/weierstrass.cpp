#include "fractalmsg/weierstrass.hpp"

#include <cmath>
#include <numbers>

#include "fractalmsg/errors.hpp"

namespace fractalmsg {
namespace {

// cos(pi x) with x reduced modulo 2 first; the reduction is exact.
double cos_pi(double x) { return std::cos(std::numbers::pi * std::fmod(x, 2.0)); }

// Index of the bit window that contains scaled time x = b^m t, i.e.
// floor(mod(t, 2L/b^m) * b^m / 2).
std::size_t bit_index(double scaled_t, std::size_t L) {
    const double window = std::floor(scaled_t / 2.0);
    double idx = std::fmod(window, static_cast<double>(L));
    if (idx < 0.0) idx += static_cast<double>(L);
    auto i = static_cast<std::size_t>(idx);
    return i < L ? i : L - 1;
}

} // namespace

double eval_weierstrass(const FractalParams& params, unsigned M, double t) {
    double sum = 0.0;
    double amp = 1.0;
    double scale = 1.0;
    for (unsigned n = 0; n <= M; ++n) {
        sum += amp * cos_pi(scale * t);
        amp *= params.a();
        scale *= params.b();
    }
    return sum;
}

bool eval_mask(const BitStream& msg, const FractalParams& params, unsigned m, double t) {
    return msg[bit_index(params.frequency_scale(m) * t, msg.size())];
}

double eval_masked_component(const BitStream& msg, const FractalParams& params, unsigned m, double t) {
    const double x = params.frequency_scale(m) * t;
    const double mask = msg[bit_index(x, msg.size())] ? 1.0 : 0.0;
    return params.amplitude(m) * mask * cos_pi(x);
}

double eval_fractal_message(const BitStream& msg, const FractalParams& params, unsigned M, double t) {
    // Same term order and association as eval_weierstrass, so an all-ones
    // message reproduces it bit for bit.
    double sum = 0.0;
    double amp = 1.0;
    double scale = 1.0;
    for (unsigned m = 0; m <= M; ++m) {
        const double x = scale * t;
        if (msg[bit_index(x, msg.size())]) sum += amp * cos_pi(x);
        amp *= params.a();
        scale *= params.b();
    }
    return sum;
}

double amplitude_bound(const FractalParams& params, unsigned M) {
    return (1.0 - params.amplitude(M + 1)) / (1.0 - params.a());
}

SampledSignal sample(const Evaluator& f, double rate, double t_start, double t_end) {
    if (!(rate > 0.0) || !std::isfinite(rate)) throw ParameterError("sample rate must be positive");
    if (!(t_end > t_start)) throw ParameterError("sampling interval is empty");
    // Shave a relative epsilon so that products like 0.3 * 10 do not round
    // up to an extra sample.
    const double span = (t_end - t_start) * rate;
    const auto n = static_cast<std::size_t>(std::ceil(span * (1.0 - 1e-12)));
    std::vector<double> values(n == 0 ? 1 : n);
    for (std::size_t k = 0; k < values.size(); ++k) {
        values[k] = f(t_start + static_cast<double>(k) / rate);
    }
    return SampledSignal(rate, t_start, std::move(values));
}

} // namespace fractalmsg
