#pragma once

// Independent reference computations used only by tests. They follow the
// textbook formulas literally (std::pow, Heaviside sums, O(N^2) DFT) and
// share no code with the library's evaluation paths.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace oracle {

inline double heaviside(double x) { return x < 0.0 ? 0.0 : 1.0; }

// Non-negative remainder of x / y.
inline double mod(double x, double y) {
    double r = std::fmod(x, y);
    if (r < 0.0) r += y;
    return r;
}

// Mask as a sum of shifted rectangular pulses, one per bit.
inline double mask(const std::string& msg, double b, int m, double t) {
    const double L = static_cast<double>(msg.size());
    const double bm = std::pow(b, m);
    double sum = 0.0;
    for (std::size_t i = 1; i <= msg.size(); ++i) {
        const double bit = msg[i - 1] == '1' ? 1.0 : 0.0;
        const double r = mod(t - 2.0 * static_cast<double>(i - 1) / bm, 2.0 * L / bm);
        sum += bit * (heaviside(r) - heaviside(r - 2.0 / bm));
    }
    return sum;
}

inline double fractal_message(const std::string& msg, double a, double b, int M, double t) {
    double sum = 0.0;
    for (int m = 0; m <= M; ++m) {
        sum += std::pow(a, m) * mask(msg, b, m, t) * std::cos(std::pow(b, m) * std::numbers::pi * t);
    }
    return sum;
}

inline double weierstrass(double a, double b, int M, double t) {
    double sum = 0.0;
    for (int n = 0; n <= M; ++n) sum += std::pow(a, n) * std::cos(std::pow(b, n) * std::numbers::pi * t);
    return sum;
}

// One-sided |X_k| / N by direct summation.
inline std::vector<double> dft_magnitudes(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<double> mags(n / 2 + 1);
    for (std::size_t k = 0; k < mags.size(); ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            const double phase = -2.0 * std::numbers::pi * static_cast<double>(k * j % n) / static_cast<double>(n);
            acc += x[j] * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        mags[k] = std::abs(acc) / static_cast<double>(n);
    }
    return mags;
}

struct Orbit {
    bool escaped = false;
    std::complex<double> z_e{};
    unsigned iterations = 0;
};

inline Orbit mandelbrot(std::complex<double> c, double radius, unsigned max_iter) {
    std::complex<double> z{0.0, 0.0};
    for (unsigned n = 1; n <= max_iter; ++n) {
        z = z * z + c;
        if (std::abs(z) > radius) return {true, z, n};
    }
    return {false, {}, max_iter};
}

inline std::string random_bits(std::mt19937_64& rng, std::size_t length) {
    std::bernoulli_distribution coin(0.5);
    std::string s;
    for (std::size_t i = 0; i < length; ++i) s.push_back(coin(rng) ? '1' : '0');
    return s;
}

} // namespace oracle
