#include "fractalmsg/types.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fractalmsg/errors.hpp"

namespace fractalmsg {

FractalParams::FractalParams(double a, double b, Constraint constraint)
    : a_(a), b_(b), constraint_(constraint) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw ParameterError("a and b must be finite");
    }
    if (!(a > 0.0 && a < 1.0)) {
        std::ostringstream msg;
        msg << "a must satisfy 0 < a < 1, got " << a;
        throw ParameterError(msg.str());
    }
    if (!(b > 1.0)) {
        std::ostringstream msg;
        msg << "b must satisfy b > 1, got " << b;
        throw ParameterError(msg.str());
    }
    if (constraint == Constraint::Hardy) {
        if (!(a * b >= 1.0)) {
            std::ostringstream msg;
            msg << "Hardy constraint ab >= 1 violated: a*b = " << a * b;
            throw ParameterError(msg.str());
        }
    } else {
        if (!integer_b() || std::fmod(b, 2.0) != 1.0) {
            throw ParameterError("Weierstrass constraint requires b to be an odd integer");
        }
        if (!(a * b > 1.0 + 1.5 * std::numbers::pi)) {
            std::ostringstream msg;
            msg << "Weierstrass constraint ab > 1 + 3pi/2 violated: a*b = " << a * b;
            throw ParameterError(msg.str());
        }
    }
}

double FractalParams::amplitude(unsigned m) const noexcept {
    double v = 1.0;
    for (unsigned i = 0; i < m; ++i) v *= a_;
    return v;
}

double FractalParams::frequency_scale(unsigned m) const noexcept {
    double v = 1.0;
    for (unsigned i = 0; i < m; ++i) v *= b_;
    return v;
}

bool FractalParams::integer_b() const noexcept { return std::floor(b_) == b_; }

BitStream::BitStream(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    if (bits_.empty()) throw EncodingError("bit stream must hold at least one bit");
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i] > 1) {
            throw EncodingError("bit " + std::to_string(i) + " is neither 0 nor 1");
        }
    }
}

BitStream BitStream::parse(std::string_view text) {
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) {
        text.remove_suffix(1);
    }
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '0') {
            bits.push_back(0);
        } else if (text[i] == '1') {
            bits.push_back(1);
        } else {
            throw EncodingError("character " + std::to_string(i) + " of bit string is not '0' or '1'");
        }
    }
    return BitStream(std::move(bits));
}

BitStream BitStream::filled(std::size_t length, bool value) {
    return BitStream(std::vector<std::uint8_t>(length, value ? 1 : 0));
}

std::string BitStream::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto bit : bits_) s.push_back(bit ? '1' : '0');
    return s;
}

BitStream BitStream::complement() const {
    std::vector<std::uint8_t> flipped(bits_.size());
    for (std::size_t i = 0; i < bits_.size(); ++i) flipped[i] = bits_[i] ? 0 : 1;
    return BitStream(std::move(flipped));
}

SampledSignal::SampledSignal(double rate, double start, std::vector<double> values)
    : sample_rate(rate), t0(start), samples(std::move(values)) {
    if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
        throw ParameterError("sample rate must be positive and finite");
    }
    if (!std::isfinite(t0)) throw ParameterError("start time must be finite");
    if (samples.empty()) throw ParameterError("signal must hold at least one sample");
}

} // namespace fractalmsg
