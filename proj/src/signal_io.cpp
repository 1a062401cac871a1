#include "fractalmsg/signal_io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "fractalmsg/errors.hpp"

namespace fractalmsg::io {
namespace {

void put_le(std::string& out, std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t get_le(std::string_view in, std::size_t offset, int bytes) {
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) {
        v |= std::uint64_t{static_cast<unsigned char>(in[offset + i])} << (8 * i);
    }
    return v;
}

void put_f64(std::string& out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v), 8); }
double get_f64(std::string_view in, std::size_t offset) { return std::bit_cast<double>(get_le(in, offset, 8)); }

double parse_double(std::string_view field, std::size_t line) {
    while (!field.empty() && (field.front() == ' ' || field.front() == '+')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\r')) field.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw IoError("line " + std::to_string(line) + ": cannot parse number '" + std::string(field) + "'");
    }
    return v;
}

void append_number(std::string& out, double v) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
    out.append(buf, static_cast<std::size_t>(len));
}

constexpr char kRawMagic[4] = {'F', 'M', 'S', 'G'};
constexpr std::size_t kRawHeader = 4 + 4 + 8 + 8 + 8;

} // namespace

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
        f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        f.flush();
        if (!f) throw IoError("failed writing " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move output into place at " + path.string());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << f.rdbuf();
    if (f.bad()) throw IoError("failed reading " + path.string());
    return buf.str();
}

std::string format_csv(const SampledSignal& signal) {
    std::string out = "t,value\n";
    out.reserve(out.size() + signal.size() * 48);
    for (std::size_t k = 0; k < signal.size(); ++k) {
        append_number(out, signal.time_at(k));
        out.push_back(',');
        append_number(out, signal.samples[k]);
        out.push_back('\n');
    }
    return out;
}

SampledSignal parse_csv(std::string_view text) {
    std::vector<double> times;
    std::vector<double> values;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != "t,value") throw IoError("CSV signal must start with header 't,value'");
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string_view::npos) {
            throw IoError("line " + std::to_string(line_no) + ": expected 't,value'");
        }
        times.push_back(parse_double(line.substr(0, comma), line_no));
        values.push_back(parse_double(line.substr(comma + 1), line_no));
    }
    if (!header_seen) throw IoError("CSV signal is empty");
    if (values.size() < 2) throw IoError("CSV signal needs at least 2 samples to fix its rate");
    const double span = times.back() - times.front();
    if (!(span > 0.0)) throw IoError("CSV time column is not increasing");
    const double rate = static_cast<double>(values.size() - 1) / span;
    return SampledSignal(rate, times.front(), std::move(values));
}

std::string format_raw(const SampledSignal& signal) {
    std::string out(kRawMagic, sizeof kRawMagic);
    out.reserve(kRawHeader + 8 * signal.size());
    put_le(out, 1, 4);
    put_f64(out, signal.sample_rate);
    put_f64(out, signal.t0);
    put_le(out, signal.size(), 8);
    for (double v : signal.samples) put_f64(out, v);
    return out;
}

SampledSignal parse_raw(std::string_view bytes) {
    if (bytes.size() < kRawHeader || std::memcmp(bytes.data(), kRawMagic, 4) != 0) {
        throw IoError("not a raw signal file");
    }
    if (get_le(bytes, 4, 4) != 1) throw IoError("unsupported raw signal version");
    const double rate = get_f64(bytes, 8);
    const double t0 = get_f64(bytes, 16);
    const std::uint64_t count = get_le(bytes, 24, 8);
    if (bytes.size() != kRawHeader + 8 * count) throw IoError("raw signal length does not match its header");
    std::vector<double> samples(count);
    for (std::uint64_t k = 0; k < count; ++k) samples[k] = get_f64(bytes, kRawHeader + 8 * k);
    try {
        return SampledSignal(rate, t0, std::move(samples));
    } catch (const ParameterError& e) {
        throw IoError(std::string("raw signal header invalid: ") + e.what());
    }
}

std::string format_wav(const SampledSignal& signal, const WavOptions& options) {
    if (!(options.seconds_per_time_unit > 0.0)) throw ParameterError("time unit span must be positive");
    const double hz = std::round(signal.sample_rate / options.seconds_per_time_unit);
    if (!(hz >= 1.0) || hz > 4294967295.0) throw ParameterError("WAV sample rate out of range");
    const auto rate = static_cast<std::uint32_t>(hz);

    double peak = 0.0;
    for (double v : signal.samples) peak = std::max(peak, std::abs(v));
    const double gain = peak > 0.0 ? options.peak / peak : 0.0;

    const auto data_bytes = static_cast<std::uint32_t>(4 * signal.size());
    std::string out;
    out.reserve(44 + data_bytes);
    out += "RIFF";
    put_le(out, 36 + std::uint64_t{data_bytes}, 4);
    out += "WAVEfmt ";
    put_le(out, 16, 4);
    put_le(out, 3, 2);  // IEEE float
    put_le(out, 1, 2);  // mono
    put_le(out, rate, 4);
    put_le(out, std::uint64_t{rate} * 4, 4);
    put_le(out, 4, 2);
    put_le(out, 32, 2);
    out += "data";
    put_le(out, data_bytes, 4);
    for (double v : signal.samples) {
        put_le(out, std::bit_cast<std::uint32_t>(static_cast<float>(v * gain)), 4);
    }
    return out;
}

std::string format_pgm(const Bitplane& plane, bool binary) {
    std::ostringstream head;
    head << (binary ? "P5" : "P2") << '\n'
         << "# channel=" << (plane.channel == PlaneChannel::RealPart ? "re" : "im")
         << " escape_radius=" << plane.escape_radius << " max_iter=" << plane.max_iter
         << " in_set=0(no escape within max_iter) bit0=128 bit1=255\n"
         << plane.width << ' ' << plane.height << "\n255\n";
    std::string out = head.str();
    if (binary) {
        for (auto px : plane.pixels) out.push_back(static_cast<char>(static_cast<std::uint8_t>(px)));
    } else {
        for (unsigned row = 0; row < plane.height; ++row) {
            for (unsigned col = 0; col < plane.width; ++col) {
                if (col) out.push_back(' ');
                out += std::to_string(static_cast<unsigned>(plane.at(col, row)));
            }
            out.push_back('\n');
        }
    }
    return out;
}

std::string format_svg(const SampledSignal& signal, std::size_t max_points) {
    constexpr double kWidth = 1000.0;
    constexpr double kHeight = 300.0;
    const auto [lo_it, hi_it] = std::minmax_element(signal.samples.begin(), signal.samples.end());
    const double lo = *lo_it;
    const double span = *hi_it > lo ? *hi_it - lo : 1.0;
    const double n = static_cast<double>(signal.size());

    std::vector<std::size_t> keep;
    if (signal.size() <= max_points) {
        for (std::size_t k = 0; k < signal.size(); ++k) keep.push_back(k);
    } else {
        const std::size_t buckets = std::max<std::size_t>(max_points / 2, 1);
        const std::size_t per = (signal.size() + buckets - 1) / buckets;
        for (std::size_t start = 0; start < signal.size(); start += per) {
            const auto first = signal.samples.begin() + static_cast<std::ptrdiff_t>(start);
            const auto last = signal.samples.begin() + static_cast<std::ptrdiff_t>(std::min(start + per, signal.size()));
            const auto [mn, mx] = std::minmax_element(first, last);
            auto a = static_cast<std::size_t>(mn - signal.samples.begin());
            auto b = static_cast<std::size_t>(mx - signal.samples.begin());
            if (a > b) std::swap(a, b);
            keep.push_back(a);
            if (b != a) keep.push_back(b);
        }
    }

    std::ostringstream svg;
    svg.precision(6);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"0.5\" points=\"";
    for (std::size_t i = 0; i < keep.size(); ++i) {
        const std::size_t k = keep[i];
        const double x = n > 1 ? static_cast<double>(k) / (n - 1) * kWidth : 0.0;
        const double y = kHeight - (signal.samples[k] - lo) / span * kHeight;
        if (i) svg << ' ';
        svg << x << ',' << y;
    }
    svg << "\"/>\n</svg>\n";
    return svg.str();
}

std::string format_bits(const BitStream& bits) { return bits.to_string() + "\n"; }

} // namespace fractalmsg::io
