#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "fractalmsg/mandelbrot.hpp"
#include "fractalmsg/types.hpp"

namespace fractalmsg::io {

// Writes go to a sibling temporary file that is renamed over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);
std::string read_file(const std::filesystem::path& path);

// "t,value" header, one sample per line, 17 significant digits.
std::string format_csv(const SampledSignal& signal);
SampledSignal parse_csv(std::string_view text);

// Little-endian: "FMSG", u32 version, f64 rate, f64 t0, u64 count, f64[count].
std::string format_raw(const SampledSignal& signal);
SampledSignal parse_raw(std::string_view bytes);

struct WavOptions {
    double seconds_per_time_unit = 1e-3;
    double peak = 0.9;
};

// Mono IEEE float32 WAV, peak-normalized.
std::string format_wav(const SampledSignal& signal, const WavOptions& options = {});

// Binary (P5) or ASCII (P2) graymap using the 0/128/255 palette.
std::string format_pgm(const Bitplane& plane, bool binary = true);

// SVG polyline of the signal, reduced to at most max_points vertices by
// keeping per-bucket extremes.
std::string format_svg(const SampledSignal& signal, std::size_t max_points = 4000);

// '0'/'1' characters followed by a newline.
std::string format_bits(const BitStream& bits);

} // namespace fractalmsg::io
