#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace fractalmsg {

using ComplexPoint = std::complex<double>;

struct EscapeResult {
    bool escaped;
    ComplexPoint z_e;     // first iterate with |z_n| > R_e; zero when not escaped
    unsigned iterations;  // n of z_e, or max_iter
};

// Iterates z_0 = 0, z_{n+1} = z_n^2 + c until |z_n| > escape_radius strictly
// or max_iter iterations are done. Requires escape_radius >= 2.
EscapeResult escape_iterate(ComplexPoint c, double escape_radius, unsigned max_iter);

struct Region {
    double re_min;
    double im_min;
    double re_max;
    double im_max;
};

enum class PlaneChannel { RealPart, ImagPart };

enum class PixelClass : std::uint8_t { InSet = 0, Bit0 = 128, Bit1 = 255 };

// Row 0 is the top of the region (largest imaginary part).
struct Bitplane {
    unsigned width;
    unsigned height;
    double escape_radius;
    unsigned max_iter;
    PlaneChannel channel;
    std::vector<PixelClass> pixels;  // row-major

    PixelClass at(unsigned col, unsigned row) const { return pixels[std::size_t{row} * width + col]; }
};

// Point sampled by pixel (col, row): the center of its cell.
ComplexPoint pixel_center(const Region& region, unsigned width, unsigned height, unsigned col, unsigned row);

// Bit1 where the point escapes and the selected part of z_e is >= 0, Bit0
// where it escapes with a negative part, InSet where it does not escape
// within max_iter.
Bitplane render_bitplane(const Region& region, unsigned width, unsigned height, double escape_radius,
                         unsigned max_iter, PlaneChannel channel);

} // namespace fractalmsg
