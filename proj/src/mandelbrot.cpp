#include "fractalmsg/mandelbrot.hpp"

#include <cmath>

#include "fractalmsg/errors.hpp"

namespace fractalmsg {

EscapeResult escape_iterate(ComplexPoint c, double escape_radius, unsigned max_iter) {
    if (!(escape_radius >= 2.0) || !std::isfinite(escape_radius)) {
        throw ParameterError("escape radius must be finite and at least 2");
    }
    if (max_iter == 0) throw ParameterError("max_iter must be positive");
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw ParameterError("c must be finite");

    const double r2 = escape_radius * escape_radius;
    ComplexPoint z{0.0, 0.0};
    for (unsigned n = 1; n <= max_iter; ++n) {
        // Spelled out so conj(c) yields exactly the conjugate orbit.
        const double re = z.real() * z.real() - z.imag() * z.imag() + c.real();
        const double im = 2.0 * z.real() * z.imag() + c.imag();
        z = {re, im};
        if (re * re + im * im > r2) return {true, z, n};
    }
    return {false, ComplexPoint{0.0, 0.0}, max_iter};
}

ComplexPoint pixel_center(const Region& region, unsigned width, unsigned height, unsigned col, unsigned row) {
    const double dre = (region.re_max - region.re_min) / width;
    const double dim = (region.im_max - region.im_min) / height;
    const double re = region.re_min + (col + 0.5) * dre;
    // Rows in the lower half are measured from im_min so that a region
    // symmetric about the real axis maps mirrored rows to exact conjugates.
    const double im = 2 * row < height ? region.im_max - (row + 0.5) * dim
                                       : region.im_min + (height - 1 - row + 0.5) * dim;
    return {re, im};
}

Bitplane render_bitplane(const Region& region, unsigned width, unsigned height, double escape_radius,
                         unsigned max_iter, PlaneChannel channel) {
    if (width == 0 || height == 0) throw ParameterError("image dimensions must be positive");
    if (!(region.re_max > region.re_min) || !(region.im_max > region.im_min)) {
        throw ParameterError("region is degenerate");
    }
    Bitplane plane{width, height, escape_radius, max_iter, channel, {}};
    plane.pixels.resize(std::size_t{width} * height);
    for (unsigned row = 0; row < height; ++row) {
        for (unsigned col = 0; col < width; ++col) {
            const auto r = escape_iterate(pixel_center(region, width, height, col, row), escape_radius, max_iter);
            PixelClass px = PixelClass::InSet;
            if (r.escaped) {
                const double part = channel == PlaneChannel::RealPart ? r.z_e.real() : r.z_e.imag();
                px = part >= 0.0 ? PixelClass::Bit1 : PixelClass::Bit0;
            }
            plane.pixels[std::size_t{row} * width + col] = px;
        }
    }
    return plane;
}

} // namespace fractalmsg
