#pragma once

#include <functional>

#include "fractalmsg/types.hpp"

namespace fractalmsg {

// Truncated Weierstrass function: sum_{n=0}^{M} a^n cos(b^n pi t).
double eval_weierstrass(const FractalParams& params, unsigned M, double t);

// Periodic ASK mask of component m. Bit i (0-based) occupies the window
// [2i/b^m, 2(i+1)/b^m) of each message repetition of length 2L/b^m. Window
// boundaries belong to the window they open.
bool eval_mask(const BitStream& msg, const FractalParams& params, unsigned m, double t);

// a^m * mask_m(t) * cos(b^m pi t).
double eval_masked_component(const BitStream& msg, const FractalParams& params, unsigned m, double t);

// Sum of the masked components m = 0..M, accumulated from m = 0 upward.
double eval_fractal_message(const BitStream& msg, const FractalParams& params, unsigned M, double t);

// Upper bound (1 - a^{M+1}) / (1 - a) on |W_M| and |F_M|.
double amplitude_bound(const FractalParams& params, unsigned M);

using Evaluator = std::function<double(double)>;

// ceil((t_end - t_start) * rate) samples of f at t_start + k / rate.
SampledSignal sample(const Evaluator& f, double rate, double t_start, double t_end);

} // namespace fractalmsg
