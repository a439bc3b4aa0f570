#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "modcusp/curves.hpp"

namespace modcusp {

// Controls for the numerical ramification-index measurement.
//
// The index at a cusp of denominator d is read off the exponential decay rate
// of the transformed modular form along vertical sample points: the leading
// Fourier index e makes log|g(iy)| fall like -2*pi*e*y. We fit that slope by
// least squares on fit_grid, confirm it on confirm_grid, and only accept a
// value when both rounds agree on the same integer within residual_tol.
struct RamOptions {
    int prec_bits = 256;
    std::vector<double> fit_grid = {0.7, 0.9, 1.1, 1.3};
    std::vector<double> confirm_grid = {0.8, 1.0, 1.2};
    int e_max = 24;            // largest index the sample window can resolve
    double residual_tol = 0.1;
    int64_t terms = 0;         // series length; 0 = choose from N, e_max, grid
    int max_retries = 2;
};

// Settings for very large levels (deeper sample points, more precision).
RamOptions long_run_options();

struct RamResult {
    int64_t level = 1;      // cusp denominator d
    int64_t residue = 1;    // cusp numerator a
    bool determinate = false;
    int e = 0;              // accepted ramification index
    double slope_e = 0.0;   // raw -slope/(2*pi) from the fit grid
    double residual = 0.0;  // |slope_e - e|
    int prec_bits = 0;
    int64_t terms = 0;
    int attempts = 0;
    std::string note;
};

// Series length heuristic for level N under the given options.
int64_t suggested_terms(int64_t N, const RamOptions& opts);

// Measure the ramification index of the modular parametrization at the cusp
// a/d of X_0(N), N = E.conductor. `an` must hold Hecke coefficients through
// at least suggested_terms(N, opts) scaled by the retry ladder; pass an empty
// vector to have them computed on demand.
RamResult ramification_at(const EllipticCurve& E, const std::vector<int64_t>& an,
                          int64_t a, int64_t d, const RamOptions& opts);

// Indices at the cusps 1/d for every d whose square divides N. These are the
// denominators that remain after width reduction, and they carry all the
// ramification: the measurement is only meaningful there.
std::vector<RamResult> ramification_profile(const EllipticCurve& E,
                                            const RamOptions& opts);

}  // namespace modcusp
