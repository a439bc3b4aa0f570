#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "modcusp/numbers.hpp"

namespace modcusp {

// Integral Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6,
// assumed globally minimal, together with its conductor.
struct EllipticCurve {
    std::string label;
    long long conductor = 0;
    long long a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;

    Int discriminant() const;
};

// Checks that the stated conductor is plausible for the model: the
// discriminant must be supported exactly on the primes of the conductor.
// Throws std::invalid_argument otherwise (typical cause: non-minimal model).
void validate_curve(const EllipticCurve& E);

// a_p for any prime p. Good primes use #E(F_p) = p + 1 - a_p; bad primes
// give the standard 0 / +-1. Throws if p is good but divides the
// discriminant (non-minimal model) or if the input is not prime.
int64_t trace_of_frobenius(const EllipticCurve& E, int64_t p);

// a_1..a_B of the L-series, index n stored at [n]; [0] is unused.
std::vector<int64_t> hecke_coefficients(const EllipticCurve& E, int64_t B);

// Curve files: one curve per line, `label N a1 a2 a3 a4 a6`,
// '#' starts a comment, blank lines ignored.
std::vector<EllipticCurve> load_curves(const std::string& path);
EllipticCurve parse_curve_line(const std::string& line);
const EllipticCurve& curve_by_label(const std::vector<EllipticCurve>& v,
                                    const std::string& label);

}  // namespace modcusp
