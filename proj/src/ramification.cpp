#include "modcusp/ramification.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "modcusp/cusps.hpp"

namespace modcusp {

RamOptions long_run_options() {
    RamOptions o;
    o.prec_bits = 384;
    o.fit_grid = {0.5, 0.6, 0.7, 0.8};
    o.confirm_grid = {0.55, 0.65, 0.75};
    return o;
}

namespace {

double grid_max(const RamOptions& o) {
    double m = 0;
    for (double y : o.fit_grid) m = std::max(m, y);
    for (double y : o.confirm_grid) m = std::max(m, y);
    return m;
}

struct PointEval {
    double log_g = 0;
    bool usable = false;
};

// log |g(iy)| where g(iy) = -f(a/d + i/(N y)) / (N y^2), with a usability
// verdict comparing |f| against series tail and accumulated rounding error.
PointEval eval_point(const std::vector<int64_t>& an, int64_t B, int64_t N,
                     int64_t a, int64_t d, double y, int prec_bits) {
    BigFloat two_pi = 2 * pi_value();
    BigFloat ybig = y;
    BigFloat expo = two_pi / (N * ybig);
    BigFloat radius = exp(-expo);
    ComplexBig q = unit_circle(BigFloat(a) / d);
    q *= radius;

    ComplexBig acc;  // Horner over a_B .. a_1
    for (int64_t n = B; n >= 1; --n) {
        acc *= q;
        if (an[n] != 0) acc.re += BigFloat(an[n]);
    }
    acc *= q;

    PointEval out;
    double log_f = static_cast<double>(log_abs(acc));
    out.log_g = log_f - std::log(static_cast<double>(N)) - 2 * std::log(y);

    // Tail of sum a_n q^n beyond B, using |a_n| <= 2n:
    //   2 r^{B+1} ((B+1)(1-r) + r) / (1-r)^2
    double k = static_cast<double>(expo);             // -log r
    double one_minus_r = -std::expm1(-k);
    double rB = std::exp(-k * (B + 1));
    double tail = 2 * rB * ((B + 1) * one_minus_r + 1) / (one_minus_r * one_minus_r);
    // Rounding: B complex operations on partial sums bounded by sum 2n r^n.
    double mag = 2.0 / (one_minus_r * one_minus_r);
    double round_err = static_cast<double>(B) * std::ldexp(std::max(mag, 1.0), 6 - prec_bits);
    out.usable = log_f > std::log(tail + round_err) + 10 * std::log(2.0);
    return out;
}

// least-squares slope of log|g| against y
std::optional<double> fit_slope(const std::vector<int64_t>& an, int64_t B, int64_t N,
                                int64_t a, int64_t d, const std::vector<double>& ys,
                                int prec_bits, std::string* note) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (double y : ys) {
        PointEval p = eval_point(an, B, N, a, d, y, prec_bits);
        if (!p.usable) {
            std::ostringstream os;
            os << "value at y=" << y << " is below the error floor";
            *note = os.str();
            return std::nullopt;
        }
        sx += y; sy += p.log_g; sxx += y * y; sxy += y * p.log_g;
        ++n;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

int64_t suggested_terms(int64_t N, const RamOptions& opts) {
    double ymax = grid_max(opts);
    return static_cast<int64_t>(std::ceil(1.5 * opts.e_max * N * ymax * ymax)) + 64;
}

RamResult ramification_at(const EllipticCurve& E, const std::vector<int64_t>& an,
                          int64_t a, int64_t d, const RamOptions& opts) {
    int64_t N = E.conductor;
    if (d < 1 || N % (d * d) != 0)
        throw std::invalid_argument("ramification_at: level " + std::to_string(d) +
                                    " does not have square dividing the conductor");
    if (std::gcd(a, d) != 1)
        throw std::invalid_argument("ramification_at: residue not coprime to level");

    RamResult res;
    res.level = d;
    res.residue = a;
    int64_t base_B = opts.terms ? opts.terms : suggested_terms(N, opts);

    std::vector<int64_t> local;
    for (int k = 0; k <= opts.max_retries; ++k) {
        int prec = k == 0 ? opts.prec_bits
                          : k == 1 ? opts.prec_bits * 3 / 2
                                   : opts.prec_bits * 2;
        double shrink = k >= 2 ? 0.85 : 1.0;
        int64_t B = k == 0 ? base_B : base_B * 3 / 2;
        std::vector<double> fitg = opts.fit_grid, confg = opts.confirm_grid;
        for (double& y : fitg) y *= shrink;
        for (double& y : confg) y *= shrink;

        const std::vector<int64_t>* coeffs = &an;
        if (static_cast<int64_t>(an.size()) <= B) {
            if (static_cast<int64_t>(local.size()) <= B)
                local = hecke_coefficients(E, B);
            coeffs = &local;
        }

        PrecisionGuard guard(prec);
        res.prec_bits = prec;
        res.terms = B;
        res.attempts = k + 1;

        std::string note;
        auto s_fit = fit_slope(*coeffs, B, N, a, d, fitg, prec, &note);
        if (!s_fit) { res.note = note; continue; }
        auto s_conf = fit_slope(*coeffs, B, N, a, d, confg, prec, &note);
        if (!s_conf) { res.note = note; continue; }

        double two_pi = 2 * M_PI;
        double e_fit = -*s_fit / two_pi;
        double e_conf = -*s_conf / two_pi;
        int e = static_cast<int>(std::llround(e_fit));
        res.slope_e = e_fit;
        res.residual = std::abs(e_fit - e);
        std::ostringstream os;
        if (e < 1 || e > opts.e_max) {
            os << "fitted index " << e_fit << " outside window [1," << opts.e_max << "]";
        } else if (std::abs(e_fit - e) >= opts.residual_tol) {
            os << "fit " << e_fit << " is not near an integer";
        } else if (std::llround(e_conf) != e || std::abs(e_conf - e) >= opts.residual_tol) {
            os << "confirmation grid gives " << e_conf << ", fit grid " << e_fit;
        } else {
            res.e = e;
            res.determinate = true;
            res.note.clear();
            return res;
        }
        res.note = os.str();
    }
    return res;
}

std::vector<RamResult> ramification_profile(const EllipticCurve& E,
                                            const RamOptions& opts) {
    int64_t N = E.conductor;
    int64_t base_B = opts.terms ? opts.terms : suggested_terms(N, opts);
    auto an = hecke_coefficients(E, base_B * 3 / 2 + 1);
    std::vector<RamResult> out;
    for (int64_t d : reduced_levels(N))
        out.push_back(ramification_at(E, an, 1, d, opts));
    return out;
}

}  // namespace modcusp
