#include "modcusp/curves.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace modcusp {

Int EllipticCurve::discriminant() const {
    Int A1 = a1, A2 = a2, A3 = a3, A4 = a4, A6 = a6;
    Int b2 = A1 * A1 + 4 * A2;
    Int b4 = 2 * A4 + A1 * A3;
    Int b6 = A3 * A3 + 4 * A6;
    Int b8 = A1 * A1 * A6 + 4 * A2 * A6 - A1 * A3 * A4 + A2 * A3 * A3 - A4 * A4;
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

void validate_curve(const EllipticCurve& E) {
    if (E.conductor <= 0) throw std::invalid_argument(E.label + ": conductor must be positive");
    Int disc = E.discriminant();
    if (disc == 0) throw std::invalid_argument(E.label + ": singular model");
    Int d = abs(disc);
    for (const auto& [p, e] : factorize(E.conductor)) {
        (void)e;
        if (d % p != 0)
            throw std::invalid_argument(E.label + ": conductor prime does not divide the discriminant");
        while (d % p == 0) d /= p;
    }
    if (d != 1)
        throw std::invalid_argument(E.label + ": discriminant has primes outside the conductor (model not minimal?)");
}

namespace {

// Subtract p once if needed; inputs stay in [0, 2p).
inline int64_t fold(int64_t v, int64_t p) { return v >= p ? v - p : v; }

int64_t ap_two(const EllipticCurve& E) {
    int cnt = 0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            long long lhs = (long long)y * y + E.a1 * x * y + E.a3 * y;
            long long rhs = (long long)x * x * x + E.a2 * x * x + E.a4 * x + E.a6;
            if (((lhs - rhs) % 2 + 2) % 2 == 0) ++cnt;
        }
    return 2 - cnt;
}

}  // namespace

int64_t trace_of_frobenius(const EllipticCurve& E, int64_t p) {
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("trace_of_frobenius: p not prime");
    bool bad = E.conductor % p == 0;
    if (!bad && E.discriminant() % p == 0)
        throw std::invalid_argument(E.label + ": model is singular at a good prime (not minimal?)");
    if (p == 2) return ap_two(E);

    // Complete the square: counting y with y^2 + (a1 x + a3) y = rhs(x) is
    // counting w with w^2 = u(x) := 4 rhs(x) + (a1 x + a3)^2.
    auto md = [p](long long v) { return ((v % p) + p) % p; };
    int64_t c3 = 4 % p;
    int64_t c2 = md(4 * E.a2 + E.a1 * E.a1);
    int64_t c1 = md(4 * E.a4 + 2 * E.a1 * E.a3);
    int64_t c0 = md(4 * E.a6 + E.a3 * E.a3);
    auto u_at = [&](int64_t x) {
        return (((c3 * x + c2) % p) * x % p * x % p + (c1 * x + c0)) % p;
    };

    // Quadratic-residue table, built without multiplications.
    std::vector<uint8_t> qr(p, 0);
    int64_t sq = 0, inc = 1;
    for (int64_t t = 0; t <= (p - 1) / 2; ++t) {
        qr[sq] = 1;
        sq = fold(sq + inc, p);
        inc = fold(inc + 2, p);
    }

    // Walk u(x) by finite differences: all updates are adds with one fold.
    int64_t u0 = u_at(0), u1 = u_at(1), u2 = u_at(2), u3 = u_at(3);
    int64_t u = u0;
    int64_t d1 = md(u1 - u0);
    int64_t d2 = md(u2 - 2 * u1 + u0);
    int64_t d3 = md(u3 - 3 * u2 + 3 * u1 - u0);
    int64_t cnt = 0;
    for (int64_t x = 0; x < p; ++x) {
        cnt += (u == 0) ? 1 : 2 * qr[u];
        u = fold(u + d1, p);
        d1 = fold(d1 + d2, p);
        d2 = fold(d2 + d3, p);
    }
    int64_t ap = p - cnt;
    if (bad) {
        if (ap < -1 || ap > 1)
            throw std::logic_error(E.label + ": bad-prime trace outside {-1,0,1}");
    } else if ((double)ap * ap > 4.0 * p) {
        throw std::logic_error(E.label + ": Hasse bound violated");
    }
    return ap;
}

std::vector<int64_t> hecke_coefficients(const EllipticCurve& E, int64_t B) {
    if (B < 1) throw std::invalid_argument("hecke_coefficients: B must be >= 1");
    std::vector<uint32_t> spf(B + 1);
    for (int64_t i = 0; i <= B; ++i) spf[i] = (uint32_t)i;
    for (int64_t i = 2; i * i <= B; ++i)
        if (spf[i] == i)
            for (int64_t j = i * i; j <= B; j += i)
                if (spf[j] == (uint32_t)j) spf[j] = (uint32_t)i;

    std::vector<int64_t> a(B + 1, 0);
    a[1] = 1;
    std::vector<int64_t> ap_cache(B + 1, INT64_MIN);
    for (int64_t n = 2; n <= B; ++n) {
        int64_t p = spf[n];
        int64_t q = p, m = n / p;
        while (m % p == 0) {
            m /= p;
            q *= p;
        }
        if (m > 1) {
            a[n] = a[q] * a[m];
            continue;
        }
        // n = p^k
        if (ap_cache[p] == INT64_MIN) ap_cache[p] = trace_of_frobenius(E, p);
        int64_t t = ap_cache[p];
        if (n == p)
            a[n] = t;
        else if (E.conductor % p == 0)
            a[n] = t * a[n / p];
        else
            a[n] = t * a[n / p] - p * a[n / (p * p)];
    }
    return a;
}

EllipticCurve parse_curve_line(const std::string& line) {
    std::istringstream in(line);
    EllipticCurve E;
    if (!(in >> E.label >> E.conductor >> E.a1 >> E.a2 >> E.a3 >> E.a4 >> E.a6))
        throw std::invalid_argument("bad curve line: " + line);
    std::string extra;
    if (in >> extra && extra[0] != '#')
        throw std::invalid_argument("trailing tokens on curve line: " + line);
    return E;
}

std::vector<EllipticCurve> load_curves(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open curve file: " + path);
    std::vector<EllipticCurve> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            EllipticCurve E = parse_curve_line(line);
            validate_curve(E);
            out.push_back(std::move(E));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " +
                                        e.what());
        }
    }
    return out;
}

const EllipticCurve& curve_by_label(const std::vector<EllipticCurve>& v,
                                    const std::string& label) {
    for (const auto& E : v)
        if (E.label == label) return E;
    throw std::invalid_argument("no curve labeled " + label);
}

}  // namespace modcusp
