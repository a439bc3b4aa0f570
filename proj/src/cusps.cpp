#include "modcusp/cusps.hpp"

#include "modcusp/numbers.hpp"

#include <numeric>

namespace modcusp {

int64_t cusp_count(int64_t N) {
    int64_t c = 0;
    for (int64_t d : divisors(N)) c += euler_phi(std::gcd(d, N / d));
    return c;
}

std::vector<CuspClass> cusp_classes(int64_t N) {
    std::vector<CuspClass> out;
    for (int64_t d : divisors(N)) {
        int64_t g = std::gcd(d, N / d);
        for (int64_t r = 0; r < g; ++r) {
            if (std::gcd(r, g) == 1) out.push_back({d, g == 1 ? 0 : r});
        }
    }
    return out;
}

CuspClass classify_cusp(int64_t a, int64_t b, int64_t N) {
    if (a == 0 && b == 0) throw std::domain_error("classify_cusp: (0, 0)");
    int64_t g0 = std::gcd(std::abs(a), std::abs(b));
    a /= g0;
    b /= g0;
    if (b < 0) {
        a = -a;
        b = -b;
    }
    int64_t d = std::gcd(b, N);  // b = 0 gives level N
    int64_t g = std::gcd(d, N / d);
    int64_t r = g == 1 ? 0 : mod_norm(a % g * ((b / d) % g), g);
    return {d, r};
}

int64_t cusp_width(int64_t N, int64_t level) { return N / std::gcd(level * level, N); }

int64_t reduce_level(int64_t N, int64_t d) { return std::gcd(d, N / d); }

int64_t reducing_operator(int64_t N, int64_t d) {
    int64_t Q = 1;
    for (auto [p, vN] : factorize(N)) {
        if (2 * valuation(d, p) > vN) {
            for (int i = 0; i < vN; ++i) Q *= p;
        }
    }
    return Q;
}

std::vector<int64_t> reduced_levels(int64_t N) {
    std::vector<int64_t> out;
    for (int64_t d : divisors(N)) {
        if (N % (d * d) == 0) out.push_back(d);
    }
    return out;
}

int64_t atkin_lehner_level(int64_t N, int64_t Q, int64_t d) {
    return (Q / std::gcd(d, Q)) * std::gcd(d, N / Q);
}

CuspClass atkin_lehner_image(int64_t N, int64_t Q, int64_t a, int64_t b) {
    if (Q < 1 || N % Q != 0 || std::gcd(Q, N / Q) != 1)
        throw std::domain_error("atkin_lehner_image: need Q || N");
    if (Q == 1) return classify_cusp(a, b, N);
    int64_t u = inv_mod(Q, N / Q);           // Q u = 1 + (N/Q) v
    int64_t v = (Q * u - 1) / (N / Q);
    int64_t A = Q * u * a + v * b;
    int64_t B = N * a + Q * b;
    return classify_cusp(A, B, N);
}

}  // namespace modcusp
