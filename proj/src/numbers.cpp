#include "modcusp/numbers.hpp"

#include <algorithm>
#include <numeric>

namespace modcusp {

int64_t mod_pow(int64_t base, int64_t exp, int64_t m) {
    if (m <= 0) throw std::domain_error("mod_pow: modulus must be positive");
    if (m == 1) return 0;
    int64_t b = mod_norm(base, m);
    int64_t r = 1;
    while (exp > 0) {
        if (exp & 1) r = mul_mod(r, b, m);
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    return r;
}

int64_t inv_mod(int64_t a, int64_t m) {
    int64_t t = 0, newt = 1;
    int64_t r = m, newr = mod_norm(a, m);
    while (newr != 0) {
        int64_t q = r / newr;
        t = std::exchange(newt, t - q * newt);
        r = std::exchange(newr, r - q * newr);
    }
    if (r != 1) throw std::domain_error("inv_mod: element not invertible");
    return mod_norm(t, m);
}

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    int64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // deterministic for all 64-bit inputs with this base set
    for (int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        int64_t x = mod_pow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 0; i + 1 < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::vector<std::pair<int64_t, int>> factorize(int64_t n) {
    if (n <= 0) throw std::domain_error("factorize: need n >= 1");
    std::vector<std::pair<int64_t, int>> out;
    auto strip = [&](int64_t p) {
        if (n % p) return;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    for (int64_t q = 5; q * q <= n; q += 6) {
        strip(q);
        strip(q + 2);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<int64_t> divisors(int64_t n) {
    std::vector<int64_t> out{1};
    for (auto [p, e] : factorize(n)) {
        size_t sz = out.size();
        int64_t pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int64_t euler_phi(int64_t n) {
    int64_t r = n;
    for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

int64_t radical(int64_t n) {
    int64_t r = 1;
    for (auto [p, e] : factorize(n)) r *= p;
    return r;
}

int valuation(int64_t n, int64_t p) {
    if (n == 0) throw std::domain_error("valuation: n = 0");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

std::vector<int32_t> primes_up_to(int32_t n) {
    std::vector<int32_t> out;
    if (n < 2) return out;
    std::vector<bool> comp(n + 1, false);
    for (int32_t i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (int64_t j = static_cast<int64_t>(i) * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

int legendre_symbol(int64_t a, int64_t p) {
    int64_t r = mod_pow(a, (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

int64_t crt_pair(int64_t r1, int64_t m1, int64_t r2, int64_t m2) {
    int64_t d = mod_norm(r2 - r1, m2);
    int64_t k = mul_mod(d, inv_mod(m1, m2), m2);
    return r1 + m1 * k;
}

}  // namespace modcusp
