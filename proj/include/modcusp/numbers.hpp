#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace modcusp {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;
using BigFloat = boost::multiprecision::mpfr_float;

// ---------- exact arithmetic on machine integers ----------

inline int64_t mul_mod(int64_t a, int64_t b, int64_t m) {
    return static_cast<int64_t>(static_cast<__int128>(a) * b % m);
}

int64_t mod_pow(int64_t base, int64_t exp, int64_t m);
int64_t inv_mod(int64_t a, int64_t m);  // throws std::domain_error when gcd(a,m) != 1
bool is_prime(int64_t n);
std::vector<std::pair<int64_t, int>> factorize(int64_t n);
std::vector<int64_t> divisors(int64_t n);
int64_t euler_phi(int64_t n);
int64_t radical(int64_t n);
int valuation(int64_t n, int64_t p);
std::vector<int32_t> primes_up_to(int32_t n);
int legendre_symbol(int64_t a, int64_t p);  // p an odd prime
// Solution mod m1*m2 of x = r1 (m1), x = r2 (m2); moduli must be coprime.
int64_t crt_pair(int64_t r1, int64_t m1, int64_t r2, int64_t m2);

inline int64_t mod_norm(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// ---------- floating point scope control ----------

// Sets the default mpfr precision (in bits) for the lifetime of the guard.
class PrecisionGuard {
  public:
    explicit PrecisionGuard(unsigned bits)
        : saved_digits_(BigFloat::default_precision()) {
        BigFloat::default_precision(bits_to_digits10(bits));
    }
    ~PrecisionGuard() { BigFloat::default_precision(saved_digits_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

    static unsigned bits_to_digits10(unsigned bits) {
        return static_cast<unsigned>(bits * 0.30103) + 3;
    }

  private:
    unsigned saved_digits_;
};

inline BigFloat pow2(long e) { return ldexp(BigFloat(1), static_cast<int>(e)); }

inline BigFloat pi_value() {
    BigFloat one(1);
    return 4 * atan(one);
}

// ---------- complex numbers over BigFloat ----------

struct ComplexBig {
    BigFloat re, im;
    ComplexBig() : re(0), im(0) {}
    ComplexBig(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    explicit ComplexBig(BigFloat r) : re(std::move(r)), im(0) {}

    ComplexBig& operator+=(const ComplexBig& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    ComplexBig& operator-=(const ComplexBig& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    ComplexBig& operator*=(const ComplexBig& o) {
        BigFloat r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    ComplexBig& operator*=(const BigFloat& s) {
        re *= s;
        im *= s;
        return *this;
    }
};

inline ComplexBig operator+(ComplexBig a, const ComplexBig& b) { return a += b; }
inline ComplexBig operator-(ComplexBig a, const ComplexBig& b) { return a -= b; }
inline ComplexBig operator*(ComplexBig a, const ComplexBig& b) { return a *= b; }
inline ComplexBig operator*(const BigFloat& s, ComplexBig a) { return a *= s; }
inline ComplexBig operator-(ComplexBig a) {
    a.re = -a.re;
    a.im = -a.im;
    return a;
}

inline BigFloat abs2(const ComplexBig& z) { return z.re * z.re + z.im * z.im; }
inline BigFloat c_abs(const ComplexBig& z) { return sqrt(abs2(z)); }
inline BigFloat log_abs(const ComplexBig& z) { return log(abs2(z)) / 2; }

inline ComplexBig cexp(const ComplexBig& z) {
    BigFloat r = exp(z.re);
    return ComplexBig(r * cos(z.im), r * sin(z.im));
}

// e^{2*pi*i*t}
inline ComplexBig unit_circle(const BigFloat& t) {
    BigFloat a = 2 * pi_value() * t;
    return ComplexBig(cos(a), sin(a));
}

}  // namespace modcusp
