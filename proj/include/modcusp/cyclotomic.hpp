#pragma once

#include "modcusp/numbers.hpp"

#include <cstdint>
#include <vector>

namespace modcusp {

// Coefficients of the n-th cyclotomic polynomial, ascending degree (length phi(n)+1).
std::vector<Int> cyclotomic_polynomial(int64_t n);

class CyclotomicNumber;

// Dense integer vector in Z[x]/(x^E - 1), used to accumulate sums of roots of
// unity exactly with machine-word arithmetic.  Reduction modulo Phi_E happens
// once at the end, in arbitrary precision.
class CycVec {
  public:
    explicit CycVec(int64_t order);

    int64_t order() const { return E_; }

    // += mult * zeta^k; k is reduced mod E (negatives allowed)
    void add_root(int64_t k, int64_t mult = 1) {
        int64_t i = k % E_;
        if (i < 0) i += E_;
        if (__builtin_add_overflow(a_[i], mult, &a_[i]))
            throw std::overflow_error("CycVec: accumulator overflow");
    }
    void add(const CycVec& other);
    void scale(int64_t c);
    CycVec mul(const CycVec& other) const;
    CycVec promoted(int64_t new_order) const;

    // Coordinates in the power basis 1, zeta, ..., zeta^{phi(E)-1}.
    std::vector<Int> reduced() const;
    bool is_zero_elt() const;
    bool is_integer(const Int& c) const;
    CyclotomicNumber to_number() const;

    const std::vector<int64_t>& raw() const { return a_; }
    int64_t& raw(int64_t i) { return a_[i]; }

  private:
    int64_t E_;
    std::vector<int64_t> a_;
};

// Element of Q(zeta_E) in reduced coordinates over the power basis.
class CyclotomicNumber {
  public:
    CyclotomicNumber() : E_(1), c_(1, Rat(0)) {}

    static CyclotomicNumber zero(int64_t order);
    static CyclotomicNumber one(int64_t order);
    static CyclotomicNumber from_rational(const Rat& r);
    static CyclotomicNumber zeta_power(int64_t order, int64_t k);
    static CyclotomicNumber from_coords(int64_t order, std::vector<Rat> coords);

    int64_t order() const { return E_; }
    const std::vector<Rat>& coords() const { return c_; }

    CyclotomicNumber promoted(int64_t new_order) const;  // order() | new_order

    CyclotomicNumber& operator+=(const CyclotomicNumber& o);
    CyclotomicNumber& operator-=(const CyclotomicNumber& o);
    CyclotomicNumber& operator*=(const CyclotomicNumber& o);
    CyclotomicNumber& operator*=(const Rat& s);
    friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
    friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
    friend CyclotomicNumber operator*(CyclotomicNumber a, const CyclotomicNumber& b) { return a *= b; }
    friend CyclotomicNumber operator*(CyclotomicNumber a, const Rat& s) { return a *= s; }
    CyclotomicNumber operator-() const;

    bool operator==(const CyclotomicNumber& o) const;

    bool is_zero() const;
    // True iff the element lies in Q; stores the value when out != nullptr.
    bool is_rational(Rat* out = nullptr) const;

    // Image under zeta -> zeta^k, gcd(k, E) = 1.
    CyclotomicNumber galois(int64_t k) const;
    CyclotomicNumber conj() const { return galois(E_ - 1); }

    // Numerical value with zeta = exp(2*pi*i/E), at current default precision.
    ComplexBig embed() const;

  private:
    int64_t E_;
    std::vector<Rat> c_;  // length phi(E)
};

}  // namespace modcusp
