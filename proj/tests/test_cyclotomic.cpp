#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "modcusp/cyclotomic.hpp"

#include <numeric>

using namespace modcusp;

static std::vector<Int> ipoly(std::initializer_list<long> v) {
    std::vector<Int> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(1) == ipoly({-1, 1}));
    CHECK(cyclotomic_polynomial(2) == ipoly({1, 1}));
    CHECK(cyclotomic_polynomial(8) == ipoly({1, 0, 0, 0, 1}));
    CHECK(cyclotomic_polynomial(9) == ipoly({1, 0, 0, 1, 0, 0, 1}));
    CHECK(cyclotomic_polynomial(12) == ipoly({1, 0, -1, 0, 1}));
    auto c105 = cyclotomic_polynomial(105);
    REQUIRE(c105.size() == 49);
    CHECK(c105[7] == -2);  // first index with |coefficient| > 1
    CHECK(c105[48] == 1);
    // degree phi(n) and constant term for a few composite orders
    for (int64_t n : {20, 36, 97, 100, 600, 9312}) {
        auto c = cyclotomic_polynomial(n);
        CHECK(static_cast<int64_t>(c.size()) == euler_phi(n) + 1);
        CHECK(c.front() == 1);
        CHECK(c.back() == 1);
    }
}

TEST_CASE("root of unity relations") {
    for (int64_t E : {2, 3, 4, 5, 6, 7, 8, 9, 12, 16, 25, 36, 60, 97, 200}) {
        // sum over all E-th roots of unity vanishes
        CycVec s(E);
        for (int64_t k = 0; k < E; ++k) s.add_root(k);
        CHECK(s.is_zero_elt());
        // zeta^a * zeta^b = zeta^(a+b)
        auto za = CyclotomicNumber::zeta_power(E, E / 2 + 1);
        auto zb = CyclotomicNumber::zeta_power(E, E - 1);
        CHECK(za * zb == CyclotomicNumber::zeta_power(E, E / 2));
    }
    // zeta multiplied out E times comes back to 1
    for (int64_t E : {5, 8, 12, 30, 49}) {
        auto z = CyclotomicNumber::zeta_power(E, 1);
        auto acc = CyclotomicNumber::one(E);
        for (int64_t i = 0; i < E; ++i) acc = acc * z;
        CHECK(acc == CyclotomicNumber::one(E));
    }
}

TEST_CASE("golden ratio identity") {
    // (z5 + z5^4)(z5^2 + z5^3) = -1
    auto a = CyclotomicNumber::zeta_power(5, 1) + CyclotomicNumber::zeta_power(5, 4);
    auto b = CyclotomicNumber::zeta_power(5, 2) + CyclotomicNumber::zeta_power(5, 3);
    CHECK(a * b == CyclotomicNumber::from_rational(Rat(-1)));
    PrecisionGuard g(128);
    ComplexBig v = a.embed();
    BigFloat golden = (sqrt(BigFloat(5)) - 1) / 2;
    CHECK(abs(v.re - golden) < pow2(-100));
    CHECK(abs(v.im) < pow2(-100));
}

TEST_CASE("promotion and equality across orders") {
    auto z3 = CyclotomicNumber::zeta_power(3, 1);
    auto z12 = CyclotomicNumber::zeta_power(12, 4);
    CHECK(z3 == z12);
    CHECK(z3.promoted(12) == z12);
    auto z2 = CyclotomicNumber::zeta_power(2, 1);
    CHECK(z2 == CyclotomicNumber::from_rational(Rat(-1)));
    CHECK((z3 + z3.conj()) == CyclotomicNumber::from_rational(Rat(-1)));
}

TEST_CASE("galois action is a ring morphism") {
    auto x = CyclotomicNumber::zeta_power(7, 1) + CyclotomicNumber::zeta_power(7, 5) * Rat(3);
    auto y = CyclotomicNumber::zeta_power(7, 2) - CyclotomicNumber::from_rational(Rat(2, 3)).promoted(7);
    for (int64_t k : {2, 3, 6}) {
        CHECK((x * y).galois(k) == x.galois(k) * y.galois(k));
        CHECK((x + y).galois(k) == x.galois(k) + y.galois(k));
    }
    // conj composed with conj is the identity
    CHECK(x.conj().conj() == x);
}

TEST_CASE("CycVec matches reduced arithmetic") {
    CycVec u(12), v(12);
    u.add_root(0);
    u.add_root(1);   // 1 + z
    v.add_root(0);
    v.add_root(1, -1);  // 1 - z
    CycVec w = u.mul(v);  // 1 - z^2
    CycVec expect(12);
    expect.add_root(0);
    expect.add_root(2, -1);
    CHECK(w.reduced() == expect.reduced());
    CHECK(w.to_number() == u.to_number() * v.to_number());

    CycVec big(9312);
    for (int64_t k = 0; k < 9312; ++k) big.add_root(k, 7);
    CHECK(big.is_zero_elt());
    big.add_root(0, 5);
    CHECK(big.is_integer(Int(5)));

    CycVec p(6);
    p.add_root(1);
    CHECK(p.promoted(18).to_number() == CyclotomicNumber::zeta_power(18, 3));
}

TEST_CASE("rationality detection") {
    auto z5 = CyclotomicNumber::zeta_power(5, 1);
    Rat r;
    CHECK(!z5.is_rational());
    auto s = z5 + z5.galois(2) + z5.galois(3) + z5.galois(4);
    CHECK(s.is_rational(&r));
    CHECK(r == -1);
}

TEST_CASE("numerical embedding") {
    PrecisionGuard g(192);
    auto z8 = CyclotomicNumber::zeta_power(8, 1);
    ComplexBig v = z8.embed();
    BigFloat c = sqrt(BigFloat(2)) / 2;
    CHECK(abs(v.re - c) < pow2(-180));
    CHECK(abs(v.im - c) < pow2(-180));
    // Phi_12 vanishes at the embedded primitive root
    auto z12 = CyclotomicNumber::zeta_power(12, 1).embed();
    ComplexBig acc;
    auto poly = cyclotomic_polynomial(12);
    for (int64_t j = static_cast<int64_t>(poly.size()) - 1; j >= 0; --j) {
        acc *= z12;
        acc += ComplexBig(BigFloat(poly[j]));
    }
    CHECK(c_abs(acc) < pow2(-180));
}
