#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "modcusp/numbers.hpp"

using namespace modcusp;

TEST_CASE("modular arithmetic") {
    CHECK(mod_pow(2, 10, 1000) == 24);
    CHECK(mod_pow(3, 0, 7) == 1);
    CHECK(mod_pow(-2, 3, 7) == mod_norm(-8, 7));
    CHECK(inv_mod(3, 7) == 5);
    CHECK(mul_mod(inv_mod(123456789, 1000000007), 123456789, 1000000007) == 1);
    CHECK_THROWS_AS(inv_mod(6, 9), std::domain_error);
    CHECK(crt_pair(2, 3, 3, 5) == 8);
    CHECK(crt_pair(1, 4, 0, 9) == 9);
}

TEST_CASE("primality") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(!is_prime(1));
    CHECK(!is_prime(561));  // Carmichael
    CHECK(is_prime(97));
    CHECK(is_prime(1201));
    CHECK(is_prime((int64_t(1) << 61) - 1));
    CHECK(!is_prime(1000003LL * 1000033LL));
}

TEST_CASE("factorization and divisors") {
    auto f = factorize(20736);
    REQUIRE(f.size() == 2);
    CHECK(f[0] == std::pair<int64_t, int>(2, 8));
    CHECK(f[1] == std::pair<int64_t, int>(3, 4));
    CHECK(divisors(48).size() == 10);
    CHECK(divisors(1) == std::vector<int64_t>{1});
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(600) == 160);
    CHECK(euler_phi(9312) == 3072);
    CHECK(radical(9312) == 582);
    CHECK(valuation(48, 2) == 4);
    CHECK(valuation(48, 3) == 1);
    auto pr = primes_up_to(30);
    CHECK(pr.size() == 10);
    CHECK(pr.back() == 29);
}

TEST_CASE("legendre symbol") {
    CHECK(legendre_symbol(2, 7) == 1);
    CHECK(legendre_symbol(3, 7) == -1);
    CHECK(legendre_symbol(14, 7) == 0);
    CHECK(legendre_symbol(2, 3) == -1);
}

TEST_CASE("precision guard and complex") {
    PrecisionGuard g(256);
    BigFloat two(2);
    BigFloat err = abs(sqrt(two) * sqrt(two) - two);
    CHECK(err < pow2(-250));

    ComplexBig z = cexp(ComplexBig(BigFloat(0), pi_value()));
    CHECK(abs(z.re + 1) < pow2(-200));
    CHECK(abs(z.im) < pow2(-200));

    ComplexBig w = BigFloat(exp(BigFloat(-50))) * unit_circle(BigFloat(1) / 3);
    CHECK(abs(log_abs(w) + 50) < pow2(-200));

    {
        PrecisionGuard g2(64);
        BigFloat x(1);
        CHECK(BigFloat::default_precision() < 30);
    }
    CHECK(BigFloat::default_precision() >= 70);
}
