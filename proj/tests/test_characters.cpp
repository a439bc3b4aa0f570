#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "modcusp/characters.hpp"

#include <numeric>
#include <set>

using namespace modcusp;

TEST_CASE("unit group structure") {
    for (int64_t m : {1, 2, 3, 4, 5, 8, 9, 12, 16, 24, 25, 32, 45, 49, 60, 97, 100}) {
        UnitGroup U(m);
        CHECK(U.size() == euler_phi(m));
        CHECK(static_cast<int64_t>(U.residues().size()) == U.size());
        int64_t prod = 1;
        for (int64_t n : U.component_orders()) prod *= n;
        CHECK(prod == U.size());
        // dlog/from_exponents round trip on every unit
        for (int64_t a : U.residues()) {
            CHECK(U.from_exponents(U.dlog(a)) == a);
            CHECK(mod_pow(a, U.exponent(), std::max<int64_t>(m, 2)) == mod_norm(1, m));
        }
    }
    UnitGroup U32(32);
    CHECK(U32.component_orders() == std::vector<int64_t>{2, 8});
    CHECK_THROWS_AS(U32.dlog(6), std::domain_error);
}

TEST_CASE("character basics") {
    auto chars5 = all_characters(5);
    CHECK(chars5.size() == 4);
    int n_prim = 0;
    for (auto& chi : chars5) {
        if (chi.is_primitive()) ++n_prim;
        // multiplicativity chi(ab) = chi(a) chi(b)
        for (int64_t a = 1; a < 5; ++a) {
            for (int64_t b = 1; b < 5; ++b) {
                CHECK(chi.value(a * b) == chi.value(a) * chi.value(b));
            }
        }
    }
    CHECK(n_prim == 3);  // conductor 5 excludes only the trivial character

    // quadratic character mod 12 = product of the quadratic ones mod 4 and mod 3
    auto prim12 = primitive_characters(12);
    REQUIRE(prim12.size() == 1);
    CHECK(prim12[0].order() == 2);
    CHECK(prim12[0].sign_at_minus_one() == 1);
    CHECK(prim12[0].component_at(4).is_primitive());
    CHECK(prim12[0].component_at(3).is_primitive());

    // primitive core of an induced character recovers the original
    for (auto& chi : primitive_characters(8)) {
        auto ind = chi.induced_to(24);
        CHECK(ind.conductor() == 8);
        CHECK(ind.primitive_core() == chi);
    }

    // orthogonality: sum over units of chi(a) vanishes for nontrivial chi
    for (auto& chi : all_characters(9)) {
        CycVec s(chi.order());
        for (int64_t a : chi.group().residues()) s.add_root(*chi.value_exponent(a));
        CHECK(s.is_integer(Int(chi.is_trivial() ? 6 : 0)));
    }
}

TEST_CASE("gauss sum oracles") {
    // quadratic character mod 3: tau = z3 - z3^2
    auto chi3 = primitive_characters(3).at(0);
    auto tau3 = gauss_sum(chi3);
    auto expect = CyclotomicNumber::zeta_power(3, 1) - CyclotomicNumber::zeta_power(3, 2);
    CHECK(tau3 == expect);

    // trivial character mod p, full-level additive character: sum is -1
    auto chars7 = all_characters(7);
    const DirichletCharacter* triv = nullptr;
    for (auto& c : chars7) {
        if (c.is_trivial()) triv = &c;
    }
    REQUIRE(triv != nullptr);
    CHECK(local_gauss_sum(*triv, AdditiveCharacter{7, 1}) ==
          CyclotomicNumber::from_rational(Rat(-1)));

    // primitive character against a lower-level additive character vanishes
    for (auto& chi : primitive_characters(25)) {
        CHECK(local_gauss_sum(chi, AdditiveCharacter{5, 1}).is_zero());
        CHECK(local_gauss_sum(chi, AdditiveCharacter{ 5, 2}).is_zero());
    }
    CHECK_THROWS_AS(local_gauss_sum(chi3, AdditiveCharacter{9, 1}), std::domain_error);
}

TEST_CASE("tau(chi) tau(conj chi) = chi(-1) m") {
    for (int64_t m : {3, 4, 5, 7, 8, 9, 11, 12, 15, 16, 21, 25, 32, 36, 40}) {
        for (auto& chi : primitive_characters(m)) {
            int64_t E = std::lcm(m, chi.order());
            CycVec t1 = gauss_sum_vec(chi, E);
            CycVec t2 = gauss_sum_vec(chi.inverse(), E);
            CycVec prod = t1.mul(t2);
            CHECK(prod.is_integer(Int(chi.sign_at_minus_one() * m)));
        }
    }
}

TEST_CASE("crt factorization of gauss sums") {
    // the whole induced family, so members with conductor f < d are covered too
    for (int64_t d : {12, 15, 20, 21, 36, 40, 45}) {
        for (auto& chi : family_induced(d)) {
            for (int64_t n = 1; n < d; ++n) {
                if (std::gcd(n, d) != 1) continue;
                CHECK(gauss_crt_identity_holds(chi, n));
            }
        }
    }
    // outside the family the factorization is not defined
    auto chi3 = primitive_characters(3).at(0);
    CHECK_THROWS_AS(gauss_crt_identity_holds(chi3.induced_to(12), 1), std::domain_error);
}

TEST_CASE("character families") {
    auto s12 = family_induced(12);
    CHECK(s12.size() == 2);
    for (auto& chi : s12) CHECK(chi.modulus() == 12);

    CHECK(family_local(5, 1).size() == 4);
    CHECK(family_local(5, 2).size() == 16);
    CHECK(family_local(2, 2).size() == 1);
    CHECK(family_local(3, 2).size() == 4);

    // |family_induced(d)| = prod over p^k || d of |family_local(p, k)|
    for (int64_t d : {12, 36, 45, 48, 60}) {
        size_t prod = 1;
        for (auto [p, k] : factorize(d)) prod *= family_local(p, k).size();
        CHECK(family_induced(d).size() == prod);
        // induced characters mod d are pairwise distinct
        std::set<std::vector<int64_t>> seen;
        for (auto& chi : family_induced(d)) seen.insert(chi.exponents());
        CHECK(seen.size() == prod);
    }
}
