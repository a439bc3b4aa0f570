#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "modcusp/gl2_group.hpp"

using namespace modcusp;

static int64_t sum_class_sizes(const FiniteGroupView& g) {
    int64_t s = 0;
    for (int j = 0; j < g.num_classes(); ++j) s += g.class_size(j);
    return s;
}

TEST_CASE("gl2 over prime fields") {
    struct Row {
        int64_t p;
        int64_t order;
        int classes;
        int64_t exponent;
    };
    // #classes of GL2(F_p) is p^2 - 1
    for (Row r : {Row{2, 6, 3, 6}, Row{3, 48, 8, 24}, Row{5, 480, 24, 120},
                  Row{7, 2016, 48, 336}}) {
        GL2 g(r.p, 1);
        CHECK(g.order() == r.order);
        CHECK(g.num_classes() == r.classes);
        CHECK(g.exponent() == r.exponent);
        CHECK(sum_class_sizes(g) == r.order);
        CHECK((int64_t)g.center_ids().size() == r.p - 1);
        CHECK((int64_t)g.upper_unipotent().size() == r.p);
        CHECK(g.class_of(g.identity_id()) == g.class_of(g.identity_id()));
        CHECK(g.class_size(g.class_of(g.identity_id())) == 1);
    }
}

TEST_CASE("gl2 over Z/4 and Z/9") {
    GL2 g4(2, 2);
    CHECK(g4.order() == 96);
    CHECK(sum_class_sizes(g4) == 96);
    CHECK(g4.center_ids().size() == 2);
    CHECK(g4.congruence_kernel(1).size() == 16);
    CHECK(g4.congruence_kernel(2).size() == 1);

    GL2 g9(3, 2);
    CHECK(g9.order() == 3888);
    CHECK(sum_class_sizes(g9) == 3888);
    CHECK(g9.center_ids().size() == 6);
    CHECK(g9.congruence_kernel(1).size() == 81);
    CHECK(g9.exponent() == 72);
    // kernel elements reduce to the identity mod 3
    for (int64_t id : g9.congruence_kernel(1)) {
        auto [a, b, c, d] = g9.unpack(g9.code_of(id));
        CHECK(a % 3 == 1);
        CHECK(d % 3 == 1);
        CHECK(b % 3 == 0);
        CHECK(c % 3 == 0);
    }
}

TEST_CASE("gl2 group laws") {
    GL2 g(3, 2);
    const int64_t n = g.order();
    // spot-check associativity and inverses on a deterministic sample
    for (int64_t x = 7; x < n; x += 401) {
        CHECK(g.mul(x, g.inv(x)) == g.identity_id());
        for (int64_t y = 11; y < n; y += 577) {
            for (int64_t z = 13; z < n; z += 733) {
                CHECK(g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z)));
            }
            // conjugation preserves the class
            CHECK(g.class_of(g.mul(g.inv(y), g.mul(x, y))) == g.class_of(x));
        }
    }
    // det and trace behave
    uint32_t x = g.pack(2, 1, 3, 4), y = g.pack(1, 2, 0, 5);
    CHECK(g.det(g.mul_code(x, y)) == g.det(x) * g.det(y) % 9);
    CHECK(g.trace(g.pack(4, 5, 7, 8)) == 3);
}

TEST_CASE("gl2 over Z/25") {
    GL2 g(5, 2);
    CHECK(g.order() == 300000);
    CHECK(sum_class_sizes(g) == 300000);
    CHECK(g.center_ids().size() == 20);
    CHECK(g.congruence_kernel(1).size() == 625);
    CHECK(g.exponent() == 600);
}

TEST_CASE("budget limits") {
    CHECK_THROWS_AS(GL2(5, 3), BudgetExceeded);
    CHECK_THROWS_AS(GL2(2, 9), BudgetExceeded);
    CHECK_THROWS_AS(RamifiedPair(5, 4), BudgetExceeded);
    GL2 g(2, 1);
    CHECK_THROWS_AS(g.id_of(g.pack(1, 1, 1, 1)), std::invalid_argument);
}

TEST_CASE("ramified pair structure") {
    struct Row {
        int64_t p;
        int m;
        int64_t order;
    };
    for (Row r : {Row{2, 1, 8}, Row{3, 1, 36}, Row{2, 2, 64}, Row{3, 2, 972}}) {
        RamifiedPair g(r.p, r.m);
        CHECK(g.order() == r.order);
        CHECK(sum_class_sizes(g) == r.order);
        CHECK(g.m_order() == r.order / 2);
        int64_t pm = g.pm();
        CHECK((int64_t)g.upper_unipotent_m().size() == pm);
        CHECK((int64_t)g.lower_unipotent_m().size() == pm);
        // phi(p^m)^2 p^{2m} ambient elements
        int64_t phi = pm / r.p * (r.p - 1);
        CHECK((int64_t)g.ambient().size() == pm * pm * phi * phi);
        // full inverse check
        for (int64_t x = 0; x < g.order(); ++x)
            CHECK(g.mul(x, g.inv(x)) == g.identity_id());
        // associativity on a sample
        for (int64_t x = 1; x < g.order(); x += 7)
            for (int64_t y = 2; y < g.order(); y += 11)
                for (int64_t z = 3; z < g.order(); z += 13)
                    CHECK(g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z)));
    }
}

TEST_CASE("ramified pair at p=2 is dihedral of order 8") {
    RamifiedPair g(2, 1);
    CHECK(g.order() == 8);
    CHECK(g.num_classes() == 5);
    int order4 = 0, order2 = 0;
    for (int64_t x = 0; x < 8; ++x) {
        int64_t o = g.element_order(x);
        if (o == 4) ++order4;
        if (o == 2) ++order2;
    }
    CHECK(order4 == 2);
    CHECK(order2 == 5);
    CHECK(g.exponent() == 4);
}

TEST_CASE("ramified ambient coordinates") {
    RamifiedPair g(3, 2);
    // sigma is an automorphism of the ambient group and an involution
    std::vector<RamifiedPair::Amb> amb = g.ambient();
    for (size_t i = 5; i < amb.size(); i += 271) {
        const auto& x = amb[i];
        auto s = g.amb_sigma(g.amb_sigma(x));
        CHECK(s.a == x.a);
        CHECK(s.b == x.b);
        CHECK(s.c == x.c);
        CHECK(s.d == x.d);
        CHECK(g.amb_det(g.amb_sigma(x)) == g.amb_det(x));
        for (size_t j = 7; j < amb.size(); j += 397) {
            const auto& y = amb[j];
            auto xy = g.amb_mul(x, y);
            CHECK(g.amb_det(xy) == g.amb_det(x) * g.amb_det(y) % 9);
            auto sxy = g.amb_sigma(xy);
            auto sxsy = g.amb_mul(g.amb_sigma(x), g.amb_sigma(y));
            CHECK(sxy.a == sxsy.a);
            CHECK(sxy.b == sxsy.b);
            CHECK(sxy.c == sxsy.c);
            CHECK(sxy.d == sxsy.d);
        }
        // scalar classes collapse to one id
        RamifiedPair::Amb doubled = {2 * x.a % 9, 2 * x.b % 9, 2 * x.c % 9, 2 * x.d % 9};
        CHECK(g.m_id_of(doubled) == g.m_id_of(x));
        auto inv = g.amb_inv(x);
        auto prod = g.amb_mul(x, inv);
        CHECK(g.m_id_of(prod) == g.m_id_of({1, 0, 0, 1}));
    }
    // depth subgroup images in M
    CHECK(g.depth_kernel_m(1).size() == 27);
    CHECK(g.depth_kernel_m(2).size() == 1);
}
