#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "modcusp/cusps.hpp"
#include "modcusp/numbers.hpp"

#include <numeric>
#include <set>

using namespace modcusp;

static int64_t psi_index(int64_t N) {
    // [SL2(Z) : Gamma_0(N)] = N prod (1 + 1/p)
    int64_t r = N;
    for (auto [p, e] : factorize(N)) r = r / p * (p + 1);
    return r;
}

TEST_CASE("cusp counting") {
    CHECK(cusp_count(1) == 1);
    CHECK(cusp_count(4) == 3);
    CHECK(cusp_count(11) == 2);
    CHECK(cusp_count(25) == 6);
    CHECK(cusp_count(48) == static_cast<int64_t>(cusp_classes(48).size()));
    for (int64_t N : {11, 12, 25, 36, 48, 144, 162, 20736}) {
        auto cl = cusp_classes(N);
        CHECK(static_cast<int64_t>(cl.size()) == cusp_count(N));
        std::set<CuspClass> dist(cl.begin(), cl.end());
        CHECK(dist.size() == cl.size());
        // total width equals the index of Gamma_0(N)
        int64_t tw = 0;
        for (auto& c : cl) tw += cusp_width(N, c.level);
        CHECK(tw == psi_index(N));
    }
}

TEST_CASE("classification is complete and Gamma_0-invariant") {
    for (int64_t N : {11, 12, 25, 48, 100}) {
        std::set<CuspClass> seen;
        for (int64_t b = 0; b <= N; ++b) {
            for (int64_t a = 0; a < std::max<int64_t>(N, 2); ++a) {
                if (std::gcd(a, b) != 1) continue;
                seen.insert(classify_cusp(a, b, N));
            }
        }
        CHECK(static_cast<int64_t>(seen.size()) == cusp_count(N));
        // the infinite cusp has level N, the zero cusp level 1
        CHECK(classify_cusp(1, 0, N).level == N);
        CHECK(classify_cusp(0, 1, N).level == 1);
    }
}

TEST_CASE("explicit group invariance") {
    auto apply = [](int64_t x, int64_t y, int64_t zN, int64_t w, int64_t a, int64_t b) {
        return std::pair<int64_t, int64_t>{x * a + y * b, zN * a + w * b};
    };
    for (int64_t N : {11, 12, 25, 48, 100, 162}) {
        // generators-ish: T = [[1,1],[0,1]], and [[1,0],[N,1]]
        for (int64_t b = 0; b <= N; ++b) {
            for (int64_t a = 0; a < N; ++a) {
                if (std::gcd(a, b) != 1) continue;
                CuspClass c = classify_cusp(a, b, N);
                auto [a1, b1] = apply(1, 1, 0, 1, a, b);
                auto [a2, b2] = apply(1, 0, N, 1, a, b);
                auto [a3, b3] = apply(1 - N, 1, -N, 1, a, b);  // det = 1
                CHECK(classify_cusp(a1, b1, N) == c);
                CHECK(classify_cusp(a2, b2, N) == c);
                CHECK(classify_cusp(a3, b3, N) == c);
            }
        }
    }
}

TEST_CASE("level reduction data") {
    CHECK(reduce_level(48, 12) == 4);
    CHECK(reducing_operator(48, 12) == 3);
    CHECK(reducing_operator(48, 4) == 1);
    CHECK(reduce_level(48, 4) == 4);
    CHECK(reduced_levels(48) == std::vector<int64_t>{1, 2, 4});
    CHECK(reduced_levels(144) == std::vector<int64_t>{1, 2, 3, 4, 6, 12});
    CHECK(reduced_levels(20736).size() == 15);
    CHECK(reduced_levels(11) == std::vector<int64_t>{1});
    // delta^2 | N for every reported level, and reduce_level fixes them
    for (int64_t N : {48, 144, 405, 768, 20736}) {
        for (int64_t d : reduced_levels(N)) {
            CHECK(N % (d * d) == 0);
            CHECK(reduce_level(N, d) == d);
        }
    }
}

TEST_CASE("atkin-lehner action on cusps") {
    // worked case: W_3 on X_0(48) sends the level-12 cusp to level 4
    CHECK(atkin_lehner_level(48, 3, 12) == 4);
    CHECK(atkin_lehner_image(48, 3, 1, 12).level == 4);
    CHECK(atkin_lehner_level(48, 3, 4) == 12);

    for (int64_t N : {48, 144, 162, 405}) {
        for (int64_t Q : divisors(N)) {
            if (std::gcd(Q, N / Q) != 1 || Q == 1) continue;
            for (int64_t d : divisors(N)) {
                // image level matches the closed form
                CuspClass img = atkin_lehner_image(N, Q, 1, d);
                CHECK(img.level == atkin_lehner_level(N, Q, d));
                // W_Q is an involution on cusp classes
                // (recover a representative of img as r/level with gcd(r, level) = 1)
                int64_t r = img.residue == 0 ? 1 : img.residue;
                while (std::gcd(r, img.level) != 1) r += std::gcd(img.level, N / img.level);
                CuspClass back = atkin_lehner_image(N, Q, r, img.level);
                CHECK(back == classify_cusp(1, d, N));
            }
        }
    }
}
