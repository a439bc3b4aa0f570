#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "modcusp/ramification.hpp"

using namespace modcusp;

namespace {
std::map<int64_t, RamResult> profile_map(const EllipticCurve& E, const RamOptions& o) {
    std::map<int64_t, RamResult> m;
    for (const auto& r : ramification_profile(E, o)) m[r.level] = r;
    return m;
}
}  // namespace

TEST_CASE("prime level: unramified at the single reduced cusp") {
    EllipticCurve e11{"11a3", 11, 0, -1, 1, 0, 0};
    RamOptions o;
    auto m = profile_map(e11, o);
    REQUIRE(m.size() == 1);
    CHECK(m[1].determinate);
    CHECK(m[1].e == 1);
    CHECK(m[1].residual < 0.1);
}

TEST_CASE("squarefree level stays unramified") {
    EllipticCurve e15{"15a", 15, 1, 1, 1, -10, -10};
    auto m = profile_map(e15, RamOptions{});
    REQUIRE(m.size() == 1);  // only d = 1 has d^2 | 15
    CHECK(m[1].determinate);
    CHECK(m[1].e == 1);
}

TEST_CASE("level 48: ramification appears at d = 4") {
    EllipticCurve e48{"48a", 48, 0, 1, 0, -4, -4};
    auto m = profile_map(e48, RamOptions{});
    REQUIRE(m.size() == 3);
    CHECK(m[1].e == 1);
    CHECK(m[2].e == 1);
    CHECK(m[4].e == 2);
    for (auto& [d, r] : m) {
        CHECK(r.determinate);
        CHECK(r.residual < 0.1);
    }
}

TEST_CASE("level 64 and the double cover pattern") {
    EllipticCurve e64{"64a", 64, 0, 0, 0, 1, 0};
    auto m = profile_map(e64, RamOptions{});
    CHECK(m[1].e == 1);
    CHECK(m[2].e == 1);
    CHECK(m[4].e == 1);
    CHECK(m[8].e == 2);
}

TEST_CASE("level 144, CM curve: index 4 at both deep cusps") {
    EllipticCurve e144{"144a", 144, 0, 0, 0, 0, -1};
    auto m = profile_map(e144, RamOptions{});
    REQUIRE(m.size() == 6);
    CHECK(m[1].e == 1);
    CHECK(m[2].e == 1);
    CHECK(m[3].e == 1);
    CHECK(m[6].e == 1);
    CHECK(m[4].e == 4);
    CHECK(m[12].e == 4);
}

TEST_CASE("level 80: the two isogeny classes differ at d = 4") {
    EllipticCurve e80b{"80b", 80, 0, -1, 0, 4, -4};
    auto m = profile_map(e80b, RamOptions{});
    CHECK(m[4].e == 4);
}

TEST_CASE("window too small is reported, not misread") {
    EllipticCurve e144{"144a", 144, 0, 0, 0, 0, -1};
    RamOptions o;
    o.e_max = 2;
    auto r = ramification_at(e144, {}, 1, 4, o);
    CHECK_FALSE(r.determinate);
    CHECK(r.note.find("window") != std::string::npos);
}

TEST_CASE("invalid cusp arguments throw") {
    EllipticCurve e48{"48a", 48, 0, 1, 0, -4, -4};
    CHECK_THROWS(ramification_at(e48, {}, 1, 3, RamOptions{}));   // 9 does not divide 48
    CHECK_THROWS(ramification_at(e48, {}, 2, 4, RamOptions{}));   // residue shares a factor
}

TEST_CASE("nontrivial residue at a deep cusp agrees with residue 1 here") {
    // At N = 144, d = 4 the cusps 1/4 and 3/4 are measured independently.
    EllipticCurve e144{"144a", 144, 0, 0, 0, 0, -1};
    auto r1 = ramification_at(e144, {}, 1, 4, RamOptions{});
    auto r3 = ramification_at(e144, {}, 3, 4, RamOptions{});
    CHECK(r1.determinate);
    CHECK(r3.determinate);
    CHECK(r1.e == 4);
    CHECK(r3.e == 4);
}
