#pragma once

#include <cstdint>
#include <vector>

namespace modcusp {

// Cusp class of X_0(N): level d | N together with a residue mod gcd(d, N/d).
struct CuspClass {
    int64_t level;
    int64_t residue;
    bool operator==(const CuspClass&) const = default;
    bool operator<(const CuspClass& o) const {
        return level != o.level ? level < o.level : residue < o.residue;
    }
};

int64_t cusp_count(int64_t N);
std::vector<CuspClass> cusp_classes(int64_t N);

// class of the cusp a/b, (a, b) != (0, 0); b = 0 means the infinite cusp
CuspClass classify_cusp(int64_t a, int64_t b, int64_t N);

int64_t cusp_width(int64_t N, int64_t level);

// gcd(d, N/d): the level reached from level d by the Atkin-Lehner involutions
int64_t reduce_level(int64_t N, int64_t d);
// the product of p^{v_p(N)} over p with 2 v_p(d) > v_p(N); W_Q sends level d
// to reduce_level(N, d)
int64_t reducing_operator(int64_t N, int64_t d);
// divisors delta of N with delta^2 | N (exactly the possible reduced levels)
std::vector<int64_t> reduced_levels(int64_t N);

// level of the W_Q image of a level-d cusp, Q || N
int64_t atkin_lehner_level(int64_t N, int64_t Q, int64_t d);
// image class of the cusp a/b under W_Q
CuspClass atkin_lehner_image(int64_t N, int64_t Q, int64_t a, int64_t b);

}  // namespace modcusp
