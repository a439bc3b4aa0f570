#pragma once

#include <vector>

#include "modcusp/cyclotomic.hpp"
#include "modcusp/gl2_group.hpp"

namespace modcusp {

// Character table computed by the class-sum splitting method over F_ell for a
// prime ell = 1 mod exponent(G) with ell > 2 sqrt(|G|) (and hence ell coprime
// to |G|). At such a prime the table of irreducible characters reduces
// injectively to F_ell, all character values live in F_ell, and any integer
// invariant bounded by dim < ell can be read off exactly from its residue.
struct ModularCharacterTable {
    int64_t ell = 0;
    int64_t exponent = 0;  // group exponent E; E | ell - 1
    int64_t omega = 0;     // fixed primitive E-th root of unity mod ell
    int64_t group_order = 0;
    int num_classes = 0;
    int identity_class = 0;
    std::vector<int64_t> class_sizes;
    std::vector<int64_t> rep_orders;  // order e_j of the class representative
    std::vector<int> inverse_class;
    // power_classes[j][s] = class of rep_j^s for 0 <= s < e_j
    std::vector<std::vector<int>> power_classes;
    std::vector<int64_t> dims;                 // integer dimensions
    std::vector<std::vector<int64_t>> rows;    // rows[i][j] = value mod ell
};

ModularCharacterTable modular_character_table(const FiniteGroupView& G);

// Exact lift of one table row. Theta(g_j) = sum_t mult[j][t] zeta_{e_j}^t with
// multiplicities in [0, dim] recovered by Fourier inversion along the cyclic
// group <g_j>; the lift is unique and certified by the bound mult <= dim < ell.
struct ExactRow {
    int index = 0;
    int64_t dim = 0;
    std::vector<std::vector<int64_t>> mult;
};
ExactRow lift_row(const ModularCharacterTable& T, int i);

// Theta(g_j) as an element of Z[x]/(x^E_target - 1); needs rep_orders[j] | E_target.
CycVec exact_value(const ModularCharacterTable& T, const ExactRow& X, int j,
                   int64_t E_target);

// All t in (Z/E)^* with chi(g^t) = chi(g) for every g; the character field is
// the fixed field, of degree phi(E) / stabilizer size.
std::vector<int64_t> galois_stabilizer(const ModularCharacterTable& T, int i);

// Row index of the conjugate character zeta -> zeta^t applied to row i.
int galois_conjugate_index(const ModularCharacterTable& T, int i, int64_t t);

// Structural facts about one irreducible, each decided exactly mod ell.
struct IrrepInfo {
    int index = 0;
    int64_t dim = 0;
    // least r >= 0 such that the congruence (resp. depth) kernel at r acts
    // trivially; 0 marks the trivial character
    int conductor = 0;
    bool central_trivial = false;
    bool strongly_cuspidal = false;
    bool twist_minimal = false;
    bool rational = false;
    int field_degree = 1;
    int frobenius_schur = 0;
};

std::vector<IrrepInfo> classify_irreps(const GL2& G, const ModularCharacterTable& T);
std::vector<IrrepInfo> classify_irreps(const RamifiedPair& G,
                                       const ModularCharacterTable& T);

// Character table of GL_2(F_p) assembled from the classical closed forms
// (determinant characters, Steinberg twists, principal series, discrete
// series), reduced mod T.ell and sorted like T.rows; only valid when m = 1.
std::vector<std::vector<int64_t>> gl2_prime_closed_form(const GL2& G,
                                                        const ModularCharacterTable& T);

}  // namespace modcusp
