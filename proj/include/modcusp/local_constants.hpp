#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "modcusp/characters.hpp"
#include "modcusp/gl2_chartab.hpp"

namespace modcusp {

// Inducing data for a cuspidal representation of conductor p^n lives on a
// finite quotient: n = 2m on GL_2(Z/p^m), n = 2m+1 on the two-element
// extension of the Iwahori quotient by the uniformizer involution.
enum class InducingCase { unramified, ramified };

// One strongly cuspidal row with trivial central character, together with its
// exact character lift.
struct CuspidalIrrep {
    int index = 0;
    int64_t dim = 0;
    IrrepInfo info;
    ExactRow lift;
};

struct TSumResult {
    int64_t p = 0;
    int m = 0;
    InducingCase kind = InducingCase::unramified;
    int irrep_index = 0;
    int64_t psi_unit = 1;    // v: the trace character is zeta_{p^m}^{v tr}
    int k = 1;               // level of the determinant character
    int64_t lambda = 1;      // zeta_{p^k}^{lambda det}
    CyclotomicNumber exact;  // the scalar value
    bool is_zero = false;
};

struct IdentityCheck {
    // both sides cleared of denominators: lhs = p^{2m} dim sum_chi tau eps,
    // rhs = (p-1) p^{k-1} times the weighted character sum
    CyclotomicNumber lhs, rhs;
    bool equal = false;
};

// Finite quotient of one inducing case: group, character table, row
// classification, and the per-element weights entering the epsilon and T sums.
class CuspidalContext {
  public:
    CuspidalContext(int64_t p, int m, InducingCase kind, int64_t budget = 10'000'000);

    int64_t p() const { return p_; }
    int m() const { return m_; }
    InducingCase kind() const { return kind_; }
    int64_t pm() const { return pm_; }
    int conductor_exponent() const {
        return kind_ == InducingCase::unramified ? 2 * m_ : 2 * m_ + 1;
    }
    // common order for exact values: lcm of group exponent, p^m and phi(p^m)
    int64_t value_order() const { return Ecase_; }

    const ModularCharacterTable& table() const { return T_; }
    const std::vector<IrrepInfo>& irreps() const { return infos_; }
    const std::vector<CuspidalIrrep>& cuspidal() const { return cusp_; }

    // The Bushnell sum with the central factor folded in, times p^{2m} dim:
    // sum over the quotient of psi_v(trace weight) chibar(det) Theta-check.
    // Divide by p^{2m} dim for the epsilon factor of the chi-twist.
    CycVec epsilon_core(const CuspidalIrrep& th, int64_t v = 1,
                        const DirichletCharacter* chi = nullptr) const;
    CyclotomicNumber bushnell_epsilon(const CuspidalIrrep& th, int64_t v = 1,
                                      const DirichletCharacter* chi = nullptr) const;

    // The T sum as dim times its scalar value
    CycVec t_core(const CuspidalIrrep& th, int64_t v, int k, int64_t lambda) const;
    TSumResult t_sum(const CuspidalIrrep& th, int64_t v, int k, int64_t lambda) const;

    // exact nonzero test with a single-prime fast path
    bool core_is_zero(const CycVec& acc) const;

    // Character-sum identity: the tau-weighted sum of twisted epsilons against
    // the single weighted sum; exact equality in integral form. Requires a
    // twist-minimal row (the twisted conductor must not drop).
    IdentityCheck charsum_identity_check(const CuspidalIrrep& th, int64_t v, int k,
                                         int64_t lambda) const;

  private:
    int64_t p_;
    int m_;
    InducingCase kind_;
    int64_t pm_;
    int64_t Ecase_;
    int64_t zero_ell_ = 0, zero_w_ = 0;  // eval prime for the nonzero fast path
    std::unique_ptr<GL2> g_;
    std::unique_ptr<RamifiedPair> r_;
    ModularCharacterTable T_;
    std::vector<IrrepInfo> infos_;
    std::vector<CuspidalIrrep> cusp_;
    // unramified: trace and determinant of a representative, per class
    std::vector<int64_t> cls_tr_, cls_det_;
    // ramified: per coset element, beta - gamma, the determinant, and the class
    // of the image on the involution coset
    std::vector<int64_t> amb_trp_, amb_det_;
    std::vector<int> amb_cls_;

    void add_value(CycVec& acc, const CuspidalIrrep& th, int value_class, int64_t root,
                   int64_t weight) const;
};

struct TSumCell {
    int k = 1;
    int64_t lambda = 1;
    bool zero = false;
};
struct IrrepReport {
    int index = 0;
    int64_t dim = 0;
    int conductor = 0;
    bool strongly_cuspidal = true;
    bool central_trivial = true;
    bool twist_minimal = false;
    bool rational = false;
    int field_degree = 1;
    bool asserted = false;       // falls under the nonvanishing theorem
    std::vector<TSumCell> tsums;  // zero pattern at psi unit v = 1
};
struct SweepReport {
    int64_t p = 0;
    int m = 0;
    InducingCase kind = InducingCase::unramified;
    std::vector<IrrepReport> irreps;
    int64_t checked = 0;  // asserted (irrep, v, k, lambda) combinations
    int64_t failures = 0;
    bool pass = false;
};

// Exhaustive nonvanishing check: every strongly cuspidal central-trivial
// twist-minimal row with rational character field must give T != 0 for all
// psi units v mod p^m, all levels 1 <= k <= m and units lambda mod p^k.
// Non-rational or non-minimal rows are reported but not asserted.
SweepReport verify_thm43(const CuspidalContext& ctx);

// Local product of the cusp-coefficient formula. d is the product of the
// contexts' p^m; for a unit n mod d, psi'_p is scaled by the CRT unit
// n (d/p^{m_p})^{-1} mod p^{m_p}. The value is exact up to a nonzero constant
// (each factor is normalized by dim only).
struct MerelFactor {
    int64_t p = 0;
    int64_t lambda = 0;
    bool zero = false;
};
struct MerelVerdict {
    bool zero = false;
    std::vector<MerelFactor> factors;
    CyclotomicNumber value;
};
MerelVerdict merel_local_product(
    const std::vector<std::pair<const CuspidalContext*, const CuspidalIrrep*>>& locals,
    int64_t n);

// Exhaustive checks of the coset-character identities on the Iwahori quotient:
// the defining relation against the closed form, multiplicativity, coset
// invariance, pairwise distinctness, and injectivity of the off-diagonal map.
struct RamifiedIdentityReport {
    bool closed_form = false;
    bool multiplicative = false;
    bool coset_invariant = false;
    bool pairwise_distinct = false;
    bool h_injective = false;
    bool all() const {
        return closed_form && multiplicative && coset_invariant && pairwise_distinct &&
               h_injective;
    }
};
RamifiedIdentityReport section7_identities(int64_t p, int m);

}  // namespace modcusp
