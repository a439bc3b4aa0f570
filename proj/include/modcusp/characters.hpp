#pragma once

#include "modcusp/cyclotomic.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace modcusp {

// (Z/m)^* presented as a product of cyclic groups with explicit generators.
class UnitGroup {
  public:
    explicit UnitGroup(int64_t modulus);

    int64_t modulus() const { return m_; }
    int64_t size() const { return phi_; }
    int64_t exponent() const { return exponent_; }
    const std::vector<int64_t>& generators() const { return gens_; }
    const std::vector<int64_t>& component_orders() const { return orders_; }

    bool is_unit(int64_t a) const;
    // exponents (e_i) with a = prod gens[i]^e_i; throws for non-units
    std::vector<int64_t> dlog(int64_t a) const;
    int64_t from_exponents(const std::vector<int64_t>& e) const;
    std::vector<int64_t> residues() const;

  private:
    int64_t m_, phi_, exponent_;
    std::vector<int64_t> gens_;
    std::vector<int64_t> orders_;
    // per prime-power component: modulus q and dlog tables
    struct Component {
        int64_t q;
        int first_gen;  // index into gens_
        int n_gens;     // 0, 1 or 2
        std::vector<int32_t> dlog1, dlog2;
    };
    std::vector<Component> comps_;
};

std::shared_ptr<const UnitGroup> unit_group(int64_t modulus);

class DirichletCharacter {
  public:
    DirichletCharacter(std::shared_ptr<const UnitGroup> group, std::vector<int64_t> exps);

    int64_t modulus() const { return U_->modulus(); }
    const UnitGroup& group() const { return *U_; }
    const std::vector<int64_t>& exponents() const { return exps_; }
    int64_t order() const { return order_; }

    // t with chi(a) = zeta_order^t, or nullopt when gcd(a, m) > 1
    std::optional<int64_t> value_exponent(int64_t a) const;
    // same exponent rescaled to zeta_E, order() | E
    std::optional<int64_t> value_exponent_in(int64_t a, int64_t E) const;
    CyclotomicNumber value(int64_t a) const;
    int sign_at_minus_one() const;  // chi(-1)

    int64_t conductor() const;
    bool is_primitive() const { return conductor() == modulus(); }
    bool is_trivial() const { return order_ == 1; }

    DirichletCharacter inverse() const;
    DirichletCharacter times(const DirichletCharacter& other) const;  // same modulus
    DirichletCharacter primitive_core() const;     // character mod conductor
    DirichletCharacter induced_to(int64_t M) const;  // modulus() | M
    // component mod q where q | m and gcd(q, m/q) = 1
    DirichletCharacter component_at(int64_t q) const;

    bool operator==(const DirichletCharacter& o) const {
        return modulus() == o.modulus() && exps_ == o.exps_;
    }

  private:
    std::shared_ptr<const UnitGroup> U_;
    std::vector<int64_t> exps_;
    int64_t order_;
    mutable int64_t conductor_cache_ = -1;
};

std::vector<DirichletCharacter> all_characters(int64_t m);
std::vector<DirichletCharacter> primitive_characters(int64_t m);

// additive character x -> zeta_q^{scale*x}
struct AdditiveCharacter {
    int64_t q;
    int64_t scale;
    int64_t exponent_in(int64_t x, int64_t E) const {
        return mod_norm(mul_mod(scale, mod_norm(x, q), q), q) * (E / q);
    }
};

// sum over a mod m of chi(a) zeta_m^a
CyclotomicNumber gauss_sum(const DirichletCharacter& chi);
// the same sum as an unreduced root-of-unity vector of the given order
CycVec gauss_sum_vec(const DirichletCharacter& chi, int64_t E);

// sum over units x mod p^k of chi(x) psi(x); psi must have level p^l with l <= k
CyclotomicNumber local_gauss_sum(const DirichletCharacter& chi_p, const AdditiveCharacter& psi);

// Character families attached to a modulus d:
//   family_primitive(d): primitive chi with conductor f | d, gcd(f, d/f) = 1, d/f squarefree
//   family_induced(d):   the same characters induced to modulus d
//   family_local(p, k):  k = 1: all characters mod p;  k >= 2: primitive mod p^k
std::vector<DirichletCharacter> family_primitive(int64_t d);
std::vector<DirichletCharacter> family_induced(int64_t d);
std::vector<DirichletCharacter> family_local(int64_t p, int k);

// tau(conj chi) * conj-chi(n) = prod over p | d of local Gauss sums at the CRT
// decomposition of zeta_d; exact identity test for chi mod d in the induced family
// (d / conductor squarefree and coprime to the conductor), gcd(n, d) = 1
bool gauss_crt_identity_holds(const DirichletCharacter& chi, int64_t n);

}  // namespace modcusp
