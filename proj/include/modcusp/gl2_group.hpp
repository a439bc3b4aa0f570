#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace modcusp {

// Raised when a requested group is larger than the configured element budget.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Abstract view of a finite group with integer element ids, enough for
// conjugacy-class based character table computation.
class FiniteGroupView {
public:
    virtual ~FiniteGroupView() = default;
    virtual int64_t order() const = 0;
    virtual int64_t mul(int64_t x, int64_t y) const = 0;
    virtual int64_t inv(int64_t x) const = 0;
    virtual int64_t identity_id() const = 0;
    virtual int num_classes() const = 0;
    virtual int class_of(int64_t x) const = 0;
    virtual int64_t class_rep(int j) const = 0;
    virtual const std::vector<int64_t>& class_elements(int j) const = 0;
    int64_t class_size(int j) const { return (int64_t)class_elements(j).size(); }
    // derived helpers
    int64_t element_order(int64_t x) const;
    int64_t exponent() const;             // lcm of element orders
    int inverse_class(int j) const;       // class of rep(j)^{-1}
    int power_class(int j, int64_t t) const;
};

// GL_2(Z/p^m), elements packed as base-p^m digit codes (a,b,c,d) for
// [[a,b],[c,d]]. Conjugacy classes are found by orbit closure under
// conjugation by a generating set.
class GL2 : public FiniteGroupView {
public:
    GL2(int64_t p, int m, int64_t element_budget = 10'000'000);

    int64_t p() const { return p_; }
    int m() const { return m_; }
    int64_t pm() const { return pm_; }

    uint32_t pack(int64_t a, int64_t b, int64_t c, int64_t d) const;
    std::array<int64_t, 4> unpack(uint32_t code) const;
    bool invertible(uint32_t code) const;
    uint32_t mul_code(uint32_t x, uint32_t y) const;
    uint32_t inv_code(uint32_t x) const;
    int64_t det(uint32_t code) const;
    int64_t trace(uint32_t code) const;

    const std::vector<uint32_t>& elements() const { return elements_; }
    int64_t id_of(uint32_t code) const;   // throws on non-invertible
    uint32_t code_of(int64_t id) const { return elements_[id]; }

    // FiniteGroupView
    int64_t order() const override { return (int64_t)elements_.size(); }
    int64_t mul(int64_t x, int64_t y) const override;
    int64_t inv(int64_t x) const override;
    int64_t identity_id() const override { return id_identity_; }
    int num_classes() const override { return (int)class_reps_.size(); }
    int class_of(int64_t x) const override { return class_of_id_[x]; }
    int64_t class_rep(int j) const override { return class_reps_[j]; }
    const std::vector<int64_t>& class_elements(int j) const override {
        return class_members_[j];
    }

    // structured subsets, as element ids
    std::vector<int64_t> congruence_kernel(int r) const;  // x = I mod p^r, r >= 1
    std::vector<int64_t> center_ids() const;              // scalars u*I
    std::vector<int64_t> upper_unipotent() const;         // [[1,b],[0,1]]
    std::vector<int64_t> lower_unipotent() const;         // [[1,0],[c,1]]
    std::vector<int64_t> iwahori_ids() const;             // c = 0 mod p

private:
    int64_t p_;
    int m_;
    int64_t pm_;
    std::vector<uint32_t> elements_;
    std::vector<int32_t> code_to_id_;
    std::vector<int> class_of_id_;
    std::vector<int64_t> class_reps_;
    std::vector<std::vector<int64_t>> class_members_;
    int64_t id_identity_ = 0;

    void build_classes();
};

// The finite two-step model attached to the ramified (odd conductor 2m+1)
// setting. Elements of the index-2 subgroup M are classes of Iwahori
// matrices [[a,b],[p c,d]] modulo scalars and depth 2m; the outer involution
// is conjugation by the uniformizing element w = [[0,-1],[p,0]] (suitably
// scaled), acting on coordinates as (a,b,c,d) -> (d,-c,-b,a).
//
// Ambient coordinates: a, d units mod p^m; b, c arbitrary mod p^m. M stores
// the scalar-normalized form a = 1. Group ids: [0, |M|) are (0, x) and
// [|M|, 2|M|) are (w, x).
class RamifiedPair : public FiniteGroupView {
public:
    RamifiedPair(int64_t p, int m, int64_t element_budget = 10'000'000);

    int64_t p() const { return p_; }
    int m() const { return m_; }
    int64_t pm() const { return pm_; }
    int64_t m_order() const { return m_order_; }  // |M|; group order is 2|M|

    // ambient element (a,b,c,d), all mod p^m with a,d units
    struct Amb {
        int64_t a, b, c, d;
    };
    Amb amb_mul(const Amb& x, const Amb& y) const;
    Amb amb_inv(const Amb& x) const;
    Amb amb_sigma(const Amb& x) const;            // w-conjugation
    int64_t amb_det(const Amb& x) const;          // a d - p b c mod p^m
    int64_t m_id_of(const Amb& x) const;          // normalize scalars, id in [0,|M|)
    // iterate all p^{2m} phi(p^m)^2 ambient elements
    std::vector<Amb> ambient() const;

    // id helpers: (eps, m-part)
    int64_t make_id(int eps, int64_t m_id) const { return eps ? m_order_ + m_id : m_id; }
    int eps_of(int64_t id) const { return id >= m_order_ ? 1 : 0; }

    // FiniteGroupView
    int64_t order() const override { return 2 * m_order_; }
    int64_t mul(int64_t x, int64_t y) const override;
    int64_t inv(int64_t x) const override;
    int64_t identity_id() const override { return id_identity_; }
    int num_classes() const override { return (int)class_reps_.size(); }
    int class_of(int64_t x) const override { return class_of_id_[x]; }
    int64_t class_rep(int j) const override { return class_reps_[j]; }
    const std::vector<int64_t>& class_elements(int j) const override {
        return class_members_[j];
    }

    // the subgroups entering cuspidality tests: images in M of the
    // unipotent-type subgroups of the Iwahori group
    std::vector<int64_t> upper_unipotent_m() const;  // (1,b,0,1)
    std::vector<int64_t> lower_unipotent_m() const;  // (1,0,c,1)
    // congruence depth subgroup of M: elements with a=d=1 mod p^r, b,c = 0 mod p^r
    std::vector<int64_t> depth_kernel_m(int r) const;

private:
    int64_t p_;
    int m_;
    int64_t pm_;
    int64_t phi_;
    int64_t m_order_;
    std::vector<int32_t> unit_index_;   // index of unit residues, -1 otherwise
    std::vector<int64_t> units_;
    int64_t id_identity_ = 0;
    std::vector<int> class_of_id_;
    std::vector<int64_t> class_reps_;
    std::vector<std::vector<int64_t>> class_members_;

    Amb amb_of_m_id(int64_t m_id) const;
    void build_classes();
};

}  // namespace modcusp
