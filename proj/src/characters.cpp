#include "modcusp/characters.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace modcusp {

namespace {

int64_t primitive_root_mod(int64_t q, int64_t p) {
    // q = p^a, p odd
    int64_t phi = euler_phi(q);
    auto fac = factorize(phi);
    for (int64_t c = 2; c < q; ++c) {
        if (c % p == 0) continue;
        bool ok = true;
        for (auto [ell, e] : fac) {
            if (mod_pow(c, phi / ell, q) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return c;
    }
    throw std::logic_error("primitive_root_mod: none found");
}

}  // namespace

UnitGroup::UnitGroup(int64_t modulus) : m_(modulus) {
    if (modulus < 1) throw std::domain_error("UnitGroup: modulus >= 1");
    phi_ = euler_phi(m_);
    exponent_ = 1;
    for (auto [p, a] : factorize(m_)) {
        int64_t q = 1;
        for (int i = 0; i < a; ++i) q *= p;
        Component comp;
        comp.q = q;
        comp.first_gen = static_cast<int>(gens_.size());
        if (p == 2 && a == 1) {
            comp.n_gens = 0;
        } else if (p == 2 && a >= 3) {
            comp.n_gens = 2;
            int64_t ord2 = q / 4;
            gens_.push_back(m_ / q == 1 ? q - 1 : crt_pair(q - 1, q, 1, m_ / q));
            orders_.push_back(2);
            gens_.push_back(m_ / q == 1 ? 5 : crt_pair(5, q, 1, m_ / q));
            orders_.push_back(ord2);
            comp.dlog1.assign(q, -1);
            comp.dlog2.assign(q, -1);
            for (int64_t s = 0; s < 2; ++s) {
                int64_t base = s ? q - 1 : 1;
                int64_t x = base;
                for (int64_t t = 0; t < ord2; ++t) {
                    comp.dlog1[x] = static_cast<int32_t>(s);
                    comp.dlog2[x] = static_cast<int32_t>(t);
                    x = mul_mod(x, 5, q);
                }
            }
        } else {
            // odd p, or 2^2 (generator -1)
            comp.n_gens = 1;
            int64_t g = (p == 2) ? 3 : primitive_root_mod(q, p);
            int64_t ord = euler_phi(q);
            gens_.push_back(m_ / q == 1 ? g : crt_pair(g, q, 1, m_ / q));
            orders_.push_back(ord);
            comp.dlog1.assign(q, -1);
            int64_t x = 1;
            for (int64_t e = 0; e < ord; ++e) {
                comp.dlog1[x] = static_cast<int32_t>(e);
                x = mul_mod(x, g, q);
            }
        }
        comps_.push_back(std::move(comp));
    }
    for (int64_t n : orders_) exponent_ = std::lcm(exponent_, n);
}

bool UnitGroup::is_unit(int64_t a) const { return std::gcd(mod_norm(a, m_), m_) == 1; }

std::vector<int64_t> UnitGroup::dlog(int64_t a) const {
    if (!is_unit(a)) throw std::domain_error("UnitGroup::dlog: not a unit");
    a = mod_norm(a, m_);
    std::vector<int64_t> out(gens_.size(), 0);
    for (const auto& comp : comps_) {
        int64_t r = a % comp.q;
        if (comp.n_gens >= 1) {
            out[comp.first_gen] = comp.dlog1[r];
            if (comp.n_gens == 2) out[comp.first_gen + 1] = comp.dlog2[r];
        }
    }
    return out;
}

int64_t UnitGroup::from_exponents(const std::vector<int64_t>& e) const {
    if (e.size() != gens_.size()) throw std::domain_error("from_exponents: length mismatch");
    int64_t x = mod_norm(1, m_);
    for (size_t i = 0; i < e.size(); ++i) x = mul_mod(x, mod_pow(gens_[i], mod_norm(e[i], orders_[i]), m_), m_);
    return x;
}

std::vector<int64_t> UnitGroup::residues() const {
    std::vector<int64_t> out;
    out.reserve(phi_);
    for (int64_t a = 0; a < m_; ++a) {
        if (is_unit(a)) out.push_back(a);
    }
    if (m_ == 1) out.assign(1, 0);
    return out;
}

std::shared_ptr<const UnitGroup> unit_group(int64_t modulus) {
    static std::map<int64_t, std::shared_ptr<const UnitGroup>> cache;
    auto it = cache.find(modulus);
    if (it != cache.end()) return it->second;
    auto U = std::make_shared<const UnitGroup>(modulus);
    cache.emplace(modulus, U);
    return U;
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const UnitGroup> group,
                                       std::vector<int64_t> exps)
    : U_(std::move(group)), exps_(std::move(exps)) {
    const auto& orders = U_->component_orders();
    if (exps_.size() != orders.size())
        throw std::domain_error("DirichletCharacter: exponent length mismatch");
    order_ = 1;
    for (size_t i = 0; i < exps_.size(); ++i) {
        exps_[i] = mod_norm(exps_[i], orders[i]);
        order_ = std::lcm(order_, orders[i] / std::gcd(orders[i], exps_[i]));
    }
}

std::optional<int64_t> DirichletCharacter::value_exponent(int64_t a) const {
    if (!U_->is_unit(a)) return std::nullopt;
    auto d = U_->dlog(a);
    const auto& orders = U_->component_orders();
    int64_t N0 = U_->exponent();
    int64_t acc = 0;
    for (size_t i = 0; i < exps_.size(); ++i) {
        acc = (acc + (N0 / orders[i]) % N0 * exps_[i] % N0 * (d[i] % N0)) % N0;
    }
    int64_t step = N0 / order_;
    if (acc % step != 0) throw std::logic_error("character exponent not aligned");
    return acc / step;
}

std::optional<int64_t> DirichletCharacter::value_exponent_in(int64_t a, int64_t E) const {
    auto t = value_exponent(a);
    if (!t) return std::nullopt;
    if (E % order_ != 0) throw std::domain_error("value_exponent_in: order does not divide E");
    return *t * (E / order_);
}

CyclotomicNumber DirichletCharacter::value(int64_t a) const {
    auto t = value_exponent(a);
    if (!t) return CyclotomicNumber::zero(1);
    return CyclotomicNumber::zeta_power(order_, *t);
}

int DirichletCharacter::sign_at_minus_one() const {
    if (modulus() <= 2) return 1;
    int64_t t = *value_exponent(modulus() - 1);
    return t == 0 ? 1 : -1;
}

int64_t DirichletCharacter::conductor() const {
    if (conductor_cache_ >= 0) return conductor_cache_;
    int64_t m = modulus();
    for (int64_t f : divisors(m)) {
        bool ok = true;
        for (int64_t a = 1; a < m && ok; a += f) {
            if (U_->is_unit(a) && *value_exponent(a) != 0) ok = false;
        }
        if (ok) {
            conductor_cache_ = f;
            return f;
        }
    }
    conductor_cache_ = m;
    return m;
}

DirichletCharacter DirichletCharacter::inverse() const {
    const auto& orders = U_->component_orders();
    std::vector<int64_t> e(exps_.size());
    for (size_t i = 0; i < e.size(); ++i) e[i] = mod_norm(-exps_[i], orders[i]);
    return DirichletCharacter(U_, std::move(e));
}

DirichletCharacter DirichletCharacter::times(const DirichletCharacter& other) const {
    if (modulus() != other.modulus()) throw std::domain_error("times: modulus mismatch");
    std::vector<int64_t> e(exps_.size());
    for (size_t i = 0; i < e.size(); ++i) e[i] = exps_[i] + other.exps_[i];
    return DirichletCharacter(U_, std::move(e));
}

namespace {

// exponents of the character q-component determined by chi on lifted generators
DirichletCharacter transport(const DirichletCharacter& chi,
                             const std::shared_ptr<const UnitGroup>& target,
                             const std::function<int64_t(int64_t)>& lift) {
    const auto& orders = target->component_orders();
    std::vector<int64_t> e(target->generators().size());
    for (size_t j = 0; j < e.size(); ++j) {
        int64_t a = lift(target->generators()[j]);
        auto t = chi.value_exponent(a);
        if (!t) throw std::logic_error("transport: lift not a unit");
        int64_t num = *t * orders[j];
        if (num % chi.order() != 0) throw std::logic_error("transport: value order mismatch");
        e[j] = (num / chi.order()) % orders[j];
    }
    return DirichletCharacter(target, std::move(e));
}

}  // namespace

DirichletCharacter DirichletCharacter::primitive_core() const {
    int64_t f = conductor();
    int64_t m = modulus();
    auto Uf = unit_group(f);
    return transport(*this, Uf, [&](int64_t g) {
        int64_t a = g;
        while (std::gcd(a, m) != 1) a += f;
        return a;
    });
}

DirichletCharacter DirichletCharacter::induced_to(int64_t M) const {
    if (M % modulus() != 0) throw std::domain_error("induced_to: modulus must divide target");
    auto UM = unit_group(M);
    return transport(*this, UM, [](int64_t g) { return g; });
}

DirichletCharacter DirichletCharacter::component_at(int64_t q) const {
    int64_t m = modulus();
    if (m % q != 0 || std::gcd(q, m / q) != 1)
        throw std::domain_error("component_at: need q | m with gcd(q, m/q) = 1");
    auto Uq = unit_group(q);
    return transport(*this, Uq,
                     [&](int64_t g) { return m == q ? g : crt_pair(g, q, 1, m / q); });
}

std::vector<DirichletCharacter> all_characters(int64_t m) {
    auto U = unit_group(m);
    const auto& orders = U->component_orders();
    std::vector<DirichletCharacter> out;
    std::vector<int64_t> e(orders.size(), 0);
    while (true) {
        out.emplace_back(U, e);
        size_t i = 0;
        while (i < e.size()) {
            if (++e[i] < orders[i]) break;
            e[i] = 0;
            ++i;
        }
        if (i == e.size()) break;
    }
    return out;
}

std::vector<DirichletCharacter> primitive_characters(int64_t m) {
    std::vector<DirichletCharacter> out;
    for (auto& chi : all_characters(m)) {
        if (chi.is_primitive()) out.push_back(chi);
    }
    return out;
}

CyclotomicNumber gauss_sum(const DirichletCharacter& chi) {
    int64_t E = std::lcm(chi.modulus(), chi.order());
    return gauss_sum_vec(chi, E).to_number();
}

CycVec gauss_sum_vec(const DirichletCharacter& chi, int64_t E) {
    int64_t m = chi.modulus();
    if (E % std::lcm(m, chi.order()) != 0) throw std::domain_error("gauss_sum_vec: bad order");
    CycVec v(E);
    for (int64_t a : chi.group().residues()) {
        int64_t t = *chi.value_exponent_in(a, E);
        v.add_root(t + (E / m) * a);
    }
    return v;
}

CyclotomicNumber local_gauss_sum(const DirichletCharacter& chi_p, const AdditiveCharacter& psi) {
    int64_t m = chi_p.modulus();
    if (psi.q < 1 || m % psi.q != 0)
        throw std::domain_error("local_gauss_sum: additive level must divide the modulus");
    int64_t E = std::lcm(chi_p.order(), psi.q);
    CycVec v(E);
    for (int64_t x : chi_p.group().residues()) {
        int64_t t = *chi_p.value_exponent_in(x, E);
        v.add_root(t + psi.exponent_in(x, E));
    }
    return v.to_number();
}

std::vector<DirichletCharacter> family_primitive(int64_t d) {
    std::vector<DirichletCharacter> out;
    for (int64_t f : divisors(d)) {
        if (std::gcd(f, d / f) != 1) continue;
        if (radical(d / f) != d / f) continue;
        for (auto& chi : primitive_characters(f)) out.push_back(chi);
    }
    return out;
}

std::vector<DirichletCharacter> family_induced(int64_t d) {
    std::vector<DirichletCharacter> out;
    for (auto& chi : family_primitive(d)) out.push_back(chi.induced_to(d));
    return out;
}

std::vector<DirichletCharacter> family_local(int64_t p, int k) {
    if (k < 1) throw std::domain_error("family_local: k >= 1");
    if (k == 1) return all_characters(p);
    int64_t q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    return primitive_characters(q);
}

bool gauss_crt_identity_holds(const DirichletCharacter& chi, int64_t n) {
    int64_t d = chi.modulus();
    int64_t f = chi.conductor();
    if (std::gcd(f, d / f) != 1 || radical(d / f) != d / f)
        throw std::domain_error("gauss_crt_identity: d / conductor must be squarefree and coprime to the conductor");
    if (std::gcd(mod_norm(n, d), d) != 1) throw std::domain_error("gauss_crt_identity: gcd(n, d) > 1");
    DirichletCharacter bar = chi.inverse();
    CyclotomicNumber lhs = gauss_sum(bar) * bar.value(n);
    int64_t nbar = inv_mod(n, d);
    CyclotomicNumber rhs = CyclotomicNumber::one(1);
    for (auto [p, mp] : factorize(d)) {
        int64_t q = 1;
        for (int i = 0; i < mp; ++i) q *= p;
        int64_t up = inv_mod((d / q) % q, q);
        int64_t scale = mul_mod(mod_norm(nbar, q), up, q);
        DirichletCharacter bar_p = bar.component_at(q);
        rhs = rhs * local_gauss_sum(bar_p, AdditiveCharacter{q, scale});
    }
    return lhs == rhs;
}

}  // namespace modcusp
