#include "modcusp/cyclotomic.hpp"

#include <map>
#include <numeric>

namespace modcusp {

namespace {

std::vector<Int> poly_div_exact(std::vector<Int> num, const std::vector<Int>& den) {
    // monic divisor, exact division
    int64_t dn = static_cast<int64_t>(num.size()) - 1;
    int64_t dd = static_cast<int64_t>(den.size()) - 1;
    std::vector<Int> q(dn - dd + 1);
    for (int64_t k = dn - dd; k >= 0; --k) {
        Int c = num[k + dd];
        q[k] = c;
        if (c == 0) continue;
        for (int64_t i = 0; i <= dd; ++i) num[k + i] -= c * den[i];
    }
    for (int64_t i = 0; i < dd; ++i) {
        if (num[i] != 0) throw std::logic_error("poly_div_exact: nonzero remainder");
    }
    return q;
}

struct CycTable {
    int64_t E = 0;
    int64_t phi = 0;
    std::vector<Int> poly;                       // Phi_E
    std::vector<std::pair<int64_t, int64_t>> low;  // nonzero coefficients below x^phi
    std::vector<std::vector<int64_t>> rows;      // x^k mod Phi_E, built lazily
};

CycTable& table(int64_t E) {
    static std::map<int64_t, CycTable> cache;
    auto it = cache.find(E);
    if (it != cache.end()) return it->second;
    CycTable T;
    T.E = E;
    T.phi = euler_phi(E);
    T.poly = cyclotomic_polynomial(E);
    for (int64_t i = 0; i < T.phi; ++i) {
        if (T.poly[i] != 0) T.low.emplace_back(i, static_cast<int64_t>(T.poly[i]));
    }
    return cache.emplace(E, std::move(T)).first->second;
}

void step_row(const CycTable& T, std::vector<int64_t>& r) {
    // r <- x*r mod Phi_E
    int64_t carry = r[T.phi - 1];
    for (int64_t i = T.phi - 1; i > 0; --i) r[i] = r[i - 1];
    r[0] = 0;
    if (carry == 0) return;
    for (auto [i, v] : T.low) {
        int64_t prod;
        if (__builtin_mul_overflow(carry, v, &prod) ||
            __builtin_sub_overflow(r[i], prod, &r[i]))
            throw std::overflow_error("cyclotomic power row overflow");
    }
}

void ensure_rows(CycTable& T, int64_t upto) {
    if (static_cast<int64_t>(T.rows.size()) > upto) return;
    if (T.rows.empty()) {
        T.rows.reserve(std::max<int64_t>(upto + 1, T.phi));
        for (int64_t k = 0; k < T.phi; ++k) {
            std::vector<int64_t> r(T.phi, 0);
            r[k] = 1;
            T.rows.push_back(std::move(r));
        }
    }
    while (static_cast<int64_t>(T.rows.size()) <= upto) {
        std::vector<int64_t> r = T.rows.back();
        step_row(T, r);
        T.rows.push_back(std::move(r));
    }
}

// x^k mod Phi_E; avoids unbounded caching for very large orders
std::vector<int64_t> power_row(int64_t E, int64_t k) {
    CycTable& T = table(E);
    k %= E;
    if (k < 0) k += E;
    int64_t cache_cap = (E <= 1024) ? std::max(E, 2 * T.phi - 1) : (2 * T.phi - 1);
    if (k < cache_cap) {
        ensure_rows(T, k);
        return T.rows[k];
    }
    ensure_rows(T, cache_cap - 1);
    std::vector<int64_t> r = T.rows[cache_cap - 1];
    for (int64_t j = cache_cap - 1; j < k; ++j) step_row(T, r);
    return r;
}

std::vector<Int> reduce_dense(std::vector<Int> w, int64_t E) {
    const CycTable& T = table(E);
    for (int64_t k = static_cast<int64_t>(w.size()) - 1; k >= T.phi; --k) {
        if (w[k] == 0) continue;
        Int c = std::move(w[k]);
        w[k] = 0;
        for (auto [i, v] : T.low) w[k - T.phi + i] -= c * v;
    }
    w.resize(T.phi);
    return w;
}

}  // namespace

std::vector<Int> cyclotomic_polynomial(int64_t n) {
    if (n < 1) throw std::domain_error("cyclotomic_polynomial: n >= 1");
    if (n == 1) return {Int(-1), Int(1)};
    int64_t r = radical(n);
    std::map<int64_t, std::vector<Int>> phi_of;
    for (int64_t d : divisors(r)) {
        if (d == 1) {
            phi_of[1] = {Int(-1), Int(1)};
            continue;
        }
        std::vector<Int> num(d + 1);
        num[0] = -1;
        num[d] = 1;
        for (int64_t dd : divisors(d)) {
            if (dd < d) num = poly_div_exact(std::move(num), phi_of[dd]);
        }
        phi_of[d] = std::move(num);
    }
    const auto& base = phi_of[r];
    int64_t s = n / r;
    if (s == 1) return base;
    std::vector<Int> out((base.size() - 1) * s + 1);
    for (size_t i = 0; i < base.size(); ++i) out[i * s] = base[i];
    return out;
}

// ---------- CycVec ----------

CycVec::CycVec(int64_t order) : E_(order), a_(order, 0) {
    if (order < 1) throw std::domain_error("CycVec: order >= 1");
}

void CycVec::add(const CycVec& other) {
    if (other.E_ != E_) throw std::domain_error("CycVec::add: order mismatch");
    for (int64_t i = 0; i < E_; ++i) {
        if (__builtin_add_overflow(a_[i], other.a_[i], &a_[i]))
            throw std::overflow_error("CycVec: accumulator overflow");
    }
}

void CycVec::scale(int64_t c) {
    for (auto& x : a_) {
        if (__builtin_mul_overflow(x, c, &x)) throw std::overflow_error("CycVec: scale overflow");
    }
}

CycVec CycVec::mul(const CycVec& other) const {
    if (other.E_ != E_) throw std::domain_error("CycVec::mul: order mismatch");
    std::vector<std::pair<int64_t, int64_t>> na, nb;
    for (int64_t i = 0; i < E_; ++i) {
        if (a_[i]) na.emplace_back(i, a_[i]);
        if (other.a_[i]) nb.emplace_back(i, other.a_[i]);
    }
    CycVec out(E_);
    for (auto [i, u] : na) {
        for (auto [j, v] : nb) {
            int64_t k = i + j;
            if (k >= E_) k -= E_;
            int64_t prod;
            if (__builtin_mul_overflow(u, v, &prod) ||
                __builtin_add_overflow(out.a_[k], prod, &out.a_[k]))
                throw std::overflow_error("CycVec: product overflow");
        }
    }
    return out;
}

CycVec CycVec::promoted(int64_t new_order) const {
    if (new_order % E_ != 0) throw std::domain_error("CycVec::promoted: bad order");
    CycVec out(new_order);
    int64_t r = new_order / E_;
    for (int64_t i = 0; i < E_; ++i) {
        if (a_[i]) out.a_[i * r] = a_[i];
    }
    return out;
}

std::vector<Int> CycVec::reduced() const {
    std::vector<Int> w(a_.begin(), a_.end());
    return reduce_dense(std::move(w), E_);
}

bool CycVec::is_zero_elt() const { return is_integer(Int(0)); }

bool CycVec::is_integer(const Int& c) const {
    std::vector<Int> red = reduced();
    if (red[0] != c) return false;
    for (size_t i = 1; i < red.size(); ++i) {
        if (red[i] != 0) return false;
    }
    return true;
}

CyclotomicNumber CycVec::to_number() const {
    std::vector<Int> red = reduced();
    std::vector<Rat> coords(red.size());
    for (size_t i = 0; i < red.size(); ++i) coords[i] = Rat(red[i]);
    return CyclotomicNumber::from_coords(E_, std::move(coords));
}

// ---------- CyclotomicNumber ----------

namespace {

void add_row_scaled(std::vector<Rat>& acc, int64_t E, int64_t k, const Rat& c) {
    if (c == 0) return;
    std::vector<int64_t> row = power_row(E, k);
    for (size_t i = 0; i < acc.size(); ++i) {
        if (row[i]) acc[i] += c * row[i];
    }
}

}  // namespace

CyclotomicNumber CyclotomicNumber::zero(int64_t order) {
    return from_coords(order, std::vector<Rat>(euler_phi(order), Rat(0)));
}

CyclotomicNumber CyclotomicNumber::one(int64_t order) {
    std::vector<Rat> c(euler_phi(order), Rat(0));
    c[0] = 1;
    return from_coords(order, std::move(c));
}

CyclotomicNumber CyclotomicNumber::from_rational(const Rat& r) {
    std::vector<Rat> c(1, r);
    return from_coords(1, std::move(c));
}

CyclotomicNumber CyclotomicNumber::zeta_power(int64_t order, int64_t k) {
    std::vector<Rat> c(euler_phi(order), Rat(0));
    add_row_scaled(c, order, k, Rat(1));
    return from_coords(order, std::move(c));
}

CyclotomicNumber CyclotomicNumber::from_coords(int64_t order, std::vector<Rat> coords) {
    if (static_cast<int64_t>(coords.size()) != euler_phi(order))
        throw std::domain_error("CyclotomicNumber: wrong coordinate length");
    CyclotomicNumber x;
    x.E_ = order;
    x.c_ = std::move(coords);
    return x;
}

CyclotomicNumber CyclotomicNumber::promoted(int64_t new_order) const {
    if (new_order % E_ != 0) throw std::domain_error("CyclotomicNumber::promoted: bad order");
    if (new_order == E_) return *this;
    int64_t r = new_order / E_;
    std::vector<Rat> acc(euler_phi(new_order), Rat(0));
    for (size_t j = 0; j < c_.size(); ++j) add_row_scaled(acc, new_order, j * r, c_[j]);
    return from_coords(new_order, std::move(acc));
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& o) {
    int64_t L = std::lcm(E_, o.E_);
    if (L != E_) *this = promoted(L);
    CyclotomicNumber rhs = (o.E_ == L) ? o : o.promoted(L);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
    return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& o) {
    *this += -o;
    return *this;
}

CyclotomicNumber CyclotomicNumber::operator-() const {
    CyclotomicNumber x = *this;
    for (auto& v : x.c_) v = -v;
    return x;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const CyclotomicNumber& o) {
    int64_t L = std::lcm(E_, o.E_);
    CyclotomicNumber a = (E_ == L) ? *this : promoted(L);
    CyclotomicNumber b = (o.E_ == L) ? o : o.promoted(L);
    int64_t phi = static_cast<int64_t>(a.c_.size());
    std::vector<Rat> conv(2 * phi - 1, Rat(0));
    for (int64_t i = 0; i < phi; ++i) {
        if (a.c_[i] == 0) continue;
        for (int64_t j = 0; j < phi; ++j) {
            if (b.c_[j] == 0) continue;
            conv[i + j] += a.c_[i] * b.c_[j];
        }
    }
    std::vector<Rat> acc(conv.begin(), conv.begin() + phi);
    for (int64_t k = phi; k < 2 * phi - 1; ++k) add_row_scaled(acc, L, k, conv[k]);
    E_ = L;
    c_ = std::move(acc);
    return *this;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const Rat& s) {
    for (auto& v : c_) v *= s;
    return *this;
}

bool CyclotomicNumber::operator==(const CyclotomicNumber& o) const {
    int64_t L = std::lcm(E_, o.E_);
    CyclotomicNumber a = (E_ == L) ? *this : promoted(L);
    CyclotomicNumber b = (o.E_ == L) ? o : o.promoted(L);
    return a.c_ == b.c_;
}

bool CyclotomicNumber::is_zero() const {
    for (const auto& v : c_) {
        if (v != 0) return false;
    }
    return true;
}

bool CyclotomicNumber::is_rational(Rat* out) const {
    for (size_t i = 1; i < c_.size(); ++i) {
        if (c_[i] != 0) return false;
    }
    if (out) *out = c_[0];
    return true;
}

CyclotomicNumber CyclotomicNumber::galois(int64_t k) const {
    if (E_ == 1) return *this;
    k = mod_norm(k, E_);
    if (std::gcd(k, E_) != 1) throw std::domain_error("galois: exponent not coprime to order");
    std::vector<Rat> acc(c_.size(), Rat(0));
    for (size_t j = 0; j < c_.size(); ++j) add_row_scaled(acc, E_, (j * k) % E_, c_[j]);
    return from_coords(E_, std::move(acc));
}

ComplexBig CyclotomicNumber::embed() const {
    ComplexBig zeta = unit_circle(BigFloat(1) / E_);
    ComplexBig acc;
    for (int64_t j = static_cast<int64_t>(c_.size()) - 1; j >= 0; --j) {
        acc *= zeta;
        if (c_[j] != 0) acc += ComplexBig(BigFloat(c_[j]));
    }
    return acc;
}

}  // namespace modcusp
