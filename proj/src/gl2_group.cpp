#include "modcusp/gl2_group.hpp"

#include <numeric>
#include <queue>

#include "modcusp/numbers.hpp"

namespace modcusp {

int64_t FiniteGroupView::element_order(int64_t x) const {
    int64_t e = identity_id();
    int64_t acc = x, n = 1;
    while (acc != e) {
        acc = mul(acc, x);
        ++n;
        if (n > order()) throw std::logic_error("element order exceeds group order");
    }
    return n;
}

int64_t FiniteGroupView::exponent() const {
    int64_t ex = 1;
    for (int j = 0; j < num_classes(); ++j)
        ex = std::lcm(ex, element_order(class_rep(j)));
    return ex;
}

int FiniteGroupView::inverse_class(int j) const { return class_of(inv(class_rep(j))); }

int FiniteGroupView::power_class(int j, int64_t t) const {
    int64_t ord = element_order(class_rep(j));
    t %= ord;
    if (t < 0) t += ord;
    int64_t acc = identity_id(), g = class_rep(j);
    while (t--) acc = mul(acc, g);
    return class_of(acc);
}

// ---------------------------------------------------------------- GL2

namespace {
int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    while (e--) r *= b;
    return r;
}

// a generator of (Z/q)^x when cyclic; for q = 2^a, a >= 3 callers handle
// the extra factor separately
int64_t unit_generator(int64_t q, int64_t p) {
    int64_t phi = q / p * (p - 1);
    for (int64_t g = 2; g < q; ++g) {
        if (std::gcd(g, q) != 1) continue;
        int64_t acc = g % q;
        int64_t n = 1;
        while (acc != 1) {
            acc = acc * g % q;
            ++n;
        }
        if (n == phi) return g;
    }
    throw std::logic_error("no unit generator found");
}
}  // namespace

GL2::GL2(int64_t p, int m, int64_t element_budget) : p_(p), m_(m), pm_(ipow(p, m)) {
    if (pm_ > 256) throw BudgetExceeded("modulus too large for packed codes");
    int64_t codes = pm_ * pm_ * pm_ * pm_;
    if (codes > element_budget)
        throw BudgetExceeded("group GL2(Z/" + std::to_string(pm_) + ") exceeds the element budget");
    code_to_id_.assign(codes, -1);
    for (int64_t code = 0; code < codes; ++code) {
        if (invertible((uint32_t)code)) {
            code_to_id_[code] = (int32_t)elements_.size();
            elements_.push_back((uint32_t)code);
        }
    }
    id_identity_ = id_of(pack(1, 0, 0, 1));
    build_classes();
}

uint32_t GL2::pack(int64_t a, int64_t b, int64_t c, int64_t d) const {
    auto r = [this](int64_t v) { return ((v % pm_) + pm_) % pm_; };
    return (uint32_t)(((r(a) * pm_ + r(b)) * pm_ + r(c)) * pm_ + r(d));
}

std::array<int64_t, 4> GL2::unpack(uint32_t code) const {
    int64_t d = code % pm_, c = code / pm_ % pm_, b = code / (pm_ * pm_) % pm_;
    int64_t a = code / (pm_ * pm_ * pm_);
    return {a, b, c, d};
}

bool GL2::invertible(uint32_t code) const { return det(code) % p_ != 0; }

int64_t GL2::det(uint32_t code) const {
    auto [a, b, c, d] = unpack(code);
    return ((a * d - b * c) % pm_ + pm_) % pm_;
}

int64_t GL2::trace(uint32_t code) const {
    auto [a, b, c, d] = unpack(code);
    (void)b;
    (void)c;
    return (a + d) % pm_;
}

uint32_t GL2::mul_code(uint32_t x, uint32_t y) const {
    auto [a, b, c, d] = unpack(x);
    auto [e, f, g, h] = unpack(y);
    return pack(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h);
}

uint32_t GL2::inv_code(uint32_t x) const {
    auto [a, b, c, d] = unpack(x);
    int64_t dt = det(x);
    int64_t di = inv_mod(dt, pm_);
    return pack(d * di, -b * di, -c * di, a * di);
}

int64_t GL2::id_of(uint32_t code) const {
    int32_t id = code_to_id_[code];
    if (id < 0) throw std::invalid_argument("matrix is not invertible");
    return id;
}

int64_t GL2::mul(int64_t x, int64_t y) const {
    return code_to_id_[mul_code(elements_[x], elements_[y])];
}

int64_t GL2::inv(int64_t x) const { return code_to_id_[inv_code(elements_[x])]; }

void GL2::build_classes() {
    std::vector<uint32_t> gens = {pack(1, 1, 0, 1), pack(1, 0, 1, 1)};
    if (pm_ == 2) {
        // units trivial
    } else if (p_ == 2 && m_ >= 3) {
        gens.push_back(pack(pm_ - 1, 0, 0, 1));
        gens.push_back(pack(5, 0, 0, 1));
    } else {
        gens.push_back(pack(unit_generator(pm_, p_), 0, 0, 1));
    }
    std::vector<std::pair<uint32_t, uint32_t>> conj;  // (g, g^{-1})
    for (uint32_t g : gens) conj.push_back({g, inv_code(g)});

    class_of_id_.assign(elements_.size(), -1);
    for (int64_t start = 0; start < (int64_t)elements_.size(); ++start) {
        if (class_of_id_[start] >= 0) continue;
        int j = (int)class_reps_.size();
        class_reps_.push_back(start);
        class_members_.push_back({});
        std::queue<uint32_t> q;
        q.push(elements_[start]);
        class_of_id_[start] = j;
        while (!q.empty()) {
            uint32_t x = q.front();
            q.pop();
            class_members_[j].push_back(code_to_id_[x]);
            for (auto& [g, gi] : conj) {
                uint32_t y = mul_code(gi, mul_code(x, g));
                int64_t yid = code_to_id_[y];
                if (class_of_id_[yid] < 0) {
                    class_of_id_[yid] = j;
                    q.push(y);
                }
            }
        }
    }
}

std::vector<int64_t> GL2::congruence_kernel(int r) const {
    if (r < 1) throw std::invalid_argument("congruence kernel needs r >= 1");
    if (r >= m_) return {id_identity_};
    int64_t q = ipow(p_, m_ - r), pr = ipow(p_, r);
    std::vector<int64_t> out;
    for (int64_t a = 0; a < q; ++a)
        for (int64_t b = 0; b < q; ++b)
            for (int64_t c = 0; c < q; ++c)
                for (int64_t d = 0; d < q; ++d)
                    out.push_back(id_of(pack(1 + pr * a, pr * b, pr * c, 1 + pr * d)));
    return out;
}

std::vector<int64_t> GL2::center_ids() const {
    std::vector<int64_t> out;
    for (int64_t u = 1; u < pm_; ++u)
        if (u % p_ != 0) out.push_back(id_of(pack(u, 0, 0, u)));
    return out;
}

std::vector<int64_t> GL2::upper_unipotent() const {
    std::vector<int64_t> out;
    for (int64_t b = 0; b < pm_; ++b) out.push_back(id_of(pack(1, b, 0, 1)));
    return out;
}

std::vector<int64_t> GL2::lower_unipotent() const {
    std::vector<int64_t> out;
    for (int64_t c = 0; c < pm_; ++c) out.push_back(id_of(pack(1, 0, c, 1)));
    return out;
}

std::vector<int64_t> GL2::iwahori_ids() const {
    std::vector<int64_t> out;
    for (uint32_t code : elements_) {
        auto [a, b, c, d] = unpack(code);
        (void)a;
        (void)b;
        (void)d;
        if (c % p_ == 0) out.push_back(code_to_id_[code]);
    }
    return out;
}

// ---------------------------------------------------------------- RamifiedPair

RamifiedPair::RamifiedPair(int64_t p, int m, int64_t element_budget)
    : p_(p), m_(m), pm_(ipow(p, m)) {
    phi_ = pm_ / p_ * (p_ - 1);
    m_order_ = pm_ * pm_ * phi_;
    if (2 * m_order_ > element_budget)
        throw BudgetExceeded("ramified pair group exceeds the element budget");
    unit_index_.assign(pm_, -1);
    for (int64_t u = 0; u < pm_; ++u)
        if (u % p_ != 0) {
            unit_index_[u] = (int32_t)units_.size();
            units_.push_back(u);
        }
    id_identity_ = make_id(0, m_id_of({1, 0, 0, 1}));
    build_classes();
}

RamifiedPair::Amb RamifiedPair::amb_mul(const Amb& x, const Amb& y) const {
    auto r = [this](int64_t v) { return ((v % pm_) + pm_) % pm_; };
    return {r(x.a * y.a + p_ * x.b * y.c), r(x.a * y.b + x.b * y.d),
            r(x.c * y.a + x.d * y.c), r(p_ * x.c * y.b + x.d * y.d)};
}

int64_t RamifiedPair::amb_det(const Amb& x) const {
    return (((x.a * x.d - p_ * x.b * x.c) % pm_) + pm_) % pm_;
}

RamifiedPair::Amb RamifiedPair::amb_inv(const Amb& x) const {
    int64_t di = inv_mod(amb_det(x), pm_);
    auto r = [this](int64_t v) { return ((v % pm_) + pm_) % pm_; };
    return {r(x.d * di), r(-x.b * di), r(-x.c * di), r(x.a * di)};
}

RamifiedPair::Amb RamifiedPair::amb_sigma(const Amb& x) const {
    auto r = [this](int64_t v) { return ((v % pm_) + pm_) % pm_; };
    return {x.d, r(-x.c), r(-x.b), x.a};
}

int64_t RamifiedPair::m_id_of(const Amb& x) const {
    if (x.a % p_ == 0 || x.d % p_ == 0)
        throw std::invalid_argument("diagonal of an Iwahori element must be a unit");
    int64_t u = inv_mod(x.a, pm_);
    auto r = [this](int64_t v) { return ((v % pm_) + pm_) % pm_; };
    int64_t b = r(x.b * u), c = r(x.c * u), d = r(x.d * u);
    return (b * pm_ + c) * phi_ + unit_index_[d];
}

RamifiedPair::Amb RamifiedPair::amb_of_m_id(int64_t m_id) const {
    int64_t d = units_[m_id % phi_];
    int64_t c = m_id / phi_ % pm_;
    int64_t b = m_id / phi_ / pm_;
    return {1, b, c, d};
}

std::vector<RamifiedPair::Amb> RamifiedPair::ambient() const {
    std::vector<Amb> out;
    out.reserve(m_order_ * phi_);
    for (int64_t a : units_)
        for (int64_t d : units_)
            for (int64_t b = 0; b < pm_; ++b)
                for (int64_t c = 0; c < pm_; ++c) out.push_back({a, b, c, d});
    return out;
}

int64_t RamifiedPair::mul(int64_t x, int64_t y) const {
    int ex = eps_of(x), ey = eps_of(y);
    Amb mx = amb_of_m_id(x % m_order_), my = amb_of_m_id(y % m_order_);
    Amb prod = amb_mul(ey ? amb_sigma(mx) : mx, my);
    return make_id(ex ^ ey, m_id_of(prod));
}

int64_t RamifiedPair::inv(int64_t x) const {
    int ex = eps_of(x);
    Amb mi = amb_inv(amb_of_m_id(x % m_order_));
    return make_id(ex, m_id_of(ex ? amb_sigma(mi) : mi));
}

void RamifiedPair::build_classes() {
    int64_t n = order();
    class_of_id_.assign(n, -1);
    for (int64_t start = 0; start < n; ++start) {
        if (class_of_id_[start] >= 0) continue;
        int j = (int)class_reps_.size();
        class_reps_.push_back(start);
        class_members_.push_back({});
        // direct orbit: conjugate by every element
        std::vector<int64_t> orbit = {start};
        class_of_id_[start] = j;
        for (size_t k = 0; k < orbit.size(); ++k) {
            class_members_[j].push_back(orbit[k]);
            for (int64_t g = 0; g < n; ++g) {
                int64_t y = mul(inv(g), mul(orbit[k], g));
                if (class_of_id_[y] < 0) {
                    class_of_id_[y] = j;
                    orbit.push_back(y);
                }
            }
        }
    }
}

std::vector<int64_t> RamifiedPair::upper_unipotent_m() const {
    std::vector<int64_t> out;
    for (int64_t b = 0; b < pm_; ++b) out.push_back(make_id(0, m_id_of({1, b, 0, 1})));
    return out;
}

std::vector<int64_t> RamifiedPair::lower_unipotent_m() const {
    std::vector<int64_t> out;
    for (int64_t c = 0; c < pm_; ++c) out.push_back(make_id(0, m_id_of({1, 0, c, 1})));
    return out;
}

std::vector<int64_t> RamifiedPair::depth_kernel_m(int r) const {
    // image in M of the even-depth subgroup {a,d = 1, b,c = 0 mod p^r}
    int64_t pr = ipow(p_, std::min(r, m_));
    int64_t q = pm_ / pr;
    std::vector<int64_t> out;
    std::vector<uint8_t> seen(m_order_, 0);
    for (int64_t a = 0; a < q; ++a)
        for (int64_t d = 0; d < q; ++d)
            for (int64_t b = 0; b < q; ++b)
                for (int64_t c = 0; c < q; ++c) {
                    int64_t id = m_id_of({1 + pr * a, pr * b, pr * c, 1 + pr * d});
                    if (!seen[id]) {
                        seen[id] = 1;
                        out.push_back(make_id(0, id));
                    }
                }
    return out;
}

}  // namespace modcusp
