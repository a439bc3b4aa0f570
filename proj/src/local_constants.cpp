#include "modcusp/local_constants.hpp"

#include <numeric>
#include <set>
#include <stdexcept>

namespace modcusp {

namespace {

int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// smallest prime = 1 mod E together with a primitive E-th root of unity,
// used to certify nonzero sums by a single evaluation
std::pair<int64_t, int64_t> eval_prime(int64_t E) {
    int64_t ell = E + 1;
    while (!is_prime(ell)) ell += E;
    auto fac = factorize(ell - 1);
    int64_t g = 2;
    for (;; ++g) {
        bool prim = true;
        for (const auto& [q, e] : fac)
            if (mod_pow(g, (ell - 1) / q, ell) == 1) {
                prim = false;
                break;
            }
        if (prim) break;
    }
    return {ell, mod_pow(g, (ell - 1) / E, ell)};
}

}  // namespace

CuspidalContext::CuspidalContext(int64_t p, int m, InducingCase kind, int64_t budget)
    : p_(p), m_(m), kind_(kind), pm_(ipow(p, m)) {
    if (m < 1) throw std::invalid_argument("level exponent must be positive");
    int64_t phi = pm_ - pm_ / p_;
    if (kind_ == InducingCase::unramified) {
        g_ = std::make_unique<GL2>(p, m, budget);
        T_ = modular_character_table(*g_);
        infos_ = classify_irreps(*g_, T_);
        cls_tr_.resize(T_.num_classes);
        cls_det_.resize(T_.num_classes);
        for (int j = 0; j < T_.num_classes; ++j) {
            uint32_t code = g_->code_of(g_->class_rep(j));
            cls_tr_[j] = g_->trace(code);
            cls_det_[j] = g_->det(code);
        }
    } else {
        r_ = std::make_unique<RamifiedPair>(p, m, budget);
        T_ = modular_character_table(*r_);
        infos_ = classify_irreps(*r_, T_);
        auto amb = r_->ambient();
        amb_trp_.reserve(amb.size());
        amb_det_.reserve(amb.size());
        amb_cls_.reserve(amb.size());
        for (const auto& x : amb) {
            amb_trp_.push_back(mod_norm(x.b - x.c, pm_));
            amb_det_.push_back(r_->amb_det(x));
            amb_cls_.push_back(r_->class_of(r_->make_id(1, r_->m_id_of(x))));
        }
    }
    Ecase_ = std::lcm(std::lcm(T_.exponent, pm_), phi);
    if (Ecase_ == T_.exponent) {
        zero_ell_ = T_.ell;
        zero_w_ = T_.omega;
    } else {
        auto [ell, w] = eval_prime(Ecase_);
        zero_ell_ = ell;
        zero_w_ = w;
    }
    for (const auto& info : infos_) {
        if (!info.strongly_cuspidal || !info.central_trivial) continue;
        cusp_.push_back({info.index, info.dim, info, lift_row(T_, info.index)});
    }
}

void CuspidalContext::add_value(CycVec& acc, const CuspidalIrrep& th, int value_class,
                                int64_t root, int64_t weight) const {
    int64_t e = T_.rep_orders[value_class];
    int64_t stride = Ecase_ / e;
    const auto& mult = th.lift.mult[value_class];
    for (int64_t t = 0; t < e; ++t)
        if (mult[t]) acc.add_root(root + stride * t, weight * mult[t]);
}

CycVec CuspidalContext::epsilon_core(const CuspidalIrrep& th, int64_t v,
                                     const DirichletCharacter* chi) const {
    if (std::gcd(mod_norm(v, pm_), pm_) != 1)
        throw std::invalid_argument("trace character unit must be invertible");
    std::optional<DirichletCharacter> chibar;
    if (chi) chibar.emplace(chi->inverse());
    CycVec acc(Ecase_);
    int64_t tr_stride = Ecase_ / pm_;
    if (kind_ == InducingCase::unramified) {
        for (int j = 0; j < T_.num_classes; ++j) {
            int64_t w = tr_stride * mod_norm(v * cls_tr_[j], pm_);
            if (chibar)
                w += *chibar->value_exponent_in(mod_norm(cls_det_[j], chibar->modulus()),
                                                Ecase_);
            add_value(acc, th, T_.inverse_class[j], w, T_.class_sizes[j]);
        }
    } else {
        for (size_t i = 0; i < amb_trp_.size(); ++i) {
            int64_t w = tr_stride * mod_norm(v * amb_trp_[i], pm_);
            if (chibar)
                w += *chibar->value_exponent_in(mod_norm(amb_det_[i], chibar->modulus()),
                                                Ecase_);
            add_value(acc, th, T_.inverse_class[amb_cls_[i]], w, 1);
        }
    }
    return acc;
}

CyclotomicNumber CuspidalContext::bushnell_epsilon(const CuspidalIrrep& th, int64_t v,
                                                   const DirichletCharacter* chi) const {
    CyclotomicNumber val = epsilon_core(th, v, chi).to_number();
    Int den = Int(pm_) * Int(pm_) * Int(th.dim);
    val *= Rat(Int(1), den);
    return val;
}

CycVec CuspidalContext::t_core(const CuspidalIrrep& th, int64_t v, int k,
                               int64_t lambda) const {
    if (k < 1 || k > m_) throw std::invalid_argument("determinant character level out of range");
    if (std::gcd(mod_norm(v, pm_), pm_) != 1)
        throw std::invalid_argument("trace character unit must be invertible");
    int64_t pk = ipow(p_, k);
    if (std::gcd(mod_norm(lambda, pk), pk) != 1)
        throw std::invalid_argument("determinant character unit must be invertible");
    CycVec acc(Ecase_);
    int64_t tr_stride = Ecase_ / pm_;
    int64_t det_stride = Ecase_ / pk;
    if (kind_ == InducingCase::unramified) {
        for (int j = 0; j < T_.num_classes; ++j) {
            int64_t w = tr_stride * mod_norm(v * cls_tr_[j], pm_) +
                        det_stride * mod_norm(lambda * (cls_det_[j] % pk), pk);
            add_value(acc, th, T_.inverse_class[j], w, T_.class_sizes[j]);
        }
    } else {
        for (size_t i = 0; i < amb_trp_.size(); ++i) {
            int64_t w = tr_stride * mod_norm(v * amb_trp_[i], pm_) +
                        det_stride * mod_norm(lambda * (amb_det_[i] % pk), pk);
            add_value(acc, th, T_.inverse_class[amb_cls_[i]], w, 1);
        }
    }
    return acc;
}

TSumResult CuspidalContext::t_sum(const CuspidalIrrep& th, int64_t v, int k,
                                  int64_t lambda) const {
    CycVec core = t_core(th, v, k, lambda);
    TSumResult res;
    res.p = p_;
    res.m = m_;
    res.kind = kind_;
    res.irrep_index = th.index;
    res.psi_unit = mod_norm(v, pm_);
    res.k = k;
    res.lambda = mod_norm(lambda, ipow(p_, k));
    res.is_zero = core_is_zero(core);
    res.exact = core.to_number();
    res.exact *= Rat(Int(1), Int(th.dim));
    return res;
}

bool CuspidalContext::core_is_zero(const CycVec& acc) const {
    // one evaluation at a primitive root mod ell certifies a nonzero element;
    // only candidate zeros pay for the exact reduction
    const auto& a = acc.raw();
    int64_t val = 0, power = 1;
    for (int64_t i = 0; i < acc.order(); ++i) {
        int64_t c = a[i] % zero_ell_;
        if (c < 0) c += zero_ell_;
        val = (val + mul_mod(c, power, zero_ell_)) % zero_ell_;
        power = mul_mod(power, zero_w_, zero_ell_);
    }
    if (val != 0) return false;
    return acc.is_zero_elt();
}

IdentityCheck CuspidalContext::charsum_identity_check(const CuspidalIrrep& th, int64_t v,
                                                      int k, int64_t lambda) const {
    if (!th.info.twist_minimal)
        throw std::invalid_argument("identity requires a twist-minimal row");
    if (k < 1 || k > m_) throw std::invalid_argument("determinant character level out of range");
    int64_t pk = ipow(p_, k);
    AdditiveCharacter psi2{pk, mod_norm(lambda, pk)};
    CycVec lhs(Ecase_);
    for (const auto& chi : family_local(p_, k)) {
        CycVec tau(Ecase_);
        for (int64_t y = 1; y < pk; ++y) {
            if (y % p_ == 0) continue;
            tau.add_root(*chi.value_exponent_in(y, Ecase_) + psi2.exponent_in(y, Ecase_), 1);
        }
        lhs.add(tau.mul(epsilon_core(th, v, &chi)));
    }
    CycVec rhs = t_core(th, v, k, lambda);
    rhs.scale((p_ - 1) * ipow(p_, k - 1));
    CycVec diff = lhs;
    CycVec neg = rhs;
    neg.scale(-1);
    diff.add(neg);
    IdentityCheck res;
    res.equal = core_is_zero(diff);
    res.lhs = lhs.to_number();
    res.rhs = rhs.to_number();
    return res;
}

SweepReport verify_thm43(const CuspidalContext& ctx) {
    SweepReport rep;
    rep.p = ctx.p();
    rep.m = ctx.m();
    rep.kind = ctx.kind();
    std::vector<int64_t> units_m;
    for (int64_t v = 1; v < ctx.pm(); ++v)
        if (v % ctx.p() != 0) units_m.push_back(v);
    for (const auto& th : ctx.cuspidal()) {
        IrrepReport ir;
        ir.index = th.index;
        ir.dim = th.dim;
        ir.conductor = th.info.conductor;
        ir.strongly_cuspidal = th.info.strongly_cuspidal;
        ir.central_trivial = th.info.central_trivial;
        ir.twist_minimal = th.info.twist_minimal;
        ir.rational = th.info.rational;
        ir.field_degree = th.info.field_degree;
        ir.asserted = th.info.twist_minimal && th.info.rational;
        for (int64_t v : units_m) {
            if (!ir.asserted && v != 1) continue;
            for (int k = 1; k <= ctx.m(); ++k) {
                int64_t pk = ipow(ctx.p(), k);
                for (int64_t lam = 1; lam < pk; ++lam) {
                    if (lam % ctx.p() == 0) continue;
                    bool z = ctx.core_is_zero(ctx.t_core(th, v, k, lam));
                    if (v == 1) ir.tsums.push_back({k, lam, z});
                    if (ir.asserted) {
                        ++rep.checked;
                        if (z) ++rep.failures;
                    }
                }
            }
        }
        rep.irreps.push_back(std::move(ir));
    }
    rep.pass = rep.failures == 0;
    return rep;
}

MerelVerdict merel_local_product(
    const std::vector<std::pair<const CuspidalContext*, const CuspidalIrrep*>>& locals,
    int64_t n) {
    int64_t d = 1;
    for (const auto& [ctx, th] : locals) {
        (void)th;
        if (d % ctx->p() == 0) throw std::invalid_argument("duplicate prime in local data");
        d *= ctx->pm();
    }
    MerelVerdict out;
    n = mod_norm(n, d);
    if (std::gcd(n, d) != 1) {
        out.zero = true;
        out.value = CyclotomicNumber::zero(1);
        return out;
    }
    out.value = CyclotomicNumber::one(1);
    for (const auto& [ctx, th] : locals) {
        int64_t pm = ctx->pm();
        int64_t lam = mod_norm(n * inv_mod(mod_norm(d / pm, pm), pm), pm);
        CycVec core = ctx->t_core(*th, 1, ctx->m(), lam);
        bool z = ctx->core_is_zero(core);
        out.factors.push_back({ctx->p(), lam, z});
        if (z) out.zero = true;
        CyclotomicNumber factor = core.to_number();
        factor *= Rat(Int(1), Int(th->dim));
        int64_t E = std::lcm(out.value.order(), factor.order());
        out.value = out.value.promoted(E) * factor.promoted(E);
    }
    return out;
}

RamifiedIdentityReport section7_identities(int64_t p, int m) {
    if (p > 3 || m > 2 || m < 1)
        throw std::invalid_argument("identity check budget is p <= 3, m <= 2");
    const int64_t pm = ipow(p, m);
    const int hm = (m + 1) / 2, fm = m / 2;
    const int64_t ph = ipow(p, hm), pf = ipow(p, fm);

    struct El {
        int64_t a, b, c, d;  // the matrix (a b; pc d)
    };
    // coset coordinates (s,t,u,v): the matrix (1+s t; pu 1+v) with
    // s,v multiples of p^ceil(m/2) and t,u multiples of p^floor(m/2)
    struct Co {
        int64_t s, t, u, v;
    };
    std::vector<El> xs;
    for (int64_t a = 1; a < pm; ++a) {
        if (a % p == 0) continue;
        for (int64_t d = 1; d < pm; ++d) {
            if (d % p == 0) continue;
            for (int64_t b = 0; b < pm; ++b)
                for (int64_t c = 0; c < pm; ++c) xs.push_back({a, b, c, d});
        }
    }
    std::vector<Co> ys;
    for (int64_t s = 0; s < pm; s += ph)
        for (int64_t v = 0; v < pm; v += ph)
            for (int64_t t = 0; t < pm; t += pf)
                for (int64_t u = 0; u < pm; u += pf) ys.push_back({s, t, u, v});

    auto trp = [&](const El& x) { return mod_norm(x.b - x.c, pm); };
    auto det = [&](const El& x) { return mod_norm(x.a * x.d - p * x.b * x.c, pm); };
    auto mul_xy = [&](const El& x, const Co& y) -> El {
        return {mod_norm(x.a * (1 + y.s) + p * x.b * y.u, pm),
                mod_norm(x.a * y.t + x.b * (1 + y.v), pm),
                mod_norm(x.c * (1 + y.s) + x.d * y.u, pm),
                mod_norm(p * x.c * y.t + x.d * (1 + y.v), pm)};
    };
    auto mul_yy = [&](const Co& y, const Co& z) -> Co {
        return {mod_norm((1 + y.s) * (1 + z.s) + p * y.t * z.u - 1, pm),
                mod_norm((1 + y.s) * z.t + y.t * (1 + z.v), pm),
                mod_norm(y.u * (1 + z.s) + (1 + y.v) * z.u, pm),
                mod_norm(p * y.u * z.t + (1 + y.v) * (1 + z.v) - 1, pm)};
    };

    // sweep parameters: the level-m trace character unit and the determinant
    // character (level m2, unit lam), folded into a single exponent mod p^m
    struct Sweep {
        int64_t v;    // psi unit
        int64_t cl;   // p^{m-m2} lam: psi'(w) = zeta_{p^m}^{cl w}
        int64_t lam;  // unit mod p^{m2}
        int m2;
    };
    std::vector<Sweep> sweeps;
    for (int64_t v = 1; v < pm; ++v) {
        if (v % p == 0) continue;
        for (int m2 = 1; m2 <= m; ++m2) {
            int64_t pk = ipow(p, m2);
            for (int64_t lam = 1; lam < pk; ++lam)
                if (lam % p != 0) sweeps.push_back({v, (pm / pk) * lam, lam, m2});
        }
    }
    auto defining = [&](const Sweep& sw, const El& x, const Co& y) {
        El xy = mul_xy(x, y);
        return mod_norm(sw.v * (trp(xy) - trp(x)) + sw.cl * (det(xy) - det(x)), pm);
    };
    auto closed = [&](const Sweep& sw, const El& x, const Co& y) {
        int64_t lin = x.a * y.t + x.b * y.v - x.c * y.s - x.d * y.u;
        return mod_norm(sw.v * lin + sw.cl * mod_norm(det(x) * (y.s + y.v), pm), pm);
    };

    RamifiedIdentityReport rep;
    rep.closed_form = true;
    for (const auto& sw : sweeps)
        for (const auto& x : xs)
            for (const auto& y : ys)
                if (defining(sw, x, y) != closed(sw, x, y)) rep.closed_form = false;

    rep.multiplicative = true;
    {
        const Sweep& sw = sweeps.back();
        for (const auto& x : xs)
            for (const auto& y : ys)
                for (const auto& z : ys) {
                    int64_t lr = defining(sw, x, mul_yy(y, z));
                    if (lr != mod_norm(defining(sw, x, y) + defining(sw, x, z), pm))
                        rep.multiplicative = false;
                }
    }

    // coset representatives of the quotient by the level-m subgroup:
    // a,d units mod p^ceil(m/2), b,c mod p^floor(m/2)
    std::vector<El> x0s;
    for (int64_t a = 1; a < ph; ++a) {
        if (a % p == 0) continue;
        for (int64_t d = 1; d < ph; ++d) {
            if (d % p == 0) continue;
            for (int64_t b = 0; b < pf; ++b)
                for (int64_t c = 0; c < pf; ++c) x0s.push_back({a, b, c, d});
        }
    }
    rep.coset_invariant = true;
    for (const auto& sw : sweeps)
        for (const auto& x0 : x0s)
            for (const auto& k0 : ys) {
                El xk = mul_xy(x0, k0);
                for (const auto& y : ys)
                    if (defining(sw, x0, y) != defining(sw, xk, y))
                        rep.coset_invariant = false;
            }

    rep.pairwise_distinct = true;
    for (const auto& sw : sweeps) {
        std::set<std::vector<int64_t>> seen;
        for (const auto& x0 : x0s) {
            std::vector<int64_t> vals;
            vals.reserve(ys.size());
            for (const auto& y : ys) vals.push_back(defining(sw, x0, y));
            if (!seen.insert(vals).second) rep.pairwise_distinct = false;
        }
    }

    rep.h_injective = true;
    if (fm > 0) {
        for (const auto& sw : sweeps) {
            int64_t shift = pm / ipow(p, sw.m2);  // p^{m-m2}
            for (int64_t a = 1; a < pf; ++a) {
                if (a % p == 0) continue;
                for (int64_t d = 1; d < pf; ++d) {
                    if (d % p == 0) continue;
                    std::set<std::pair<int64_t, int64_t>> image;
                    for (int64_t b = 0; b < pf; ++b)
                        for (int64_t c = 0; c < pf; ++c) {
                            int64_t q = mod_norm(shift * sw.lam * (a * d - p * b * c), pf);
                            image.insert({mod_norm(b + q, pf), mod_norm(-c + q, pf)});
                        }
                    if ((int64_t)image.size() != pf * pf) rep.h_injective = false;
                }
            }
        }
    }
    return rep;
}

}  // namespace modcusp
