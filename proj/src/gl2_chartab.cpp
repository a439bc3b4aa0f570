#include "modcusp/gl2_chartab.hpp"

#include <algorithm>
#include <numeric>

#include "modcusp/numbers.hpp"

namespace modcusp {

namespace {

struct ModP {
    int64_t ell;
    int64_t add(int64_t a, int64_t b) const { return (a + b) % ell; }
    int64_t sub(int64_t a, int64_t b) const { return ((a - b) % ell + ell) % ell; }
    int64_t mul(int64_t a, int64_t b) const { return mul_mod(a % ell, b % ell, ell); }
    int64_t pow(int64_t a, int64_t e) const { return mod_pow(a, e, ell); }
    int64_t inv(int64_t a) const { return inv_mod(((a % ell) + ell) % ell, ell); }
};

int64_t primitive_root_modp(int64_t ell) {
    auto fac = factorize(ell - 1);
    for (int64_t g = 2; g < ell; ++g) {
        bool ok = true;
        for (auto& [q, e] : fac)
            if (mod_pow(g, (ell - 1) / q, ell) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw std::logic_error("no primitive root found");
}

// order of a unit modulo q
int64_t unit_order(int64_t g, int64_t q) {
    int64_t acc = g % q, n = 1;
    while (acc != 1) {
        acc = acc * g % q;
        ++n;
    }
    return n;
}

int64_t cyclic_unit_generator(int64_t q) {
    if (q <= 2) return 1;
    int64_t phi = euler_phi(q);
    for (int64_t g = 2; g < q; ++g) {
        if (std::gcd(g, q) != 1) continue;
        if (unit_order(g, q) == phi) return g;
    }
    throw std::logic_error("unit group is not cyclic");
}

// reduced row echelon form in place; returns the pivot columns
std::vector<int> rref(std::vector<std::vector<int64_t>>& rows, const ModP& F) {
    std::vector<int> pivots;
    size_t rdx = 0;
    int ncols = rows.empty() ? 0 : (int)rows[0].size();
    for (int c = 0; c < ncols && rdx < rows.size(); ++c) {
        size_t sel = rdx;
        while (sel < rows.size() && rows[sel][c] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rdx], rows[sel]);
        int64_t ip = F.inv(rows[rdx][c]);
        for (auto& v : rows[rdx]) v = F.mul(v, ip);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == rdx || rows[i][c] == 0) continue;
            int64_t f = rows[i][c];
            for (int cc = 0; cc < ncols; ++cc)
                rows[i][cc] = F.sub(rows[i][cc], F.mul(f, rows[rdx][cc]));
        }
        pivots.push_back(c);
        ++rdx;
    }
    rows.resize(rdx);
    return pivots;
}

// characteristic polynomial (monic, ascending coefficients) via a Hessenberg
// similarity reduction
std::vector<int64_t> charpoly(std::vector<std::vector<int64_t>> A, const ModP& F) {
    int n = (int)A.size();
    for (int j = 0; j + 2 < n; ++j) {
        int piv = -1;
        for (int i = j + 1; i < n; ++i)
            if (A[i][j] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != j + 1) {
            std::swap(A[piv], A[j + 1]);
            for (int i = 0; i < n; ++i) std::swap(A[i][piv], A[i][j + 1]);
        }
        int64_t ip = F.inv(A[j + 1][j]);
        for (int i = j + 2; i < n; ++i) {
            if (A[i][j] == 0) continue;
            int64_t f = F.mul(A[i][j], ip);
            for (int c = j; c < n; ++c) A[i][c] = F.sub(A[i][c], F.mul(f, A[j + 1][c]));
            for (int rr = 0; rr < n; ++rr)
                A[rr][j + 1] = F.add(A[rr][j + 1], F.mul(f, A[rr][i]));
        }
    }
    std::vector<std::vector<int64_t>> P(n + 1);
    P[0] = {1};
    for (int k = 1; k <= n; ++k) {
        auto& pk = P[k];
        pk.assign(k + 1, 0);
        const auto& prev = P[k - 1];
        int64_t a = A[k - 1][k - 1];
        for (int d = 0; d < (int)prev.size(); ++d) {
            pk[d + 1] = F.add(pk[d + 1], prev[d]);
            pk[d] = F.sub(pk[d], F.mul(a, prev[d]));
        }
        int64_t prod = 1;
        for (int i = 1; i < k; ++i) {
            prod = F.mul(prod, A[k - i][k - i - 1]);
            if (prod == 0) break;
            int64_t coef = F.mul(A[k - 1 - i][k - 1], prod);
            if (coef == 0) continue;
            const auto& pki = P[k - 1 - i];
            for (int d = 0; d < (int)pki.size(); ++d)
                pk[d] = F.sub(pk[d], F.mul(coef, pki[d]));
        }
    }
    return P[n];
}

struct Space {
    std::vector<std::vector<int64_t>> basis;  // reduced echelon rows of length r
    std::vector<int> pivots;
};

}  // namespace

ModularCharacterTable modular_character_table(const FiniteGroupView& G) {
    ModularCharacterTable T;
    const int r = G.num_classes();
    const int64_t n = G.order();
    T.group_order = n;
    T.num_classes = r;
    T.identity_class = G.class_of(G.identity_id());
    T.class_sizes.resize(r);
    T.rep_orders.resize(r);
    T.inverse_class.resize(r);
    T.power_classes.resize(r);
    for (int j = 0; j < r; ++j) {
        T.class_sizes[j] = G.class_size(j);
        int64_t rep = G.class_rep(j);
        T.inverse_class[j] = G.class_of(G.inv(rep));
        // walk the cyclic group generated by the representative
        std::vector<int>& pc = T.power_classes[j];
        pc.push_back(T.identity_class);
        int64_t acc = rep;
        while (acc != G.identity_id()) {
            pc.push_back(G.class_of(acc));
            acc = G.mul(acc, rep);
            if ((int64_t)pc.size() > n) throw std::logic_error("runaway element order");
        }
        T.rep_orders[j] = (int64_t)pc.size();
    }
    int64_t E = 1;
    for (int j = 0; j < r; ++j) E = std::lcm(E, T.rep_orders[j]);
    T.exponent = E;

    // working prime: 1 mod E and larger than 2 sqrt(|G|), so distinct complex
    // irreducibles stay distinct and dimensions are determined by their squares
    int64_t floor_ell = 2;
    while (floor_ell * floor_ell <= 4 * n) ++floor_ell;
    int64_t ell = E + 1;
    while (ell <= floor_ell || !is_prime(ell)) ell += E;
    T.ell = ell;
    ModP F{ell};
    T.omega = F.pow(primitive_root_modp(ell), (ell - 1) / E);

    std::vector<int64_t> inv_of(n);
    for (int64_t x = 0; x < n; ++x) inv_of[x] = G.inv(x);

    // split the class-function space under the commuting class-sum operators
    std::vector<Space> spaces(1);
    spaces[0].basis.assign(r, std::vector<int64_t>(r, 0));
    for (int j = 0; j < r; ++j) {
        spaces[0].basis[j][j] = 1;
        spaces[0].pivots.push_back(j);
    }
    std::vector<int> korder;
    for (int k = 0; k < r; ++k)
        if (k != T.identity_class) korder.push_back(k);
    std::sort(korder.begin(), korder.end(),
              [&](int a, int b) { return T.class_sizes[a] < T.class_sizes[b]; });

    std::vector<std::vector<int64_t>> Mk(r, std::vector<int64_t>(r));
    for (int k : korder) {
        bool split_done = true;
        for (const auto& W : spaces)
            if (W.basis.size() > 1) split_done = false;
        if (split_done) break;

        for (auto& row : Mk) std::fill(row.begin(), row.end(), 0);
        const auto& Ck = G.class_elements(k);
        for (int l = 0; l < r; ++l) {
            int64_t zl = G.class_rep(l);
            auto& row = Mk[l];
            for (int64_t x : Ck) row[G.class_of(G.mul(inv_of[x], zl))]++;
        }
        for (auto& row : Mk)
            for (auto& v : row) v %= ell;

        std::vector<Space> next;
        for (auto& W : spaces) {
            int s = (int)W.basis.size();
            if (s == 1) {
                next.push_back(std::move(W));
                continue;
            }
            // restriction of the operator to W in the echelon basis; since the
            // basis is reduced, coordinates are read off at the pivot columns,
            // so only the pivot rows of the operator are needed
            std::vector<std::vector<int64_t>> B(s, std::vector<int64_t>(s));
            for (int a = 0; a < s; ++a) {
                const auto& ml = Mk[W.pivots[a]];
                for (int b = 0; b < s; ++b) {
                    int64_t acc = 0;
                    const auto& w = W.basis[b];
                    for (int j = 0; j < r; ++j) acc = (acc + (__int128)ml[j] * w[j]) % ell;
                    B[a][b] = acc;
                }
            }

            auto cp = charpoly(B, F);
            std::vector<int64_t> roots;
            for (int64_t lam = 0; lam < ell; ++lam) {
                int64_t acc = 0;
                for (int d = (int)cp.size() - 1; d >= 0; --d)
                    acc = (mul_mod(acc, lam, ell) + cp[d]) % ell;
                if (acc == 0) roots.push_back(lam);
            }
            int recovered = 0;
            for (int64_t lam : roots) {
                std::vector<std::vector<int64_t>> K(B);
                for (int i = 0; i < s; ++i) K[i][i] = F.sub(K[i][i], lam);
                auto piv = rref(K, F);
                std::vector<char> is_piv(s, 0);
                for (size_t t = 0; t < piv.size(); ++t) is_piv[piv[t]] = 1;
                Space ns;
                for (int f = 0; f < s; ++f) {
                    if (is_piv[f]) continue;
                    std::vector<int64_t> coef(s, 0);
                    coef[f] = 1;
                    for (size_t t = 0; t < piv.size(); ++t)
                        coef[piv[t]] = F.sub(0, K[t][f]);
                    std::vector<int64_t> vec(r, 0);
                    for (int a = 0; a < s; ++a) {
                        if (coef[a] == 0) continue;
                        for (int j = 0; j < r; ++j)
                            vec[j] = (vec[j] + (__int128)coef[a] * W.basis[a][j]) % ell;
                    }
                    ns.basis.push_back(std::move(vec));
                }
                if (ns.basis.empty()) continue;
                ns.pivots = rref(ns.basis, F);
                recovered += (int)ns.basis.size();
                next.push_back(std::move(ns));
            }
            if (recovered != s)
                throw std::logic_error("class-sum operator failed to split a subspace");
        }
        spaces = std::move(next);
    }
    for (const auto& W : spaces)
        if (W.basis.size() != 1)
            throw std::logic_error("character space did not split into lines");

    // read off dimensions and character values from the one-dimensional pieces
    const int j0 = T.identity_class;
    int64_t n_mod = n % ell;
    struct Irr {
        int64_t dim;
        std::vector<int64_t> row;
    };
    std::vector<Irr> irrs;
    for (const auto& W : spaces) {
        const auto& v = W.basis[0];
        if (v[j0] == 0) throw std::logic_error("idempotent direction vanishes at 1");
        int64_t vi = F.inv(v[j0]);
        std::vector<int64_t> u(r);
        for (int j = 0; j < r; ++j) u[j] = F.mul(v[j], vi);
        int64_t s2 = 0;
        for (int j = 0; j < r; ++j)
            s2 = (s2 + (__int128)(T.class_sizes[j] % ell) *
                           F.mul(u[j], u[T.inverse_class[j]])) %
                 ell;
        int64_t dim2 = F.mul(n_mod, F.inv(s2));
        int64_t dim = -1;
        for (int64_t d = 1; 2 * d < ell; ++d)
            if (F.mul(d, d) == dim2) {
                dim = d;
                break;
            }
        if (dim < 0) throw std::logic_error("dimension square has no admissible root");
        Irr ir;
        ir.dim = dim;
        ir.row.resize(r);
        for (int j = 0; j < r; ++j) ir.row[j] = F.mul(dim, u[T.inverse_class[j]]);
        irrs.push_back(std::move(ir));
    }
    std::sort(irrs.begin(), irrs.end(), [](const Irr& a, const Irr& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.row < b.row;
    });

    int64_t dimsq = 0;
    for (auto& ir : irrs) {
        T.dims.push_back(ir.dim);
        T.rows.push_back(std::move(ir.row));
        dimsq += T.dims.back() * T.dims.back();
    }
    if ((int)T.rows.size() != r || dimsq != n)
        throw std::logic_error("dimension counting failed");
    for (int a = 0; a < r; ++a)
        for (int b = a; b < r; ++b) {
            int64_t acc = 0;
            for (int j = 0; j < r; ++j)
                acc = (acc + (__int128)(T.class_sizes[j] % ell) *
                               F.mul(T.rows[a][j], T.rows[b][T.inverse_class[j]])) %
                      ell;
            if (acc != (a == b ? n_mod : 0))
                throw std::logic_error("character rows fail orthogonality");
        }
    return T;
}

ExactRow lift_row(const ModularCharacterTable& T, int i) {
    ModP F{T.ell};
    ExactRow X;
    X.index = i;
    X.dim = T.dims[i];
    X.mult.resize(T.num_classes);
    for (int j = 0; j < T.num_classes; ++j) {
        int64_t e = T.rep_orders[j];
        int64_t z = F.pow(T.omega, T.exponent / e);
        int64_t zinv = F.inv(z);
        int64_t einv = F.inv(e);
        auto& mj = X.mult[j];
        mj.assign(e, 0);
        int64_t total = 0;
        for (int64_t t = 0; t < e; ++t) {
            int64_t acc = 0, ph = 1, step = F.pow(zinv, t);
            for (int64_t s = 0; s < e; ++s) {
                acc = (acc + (__int128)T.rows[i][T.power_classes[j][s]] * ph) % T.ell;
                ph = F.mul(ph, step);
            }
            int64_t nt = F.mul(acc, einv);
            if (nt > X.dim)
                throw std::logic_error("root-of-unity multiplicity out of range");
            mj[t] = nt;
            total += nt;
        }
        if (total != X.dim)
            throw std::logic_error("multiplicities do not sum to the dimension");
    }
    return X;
}

CycVec exact_value(const ModularCharacterTable& T, const ExactRow& X, int j,
                   int64_t E_target) {
    int64_t e = T.rep_orders[j];
    if (E_target % e != 0)
        throw std::invalid_argument("target order must be divisible by the element order");
    CycVec v(E_target);
    for (int64_t t = 0; t < e; ++t)
        if (X.mult[j][t]) v.add_root((E_target / e) * t, X.mult[j][t]);
    return v;
}

std::vector<int64_t> galois_stabilizer(const ModularCharacterTable& T, int i) {
    std::vector<int64_t> stab;
    for (int64_t t = 1; t <= T.exponent; ++t) {
        if (std::gcd(t, T.exponent) != 1) continue;
        bool ok = true;
        for (int j = 0; j < T.num_classes && ok; ++j)
            if (T.rows[i][T.power_classes[j][t % T.rep_orders[j]]] != T.rows[i][j])
                ok = false;
        if (ok) stab.push_back(t % T.exponent);
    }
    return stab;
}

int galois_conjugate_index(const ModularCharacterTable& T, int i, int64_t t) {
    t = ((t % T.exponent) + T.exponent) % T.exponent;
    if (std::gcd(t, T.exponent) != 1)
        throw std::invalid_argument("galois_conjugate_index: t not coprime to exponent");
    // sigma_t(chi(g)) = chi(g^t), so the conjugate row reads off power classes
    std::vector<int64_t> row(T.num_classes);
    for (int j = 0; j < T.num_classes; ++j)
        row[j] = T.rows[i][T.power_classes[j][t % T.rep_orders[j]]];
    for (int s = 0; s < (int)T.rows.size(); ++s)
        if (T.rows[s] == row) return s;
    throw std::logic_error("galois conjugate row missing from table");
}

namespace {

// multiplicity of the additive character b -> zeta^{u b} in the restriction of
// row i to a subgroup isomorphic to Z/p^m listed in coordinate order
int64_t unipotent_multiplicity(const ModularCharacterTable& T,
                               const std::vector<int64_t>& subgroup_classes, int i,
                               int64_t u) {
    ModP F{T.ell};
    int64_t pm = (int64_t)subgroup_classes.size();
    int64_t z = F.pow(T.omega, T.exponent / pm);
    int64_t zu = F.pow(F.inv(z), ((u % pm) + pm) % pm);
    int64_t acc = 0, ph = 1;
    for (int64_t b = 0; b < pm; ++b) {
        acc = (acc + (__int128)T.rows[i][subgroup_classes[b]] * ph) % T.ell;
        ph = F.mul(ph, zu);
    }
    int64_t mult = F.mul(acc, F.inv(pm));
    if (mult > T.dims[i])
        throw std::logic_error("additive multiplicity out of range");
    return mult;
}

// is sum_{x in S} chi(x) phase(x) equal to |S| dim, i.e. does the (possibly
// twisted) row restrict trivially to S
bool trivial_on(const ModularCharacterTable& T, int i,
                const std::vector<std::pair<int, int64_t>>& class_and_phase) {
    ModP F{T.ell};
    int64_t acc = 0;
    for (auto& [cls, phase] : class_and_phase)
        acc = (acc + (__int128)T.rows[i][cls] * phase) % T.ell;
    int64_t want = F.mul((int64_t)class_and_phase.size() % T.ell, T.dims[i]);
    return acc == want;
}

void fill_galois_facts(const ModularCharacterTable& T, IrrepInfo& info) {
    auto stab = galois_stabilizer(T, info.index);
    int64_t phiE = euler_phi(T.exponent);
    info.field_degree = (int)(phiE / (int64_t)stab.size());
    info.rational = info.field_degree == 1;
    ModP F{T.ell};
    int64_t nu = 0;
    for (int j = 0; j < T.num_classes; ++j) {
        int cls2 = T.power_classes[j][2 % T.rep_orders[j]];
        nu = (nu + (__int128)(T.class_sizes[j] % T.ell) * T.rows[info.index][cls2]) % T.ell;
    }
    nu = F.mul(nu, F.inv(T.group_order % T.ell));
    if (nu == 0)
        info.frobenius_schur = 0;
    else if (nu == 1)
        info.frobenius_schur = 1;
    else if (nu == T.ell - 1)
        info.frobenius_schur = -1;
    else
        throw std::logic_error("indicator is not -1, 0 or 1");
}

}  // namespace

std::vector<IrrepInfo> classify_irreps(const GL2& G, const ModularCharacterTable& T) {
    if (G.p() == 2 && G.m() >= 3)
        throw std::invalid_argument("unit group mod 2^m, m >= 3, is not cyclic");
    ModP F{T.ell};
    const int64_t pm = G.pm(), p = G.p();
    const int m = G.m();
    const int64_t phi = euler_phi(pm);

    std::vector<int64_t> dlog(pm, -1);
    {
        int64_t g0 = cyclic_unit_generator(pm), acc = 1 % pm;
        if (pm == 1) acc = 0;
        dlog[1 % pm] = 0;
        for (int64_t i = 1; i < phi; ++i) {
            acc = acc * g0 % pm;
            dlog[acc] = i;
        }
    }

    auto classes_of = [&](const std::vector<int64_t>& ids) {
        std::vector<int64_t> out;
        out.reserve(ids.size());
        for (int64_t id : ids) out.push_back(G.class_of(id));
        return out;
    };
    std::vector<int64_t> upper = classes_of(G.upper_unipotent());
    std::vector<int64_t> lower = classes_of(G.lower_unipotent());
    std::vector<int64_t> center = classes_of(G.center_ids());

    // kernels with the determinant digit of each element, for twist tests
    std::vector<std::vector<std::pair<int, int64_t>>> kernels(m + 1);
    for (int rr = 1; rr <= m; ++rr)
        for (int64_t id : G.congruence_kernel(rr))
            kernels[rr].push_back({G.class_of(id), dlog[G.det(G.code_of(id))]});

    int64_t wphi = (phi == 1) ? 1 : F.pow(T.omega, T.exponent / phi);

    std::vector<IrrepInfo> out;
    for (int i = 0; i < (int)T.rows.size(); ++i) {
        IrrepInfo info;
        info.index = i;
        info.dim = T.dims[i];

        bool is_trivial = info.dim == 1;
        if (is_trivial)
            for (int j = 0; j < T.num_classes; ++j)
                if (T.rows[i][j] != 1) is_trivial = false;
        if (is_trivial) {
            info.conductor = 0;
        } else {
            for (int rr = 1; rr <= m; ++rr) {
                std::vector<std::pair<int, int64_t>> plain;
                plain.reserve(kernels[rr].size());
                for (auto& [cls, dl] : kernels[rr]) plain.push_back({(int)cls, 1});
                if (trivial_on(T, i, plain)) {
                    info.conductor = rr;
                    break;
                }
            }
        }

        info.central_trivial = true;
        for (int64_t cls : center)
            if (T.rows[i][cls] != F.mul(info.dim % T.ell, 1)) info.central_trivial = false;

        int64_t mu1 = unipotent_multiplicity(T, upper, i, 1);
        int64_t ml1 = unipotent_multiplicity(T, lower, i, 1);
        int64_t mu0 = unipotent_multiplicity(T, upper, i, 0);
        int64_t ml0 = unipotent_multiplicity(T, lower, i, 0);
        info.strongly_cuspidal = mu1 == 1 && ml1 == 1 && mu0 == 0 && ml0 == 0 &&
                                 info.dim == phi;
        if (m >= 2 && info.strongly_cuspidal)
            info.strongly_cuspidal = unipotent_multiplicity(T, upper, i, p) == 0 &&
                                     unipotent_multiplicity(T, lower, i, p) == 0;

        // a twist by eta mod p^m lowers the level iff the twisted character is
        // trivial on the next congruence kernel
        info.twist_minimal = true;
        if (m >= 2) {
            for (int64_t t = 1; t < phi && info.twist_minimal; ++t) {
                std::vector<std::pair<int, int64_t>> twisted;
                twisted.reserve(kernels[m - 1].size());
                for (auto& [cls, dl] : kernels[m - 1])
                    twisted.push_back({(int)cls, F.pow(wphi, t * dl)});
                if (trivial_on(T, i, twisted)) info.twist_minimal = false;
            }
        }
        fill_galois_facts(T, info);
        out.push_back(info);
    }
    return out;
}

std::vector<IrrepInfo> classify_irreps(const RamifiedPair& G,
                                       const ModularCharacterTable& T) {
    const int64_t pm = G.pm(), p = G.p();
    const int m = G.m();
    const int64_t phi = euler_phi(pm);

    auto classes_of = [&](const std::vector<int64_t>& ids) {
        std::vector<int64_t> out;
        out.reserve(ids.size());
        for (int64_t id : ids) out.push_back(G.class_of(id));
        return out;
    };
    std::vector<int64_t> upper = classes_of(G.upper_unipotent_m());
    std::vector<int64_t> lower = classes_of(G.lower_unipotent_m());

    // image in M of matrices at the deepest proper filtration step; scalars and
    // determinant twists are invisible there, so triviality on it is exactly
    // the condition for the level to drop under some twist
    int64_t pstep = 1;
    for (int t = 1; t < m; ++t) pstep *= p;
    std::vector<std::pair<int, int64_t>> deepest;
    for (int64_t b = 0; b < p; ++b)
        for (int64_t c = 0; c < p; ++c)
            deepest.push_back(
                {(int)G.class_of(G.make_id(0, G.m_id_of({1, pstep * b, pstep * c, 1}))), 1});

    std::vector<std::vector<std::pair<int, int64_t>>> kernels(m + 1);
    for (int rr = 1; rr <= m; ++rr)
        for (int64_t id : G.depth_kernel_m(rr)) kernels[rr].push_back({(int)G.class_of(id), 1});

    std::vector<IrrepInfo> out;
    for (int i = 0; i < (int)T.rows.size(); ++i) {
        IrrepInfo info;
        info.index = i;
        info.dim = T.dims[i];

        bool is_trivial = info.dim == 1;
        if (is_trivial)
            for (int j = 0; j < T.num_classes; ++j)
                if (T.rows[i][j] != 1) is_trivial = false;
        if (is_trivial) {
            info.conductor = 0;
        } else {
            for (int rr = 1; rr <= m; ++rr)
                if (trivial_on(T, i, kernels[rr])) {
                    info.conductor = rr;
                    break;
                }
        }

        // scalar matrices are already identified with 1 in this model
        info.central_trivial = true;

        int64_t mu1 = unipotent_multiplicity(T, upper, i, 1);
        int64_t ml1 = unipotent_multiplicity(T, lower, i, 1);
        int64_t mu0 = unipotent_multiplicity(T, upper, i, 0);
        int64_t ml0 = unipotent_multiplicity(T, lower, i, 0);
        info.strongly_cuspidal = mu1 == 1 && ml1 == 1 && mu0 == 0 && ml0 == 0 &&
                                 info.dim == phi;
        if (m >= 2 && info.strongly_cuspidal)
            info.strongly_cuspidal = unipotent_multiplicity(T, upper, i, p) == 0 &&
                                     unipotent_multiplicity(T, lower, i, p) == 0;

        info.twist_minimal = !trivial_on(T, i, deepest);
        fill_galois_facts(T, info);
        out.push_back(info);
    }
    return out;
}

std::vector<std::vector<int64_t>> gl2_prime_closed_form(const GL2& G,
                                                        const ModularCharacterTable& T) {
    if (G.m() != 1) throw std::invalid_argument("closed forms only cover prime level");
    const int64_t q = G.p();
    ModP F{T.ell};
    const int r = T.num_classes;

    // arithmetic in F_{q^2} = F_q[t]/(t^2 - nu) (p odd) or F_4 = F_2[t]/(t^2+t+1)
    int64_t nu = 0;
    if (q > 2) {
        for (int64_t x = 2; x < q; ++x)
            if (legendre_symbol(x, q) == -1) {
                nu = x;
                break;
            }
    }
    auto fmul = [&](std::pair<int64_t, int64_t> A, std::pair<int64_t, int64_t> B) {
        auto [x1, y1] = A;
        auto [x2, y2] = B;
        if (q == 2)
            return std::pair<int64_t, int64_t>{(x1 * x2 + y1 * y2) % q,
                                               (x1 * y2 + y1 * x2 + y1 * y2) % q};
        return std::pair<int64_t, int64_t>{(x1 * x2 + nu * y1 * y2) % q,
                                           (x1 * y2 + y1 * x2) % q};
    };
    // discrete logs in F_{q^2}^*
    const int64_t q2m1 = q * q - 1;
    std::vector<int64_t> dl(q * q, -1);
    std::pair<int64_t, int64_t> gamma{0, 0};
    for (int64_t gx = 0; gx < q && gamma == std::pair<int64_t, int64_t>{0, 0}; ++gx)
        for (int64_t gy = 0; gy < q; ++gy) {
            if (gx == 0 && gy == 0) continue;
            std::pair<int64_t, int64_t> acc{1, 0}, g{gx, gy};
            int64_t ord = 0;
            do {
                acc = fmul(acc, g);
                ++ord;
            } while (acc != std::pair<int64_t, int64_t>{1, 0});
            if (ord == q2m1) {
                gamma = g;
                break;
            }
        }
    {
        std::pair<int64_t, int64_t> acc{1, 0};
        dl[1 * q + 0] = 0;
        for (int64_t k = 1; k < q2m1; ++k) {
            acc = fmul(acc, gamma);
            dl[acc.first * q + acc.second] = k;
        }
    }
    // F_q^* is generated by gamma^{q+1}; express its discrete log base that
    auto dlq = [&](int64_t a) {
        int64_t k = dl[(a % q) * q];  // a + 0 t
        if (k % (q + 1) != 0) throw std::logic_error("norm landed outside F_q^*");
        return k / (q + 1);
    };

    // locate the classes: scalars, nonsemisimple, split, elliptic
    std::vector<int> kind(r, -1);  // 0..3
    std::vector<int64_t> par_a(r), par_b(r), par_k(r);
    auto place = [&](uint32_t code, int knd, int64_t a, int64_t b, int64_t k) {
        int j = G.class_of(G.id_of(code));
        if (kind[j] != -1) return;
        kind[j] = knd;
        par_a[j] = a;
        par_b[j] = b;
        par_k[j] = k;
    };
    for (int64_t a = 1; a < q; ++a) place(G.pack(a, 0, 0, a), 0, a, a, 0);
    for (int64_t a = 1; a < q; ++a) place(G.pack(a, 1, 0, a), 1, a, a, 0);
    for (int64_t a = 1; a < q; ++a)
        for (int64_t b = a + 1; b < q; ++b) place(G.pack(a, 0, 0, b), 2, a, b, 0);
    for (int64_t x = 0; x < q; ++x)
        for (int64_t y = 1; y < q; ++y) {
            uint32_t code = q == 2 ? G.pack(x, y, y, x + y) : G.pack(x, nu * y, y, x);
            place(code, 3, 0, 0, dl[x * q + y]);
        }
    for (int j = 0; j < r; ++j)
        if (kind[j] < 0) throw std::logic_error("unmatched conjugacy class");

    int64_t zq1 = F.pow(T.omega, T.exponent / (q - 1));   // order q-1
    int64_t zq2 = F.pow(T.omega, T.exponent / q2m1);      // order q^2-1
    auto alpha = [&](int64_t s, int64_t a) { return F.pow(zq1, s * dlq(a)); };
    auto theta = [&](int64_t s, int64_t k) { return F.pow(zq2, s * (k % q2m1)); };

    std::vector<std::vector<int64_t>> rows;
    // determinant characters and their Steinberg twists
    for (int64_t s = 0; s < q - 1; ++s) {
        std::vector<int64_t> u(r), v(r);
        for (int j = 0; j < r; ++j) {
            switch (kind[j]) {
                case 0:
                    u[j] = alpha(s, par_a[j] * par_a[j] % q);
                    v[j] = F.mul(q % T.ell, u[j]);
                    break;
                case 1:
                    u[j] = alpha(s, par_a[j] * par_a[j] % q);
                    v[j] = 0;
                    break;
                case 2:
                    u[j] = alpha(s, par_a[j] * par_b[j] % q);
                    v[j] = u[j];
                    break;
                case 3: {
                    int64_t norm_dl = par_k[j] % (q - 1);  // dlq of the norm
                    u[j] = F.pow(zq1, s * norm_dl);
                    v[j] = F.sub(0, u[j]);
                    break;
                }
            }
        }
        rows.push_back(u);
        rows.push_back(v);
    }
    // principal series
    for (int64_t s = 0; s < q - 1; ++s)
        for (int64_t s2 = s + 1; s2 < q - 1; ++s2) {
            std::vector<int64_t> w(r);
            for (int j = 0; j < r; ++j) {
                switch (kind[j]) {
                    case 0:
                        w[j] = F.mul((q + 1) % T.ell,
                                     F.mul(alpha(s, par_a[j]), alpha(s2, par_a[j])));
                        break;
                    case 1:
                        w[j] = F.mul(alpha(s, par_a[j]), alpha(s2, par_a[j]));
                        break;
                    case 2:
                        w[j] = F.add(F.mul(alpha(s, par_a[j]), alpha(s2, par_b[j])),
                                     F.mul(alpha(s, par_b[j]), alpha(s2, par_a[j])));
                        break;
                    case 3:
                        w[j] = 0;
                        break;
                }
            }
            rows.push_back(w);
        }
    // discrete series, one per Frobenius orbit of non-norm characters
    std::vector<char> used(q2m1, 0);
    for (int64_t s = 1; s < q2m1; ++s) {
        if (used[s]) continue;
        int64_t sq = s * q % q2m1;
        if (sq == s) continue;  // factors through the norm
        used[s] = used[sq] = 1;
        std::vector<int64_t> w(r);
        for (int j = 0; j < r; ++j) {
            switch (kind[j]) {
                case 0:
                    w[j] = F.mul((q - 1) % T.ell, theta(s, (q + 1) * dlq(par_a[j])));
                    break;
                case 1:
                    w[j] = F.sub(0, theta(s, (q + 1) * dlq(par_a[j])));
                    break;
                case 2:
                    w[j] = 0;
                    break;
                case 3:
                    w[j] = F.sub(0, F.add(theta(s, par_k[j]), theta(sq, par_k[j])));
                    break;
            }
        }
        rows.push_back(w);
    }

    const int j0 = T.identity_class;
    std::sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
        if (a[j0] != b[j0]) return a[j0] < b[j0];
        return a < b;
    });
    return rows;
}

}  // namespace modcusp
