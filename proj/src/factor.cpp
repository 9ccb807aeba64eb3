#include "pacf/factor.hpp"

#include <algorithm>
#include <unordered_map>

#include "pacf/error.hpp"

namespace pacf::mfactor {

namespace {

using upoly::UPoly;
using Bi = std::vector<UPoly>;  // coefficients in y, each a polynomial in x

// --- univariate helpers --------------------------------------------------

UPoly inv_mod(const ConstField& F, const UPoly& a, const UPoly& m) {
    // extended Euclid: s*a = 1 mod m
    UPoly r0 = m, r1 = upoly::rem(F, a, m);
    UPoly s0, s1 = {1};
    while (upoly::degree(r1) > 0) {
        UPoly q, r;
        upoly::divmod(F, r0, r1, q, r);
        UPoly s = upoly::sub(F, s0, upoly::mul(F, q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (upoly::degree(r1) < 0) fail("internal: non-invertible residue in Hensel setup");
    return upoly::rem(F, upoly::scale(F, s1, F.inv(r1[0])), m);
}

UPoly truncate(UPoly a, std::size_t k) {
    if (a.size() > k) a.resize(k);
    upoly::trim(a);
    return a;
}

UPoly series_inverse(const ConstField& F, const UPoly& a, std::size_t k) {
    UPoly inv = {F.inv(a[0])};
    std::size_t prec = 1;
    while (prec < k) {
        prec = std::min(2 * prec, k);
        // inv <- inv * (2 - a*inv)
        UPoly e = truncate(upoly::mul(F, truncate(a, prec), inv), prec);
        UPoly two_minus = upoly::sub(F, UPoly{F.from_int(2)}, e);
        inv = truncate(upoly::mul(F, inv, two_minus), prec);
    }
    return inv;
}

UPoly taylor_shift(const ConstField& F, const UPoly& a, Code shift) {
    UPoly r;
    const UPoly lin = {shift, 1};
    for (std::size_t i = a.size(); i-- > 0;) r = upoly::add(F, upoly::mul(F, r, lin), UPoly{a[i]});
    upoly::trim(r);
    return r;
}

bool squarefree(const ConstField& F, const UPoly& h) {
    UPoly d = upoly::derivative(F, h);
    if (upoly::degree(d) < 0) return upoly::degree(h) <= 0;
    return upoly::degree(upoly::gcd(F, h, d)) == 0;
}

// --- bivariate representation ---------------------------------------------

void trim_bi(Bi& b) {
    for (auto& c : b) upoly::trim(c);
    while (!b.empty() && b.back().empty()) b.pop_back();
}

int deg_x(const Bi& b) {
    int d = -1;
    for (const auto& c : b) d = std::max(d, upoly::degree(c));
    return d;
}

Bi bi_mul(const ConstField& F, const Bi& a, const Bi& b, std::size_t trunc_x = SIZE_MAX) {
    if (a.empty() || b.empty()) return {};
    Bi r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (a[i].empty() || b[j].empty()) continue;
            r[i + j] = upoly::add(F, r[i + j], upoly::mul(F, a[i], b[j]));
        }
    if (trunc_x != SIZE_MAX)
        for (auto& c : r) c = truncate(c, trunc_x);
    trim_bi(r);
    return r;
}

RPoly bi_to_rpoly(const Bi& b) {
    RPoly r = rp::zero(2);
    for (const auto& c : b) {
        RPoly col = rp::zero(1);
        for (Code v : c) col.co.push_back(rp::constant(0, v));
        while (!col.co.empty() && rp::is_zero(col.co.back())) col.co.pop_back();
        r.co.push_back(std::move(col));
    }
    while (!r.co.empty() && rp::is_zero(r.co.back())) r.co.pop_back();
    return r;
}

Bi rpoly_to_bi(const RPoly& r) {
    Bi b;
    for (const auto& col : r.co) {
        UPoly c;
        for (const auto& v : col.co) c.push_back(v.c);
        upoly::trim(c);
        b.push_back(std::move(c));
    }
    trim_bi(b);
    return b;
}

Bi bi_primitive(const ConstField& F, const Bi& b) {
    return rpoly_to_bi(rp::primitive_part(F, bi_to_rpoly(b)));
}

Bi bi_map(const Bi& b, const std::vector<Code>& table) {
    Bi r = b;
    for (auto& c : r)
        for (auto& v : c) v = table[v];
    return r;
}

Bi bi_shift(const ConstField& F, const Bi& b, Code a) {
    Bi r = b;
    for (auto& c : r) c = taylor_shift(F, c, a);
    return r;
}

UPoly eval_x(const ConstField& F, const Bi& b, Code a) {
    UPoly h(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) h[j] = upoly::eval(F, b[j], a);
    upoly::trim(h);
    return h;
}

// --- Hensel lifting -------------------------------------------------------

// M monic in y with x-series coefficients (mod x^k); h_i monic pairwise coprime
// with prod h_i = M(0, y). Returns lifted factors as Bi (series in x).
std::vector<Bi> hensel_lift(const ConstField& F, const Bi& M, const std::vector<UPoly>& h, std::size_t k) {
    const std::size_t r = h.size();
    const std::size_t d = M.size() - 1;
    std::vector<UPoly> s(r);
    for (std::size_t i = 0; i < r; ++i) {
        UPoly P = {1};
        for (std::size_t j = 0; j < r; ++j)
            if (j != i) P = upoly::mul(F, P, h[j]);
        s[i] = inv_mod(F, P, h[i]);
    }
    // series coefficients: H[i][t] polynomial in y; Mx[t] polynomial in y
    std::vector<std::vector<UPoly>> H(r, std::vector<UPoly>(k));
    std::vector<std::vector<UPoly>> Q(r, std::vector<UPoly>(k));
    std::vector<UPoly> Mx(k);
    for (std::size_t j = 0; j <= d; ++j)
        for (std::size_t t = 0; t < M[j].size() && t < k; ++t) {
            if (M[j][t] == 0) continue;
            if (Mx[t].size() <= j) Mx[t].resize(j + 1, 0);
            Mx[t][j] = M[j][t];
        }
    for (auto& m : Mx) upoly::trim(m);
    auto prefix_coeff = [&](std::size_t i, std::size_t t) {
        if (i == 0) return H[0][t];
        UPoly acc;
        for (std::size_t u = 0; u <= t; ++u) {
            if (Q[i - 1][u].empty() || H[i][t - u].empty()) continue;
            acc = upoly::add(F, acc, upoly::mul(F, Q[i - 1][u], H[i][t - u]));
        }
        return acc;
    };
    for (std::size_t i = 0; i < r; ++i) {
        H[i][0] = h[i];
        Q[i][0] = prefix_coeff(i, 0);
    }
    for (std::size_t t = 1; t < k; ++t) {
        for (std::size_t i = 0; i < r; ++i) Q[i][t] = prefix_coeff(i, t);
        UPoly e = upoly::sub(F, Mx[t], Q[r - 1][t]);
        if (e.empty()) continue;
        for (std::size_t i = 0; i < r; ++i) H[i][t] = upoly::rem(F, upoly::mul(F, e, s[i]), h[i]);
        for (std::size_t i = 0; i < r; ++i) Q[i][t] = prefix_coeff(i, t);
    }
    std::vector<Bi> out(r);
    for (std::size_t i = 0; i < r; ++i) {
        Bi b(h[i].size());
        for (std::size_t t = 0; t < k; ++t)
            for (std::size_t j = 0; j < H[i][t].size(); ++j) {
                if (H[i][t][j] == 0) continue;
                if (b[j].size() <= t) b[j].resize(t + 1, 0);
                b[j][t] = H[i][t][j];
            }
        trim_bi(b);
        out[i] = std::move(b);
    }
    return out;
}

template <class Fn>
bool for_each_subset(const std::vector<std::size_t>& items, std::size_t size, Fn&& fn) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
        std::vector<std::size_t> pick(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = items[idx[i]];
        if (fn(pick)) return true;
        std::size_t i = size;
        while (i > 0 && idx[i - 1] == items.size() - size + i - 1) --i;
        if (i == 0) return false;
        ++idx[i - 1];
        for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
}

std::optional<Bi> bi_divide(const ConstField& F, const Bi& a, const Bi& b) {
    auto q = rp::div_exact(F, bi_to_rpoly(a), bi_to_rpoly(b));
    if (!q) return std::nullopt;
    return rpoly_to_bi(*q);
}

// f primitive and squarefree in y, deg_y >= 2, with a good point a in F.
std::vector<Bi> bi_factor_at(const ConstField& F, const Bi& f, Code a) {
    Bi g = bi_shift(F, f, a);
    const std::size_t d = g.size() - 1;
    UPoly g0 = eval_x(F, g, 0);
    auto facs = upoly::factor(F, g0);
    if (facs.size() <= 1) return {f};
    std::vector<UPoly> h;
    for (const auto& fc : facs) h.push_back(fc.poly);
    const std::size_t k = std::size_t(std::max(0, upoly::degree(g[d]))) + std::size_t(std::max(0, deg_x(g))) + 1;
    UPoly linv = series_inverse(F, g[d], k);
    Bi M(d + 1);
    for (std::size_t j = 0; j <= d; ++j) M[j] = truncate(upoly::mul(F, g[j], linv), k);
    auto lifted = hensel_lift(F, M, h, k);

    std::vector<std::size_t> remaining(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) remaining[i] = i;
    Bi cur = g;
    std::vector<Bi> found;
    std::size_t s = 1;
    while (2 * s <= remaining.size()) {
        std::vector<std::size_t> hit;
        Bi quotient;
        bool ok = for_each_subset(remaining, s, [&](const std::vector<std::size_t>& pick) {
            Bi cand = {cur.back()};
            for (auto i : pick) cand = bi_mul(F, cand, lifted[i], k);
            cand = bi_primitive(F, cand);
            if (cand.size() < 2) return false;
            auto q = bi_divide(F, cur, cand);
            if (!q) return false;
            found.push_back(cand);
            quotient = std::move(*q);
            hit = pick;
            return true;
        });
        if (!ok) {
            ++s;
            continue;
        }
        cur = std::move(quotient);
        std::vector<std::size_t> rest;
        for (auto i : remaining)
            if (std::find(hit.begin(), hit.end(), i) == hit.end()) rest.push_back(i);
        remaining = std::move(rest);
    }
    if (cur.size() >= 2) found.push_back(bi_primitive(F, cur));
    const Code minus_a = F.neg(a);
    for (auto& b : found) b = bi_primitive(F, bi_shift(F, b, minus_a));
    return found;
}

std::optional<Code> good_point(const ConstField& F, const Bi& f) {
    const std::size_t d = f.size() - 1;
    for (Code a = 0; a < F.q(); ++a) {
        if (upoly::eval(F, f[d], a) == 0) continue;
        if (squarefree(F, eval_x(F, f, a))) return a;
    }
    return std::nullopt;
}

// Irreducible factors over F of f, primitive and squarefree in y.
std::vector<Bi> bi_factor(const ConstFieldPtr& Fp, const Bi& f) {
    const ConstField& F = *Fp;
    if (f.size() <= 2) return {f};
    if (auto a = good_point(F, f)) return bi_factor_at(F, f, *a);
    for (unsigned r = 2;; ++r) {
        std::uint64_t size = 1;
        for (unsigned i = 0; i < F.k() * r; ++i) size *= F.p();
        if (size > (1u << 22)) exhausted("no good specialization point within field size cap");
        auto E = ConstField::get(F.p(), F.k() * r);
        auto table = embed_table(F, *E);
        Bi fE = bi_map(f, table);
        auto a = good_point(*E, fE);
        if (!a) continue;
        auto facs = bi_factor_at(*E, fE, *a);
        std::unordered_map<Code, Code> back;
        for (Code c = 0; c < F.q(); ++c) back[table[c]] = c;
        std::vector<bool> used(facs.size(), false);
        std::vector<Bi> out;
        auto frob = [&](const Bi& b) {
            Bi r2 = b;
            for (auto& c : r2)
                for (auto& v : c) v = E->pow(v, F.q());
            return r2;
        };
        for (std::size_t i = 0; i < facs.size(); ++i) {
            if (used[i]) continue;
            Bi prod = facs[i];
            used[i] = true;
            Bi conj = frob(facs[i]);
            while (conj != facs[i]) {
                auto it = std::find(facs.begin(), facs.end(), conj);
                if (it == facs.end()) fail("internal: conjugate factor missing");
                used[std::size_t(it - facs.begin())] = true;
                prod = bi_mul(*E, prod, conj);
                conj = frob(conj);
            }
            prod = bi_primitive(*E, prod);
            Bi down = prod;
            for (auto& c : down)
                for (auto& v : c) {
                    auto it = back.find(v);
                    if (it == back.end()) fail("internal: orbit product not defined over base field");
                    v = it->second;
                }
            out.push_back(std::move(down));
        }
        return out;
    }
}

// --- multivariate driver ------------------------------------------------------

unsigned total_deg(const rp::Exponents& e) {
    unsigned s = 0;
    for (auto v : e) s += v;
    return s;
}

bool factor_less(const PolyFactor& a, const PolyFactor& b) {
    unsigned da = rp::total_degree(a.poly), db = rp::total_degree(b.poly);
    if (da != db) return da < db;
    auto ta = rp::terms(a.poly), tb = rp::terms(b.poly);
    auto key = [](const std::vector<rp::Term>& ts) {
        std::vector<std::pair<rp::Exponents, Code>> k;
        for (const auto& t : ts) k.emplace_back(t.exps, t.coef);
        return k;
    };
    return key(ta) < key(tb);
}

RPoly poly_pth_root(const ConstField& F, const RPoly& f) {
    auto ts = rp::terms(f);
    for (auto& t : ts) {
        for (auto& e : t.exps) e /= F.p();
        t.coef = F.pth_root(t.coef);
    }
    return rp::from_terms(F, f.level, ts);
}

RPoly lc_in(const ConstField& F, const RPoly& f, int v) {
    unsigned d = rp::degree_in(f, v);
    std::vector<rp::Term> out;
    for (auto t : rp::terms(f))
        if (t.exps[v] == d) {
            t.exps[v] = 0;
            out.push_back(std::move(t));
        }
    return rp::from_terms(F, f.level, out);
}

RPoly primitive_in(const ConstField& F, const RPoly& f, int v) {
    const int last = f.level - 1;
    std::vector<int> perm(f.level);
    for (int i = 0; i < f.level; ++i) perm[i] = i;
    std::swap(perm[v], perm[last]);
    RPoly g = rp::permute(F, f, perm);
    g = rp::primitive_part(F, g);
    return rp::permute(F, g, perm);
}

std::vector<RPoly> kronecker_factors(const ConstFieldPtr& Fp, const RPoly& f, const std::vector<int>& others, int v) {
    const ConstField& F = *Fp;
    const std::size_t m = others.size();
    std::vector<std::uint64_t> base(m);
    for (std::size_t i = 0; i < m; ++i)
        base[i] = std::uint64_t(rp::degree_in(lc_in(F, f, v), others[i])) + rp::degree_in(f, others[i]) + 1;
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<std::uint64_t> w(m + 1, 1);
        for (std::size_t i = 0; i < m; ++i) w[i + 1] = w[i] * base[i];
        if (w[m] > 200000) exhausted("Kronecker substitution degree too large");
        auto phi_terms = [&](const RPoly& a) {
            std::vector<rp::Term> out;
            for (const auto& t : rp::terms(a)) {
                std::uint64_t e = 0;
                for (std::size_t i = 0; i < m; ++i) e += t.exps[others[i]] * w[i];
                out.push_back({{unsigned(e), t.exps[v]}, t.coef});
            }
            return out;
        };
        RPoly img = rp::from_terms(F, 2, phi_terms(f));
        RPoly pp = rp::primitive_part(F, img);
        RPoly dy = rp::derivative(F, pp, 1);
        if (rp::is_zero(dy) || !rp::is_constant(rp::gcd(F, pp, dy))) {
            for (auto& b : base) b += 1;
            continue;
        }
        auto gs = bi_factor(Fp, rpoly_to_bi(pp));
        if (gs.size() <= 1) return {f};
        std::vector<std::size_t> remaining(gs.size());
        for (std::size_t i = 0; i < gs.size(); ++i) remaining[i] = i;
        RPoly cur = f;
        std::vector<RPoly> found;
        std::size_t s = 1;
        while (2 * s <= remaining.size()) {
            std::vector<std::size_t> hit;
            RPoly quotient;
            bool ok = for_each_subset(remaining, s, [&](const std::vector<std::size_t>& pick) {
                Bi P = {{1}};
                for (auto i : pick) P = bi_mul(F, P, gs[i]);
                UPoly phl;
                for (const auto& t : phi_terms(lc_in(F, cur, v))) {
                    if (phl.size() <= t.exps[0]) phl.resize(t.exps[0] + 1, 0);
                    phl[t.exps[0]] = F.add(phl[t.exps[0]], t.coef);
                }
                upoly::trim(phl);
                std::vector<rp::Term> back;
                for (std::size_t j = 0; j < P.size(); ++j) {
                    UPoly q, r;
                    upoly::divmod(F, upoly::mul(F, phl, P[j]), P.back(), q, r);
                    if (!r.empty()) return false;
                    for (std::size_t e = 0; e < q.size(); ++e) {
                        if (q[e] == 0) continue;
                        if (e >= w[m]) return false;
                        rp::Exponents ex(f.level, 0);
                        for (std::size_t i = 0; i < m; ++i) ex[others[i]] = unsigned((e / w[i]) % base[i]);
                        ex[v] = unsigned(j);
                        back.push_back({ex, q[e]});
                    }
                }
                RPoly cand = primitive_in(F, rp::from_terms(F, f.level, back), v);
                if (rp::degree_in(cand, v) == 0) return false;
                auto q = rp::div_exact(F, cur, cand);
                if (!q) return false;
                found.push_back(cand);
                quotient = std::move(*q);
                hit = pick;
                return true;
            });
            if (!ok) {
                ++s;
                continue;
            }
            cur = std::move(quotient);
            std::vector<std::size_t> rest;
            for (auto i : remaining)
                if (std::find(hit.begin(), hit.end(), i) == hit.end()) rest.push_back(i);
            remaining = std::move(rest);
        }
        if (rp::degree_in(cur, v) > 0) found.push_back(rp::make_monic(F, cur));
        return found;
    }
    unsupported("could not find a separable Kronecker image");
}

void factor_rec(const ConstFieldPtr& Fp, const RPoly& f, unsigned mult, std::vector<PolyFactor>& out) {
    const ConstField& F = *Fp;
    if (rp::is_constant(f)) return;
    const int n = f.level;
    int v = -1;
    unsigned best = ~0u;
    for (int i = 0; i < n; ++i) {
        unsigned d = rp::degree_in(f, i);
        if (d == 0 || rp::is_zero(rp::derivative(F, f, i))) continue;
        if (d < best) { best = d; v = i; }
    }
    if (v < 0) {
        factor_rec(Fp, poly_pth_root(F, f), mult * F.p(), out);
        return;
    }
    RPoly g = rp::gcd(F, f, rp::derivative(F, f, v));
    if (!rp::is_constant(g)) {
        factor_rec(Fp, g, mult, out);
        factor_rec(Fp, *rp::div_exact(F, f, g), mult, out);
        return;
    }
    RPoly prim = primitive_in(F, f, v);
    if (!(rp::degree_in(prim, v) == rp::degree_in(f, v) && rp::total_degree(prim) == rp::total_degree(f))) {
        auto q = rp::div_exact(F, f, prim);
        factor_rec(Fp, *q, mult, out);
        factor_rec(Fp, prim, mult, out);
        return;
    }
    std::vector<int> others;
    for (int i = 0; i < n; ++i)
        if (i != v && rp::degree_in(f, i) > 0) others.push_back(i);
    if (rp::degree_in(f, v) == 1) {
        out.push_back({rp::make_monic(F, f), mult});
        return;
    }
    if (others.empty()) {
        UPoly u(rp::degree_in(f, v) + 1, 0);
        for (const auto& t : rp::terms(f)) u[t.exps[v]] = t.coef;
        for (const auto& fc : upoly::factor(F, u)) {
            std::vector<rp::Term> ts;
            for (std::size_t e = 0; e < fc.poly.size(); ++e) {
                if (fc.poly[e] == 0) continue;
                rp::Exponents ex(n, 0);
                ex[v] = unsigned(e);
                ts.push_back({ex, fc.poly[e]});
            }
            out.push_back({rp::from_terms(F, n, ts), mult * fc.multiplicity});
        }
        return;
    }
    if (others.size() == 1) {
        const int u = others[0];
        std::vector<rp::Term> ts;
        for (const auto& t : rp::terms(f)) ts.push_back({{t.exps[u], t.exps[v]}, t.coef});
        auto facs = bi_factor(Fp, rpoly_to_bi(rp::from_terms(F, 2, ts)));
        for (const auto& b : facs) {
            std::vector<rp::Term> back;
            for (const auto& t : rp::terms(bi_to_rpoly(b))) {
                rp::Exponents ex(n, 0);
                ex[u] = t.exps[0];
                ex[v] = t.exps[1];
                back.push_back({ex, t.coef});
            }
            out.push_back({rp::make_monic(F, rp::from_terms(F, n, back)), mult});
        }
        return;
    }
    for (auto& h : kronecker_factors(Fp, f, others, v)) out.push_back({rp::make_monic(F, h), mult});
}

}  // namespace

std::vector<PolyFactor> factor(const ConstField& F, const RPoly& f) {
    if (rp::is_zero(f)) fail("cannot factor the zero polynomial");
    auto Fp = ConstField::get(F.p(), F.modulus());
    std::vector<PolyFactor> raw;
    factor_rec(Fp, f, 1, raw);
    std::vector<PolyFactor> merged;
    for (auto& pf : raw) {
        auto it = std::find_if(merged.begin(), merged.end(), [&](const PolyFactor& m) { return m.poly == pf.poly; });
        if (it != merged.end()) it->multiplicity += pf.multiplicity;
        else merged.push_back(std::move(pf));
    }
    std::sort(merged.begin(), merged.end(), factor_less);
    return merged;
}

bool is_irreducible(const ConstField& F, const RPoly& f) {
    if (rp::is_constant(f)) return false;
    auto fs = factor(F, f);
    return fs.size() == 1 && fs[0].multiplicity == 1;
}

RPoly extend(const ConstField& F, const ConstField& big, const RPoly& f) {
    if (F.same_as(big)) return f;
    return rp::map_constants(f, embed_table(F, big));
}

unsigned splitting_degree(const ConstFieldPtr& F, const RPoly& f, unsigned max_s) {
    for (unsigned s = 2; s <= max_s; ++s) {
        std::uint64_t size = 1;
        for (unsigned i = 0; i < F->k() * s; ++i) size *= F->p();
        if (size > (1u << 22)) exhausted("constant extension GF(" + std::to_string(F->p()) + "^" +
                                         std::to_string(F->k() * s) + ") exceeds field size cap");
        auto E = ConstField::get(F->p(), F->k() * s);
        if (!is_irreducible(*E, extend(*F, *E, f))) return s;
    }
    return 0;
}

}  // namespace pacf::mfactor
