#include "pacf/rpoly.hpp"

#include <algorithm>

#include "pacf/error.hpp"

namespace pacf::rp {

namespace {

void trim(RPoly& a) {
    while (!a.co.empty() && is_zero(a.co.back())) a.co.pop_back();
}

const RPoly& lc(const RPoly& a) { return a.co.back(); }

RPoly shift_mul(const ConstField& F, const RPoly& a, const RPoly& coef, int shift) {
    // coef * main^shift * a ; coef has level a.level - 1
    RPoly r = zero(a.level);
    if (is_zero(a) || is_zero(coef)) return r;
    r.co.assign(a.co.size() + shift, zero(a.level - 1));
    for (std::size_t i = 0; i < a.co.size(); ++i) r.co[i + shift] = mul(F, a.co[i], coef);
    trim(r);
    return r;
}

RPoly content_impl(const ConstField& F, const RPoly& a) {
    RPoly g = zero(a.level - 1);
    for (const auto& c : a.co) {
        g = gcd(F, g, c);
        if (is_constant(g) && !is_zero(g)) break;
    }
    return g;
}

RPoly div_coeffs(const ConstField& F, const RPoly& a, const RPoly& d) {
    RPoly r = a;
    for (auto& c : r.co) c = *div_exact(F, c, d);
    return r;
}

RPoly prem(const ConstField& F, RPoly a, const RPoly& b) {
    const int db = main_degree(b);
    const RPoly& lb = lc(b);
    while (!is_zero(a) && main_degree(a) >= db) {
        const int shift = main_degree(a) - db;
        RPoly t = shift_mul(F, b, lc(a), shift);
        RPoly scaled = a;
        for (auto& c : scaled.co) c = mul(F, c, lb);
        a = sub(F, scaled, t);
    }
    return a;
}

void collect_terms(const RPoly& a, Exponents& cur, int total_vars, std::vector<Term>& out) {
    if (a.level == 0) {
        if (a.c != 0) out.push_back({cur, a.c});
        return;
    }
    for (std::size_t i = 0; i < a.co.size(); ++i) {
        cur[a.level - 1] = unsigned(i);
        collect_terms(a.co[i], cur, total_vars, out);
    }
    cur[a.level - 1] = 0;
}

}  // namespace

RPoly zero(int level) {
    RPoly r;
    r.level = level;
    return r;
}

RPoly constant(int level, Code c) {
    RPoly r;
    r.level = 0;
    r.c = c;
    for (int l = 1; l <= level; ++l) {
        RPoly up;
        up.level = l;
        if (c != 0) up.co.push_back(std::move(r));
        r = std::move(up);
    }
    return r;
}

RPoly variable(int level, int index) {
    if (index < 0 || index >= level) fail("variable index out of range");
    RPoly one = constant(level - 1, 1);
    if (index == level - 1) {
        RPoly r = zero(level);
        r.co = {zero(level - 1), one};
        return r;
    }
    RPoly r = zero(level);
    r.co = {variable(level - 1, index)};
    return r;
}

bool is_zero(const RPoly& a) { return a.level == 0 ? a.c == 0 : a.co.empty(); }

bool is_constant(const RPoly& a) {
    if (a.level == 0) return true;
    if (a.co.empty()) return true;
    return a.co.size() == 1 && is_constant(a.co[0]);
}

Code constant_value(const RPoly& a) {
    if (a.level == 0) return a.c;
    if (a.co.empty()) return 0;
    return constant_value(a.co[0]);
}

Code leading_constant(const RPoly& a) {
    if (a.level == 0) return a.c;
    if (a.co.empty()) return 0;
    return leading_constant(a.co.back());
}

int main_degree(const RPoly& a) {
    if (a.level == 0) return a.c == 0 ? -1 : 0;
    return int(a.co.size()) - 1;
}

unsigned total_degree(const RPoly& a) {
    if (a.level == 0) return 0;
    unsigned best = 0;
    for (std::size_t i = 0; i < a.co.size(); ++i)
        if (!is_zero(a.co[i])) best = std::max(best, unsigned(i) + total_degree(a.co[i]));
    return best;
}

unsigned degree_in(const RPoly& a, int var) {
    if (a.level == 0) return 0;
    if (var == a.level - 1) return a.co.empty() ? 0 : unsigned(a.co.size() - 1);
    unsigned best = 0;
    for (const auto& c : a.co) best = std::max(best, degree_in(c, var));
    return best;
}

RPoly add(const ConstField& F, const RPoly& a, const RPoly& b) {
    if (a.level == 0) return constant(0, F.add(a.c, b.c));
    RPoly r = zero(a.level);
    r.co.resize(std::max(a.co.size(), b.co.size()), zero(a.level - 1));
    for (std::size_t i = 0; i < r.co.size(); ++i) {
        if (i < a.co.size() && i < b.co.size()) r.co[i] = add(F, a.co[i], b.co[i]);
        else if (i < a.co.size()) r.co[i] = a.co[i];
        else r.co[i] = b.co[i];
    }
    trim(r);
    return r;
}

RPoly neg(const ConstField& F, const RPoly& a) {
    if (a.level == 0) return constant(0, F.neg(a.c));
    RPoly r = a;
    for (auto& c : r.co) c = neg(F, c);
    return r;
}

RPoly sub(const ConstField& F, const RPoly& a, const RPoly& b) { return add(F, a, neg(F, b)); }

RPoly mul(const ConstField& F, const RPoly& a, const RPoly& b) {
    if (a.level == 0) return constant(0, F.mul(a.c, b.c));
    RPoly r = zero(a.level);
    if (a.co.empty() || b.co.empty()) return r;
    r.co.assign(a.co.size() + b.co.size() - 1, zero(a.level - 1));
    for (std::size_t i = 0; i < a.co.size(); ++i) {
        if (is_zero(a.co[i])) continue;
        for (std::size_t j = 0; j < b.co.size(); ++j) {
            if (is_zero(b.co[j])) continue;
            r.co[i + j] = add(F, r.co[i + j], mul(F, a.co[i], b.co[j]));
        }
    }
    trim(r);
    return r;
}

RPoly scale(const ConstField& F, const RPoly& a, Code c) {
    if (a.level == 0) return constant(0, F.mul(a.c, c));
    if (c == 0) return zero(a.level);
    RPoly r = a;
    for (auto& x : r.co) x = scale(F, x, c);
    return r;
}

RPoly pow(const ConstField& F, const RPoly& a, unsigned e) {
    RPoly result = constant(a.level, 1);
    RPoly base = a;
    while (e) {
        if (e & 1) result = mul(F, result, base);
        e >>= 1;
        if (e) base = mul(F, base, base);
    }
    return result;
}

std::optional<RPoly> div_exact(const ConstField& F, const RPoly& a, const RPoly& b) {
    if (is_zero(b)) fail("polynomial division by zero");
    if (a.level == 0) return constant(0, F.div(a.c, b.c));
    if (is_zero(a)) return zero(a.level);
    if (main_degree(b) == 0) {
        RPoly r = zero(a.level);
        r.co.reserve(a.co.size());
        for (const auto& c : a.co) {
            auto q = div_exact(F, c, b.co[0]);
            if (!q) return std::nullopt;
            r.co.push_back(std::move(*q));
        }
        trim(r);
        return r;
    }
    const int db = main_degree(b);
    if (main_degree(a) < db) return std::nullopt;
    RPoly r = a;
    RPoly q = zero(a.level);
    q.co.assign(main_degree(a) - db + 1, zero(a.level - 1));
    while (!is_zero(r)) {
        if (main_degree(r) < db) return std::nullopt;
        const int shift = main_degree(r) - db;
        auto qc = div_exact(F, lc(r), lc(b));
        if (!qc) return std::nullopt;
        r = sub(F, r, shift_mul(F, b, *qc, shift));
        q.co[shift] = std::move(*qc);
    }
    trim(q);
    return q;
}

RPoly make_monic(const ConstField& F, const RPoly& a) {
    Code l = leading_constant(a);
    if (l == 0 || l == 1) return a;
    return scale(F, a, F.inv(l));
}

RPoly gcd(const ConstField& F, const RPoly& a, const RPoly& b) {
    if (is_zero(a)) return make_monic(F, b);
    if (is_zero(b)) return make_monic(F, a);
    if (a.level == 0) return constant(0, 1);
    RPoly ca = content_impl(F, a), cb = content_impl(F, b);
    RPoly gc = gcd(F, ca, cb);
    RPoly pa = div_coeffs(F, a, ca), pb = div_coeffs(F, b, cb);
    if (main_degree(pa) < main_degree(pb)) std::swap(pa, pb);
    while (!is_zero(pb) && main_degree(pb) > 0) {
        RPoly r = prem(F, pa, pb);
        pa = std::move(pb);
        if (is_zero(r)) {
            pb = zero(a.level);
        } else {
            pb = div_coeffs(F, r, content_impl(F, r));
        }
    }
    RPoly g = zero(a.level);
    if (!is_zero(pb)) {
        g = constant(a.level, 1);
    } else {
        g = div_coeffs(F, pa, content_impl(F, pa));
    }
    RPoly lifted = zero(a.level);
    lifted.co = {gc};
    trim(lifted);
    return make_monic(F, mul(F, g, lifted));
}

RPoly derivative(const ConstField& F, const RPoly& a, int var) {
    if (a.level == 0) return zero(0);
    RPoly r = zero(a.level);
    if (var == a.level - 1) {
        if (a.co.size() <= 1) return r;
        r.co.resize(a.co.size() - 1, zero(a.level - 1));
        for (std::size_t i = 1; i < a.co.size(); ++i)
            r.co[i - 1] = scale(F, a.co[i], F.from_int(static_cast<long long>(i)));
    } else {
        r.co.reserve(a.co.size());
        for (const auto& c : a.co) r.co.push_back(derivative(F, c, var));
    }
    trim(r);
    return r;
}

RPoly content(const ConstField& F, const RPoly& a) {
    if (a.level == 0) fail("content of a constant");
    return content_impl(F, a);
}

RPoly primitive_part(const ConstField& F, const RPoly& a) {
    if (is_zero(a) || a.level == 0) return a;
    return make_monic(F, div_coeffs(F, a, content_impl(F, a)));
}

RPoly permute(const ConstField& F, const RPoly& a, const std::vector<int>& perm) {
    auto ts = terms(a);
    for (auto& t : ts) {
        Exponents e(t.exps.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) e[perm[i]] = t.exps[i];
        t.exps = std::move(e);
    }
    return from_terms(F, a.level, ts);
}

RPoly raise(const RPoly& a, int level) {
    RPoly r = a;
    while (r.level < level) {
        RPoly up = zero(r.level + 1);
        if (!is_zero(r)) up.co.push_back(std::move(r));
        r = std::move(up);
    }
    return r;
}

std::vector<Term> terms(const RPoly& a) {
    std::vector<Term> out;
    Exponents cur(a.level, 0);
    collect_terms(a, cur, a.level, out);
    return out;
}

namespace {

void place(const ConstField& F, RPoly& r, const Exponents& e, Code coef) {
    if (r.level == 0) {
        r.c = F.add(r.c, coef);
        return;
    }
    const unsigned d = e[r.level - 1];
    if (r.co.size() <= d) r.co.resize(d + 1, zero(r.level - 1));
    place(F, r.co[d], e, coef);
}

void trim_all(RPoly& r) {
    if (r.level == 0) return;
    for (auto& c : r.co) trim_all(c);
    trim(r);
}

}  // namespace

RPoly from_terms(const ConstField& F, int level, const std::vector<Term>& ts) {
    RPoly r = zero(level);
    for (const auto& t : ts) place(F, r, t.exps, t.coef);
    trim_all(r);
    return r;
}

RPoly map_constants(const RPoly& a, const std::vector<Code>& table) {
    if (a.level == 0) return constant(0, table[a.c]);
    RPoly r = a;
    for (auto& c : r.co) c = map_constants(c, table);
    return r;
}

}  // namespace pacf::rp
