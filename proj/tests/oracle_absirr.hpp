#pragma once

// Brute-force absolute irreducibility of plane curves over a prime field GF(q):
// f is absolutely irreducible iff it has no factor of degree k over GF(q^s)
// for any k <= d/2 and s*k <= d. Candidate factors g are enumerated over
// GF(q^s) (top form among the divisors of the top form of f, lower forms
// exhaustively), and g | f is decided layer by layer.

#include <vector>

#include "pacf/gf.hpp"

namespace oracle {

using pacf::Code;
using pacf::ConstField;

/// Binary form of degree n: c[i] is the coefficient of x^i y^(n-i).
using Form = std::vector<Code>;
/// Plane polynomial as forms of degree 0..d.
using Plane = std::vector<Form>;

inline Form form_mul(const ConstField& F, const Form& a, const Form& b) {
    Form r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    return r;
}

/// Exact quotient a / g of binary forms, or false.
inline bool form_div(const ConstField& F, const Form& a, const Form& g, Form& h) {
    const std::size_t n = a.size() - 1, k = g.size() - 1;
    if (k > n) {
        for (Code c : a)
            if (c) return false;
        h.clear();
        return true;
    }
    std::size_t j0 = 0;
    while (j0 <= k && g[j0] == 0) ++j0;
    if (j0 > k) return false;
    h.assign(n - k + 1, 0);
    const Code ginv = F.inv(g[j0]);
    for (std::size_t m = 0; m <= n - k; ++m) {
        Code acc = a[m + j0];
        for (std::size_t j = j0 + 1; j <= k && j <= m + j0; ++j) acc = F.sub(acc, F.mul(g[j], h[m + j0 - j]));
        h[m] = F.mul(acc, ginv);
    }
    return form_mul(F, g, h) == a;
}

inline bool all_zero(const Form& f) {
    for (Code c : f)
        if (c) return false;
    return true;
}

/// g | f for plane polynomials, g given by its forms g[0..k] with g[k] != 0.
inline bool divides(const ConstField& F, const Plane& f, const Plane& g) {
    const std::size_t d = f.size() - 1, k = g.size() - 1;
    std::vector<Form> h(d - k + 1);
    for (std::size_t mm = d + 1; mm-- > 0;) {
        Form rest = f[mm];
        for (std::size_t a = 0; a < k; ++a) {
            if (mm < a || mm - a > d - k) continue;
            const Form prod = form_mul(F, g[a], h[mm - a]);
            for (std::size_t i = 0; i < rest.size(); ++i) rest[i] = F.sub(rest[i], prod[i]);
        }
        if (mm >= k) {
            if (!form_div(F, rest, g[k], h[mm - k])) return false;
        } else if (!all_zero(rest)) {
            return false;
        }
    }
    return true;
}

/// Enumerates every form of degree n over F (all codes), calling fn until it returns true.
template <class Fn>
bool each_form(const ConstField& F, std::size_t n, Fn&& fn) {
    Form c(n + 1, 0);
    while (true) {
        if (fn(c)) return true;
        std::size_t i = 0;
        while (i <= n && ++c[i] == F.q()) c[i++] = 0;
        if (i > n) return false;
    }
}

/// Some factor of degree k exists over F.
inline bool has_factor(const ConstField& F, const Plane& f, std::size_t k) {
    const std::size_t d = f.size() - 1;
    std::vector<Form> tops;
    each_form(F, k, [&](const Form& g) {
        std::size_t j = 0;
        while (j <= k && g[j] == 0) ++j;
        if (j > k || g[j] != 1) return false;
        Form h;
        if (form_div(F, f[d], g, h)) tops.push_back(g);
        return false;
    });
    for (const auto& top : tops) {
        Plane g(k + 1);
        g[k] = top;
        auto rec = [&](auto&& self, std::size_t a) -> bool {
            if (a == k) return divides(F, f, g);
            return each_form(F, a, [&](const Form& c) {
                g[a] = c;
                return self(self, a + 1);
            });
        };
        if (rec(rec, 0)) return true;
    }
    return false;
}

/// f over GF(p) (codes < p), total degree d = f.size() - 1 >= 1 with f[d] != 0.
inline bool absolutely_irreducible(pacf::Code p, const Plane& f) {
    const std::size_t d = f.size() - 1;
    for (std::size_t k = 1; 2 * k <= d; ++k) {
        for (std::size_t s = 1; s * k <= d; ++s) {
            auto F = ConstField::get(p, unsigned(s));
            const auto emb = pacf::embed_table(*ConstField::get(p, 1), *F);
            Plane fe = f;
            for (auto& form : fe)
                for (auto& c : form) c = emb[c];
            if (has_factor(*F, fe, k)) return false;
        }
    }
    return true;
}

inline Plane plane_mul(const ConstField& F, const Plane& a, const Plane& b) {
    Plane r(a.size() + b.size() - 1);
    for (std::size_t m = 0; m < r.size(); ++m) r[m].assign(m + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            const Form prod = form_mul(F, a[i], b[j]);
            for (std::size_t c = 0; c < prod.size(); ++c) r[i + j][c] = F.add(r[i + j][c], prod[c]);
        }
    return r;
}

/// f = c * g^m for some constant c and some g over F of degree d / m.
inline bool power_of(const ConstField& F, const Plane& f, std::size_t m, Plane& root) {
    const std::size_t d = f.size() - 1, k = d / m;
    std::size_t lead = 0;
    while (f[d][lead] == 0) ++lead;
    std::vector<Form> tops;
    each_form(F, k, [&](const Form& c) {
        std::size_t j = 0;
        while (j <= k && c[j] == 0) ++j;
        if (j > k || c[j] != 1) return false;
        Form h;
        if (form_div(F, f[d], c, h)) tops.push_back(c);
        return false;
    });
    for (const auto& top : tops) {
        Plane g(k + 1);
        g[k] = top;
        auto rec = [&](auto&& self, std::size_t a) -> bool {
            if (a == k) {
                Plane pw = g;
                for (std::size_t i = 1; i < m; ++i) pw = plane_mul(F, pw, g);
                if (pw[d][lead] == 0) return false;
                const Code scale = F.mul(f[d][lead], F.inv(pw[d][lead]));
                for (std::size_t mm = 0; mm <= d; ++mm)
                    for (std::size_t i = 0; i <= mm; ++i)
                        if (F.mul(scale, pw[mm][i]) != f[mm][i]) return false;
                root = g;
                return true;
            }
            return each_form(F, a, [&](const Form& c) {
                g[a] = c;
                return self(self, a + 1);
            });
        };
        if (rec(rec, 0)) return true;
    }
    return false;
}

/// The curve V(f) (reduced) is absolutely irreducible: f is a constant times
/// a power of an absolutely irreducible polynomial.
inline bool curve_absolutely_irreducible(pacf::Code p, const Plane& f) {
    if (absolutely_irreducible(p, f)) return true;
    const std::size_t d = f.size() - 1;
    const auto F = ConstField::get(p, 1);
    for (std::size_t m = 2; m <= d; ++m) {
        if (d % m) continue;
        Plane g;
        if (power_of(*F, f, m, g) && absolutely_irreducible(p, g)) return true;
    }
    return false;
}

}  // namespace oracle
