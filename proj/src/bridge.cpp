#include "bridge.hpp"

#include <map>

#include "pacf/error.hpp"

namespace pacf::detail {

RPoly to_rpoly(const MultiPoly& f) {
    const auto& K = f.field();
    const auto& F = K->constants();
    const int m = K->m();
    const int level = m + int(f.ring()->nvars());
    RPoly l = rp::constant(m, 1);
    for (const auto& [mono, c] : f.terms()) {
        if (rp::is_constant(c.den())) continue;
        RPoly g = rp::gcd(F, l, c.den());
        l = rp::mul(F, l, *rp::div_exact(F, c.den(), g));
    }
    std::vector<rp::Term> ts;
    for (const auto& [mono, c] : f.terms()) {
        RPoly coef = rp::mul(F, c.num(), *rp::div_exact(F, l, c.den()));
        for (auto& t : rp::terms(coef)) {
            rp::Term full{rp::Exponents(level, 0), t.coef};
            for (int i = 0; i < m; ++i) full.exps[i] = t.exps[i];
            for (std::size_t j = 0; j < mono.size(); ++j) full.exps[m + j] = mono[j];
            ts.push_back(std::move(full));
        }
    }
    return rp::from_terms(F, level, ts);
}

MultiPoly from_rpoly(const Ring& r, const RPoly& f) {
    const auto& K = r->field();
    const auto& F = K->constants();
    const int m = K->m();
    if (f.level != m + int(r->nvars())) fail("internal: level mismatch in polynomial conversion");
    std::map<Mono, std::vector<rp::Term>> groups;
    for (const auto& t : rp::terms(f)) {
        Mono mono(t.exps.begin() + m, t.exps.end());
        groups[mono].push_back({rp::Exponents(t.exps.begin(), t.exps.begin() + m), t.coef});
    }
    PolyBuilder b(r);
    for (const auto& [mono, ts] : groups)
        b.add(mono, Scalar::fraction(K, rp::from_terms(F, m, ts), rp::constant(m, 1)));
    return b.take();
}

}  // namespace pacf::detail
