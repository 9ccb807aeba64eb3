#include <algorithm>
#include <set>

#include "pacf/error.hpp"
#include "pacf/linalg.hpp"
#include "pacf/variety.hpp"

namespace pacf {

namespace {

std::vector<std::vector<unsigned>> exponent_vectors(int m, unsigned bound) {
    std::vector<std::vector<unsigned>> out{{}};
    for (int j = 0; j < m; ++j) {
        std::vector<std::vector<unsigned>> next;
        for (const auto& e : out) {
            unsigned used = 0;
            for (unsigned x : e) used += x;
            for (unsigned d = 0; used + d <= bound; ++d) {
                next.push_back(e);
                next.back().push_back(d);
            }
        }
        out = std::move(next);
    }
    return out;
}

std::size_t checked_pow(std::size_t base, std::size_t e, std::size_t cap) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (base && r > cap / base) return cap + 1;
        r *= base;
    }
    return r;
}

// Visits tuples ordered by maximal height, then lexicographically; stops when visit returns false.
template <class Visit>
void for_each_tuple(const std::vector<Scalar>& S, std::size_t n, Visit&& visit) {
    std::vector<unsigned> heights;
    for (const auto& s : S) heights.push_back(s.height());
    std::vector<unsigned> levels = heights;
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    std::vector<Scalar> point(n);
    for (unsigned h : levels) {
        std::size_t size = std::upper_bound(heights.begin(), heights.end(), h) - heights.begin();
        std::vector<std::size_t> idx(n, 0);
        for (;;) {
            bool reaches = n == 0 && h == levels.front();
            for (std::size_t i = 0; i < n; ++i) {
                point[i] = S[idx[i]];
                if (heights[idx[i]] == h) reaches = true;
            }
            if (reaches && !visit(point)) return;
            std::size_t i = n;
            while (i > 0 && ++idx[i - 1] == size) idx[--i] = 0;
            if (i == 0) break;
        }
    }
}

}  // namespace

std::vector<Scalar> field_elements(const Field& K, unsigned bound, std::size_t cap) {
    const auto& F = K->constants();
    std::vector<Scalar> out;
    if (K->is_finite()) {
        if (F.q() > cap) exhausted("field has more than " + std::to_string(cap) + " elements");
        for (Code c = 0; c < F.q(); ++c) out.push_back(Scalar::from_code(K, c));
        return out;
    }
    const int m = K->m();
    auto exps = exponent_vectors(m, bound);
    std::size_t polys = checked_pow(F.q(), exps.size(), cap);
    if (polys > cap || polys * polys > cap) exhausted("too many field elements of height <= " + std::to_string(bound));
    std::vector<RPoly> all;
    std::vector<Code> coef(exps.size(), 0);
    for (std::size_t k = 0; k < polys; ++k) {
        std::size_t r = k;
        std::vector<rp::Term> ts;
        for (std::size_t i = 0; i < exps.size(); ++i, r /= F.q())
            if (Code c = Code(r % F.q())) ts.push_back({exps[i], c});
        all.push_back(rp::from_terms(F, m, ts));
    }
    std::set<Scalar> seen;
    for (const auto& num : all)
        for (const auto& den : all) {
            if (rp::is_zero(den) || rp::leading_constant(den) != 1) continue;
            seen.insert(Scalar::fraction(K, num, den));
        }
    out.assign(seen.begin(), seen.end());
    return out;
}

namespace {

template <class Accept>
void search(const AffineVariety& V, const PointSearch& opts, Accept&& accept) {
    auto S = field_elements(V.field(), opts.bound);
    const std::size_t n = V.nvars();
    if (checked_pow(S.size(), n, opts.max_candidates) > opts.max_candidates)
        exhausted("point search over " + std::to_string(S.size()) + "^" + std::to_string(n) + " candidates");
    for (const auto& a : opts.avoid) require_same_ring(a.ring(), V.ring(), "point search");
    if (V.gens().size() == 1 && V.gens()[0].is_constant() && !V.gens()[0].is_zero()) return;
    for_each_tuple(S, n, [&](const std::vector<Scalar>& pt) {
        if (!V.contains(pt)) return true;
        if (!opts.avoid.empty() &&
            std::all_of(opts.avoid.begin(), opts.avoid.end(), [&](const MultiPoly& h) { return h.eval(pt).is_zero(); }))
            return true;
        return accept(pt);
    });
}

}  // namespace

std::vector<std::vector<Scalar>> enumerate_points(const AffineVariety& V, const PointSearch& opts) {
    std::vector<std::vector<Scalar>> out;
    search(V, opts, [&](const std::vector<Scalar>& pt) {
        out.push_back(pt);
        return opts.limit == 0 || out.size() < opts.limit;
    });
    return out;
}

std::optional<std::vector<Scalar>> find_point(const AffineVariety& V, const PointSearch& opts,
                                              const std::function<bool(const std::vector<Scalar>&)>& accept) {
    std::optional<std::vector<Scalar>> found;
    search(V, opts, [&](const std::vector<Scalar>& pt) {
        if (accept && !accept(pt)) return true;
        found = pt;
        return false;
    });
    return found;
}

bool is_smooth_point(const AffineVariety& V, const std::vector<Scalar>& a) {
    if (!V.contains(a)) fail("point does not lie on the variety");
    auto dim = V.dimension();
    const auto& G = V.ideal().basis();
    const std::size_t n = V.nvars();
    linalg::Matrix<Scalar> J;
    for (const auto& g : G) {
        std::vector<Scalar> row;
        for (std::size_t j = 0; j < n; ++j) row.push_back(g.partial(j).eval(a));
        J.push_back(row);
    }
    return J.empty() ? *dim == int(n) : linalg::rank(J) == n - std::size_t(*dim);
}

}  // namespace pacf
