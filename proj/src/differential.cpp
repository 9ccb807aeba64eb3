#include "pacf/differential.hpp"

#include "pacf/error.hpp"
#include "pacf/linalg.hpp"

namespace pacf {

DerivationContext::DerivationContext(Field K, std::vector<Scalar> images) : field_(std::move(K)), images_(std::move(images)) {
    if (images_.size() > std::size_t(field_->m())) fail("derivation has more images than transcendentals");
    for (const auto& c : images_) require_same_field(c.field(), field_, "derivation image");
    while (images_.size() < std::size_t(field_->m())) images_.push_back(Scalar::zero(field_));
}

DerivationContext DerivationContext::standard(const Field& K, int j) {
    if (j < 0 || j >= K->m()) fail("no transcendental with index " + std::to_string(j) + " in " + K->spec());
    std::vector<Scalar> images(K->m(), Scalar::zero(K));
    images[j] = Scalar::one(K);
    return DerivationContext(K, images);
}

bool DerivationContext::is_zero() const {
    for (const auto& c : images_)
        if (!c.is_zero()) return false;
    return true;
}

Scalar DerivationContext::apply(const Scalar& c) const {
    require_same_field(c.field(), field_, "derivation");
    Scalar r = Scalar::zero(field_);
    for (int j = 0; j < field_->m(); ++j)
        if (!images_[j].is_zero()) r += c.partial(j) * images_[j];
    return r;
}

MultiPoly DerivationContext::apply_coefficients(const MultiPoly& g) const {
    return g.map_coefficients(g.ring(), [this](const Scalar& c) { return apply(c); });
}

Scalar DerivationContext::total(const MultiPoly& g, const std::vector<Scalar>& a, const std::vector<Scalar>& da) const {
    if (a.size() != g.ring()->nvars() || da.size() != a.size()) fail("derivative data has wrong arity");
    Scalar r = apply_coefficients(g).eval(a);
    for (std::size_t i = 0; i < a.size(); ++i) r += g.partial(i).eval(a) * da[i];
    return r;
}

std::string DerivationContext::to_string() const {
    if (is_zero()) return "D = 0 on " + field_->spec();
    std::string s;
    for (int j = 0; j < field_->m(); ++j)
        s += (j ? ", " : "") + std::string("D(") + field_->transcendentals()[j] + ") = " + images_[j].to_string();
    return s;
}

// --- prolongation ------------------------------------------------------------------

std::vector<RationalExpr> ProlongationBundle::projection() const {
    std::vector<RationalExpr> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(rational(MultiPoly::var(tau.ring(), i)));
    return out;
}

std::vector<std::string> derivative_names(const Ring& r, std::size_t count) {
    std::vector<std::string> out;
    Ring cur = r;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(fresh_name(cur, "d" + r->vars()[i]));
        cur = extend_ring(cur, {out.back()});
    }
    return out;
}

ProlongationBundle prolongation(const AffineVariety& V, const DerivationContext& D, std::vector<std::string> dnames) {
    require_same_field(V.field(), D.field(), "prolongation");
    const std::size_t n = V.nvars();
    if (dnames.empty()) dnames = derivative_names(V.ring(), n);
    if (dnames.size() != n) fail("prolongation needs one derivative name per variable");
    Ring T = extend_ring(V.ring(), dnames);
    ProlongationBundle b{V, {}, {}, n};
    std::vector<MultiPoly> gens;
    for (std::size_t j = 0; j < V.gens().size(); ++j) {
        gens.push_back(V.gens()[j].embed(T));
        b.provenance.push_back({j, false});
    }
    for (std::size_t j = 0; j < V.gens().size(); ++j) {
        const MultiPoly& g = V.gens()[j];
        MultiPoly lin = D.apply_coefficients(g).embed(T);
        for (std::size_t i = 0; i < n; ++i) lin += g.partial(i).embed(T) * MultiPoly::var(T, n + i);
        if (lin.is_zero()) continue;
        gens.push_back(lin);
        b.provenance.push_back({j, true});
    }
    b.tau = AffineVariety(T, gens);
    return b;
}

std::vector<Scalar> nabla_point(const ProlongationBundle& tau, const DerivationContext& D, const std::vector<Scalar>& a) {
    if (!tau.source.contains(a)) fail("point does not lie on the variety");
    std::vector<Scalar> out = a;
    for (const auto& c : a) out.push_back(D.apply(c));
    if (!tau.tau.contains(out)) fail("internal: chain-rule identity violated");
    return out;
}

namespace {

FunctionFieldElem elem(const AffineVariety& V, const MultiPoly& p) { return FunctionFieldElem::from_poly(V, p); }

}  // namespace

std::optional<std::vector<FunctionFieldElem>> nabla_generic(const AffineVariety& V, const DerivationContext& D) {
    if (!is_irreducible(V)) fail("generic derivation needs a K-irreducible variety");
    const std::size_t n = V.nvars();
    linalg::Matrix<FunctionFieldElem> A;
    std::vector<FunctionFieldElem> rhs;
    for (const auto& g : V.gens()) {
        std::vector<FunctionFieldElem> row;
        for (std::size_t i = 0; i < n; ++i) row.push_back(elem(V, g.partial(i)));
        A.push_back(row);
        rhs.push_back(-elem(V, D.apply_coefficients(g)));
    }
    FunctionFieldElem zero = FunctionFieldElem::constant(V, Scalar::zero(V.field()));
    if (A.empty()) return std::vector<FunctionFieldElem>(n, zero);
    return linalg::solve(A, rhs, zero);
}

// --- pairs W over V -----------------------------------------------------------------

namespace {

void require_doubled(const AffineVariety& V, const AffineVariety& W) {
    const std::size_t n = V.nvars();
    if (W.nvars() != 2 * n) fail("W must live in twice the variables of V");
    for (std::size_t i = 0; i < n; ++i)
        if (W.ring()->vars()[i] != V.ring()->vars()[i])
            fail("variable mismatch: W variable " + W.ring()->vars()[i] + " should be " + V.ring()->vars()[i]);
    if (!W.field()->same_as(*V.field())) fail("V and W are over different fields");
}

std::vector<std::string> tail_names(const AffineVariety& W, std::size_t n) {
    return {W.ring()->vars().begin() + std::ptrdiff_t(n), W.ring()->vars().end()};
}

}  // namespace

Verdict derivation_extends(const AffineVariety& V, const AffineVariety& W, const DerivationContext& D) {
    require_doubled(V, W);
    auto b = prolongation(V, D, tail_names(W, V.nvars()));
    for (const auto& g : b.tau.gens()) {
        MultiPoly h = g.embed(W.ring());
        if (!radical_member(h, W.ideal()))
            return {false, "generator " + h.to_string() + " of the prolongation does not vanish on W"};
    }
    return {true, "every generator of the prolongation vanishes on W"};
}

EqualizerData equalizer(const AffineVariety& V, const AffineVariety& W, const DerivationContext& D) {
    auto ext = derivation_extends(V, W, D);
    if (!ext.value) fail("equalizer precondition W inside tau(V) fails: " + ext.certificate);
    const std::size_t n = V.nvars();
    auto tw = prolongation(W, D);
    const Ring& T = tw.tau.ring();
    std::vector<MultiPoly> gens = tw.tau.gens();
    for (std::size_t i = 0; i < n; ++i) gens.push_back(MultiPoly::var(T, 2 * n + i) - MultiPoly::var(T, n + i));
    return {tw, AffineVariety(T, gens)};
}

Verdict kerprol_check(const AffineVariety& V, const AffineVariety& W, const DerivationContext& D) {
    auto eq = equalizer(V, W, D);
    if (eq.E.is_empty()) return {false, "the equalizer is empty"};
    RationalMapData m{eq.E, W, eq.tau_w.projection()};
    return dominance(m);
}

Verdict extension_oracle(const AffineVariety& V, const AffineVariety& W, const DerivationContext& D) {
    require_doubled(V, W);
    if (W.is_empty()) return {false, "W is empty"};
    if (!is_irreducible(W)) fail("extension oracle needs a K-irreducible W");
    const std::size_t n = V.nvars();
    linalg::Matrix<FunctionFieldElem> A;
    std::vector<FunctionFieldElem> rhs;
    for (const auto& h : W.gens()) {
        std::vector<FunctionFieldElem> row;
        for (std::size_t i = 0; i < n; ++i) row.push_back(elem(W, h.partial(n + i)));
        MultiPoly known = D.apply_coefficients(h);
        for (std::size_t i = 0; i < n; ++i) known += h.partial(i) * MultiPoly::var(W.ring(), n + i);
        A.push_back(row);
        rhs.push_back(-elem(W, known));
    }
    if (A.empty()) return {true, "no constraints on D(u)"};
    FunctionFieldElem zero = FunctionFieldElem::constant(W, Scalar::zero(W.field()));
    auto sol = linalg::solve(A, rhs, zero);
    if (!sol) return {false, "chain-rule system for D(u) is inconsistent over K(W)"};
    std::string s;
    auto names = tail_names(W, n);
    for (std::size_t i = 0; i < n; ++i) s += (i ? ", " : "") + std::string("D(") + names[i] + ") = " + (*sol)[i].to_string();
    return {true, "solution " + s};
}

}  // namespace pacf
