#include "pacf/gf.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

#include "pacf/error.hpp"

namespace pacf {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

constexpr Code kMaxFieldSize = Code{1} << 22;

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Arithmetic on digit vectors, used only while building tables.
std::vector<Code> poly_mulmod_p(const std::vector<Code>& a, const std::vector<Code>& b,
                                const ConstField::Modulus& f, Code p) {
    const std::size_t k = f.size() - 1;
    std::vector<std::uint64_t> prod(2 * k, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + std::uint64_t(a[i]) * b[j]) % p;
    for (std::size_t d = 2 * k - 1; d >= k; --d) {
        std::uint64_t c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (std::size_t i = 0; i < k; ++i)
            prod[d - k + i] = (prod[d - k + i] + (p - c) * f[i]) % p;
    }
    return std::vector<Code>(prod.begin(), prod.begin() + k);
}

}  // namespace

ConstField::ConstField(Code p, Modulus modulus) : p_(p), modulus_(std::move(modulus)) {
    k_ = unsigned(modulus_.size() - 1);
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k_; ++i) {
        q *= p_;
        if (q > kMaxFieldSize) exhausted("field GF(" + std::to_string(p) + "^" + std::to_string(k_) + ") too large");
    }
    q_ = Code(q);

    auto to_digits = [&](Code a) {
        std::vector<Code> d(k_, 0);
        for (unsigned i = 0; i < k_; ++i) { d[i] = a % p_; a /= p_; }
        return d;
    };
    auto from = [&](const std::vector<Code>& d) {
        Code a = 0;
        for (unsigned i = k_; i-- > 0;) a = a * p_ + d[i];
        return a;
    };

    log_.assign(q_, 0);
    exp_.assign(q_, 0);
    if (q_ == 2) {
        exp_[0] = 1;
        log_[1] = 0;
    } else {
        auto divisors = prime_divisors(q_ - 1);
        auto slow_pow = [&](std::vector<Code> b, std::uint64_t e) {
            std::vector<Code> r(k_, 0);
            r[0] = 1;
            while (e) {
                if (e & 1) r = poly_mulmod_p(r, b, modulus_, p_);
                b = poly_mulmod_p(b, b, modulus_, p_);
                e >>= 1;
            }
            return r;
        };
        std::vector<Code> one(k_, 0);
        one[0] = 1;
        Code prim = 0;
        for (Code c = 2; c < q_ && prim == 0; ++c) {
            auto cd = to_digits(c);
            bool ok = true;
            for (auto r : divisors)
                if (slow_pow(cd, (q_ - 1) / r) == one) { ok = false; break; }
            if (ok) prim = c;
        }
        if (prim == 0) prim = 1;  // q == 3: 2 is primitive and caught above
        auto cur = one;
        auto pd = to_digits(prim);
        for (Code e = 0; e < q_ - 1; ++e) {
            Code code = from(cur);
            exp_[e] = code;
            log_[code] = e;
            cur = poly_mulmod_p(cur, pd, modulus_, p_);
        }
    }
    if (q_ <= 256) {
        add_table_.resize(std::size_t(q_) * q_);
        for (Code a = 0; a < q_; ++a)
            for (Code b = 0; b < q_; ++b) {
                auto da = to_digits(a), db = to_digits(b);
                for (unsigned i = 0; i < k_; ++i) da[i] = (da[i] + db[i]) % p_;
                add_table_[std::size_t(a) * q_ + b] = from(da);
            }
    }
}

Code ConstField::add(Code a, Code b) const {
    if (!add_table_.empty()) return add_table_[std::size_t(a) * q_ + b];
    if (k_ == 1) return (a + b) % p_;
    Code r = 0, scale = 1;
    for (unsigned i = 0; i < k_; ++i) {
        r += ((a % p_ + b % p_) % p_) * scale;
        a /= p_;
        b /= p_;
        scale *= p_;
    }
    return r;
}

Code ConstField::neg(Code a) const {
    if (k_ == 1) return a == 0 ? 0 : p_ - a;
    Code r = 0, scale = 1;
    for (unsigned i = 0; i < k_; ++i) {
        Code d = a % p_;
        r += (d == 0 ? 0 : p_ - d) * scale;
        a /= p_;
        scale *= p_;
    }
    return r;
}

Code ConstField::sub(Code a, Code b) const { return add(a, neg(b)); }

Code ConstField::inv(Code a) const {
    if (a == 0) fail("division by zero in " + describe());
    Code e = log_[a] == 0 ? 0 : (q_ - 1) - log_[a];
    return exp_[e];
}

Code ConstField::pow(Code a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    std::uint64_t l = (std::uint64_t(log_[a]) * (e % (q_ - 1))) % (q_ - 1);
    return exp_[l];
}

Code ConstField::from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return Code(r);
}

std::vector<Code> ConstField::digits(Code a) const {
    std::vector<Code> d(k_, 0);
    for (unsigned i = 0; i < k_; ++i) { d[i] = a % p_; a /= p_; }
    return d;
}

Code ConstField::from_digits(const std::vector<Code>& d) const {
    Code a = 0;
    for (unsigned i = k_; i-- > 0;) a = a * p_ + (i < d.size() ? d[i] % p_ : 0);
    return a;
}

std::string ConstField::describe() const {
    std::ostringstream os;
    os << "GF(" << p_ << "," << k_ << ")";
    return os.str();
}

bool ConstField::is_irreducible_modulus(Code p, const Modulus& f) {
    if (!is_prime(p)) return false;
    if (f.size() < 2 || f.back() != 1) return false;
    const unsigned k = unsigned(f.size() - 1);
    if (k == 1) return true;
    auto Fp = get(p, 1);
    upoly::UPoly F(f.begin(), f.end());
    upoly::UPoly x{0, 1};
    // Rabin: x^(p^k) = x mod f and gcd(x^(p^(k/r)) - x, f) = 1 for primes r | k.
    auto frob_iter = [&](unsigned times) {
        upoly::UPoly h = x;
        for (unsigned i = 0; i < times; ++i) h = upoly::powmod(*Fp, h, p, F);
        return h;
    };
    if (upoly::sub(*Fp, frob_iter(k), x).size() != 0) return false;
    for (auto r : prime_divisors(k)) {
        auto h = upoly::sub(*Fp, frob_iter(k / unsigned(r)), x);
        if (upoly::degree(upoly::gcd(*Fp, h, F)) != 0) return false;
    }
    return true;
}

ConstField::Modulus ConstField::default_modulus(Code p, unsigned k) {
    if (!is_prime(p)) fail("characteristic " + std::to_string(p) + " is not prime");
    if (k == 0) fail("extension degree must be at least 1");
    if (k == 1) return {0, 1};
    Modulus f(k + 1, 0);
    f[k] = 1;
    // Enumerate lower coefficients in increasing numeric order (constant term
    // most significant is irrelevant; we count upward from the top digit).
    std::uint64_t count = 1;
    for (unsigned i = 0; i < k; ++i) count *= p;
    for (std::uint64_t n = 0; n < count; ++n) {
        std::uint64_t v = n;
        for (unsigned i = k; i-- > 0;) { f[i] = Code(v % p); v /= p; }
        if (f[0] != 0 && is_irreducible_modulus(p, f)) return f;
    }
    fail("no irreducible polynomial found");
}

std::shared_ptr<const ConstField> ConstField::get(Code p, unsigned k) {
    return get(p, default_modulus(p, k));
}

std::shared_ptr<const ConstField> ConstField::get(Code p, const Modulus& modulus) {
    static std::mutex mu;
    static std::map<std::pair<Code, Modulus>, std::shared_ptr<const ConstField>> cache;
    if (!is_prime(p)) fail("characteristic " + std::to_string(p) + " is not prime");
    Modulus m = modulus;
    for (auto& c : m) c %= p;
    while (!m.empty() && m.back() == 0) m.pop_back();
    if (m.size() < 2) fail("defining polynomial must have degree at least 1");
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({p, m});
        if (it != cache.end()) return it->second;
    }
    if (m.back() != 1) fail("defining polynomial must be monic");
    if (m.size() > 2 && !is_irreducible_modulus(p, m)) fail("defining polynomial is reducible over GF(" + std::to_string(p) + ")");
    if (m.size() == 2) m = {0, 1};
    auto field = std::make_shared<const ConstField>(p, m);
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(std::make_pair(p, m), field);
    return it->second;
}

std::vector<Code> embed_table(const ConstField& small, const ConstField& big) {
    if (small.p() != big.p() || big.k() % small.k() != 0)
        fail(small.describe() + " does not embed into " + big.describe());
    Code root = 0;
    bool found = small.k() == 1;
    if (!found) {
        const auto& f = small.modulus();
        for (Code r = 0; r < big.q() && !found; ++r) {
            Code v = 0;
            for (std::size_t i = f.size(); i-- > 0;) v = big.add(big.mul(v, r), f[i]);
            if (v == 0) { root = r; found = true; }
        }
    }
    if (!found) fail("embedding root not found");
    std::vector<Code> table(small.q());
    for (Code a = 0; a < small.q(); ++a) {
        auto d = small.digits(a);
        Code v = 0;
        for (std::size_t i = d.size(); i-- > 0;) v = big.add(big.mul(v, root), d[i]);
        table[a] = v;
    }
    return table;
}

namespace upoly {

void trim(UPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const UPoly& a) { return a.empty() ? -1 : int(a.size()) - 1; }

UPoly add(const ConstField& F, const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
}

UPoly sub(const ConstField& F, const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
}

UPoly mul(const ConstField& F, const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

UPoly scale(const ConstField& F, const UPoly& a, Code c) {
    UPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
    trim(r);
    return r;
}

void divmod(const ConstField& F, const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
    if (b.empty()) fail("polynomial division by zero");
    r = a;
    trim(r);
    const int db = degree(b);
    if (degree(r) < db) { q.clear(); return; }
    q.assign(r.size() - b.size() + 1, 0);
    const Code linv = F.inv(b.back());
    while (degree(r) >= db) {
        const int shift = degree(r) - db;
        const Code c = F.mul(r.back(), linv);
        q[shift] = c;
        for (int i = 0; i <= db; ++i) r[shift + i] = F.sub(r[shift + i], F.mul(c, b[i]));
        trim(r);
    }
    trim(q);
}

UPoly rem(const ConstField& F, const UPoly& a, const UPoly& b) {
    UPoly q, r;
    divmod(F, a, b, q, r);
    return r;
}

UPoly monic(const ConstField& F, const UPoly& a) {
    if (a.empty()) return a;
    return scale(F, a, F.inv(a.back()));
}

UPoly gcd(const ConstField& F, UPoly a, UPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UPoly r = rem(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, a);
}

UPoly derivative(const ConstField& F, const UPoly& a) {
    if (a.size() <= 1) return {};
    UPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], F.from_int(static_cast<long long>(i)));
    trim(r);
    return r;
}

UPoly powmod(const ConstField& F, UPoly base, std::uint64_t e, const UPoly& mod) {
    UPoly result{1};
    base = rem(F, base, mod);
    result = rem(F, result, mod);
    while (e) {
        if (e & 1) result = rem(F, mul(F, result, base), mod);
        e >>= 1;
        if (e) base = rem(F, mul(F, base, base), mod);
    }
    return result;
}

Code eval(const ConstField& F, const UPoly& a, Code x) {
    Code v = 0;
    for (std::size_t i = a.size(); i-- > 0;) v = F.add(F.mul(v, x), a[i]);
    return v;
}

namespace {

UPoly exact_div(const ConstField& F, const UPoly& a, const UPoly& b) {
    UPoly q, r;
    divmod(F, a, b, q, r);
    return q;
}

// Square-free factorization; returns (factor, multiplicity) with each factor
// square-free and monic.
std::vector<Factor> squarefree(const ConstField& F, const UPoly& f) {
    std::vector<Factor> out;
    if (degree(f) <= 0) return out;
    UPoly c = gcd(F, f, derivative(F, f));
    UPoly w = exact_div(F, monic(F, f), c);
    unsigned i = 1;
    while (degree(w) > 0) {
        UPoly y = gcd(F, w, c);
        UPoly fac = exact_div(F, w, y);
        if (degree(fac) > 0) out.push_back({monic(F, fac), i});
        w = y;
        c = exact_div(F, c, y);
        ++i;
    }
    if (degree(c) > 0) {
        // c is a polynomial in x^p: take the p-th root coefficientwise.
        UPoly root((c.size() - 1) / F.p() + 1, 0);
        for (std::size_t j = 0; j < c.size(); j += F.p()) root[j / F.p()] = F.pth_root(c[j]);
        trim(root);
        for (auto& sub : squarefree(F, root)) out.push_back({sub.poly, sub.multiplicity * F.p()});
    }
    return out;
}

std::vector<std::pair<UPoly, unsigned>> distinct_degree(const ConstField& F, UPoly f) {
    std::vector<std::pair<UPoly, unsigned>> out;
    UPoly x{0, 1};
    UPoly h = x;
    unsigned i = 1;
    while (degree(f) >= 2 * int(i)) {
        h = powmod(F, h, F.q(), f);
        UPoly g = gcd(F, sub(F, h, x), f);
        if (degree(g) > 0) {
            out.push_back({g, i});
            f = exact_div(F, f, g);
            h = rem(F, h, f);
        }
        ++i;
    }
    if (degree(f) > 0) out.push_back({monic(F, f), unsigned(degree(f))});
    return out;
}

void equal_degree(const ConstField& F, const UPoly& f, unsigned d, std::mt19937_64& rng,
                  std::vector<UPoly>& out) {
    if (degree(f) == int(d)) {
        out.push_back(monic(F, f));
        return;
    }
    const int n = degree(f);
    while (true) {
        UPoly a(n, 0);
        for (auto& c : a) c = Code(rng() % F.q());
        trim(a);
        if (degree(a) <= 0) continue;
        UPoly b;
        if (F.p() == 2) {
            // trace map a + a^2 + ... + a^(2^(k d - 1))
            UPoly t = a, acc = a;
            for (unsigned i = 1; i < F.k() * d; ++i) {
                t = rem(F, mul(F, t, t), f);
                acc = add(F, acc, t);
            }
            b = acc;
        } else {
            UPoly c = powmod(F, a, (F.q() - 1) / 2, f);
            UPoly acc = c;
            UPoly cq = c;
            for (unsigned i = 1; i < d; ++i) {
                cq = powmod(F, cq, F.q(), f);
                acc = rem(F, mul(F, acc, cq), f);
            }
            b = sub(F, acc, UPoly{1});
        }
        UPoly g = gcd(F, b, f);
        if (degree(g) > 0 && degree(g) < n) {
            equal_degree(F, g, d, rng, out);
            equal_degree(F, exact_div(F, f, g), d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<Factor> factor(const ConstField& F, const UPoly& a) {
    UPoly f = a;
    trim(f);
    std::vector<Factor> out;
    std::mt19937_64 rng(0x5eed);
    for (auto& sq : squarefree(F, f)) {
        for (auto& [g, d] : distinct_degree(F, sq.poly)) {
            std::vector<UPoly> parts;
            equal_degree(F, g, d, rng, parts);
            for (auto& part : parts) out.push_back({part, sq.multiplicity});
        }
    }
    // merge equal factors, then sort deterministically
    std::sort(out.begin(), out.end(), [](const Factor& x, const Factor& y) {
        if (x.poly.size() != y.poly.size()) return x.poly.size() < y.poly.size();
        return x.poly < y.poly;
    });
    std::vector<Factor> merged;
    for (auto& fac : out) {
        if (!merged.empty() && merged.back().poly == fac.poly) merged.back().multiplicity += fac.multiplicity;
        else merged.push_back(fac);
    }
    return merged;
}

std::vector<Code> roots(const ConstField& F, const UPoly& a) {
    std::vector<Code> out;
    for (auto& fac : factor(F, a))
        if (degree(fac.poly) == 1) out.push_back(F.neg(fac.poly[0]));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace upoly
}  // namespace pacf
