#include "goodline/poly.hpp"

#include <algorithm>
#include <random>

#include "goodline/rand.hpp"

namespace goodline {

Poly Poly::constant(const FieldCtx& F, rep_t a) {
    Poly r(F);
    if (a != 0) r.c_ = {a};
    return r;
}

Poly Poly::x(const FieldCtx& F) { return Poly(F, {0, 1}); }

Poly Poly::linear_root(const FieldCtx& F, rep_t r) { return Poly(F, {F.neg(r), 1}); }

Poly::rep_t Poly::eval(rep_t a) const {
    rep_t acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = F_->add(F_->mul(acc, a), c_[i]);
    return acc;
}

Poly Poly::monic() const {
    if (c_.empty() || c_.back() == 1) return *this;
    return scaled(F_->inv(c_.back()));
}

Poly Poly::derivative() const {
    Poly r(*F_);
    if (c_.size() < 2) return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        r.c_[i - 1] = F_->mul(c_[i], F_->from_int(static_cast<std::int64_t>(i)));
    r.trim();
    return r;
}

Poly Poly::lift(const Embedding& e) const {
    Poly r(e.tgt());
    r.c_.resize(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = e.map(c_[i]);
    r.trim();
    return r;
}

Poly Poly::lower(const Embedding& e) const {
    Poly r(e.src());
    r.c_.resize(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        auto pre = e.preimage(c_[i]);
        if (!pre) raise(errc::internal, "coefficient outside the subfield");
        r.c_[i] = *pre;
    }
    r.trim();
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    const FieldCtx& F = *a.F_;
    Poly r(F);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = F.add(a[i], b[i]);
    r.trim();
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    const FieldCtx& F = *a.F_;
    Poly r(F);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = F.sub(a[i], b[i]);
    r.trim();
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    const FieldCtx& F = *a.F_;
    Poly r(F);
    if (a.c_.empty() || b.c_.empty()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            r.c_[i + j] = F.add(r.c_[i + j], F.mul(a.c_[i], b.c_[j]));
    }
    r.trim();
    return r;
}

Poly Poly::scaled(rep_t a) const {
    Poly r(*F_);
    if (a == 0) return r;
    r.c_.resize(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = F_->mul(c_[i], a);
    return r;
}

Poly Poly::shifted(std::size_t k) const {
    Poly r(*F_);
    if (c_.empty()) return r;
    r.c_.assign(c_.size() + k, 0);
    std::copy(c_.begin(), c_.end(), r.c_.begin() + static_cast<std::ptrdiff_t>(k));
    return r;
}

std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g) {
    const FieldCtx& F = f.field();
    if (g.is_zero()) raise(errc::internal, "polynomial division by zero");
    if (f.deg() < g.deg()) return {Poly(F), f};
    auto rem = f.coeffs();
    std::size_t dg = g.coeffs().size() - 1;
    std::vector<Poly::rep_t> quot(static_cast<std::size_t>(f.deg() - g.deg()) + 1, 0);
    auto lcinv = F.inv(g.lc());
    for (std::size_t kk = rem.size(); kk > dg; --kk) {
        std::size_t k = kk - 1;
        auto c = rem[k];
        if (c == 0) continue;
        auto qc = F.mul(c, lcinv);
        std::size_t shift = k - dg;
        quot[shift] = qc;
        for (std::size_t i = 0; i <= dg; ++i)
            rem[shift + i] = F.sub(rem[shift + i], F.mul(qc, g.coeffs()[i]));
    }
    return {Poly(F, std::move(quot)), Poly(F, std::move(rem))};
}

Poly operator%(const Poly& f, const Poly& g) { return divmod(f, g).second; }
Poly operator/(const Poly& f, const Poly& g) { return divmod(f, g).first; }

Poly gcd(const Poly& a, const Poly& b) {
    Poly f = a, g = b;
    while (!g.is_zero()) {
        Poly r = f % g;
        f = std::move(g);
        g = std::move(r);
    }
    return f.monic();
}

Poly pow_mod(const Poly& base, std::uint64_t e, const Poly& m) {
    const FieldCtx& F = base.field();
    Poly r = Poly::constant(F, 1) % m;
    Poly b = base % m;
    while (e) {
        if (e & 1) r = (r * b) % m;
        b = (b * b) % m;
        e >>= 1;
    }
    return r;
}

Poly frobenius_power_mod(const Poly& m, std::uint64_t e) {
    const FieldCtx& F = m.field();
    Poly h = Poly::x(F) % m;
    for (std::uint64_t i = 0; i < e; ++i) h = pow_mod(h, F.q(), m);
    return h;
}

namespace {

// f with zero derivative is g(x^p); recover g by taking p-th roots of the
// surviving coefficients.
Poly pth_root_poly(const Poly& f) {
    const FieldCtx& F = f.field();
    auto p = F.p();
    std::vector<Poly::rep_t> c(static_cast<std::size_t>(f.deg() / static_cast<int>(p)) + 1, 0);
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = F.pth_root(f[j * p]);
    return Poly(F, std::move(c));
}

void squarefree_rec(const Poly& f, std::uint64_t mult,
                    std::vector<std::pair<Poly, std::uint64_t>>& out) {
    const FieldCtx& F = f.field();
    if (f.deg() < 1) return;
    Poly fp = f.derivative();
    if (fp.is_zero()) {
        squarefree_rec(pth_root_poly(f), mult * F.p(), out);
        return;
    }
    Poly u = gcd(f, fp);
    Poly v = f / u;
    std::uint64_t i = 1;
    while (v.deg() > 0) {
        Poly w = gcd(u, v);
        if (v.deg() > w.deg()) out.emplace_back((v / w).monic(), mult * i);
        u = u / w;
        v = std::move(w);
        ++i;
    }
    // what is left of u is the part whose multiplicities are divisible by p;
    // its derivative vanishes, so the recursion takes the p-th root branch
    squarefree_rec(u, mult, out);
}

} // namespace

std::vector<std::pair<Poly, std::uint64_t>> squarefree_decomposition(const Poly& f) {
    if (f.is_zero()) raise(errc::zero_form, "squarefree decomposition of zero");
    std::vector<std::pair<Poly, std::uint64_t>> out;
    squarefree_rec(f.monic(), 1, out);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first.coeffs() < b.first.coeffs();
    });
    return out;
}

std::vector<std::pair<std::uint64_t, Poly>> distinct_degree_factorization(const Poly& f) {
    const FieldCtx& F = f.field();
    std::vector<std::pair<std::uint64_t, Poly>> out;
    Poly rem = f.monic();
    Poly h = Poly::x(F) % rem;
    std::uint64_t e = 0;
    while (rem.deg() > 0 && 2 * (e + 1) <= static_cast<std::uint64_t>(rem.deg())) {
        ++e;
        h = pow_mod(h, F.q(), rem);
        Poly g = gcd(h - (Poly::x(F) % rem), rem);
        if (g.deg() > 0) {
            out.emplace_back(e, g);
            rem = rem / g;
            h = h % rem;
        }
    }
    if (rem.deg() > 0) out.emplace_back(static_cast<std::uint64_t>(rem.deg()), rem);
    return out;
}

namespace {

// Cantor-Zassenhaus split of a monic product of distinct linear factors.
void split_linear(const Poly& g, std::mt19937_64& rng, std::vector<Poly::rep_t>& out) {
    const FieldCtx& F = g.field();
    if (g.deg() <= 0) return;
    if (g.deg() == 1) {
        out.push_back(F.neg(g[0]));
        return;
    }
    std::uint64_t half = (F.q() - 1) / 2;
    for (;;) {
        auto delta = static_cast<Poly::rep_t>(uniform_below(rng, F.q()));
        Poly shift(F, {delta, 1});
        Poly h = pow_mod(shift, half, g) - Poly::constant(F, 1);
        Poly w = gcd(h, g);
        if (w.deg() > 0 && w.deg() < g.deg()) {
            split_linear(w, rng, out);
            split_linear(g / w, rng, out);
            return;
        }
    }
}

} // namespace

std::vector<FieldCtx::rep_t> find_roots(const Poly& f) {
    const FieldCtx& F = f.field();
    std::vector<FieldCtx::rep_t> roots;
    if (f.deg() < 1) return roots;
    if (F.q() <= 4096) {
        for (FieldCtx::rep_t a = 0; a < F.q(); ++a)
            if (f.eval(a) == 0) roots.push_back(a);
        return roots;
    }
    Poly g = gcd(frobenius_power_mod(f, 1) - (Poly::x(F) % f), f);
    if (g.deg() <= 0) return roots;
    std::mt19937_64 rng(0x600D11E5u);
    split_linear(g, rng, roots);
    std::sort(roots.begin(), roots.end());
    return roots;
}

Poly interpolate(const FieldCtx& F, const std::vector<FieldCtx::rep_t>& xs,
                 const std::vector<FieldCtx::rep_t>& ys) {
    if (xs.size() != ys.size() || xs.empty())
        raise(errc::internal, "interpolation node/value mismatch");
    Poly master = Poly::constant(F, 1);
    for (auto x0 : xs) master = master * Poly::linear_root(F, x0);
    Poly acc(F);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Poly li = master / Poly::linear_root(F, xs[i]);
        auto denom = li.eval(xs[i]);
        if (denom == 0) raise(errc::internal, "repeated interpolation node");
        acc = acc + li.scaled(F.mul(ys[i], F.inv(denom)));
    }
    return acc;
}

FieldCtx::rep_t resultant(const Poly& f, const Poly& g) {
    const FieldCtx& F = f.field();
    if (f.is_zero() || g.is_zero()) return 0;
    Poly a = f, b = g;
    FieldCtx::rep_t acc = 1;
    bool negate = false;
    for (;;) {
        int da = a.deg(), db = b.deg();
        if (da == 0) {
            auto r = F.mul(acc, F.pow(a[0], static_cast<std::uint64_t>(db)));
            return negate ? F.neg(r) : r;
        }
        if (db == 0) {
            auto r = F.mul(acc, F.pow(b[0], static_cast<std::uint64_t>(da)));
            return negate ? F.neg(r) : r;
        }
        if (da < db) {
            std::swap(a, b);
            if ((da & 1) && (db & 1)) negate = !negate;
            continue;
        }
        Poly r = a % b;
        if (r.is_zero()) return 0;
        if ((da & 1) && (db & 1)) negate = !negate;
        acc = F.mul(acc, F.pow(b.lc(), static_cast<std::uint64_t>(da - r.deg())));
        a = std::move(b);
        b = std::move(r);
    }
}

bool is_irreducible(const Poly& f) {
    if (f.deg() < 1) return false;
    if (f.deg() == 1) return true;
    Poly m = f.monic();
    if (gcd(m, m.derivative()).deg() > 0) return false;
    auto ddf = distinct_degree_factorization(m);
    return ddf.size() == 1 && ddf[0].first == static_cast<std::uint64_t>(m.deg());
}

std::string to_string(const Poly& f, const std::string& var) {
    if (f.is_zero()) return "0";
    std::string s;
    for (std::size_t i = f.coeffs().size(); i-- > 0;) {
        auto c = f[i];
        if (c == 0) continue;
        if (!s.empty()) s += " + ";
        if (i == 0 || c != 1) s += std::to_string(c);
        if (i > 0) {
            if (c != 1) s += "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

} // namespace goodline
