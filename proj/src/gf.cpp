#include "goodline/gf.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>

namespace goodline {

const char* errc_name(errc c) {
    switch (c) {
        case errc::not_prime: return "NotPrime";
        case errc::even_characteristic: return "EvenCharacteristic";
        case errc::size_cap_exceeded: return "SizeCapExceeded";
        case errc::not_a_subfield: return "NotASubfield";
        case errc::zero_form: return "ZeroForm";
        case errc::degree_mismatch: return "DegreeMismatch";
        case errc::degenerate_leading_coefficient: return "DegenerateLeadingCoefficient";
        case errc::coordinate_change_exhausted: return "CoordinateChangeExhausted";
        case errc::non_integral_dual_degree: return "NonIntegralDualDegree";
        case errc::non_reflexive: return "NonReflexive";
        case errc::insufficient_sample_points: return "InsufficientSamplePoints";
        case errc::point_not_on_curve: return "PointNotOnCurve";
        case errc::singular_point: return "SingularPoint";
        case errc::curve_contains_line: return "CurveContainsLine";
        case errc::coincident_points: return "CoincidentPoints";
        case errc::frobenius_non_classical: return "FrobeniusNonClassical";
        case errc::not_frobenius_non_classical: return "NotFrobeniusNonClassical";
        case errc::budget_exhausted: return "BudgetExhausted";
        case errc::parse_error: return "ParseError";
        case errc::non_homogeneous: return "NonHomogeneous";
        case errc::bad_field_literal: return "BadFieldLiteral";
        case errc::io_error: return "IoError";
        case errc::internal: return "InternalError";
    }
    return "UnknownError";
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

using rep_t = FieldCtx::rep_t;
using poly_p = std::vector<std::uint32_t>; // dense poly over GF(p), coeff of t^i at [i]

void trim(poly_p& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

poly_p mod_poly(poly_p f, const poly_p& g, std::uint64_t p) {
    // g monic
    while (f.size() >= g.size() && !f.empty()) {
        std::uint64_t c = f.back();
        std::size_t shift = f.size() - g.size();
        if (c != 0) {
            for (std::size_t i = 0; i + 1 < g.size(); ++i) {
                std::uint64_t sub = (c * g[i]) % p;
                std::uint64_t cur = f[i + shift];
                f[i + shift] = static_cast<std::uint32_t>((cur + p - sub) % p);
            }
        }
        f.pop_back();
        trim(f);
    }
    return f;
}

poly_p mul_poly(const poly_p& a, const poly_p& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    poly_p r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    }
    return r;
}

// Trial division by every monic polynomial of degree 1..deg/2.
bool is_irreducible(const poly_p& f, std::uint32_t p) {
    std::size_t deg = f.size() - 1;
    if (deg == 1) return true;
    for (std::size_t d = 1; 2 * d <= deg; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t k = 0; k < count; ++k) {
            poly_p g(d + 1, 0);
            std::uint64_t v = k;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            g[d] = 1;
            poly_p r = mod_poly(f, g, p);
            if (r.empty()) return false;
        }
    }
    return true;
}

struct CtxKey {
    std::uint32_t p, m;
    bool operator<(const CtxKey& o) const { return p < o.p || (p == o.p && m < o.m); }
};

std::mutex g_ctx_mutex;
std::map<CtxKey, std::unique_ptr<FieldCtx>>& ctx_registry() {
    static std::map<CtxKey, std::unique_ptr<FieldCtx>> r;
    return r;
}

} // namespace

std::uint64_t FieldCtx::size_cap() {
    static const std::uint64_t cap = [] {
        if (const char* env = std::getenv("GOODLINE_FIELD_CAP")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v >= 3) return static_cast<std::uint64_t>(v);
        }
        return std::uint64_t(1) << 20;
    }();
    return cap;
}

const FieldCtx& FieldCtx::get(std::uint32_t p, std::uint32_t m) {
    if (p == 2) raise(errc::even_characteristic, "characteristic 2 is not supported");
    if (!is_prime_u64(p)) raise(errc::not_prime, "p = " + std::to_string(p) + " is not prime");
    if (m < 1) raise(errc::size_cap_exceeded, "extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        q *= p;
        if (q > size_cap())
            raise(errc::size_cap_exceeded,
                  "p^m = " + std::to_string(p) + "^" + std::to_string(m) + " exceeds the field size cap");
    }
    std::lock_guard<std::mutex> lock(g_ctx_mutex);
    auto& reg = ctx_registry();
    CtxKey key{p, m};
    auto it = reg.find(key);
    if (it == reg.end())
        it = reg.emplace(key, std::unique_ptr<FieldCtx>(new FieldCtx(p, m))).first;
    return *it->second;
}

FieldCtx::FieldCtx(std::uint32_t p, std::uint32_t m) : p_(p), m_(m) {
    q_ = 1;
    pow_p_.resize(m + 1);
    pow_p_[0] = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        q_ *= p;
        pow_p_[i + 1] = q_;
    }

    // Deterministic modulus: scan monic degree-m polynomials by the packed
    // value of their lower coefficients and take the first irreducible.
    if (m == 1) {
        modulus_ = {0, 1}; // t; elements are plain residues mod p
    } else {
        for (std::uint64_t k = 0;; ++k) {
            poly_p f(m + 1, 0);
            std::uint64_t v = k;
            for (std::uint32_t i = 0; i < m; ++i) {
                f[i] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            f[m] = 1;
            if (is_irreducible(f, p)) {
                modulus_.assign(f.begin(), f.end());
                break;
            }
        }
    }

    std::uint64_t n = q_ - 1;
    std::vector<std::uint64_t> prime_factors;
    {
        std::uint64_t v = n;
        for (std::uint64_t d = 2; d * d <= v; ++d)
            if (v % d == 0) {
                prime_factors.push_back(d);
                while (v % d == 0) v /= d;
            }
        if (v > 1) prime_factors.push_back(v);
    }
    auto pow_generic = [&](rep_t a, std::uint64_t e) {
        rep_t r = 1, base = a;
        while (e) {
            if (e & 1) r = mul_generic(r, base);
            base = mul_generic(base, base);
            e >>= 1;
        }
        return r;
    };
    generator_ = 1;
    for (rep_t a = 2; a < q_; ++a) {
        bool primitive = true;
        for (std::uint64_t f : prime_factors)
            if (pow_generic(a, n / f) == 1) {
                primitive = false;
                break;
            }
        if (primitive) {
            generator_ = a;
            break;
        }
    }

    if (q_ <= (std::uint64_t(1) << 16) && m_ > 1) {
        // census kernels are multiplication-bound; table lookups pay off
        exp_.resize(2 * n);
        log_.assign(q_, 0);
        rep_t cur = 1;
        for (std::uint64_t k = 0; k < n; ++k) {
            exp_[k] = cur;
            exp_[k + n] = cur;
            log_[cur] = static_cast<std::uint32_t>(k);
            cur = mul_generic(cur, generator_);
        }
    }
}

FieldCtx::rep_t FieldCtx::add(rep_t a, rep_t b) const {
    if (m_ == 1) {
        std::uint64_t s = std::uint64_t(a) + b;
        return s >= p_ ? static_cast<rep_t>(s - p_) : static_cast<rep_t>(s);
    }
    rep_t r = 0;
    for (std::uint32_t i = 0; i < m_; ++i) {
        std::uint64_t da = (a / pow_p_[i]) % p_;
        std::uint64_t db = (b / pow_p_[i]) % p_;
        std::uint64_t s = da + db;
        if (s >= p_) s -= p_;
        r += static_cast<rep_t>(s * pow_p_[i]);
    }
    return r;
}

FieldCtx::rep_t FieldCtx::neg(rep_t a) const {
    if (m_ == 1) return a == 0 ? 0 : static_cast<rep_t>(p_ - a);
    rep_t r = 0;
    for (std::uint32_t i = 0; i < m_; ++i) {
        std::uint64_t d = (a / pow_p_[i]) % p_;
        if (d != 0) r += static_cast<rep_t>((p_ - d) * pow_p_[i]);
    }
    return r;
}

FieldCtx::rep_t FieldCtx::sub(rep_t a, rep_t b) const { return add(a, neg(b)); }

FieldCtx::rep_t FieldCtx::mul_generic(rep_t a, rep_t b) const {
    if (a == 0 || b == 0) return 0;
    if (m_ == 1) return static_cast<rep_t>((std::uint64_t(a) * b) % p_);
    // schoolbook product of digit vectors, then reduction mod modulus
    std::vector<std::uint64_t> prod(2 * m_ - 1, 0);
    std::vector<std::uint32_t> da(m_), db(m_);
    for (std::uint32_t i = 0; i < m_; ++i) {
        da[i] = static_cast<std::uint32_t>((a / pow_p_[i]) % p_);
        db[i] = static_cast<std::uint32_t>((b / pow_p_[i]) % p_);
    }
    for (std::uint32_t i = 0; i < m_; ++i) {
        if (da[i] == 0) continue;
        for (std::uint32_t j = 0; j < m_; ++j)
            prod[i + j] = (prod[i + j] + std::uint64_t(da[i]) * db[j]) % p_;
    }
    for (std::uint32_t k = 2 * m_ - 2; k >= m_; --k) {
        std::uint64_t c = prod[k];
        if (c != 0) {
            prod[k] = 0;
            for (std::uint32_t i = 0; i < m_; ++i) {
                std::uint64_t sub_v = (c * modulus_[i]) % p_;
                prod[k - m_ + i] = (prod[k - m_ + i] + p_ - sub_v) % p_;
            }
        }
        if (k == m_) break;
    }
    rep_t r = 0;
    for (std::uint32_t i = 0; i < m_; ++i) r += static_cast<rep_t>(prod[i] * pow_p_[i]);
    return r;
}

FieldCtx::rep_t FieldCtx::mul(rep_t a, rep_t b) const {
    if (a == 0 || b == 0) return 0;
    if (!exp_.empty()) return exp_[std::uint64_t(log_[a]) + log_[b]];
    return mul_generic(a, b);
}

FieldCtx::rep_t FieldCtx::pow(rep_t a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (!exp_.empty()) {
        std::uint64_t n = q_ - 1;
        std::uint64_t k = (std::uint64_t(log_[a]) * (e % n)) % n;
        return exp_[k];
    }
    rep_t r = 1, base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

FieldCtx::rep_t FieldCtx::inv(rep_t a) const {
    if (a == 0) raise(errc::internal, "division by zero in GF(" + std::to_string(q_) + ")");
    return pow(a, q_ - 2);
}

FieldCtx::rep_t FieldCtx::frobenius(rep_t a, std::uint64_t s) const {
    // a^(p^s), reducing the exponent mod q-1
    if (a == 0) return 0;
    std::uint64_t n = q_ - 1;
    if (n == 1) return a;
    std::uint64_t e = 1;
    for (std::uint64_t i = 0; i < s % m_; ++i) e = (e * p_) % n;
    return pow(a, e == 0 ? n : e);
}

FieldCtx::rep_t FieldCtx::pth_root(rep_t a) const {
    // a^(p^(m-1)) is the unique p-th root in GF(p^m)
    return frobenius(a, m_ - 1);
}

FieldCtx::rep_t FieldCtx::from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<rep_t>(r);
}

std::vector<std::uint32_t> FieldCtx::coeffs(rep_t a) const {
    std::vector<std::uint32_t> c(m_);
    for (std::uint32_t i = 0; i < m_; ++i) c[i] = static_cast<std::uint32_t>((a / pow_p_[i]) % p_);
    return c;
}

FieldCtx::rep_t FieldCtx::from_coeffs(const std::vector<std::uint32_t>& c) const {
    rep_t r = 0;
    for (std::uint32_t i = 0; i < m_ && i < c.size(); ++i)
        r += static_cast<rep_t>((c[i] % p_) * pow_p_[i]);
    return r;
}

std::uint64_t FieldCtx::element_order(rep_t a) const {
    if (a == 0) raise(errc::internal, "order of zero");
    std::uint64_t n = q_ - 1;
    std::uint64_t ord = n;
    std::uint64_t v = n;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        while (v % d == 0) {
            v /= d;
            while (ord % d == 0 && pow(a, ord / d) == 1) ord /= d;
        }
    if (v > 1)
        while (ord % v == 0 && pow(a, ord / v) == 1) ord /= v;
    return ord;
}

namespace {

struct EmbKey {
    const FieldCtx* src;
    const FieldCtx* tgt;
    bool operator<(const EmbKey& o) const {
        return src < o.src || (src == o.src && tgt < o.tgt);
    }
};

std::mutex g_emb_mutex;
std::map<EmbKey, std::unique_ptr<Embedding>>& emb_registry() {
    static std::map<EmbKey, std::unique_ptr<Embedding>> r;
    return r;
}

} // namespace

const Embedding& Embedding::get(const FieldCtx& src, const FieldCtx& tgt) {
    if (src.p() != tgt.p() || tgt.m() % src.m() != 0)
        raise(errc::not_a_subfield,
              "GF(" + std::to_string(src.q()) + ") does not embed in GF(" + std::to_string(tgt.q()) + ")");
    std::lock_guard<std::mutex> lock(g_emb_mutex);
    auto& reg = emb_registry();
    EmbKey key{&src, &tgt};
    auto it = reg.find(key);
    if (it == reg.end())
        it = reg.emplace(key, std::unique_ptr<Embedding>(new Embedding(src, tgt))).first;
    return *it->second;
}

Embedding::Embedding(const FieldCtx& src, const FieldCtx& tgt) : src_(&src), tgt_(&tgt) {
    // Least root of the source modulus in the target, in packed-rep order.
    FieldCtx::rep_t alpha = 0;
    if (src.m() == 1) {
        alpha = 0; // unused: prime-subfield elements map to constants
    } else {
        const auto& mod = src.modulus();
        bool found = false;
        for (FieldCtx::rep_t cand = 0; cand < tgt.q(); ++cand) {
            FieldCtx::rep_t acc = 0;
            FieldCtx::rep_t power = 1;
            for (std::size_t i = 0; i < mod.size(); ++i) {
                if (mod[i] != 0) acc = tgt.add(acc, tgt.mul(tgt.from_int(mod[i]), power));
                power = tgt.mul(power, cand);
            }
            if (acc == 0) {
                alpha = cand;
                found = true;
                break;
            }
        }
        if (!found) raise(errc::internal, "source modulus has no root in target field");
    }
    alpha_pow_.resize(src.m());
    alpha_pow_[0] = 1;
    for (std::uint32_t i = 1; i < src.m(); ++i) alpha_pow_[i] = tgt.mul(alpha_pow_[i - 1], alpha);

    image_.resize(src.q());
    preimage_.assign(tgt.q() <= (std::uint64_t(1) << 20) ? tgt.q() : 0, -1);
    for (FieldCtx::rep_t a = 0; a < src.q(); ++a) {
        auto digits = src.coeffs(a);
        FieldCtx::rep_t acc = 0;
        for (std::uint32_t i = 0; i < src.m(); ++i)
            if (digits[i] != 0) acc = tgt.add(acc, tgt.mul(tgt.from_int(digits[i]), alpha_pow_[i]));
        image_[a] = acc;
        if (!preimage_.empty()) preimage_[acc] = static_cast<std::int64_t>(a);
    }
}

FieldCtx::rep_t Embedding::map(FieldCtx::rep_t a) const { return image_[a]; }

std::optional<FieldCtx::rep_t> Embedding::preimage(FieldCtx::rep_t a) const {
    if (a < preimage_.size() && preimage_[a] >= 0)
        return static_cast<FieldCtx::rep_t>(preimage_[a]);
    return std::nullopt;
}

} // namespace goodline
