#ifndef GOODLINE_GF_HPP
#define GOODLINE_GF_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "goodline/errors.hpp"

namespace goodline {

/// Arithmetic context for GF(p^m), p an odd prime.
///
/// Elements are residue classes modulo a fixed monic irreducible polynomial
/// of degree m over GF(p). An element is stored as a packed base-p integer
/// rep = c0 + c1*p + ... + c_{m-1}*p^{m-1} where (c0..c_{m-1}) are the
/// coefficients of the reduced representative. The modulus is the first
/// (by packed value of its non-leading coefficients) monic irreducible of
/// degree m, so a context is fully determined by (p, m) and every run of
/// the library sees the same field model.
///
/// Contexts are interned: FieldCtx::get(p, m) returns a reference that stays
/// valid for the lifetime of the process. A context is immutable after
/// construction and safe to share across threads.
class FieldCtx {
public:
    using rep_t = std::uint32_t;

    static const FieldCtx& get(std::uint32_t p, std::uint32_t m);

    /// Size cap for constructed fields (default 2^20); override with the
    /// GOODLINE_FIELD_CAP environment variable. Checked once at startup.
    static std::uint64_t size_cap();

    std::uint32_t p() const { return p_; }
    std::uint32_t m() const { return m_; }
    std::uint64_t q() const { return q_; }
    /// Modulus coefficients c0..cm (cm = 1).
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    rep_t zero() const { return 0; }
    rep_t one() const { return 1; }

    rep_t add(rep_t a, rep_t b) const;
    rep_t sub(rep_t a, rep_t b) const;
    rep_t neg(rep_t a) const;
    rep_t mul(rep_t a, rep_t b) const;
    rep_t inv(rep_t a) const;
    rep_t pow(rep_t a, std::uint64_t e) const;
    /// x -> x^(p^s), the s-fold p-power Frobenius.
    rep_t frobenius(rep_t a, std::uint64_t s) const;
    /// Unique b with b^p = a.
    rep_t pth_root(rep_t a) const;

    /// Embed an integer (mod p) as a prime-subfield constant.
    rep_t from_int(std::int64_t v) const;

    std::vector<std::uint32_t> coeffs(rep_t a) const;
    rep_t from_coeffs(const std::vector<std::uint32_t>& c) const;

    bool in_prime_subfield(rep_t a) const { return a < p_; }

    /// Least primitive element.
    rep_t generator() const { return generator_; }

    /// Multiplicative order of the modulus root class; used by tests.
    std::uint64_t element_order(rep_t a) const;

private:
    FieldCtx(std::uint32_t p, std::uint32_t m);
    FieldCtx(const FieldCtx&) = delete;
    FieldCtx& operator=(const FieldCtx&) = delete;

    rep_t mul_generic(rep_t a, rep_t b) const;

    std::uint32_t p_ = 0;
    std::uint32_t m_ = 0;
    std::uint64_t q_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint64_t> pow_p_;       // p^0..p^m
    // discrete-log tables, built when q <= 2^16
    std::vector<rep_t> exp_;                 // exp_[k] = g0^k, k in [0, 2(q-1))
    std::vector<std::uint32_t> log_;         // log_[a] for a != 0
    rep_t generator_ = 0;

    friend class Embedding;
};

/// Value type: an element of a specific FieldCtx.
struct FieldElement {
    const FieldCtx* F = nullptr;
    FieldCtx::rep_t rep = 0;

    FieldElement() = default;
    FieldElement(const FieldCtx& ctx, FieldCtx::rep_t r) : F(&ctx), rep(r) {}

    bool is_zero() const { return rep == 0; }

    friend FieldElement operator+(FieldElement a, FieldElement b) {
        return {*a.F, a.F->add(a.rep, b.rep)};
    }
    friend FieldElement operator-(FieldElement a, FieldElement b) {
        return {*a.F, a.F->sub(a.rep, b.rep)};
    }
    friend FieldElement operator*(FieldElement a, FieldElement b) {
        return {*a.F, a.F->mul(a.rep, b.rep)};
    }
    friend FieldElement operator/(FieldElement a, FieldElement b) {
        return {*a.F, a.F->mul(a.rep, a.F->inv(b.rep))};
    }
    friend FieldElement operator-(FieldElement a) { return {*a.F, a.F->neg(a.rep)}; }
    friend bool operator==(FieldElement a, FieldElement b) {
        return a.F == b.F && a.rep == b.rep;
    }
};

/// Ring-homomorphic injection GF(p^m) -> GF(p^{m*k}).
///
/// The image of the source residue-class generator is the least root (in
/// packed-rep order) of the source modulus inside the target. Embeddings are
/// interned per (source, target) pair.
class Embedding {
public:
    static const Embedding& get(const FieldCtx& src, const FieldCtx& tgt);

    const FieldCtx& src() const { return *src_; }
    const FieldCtx& tgt() const { return *tgt_; }

    FieldCtx::rep_t map(FieldCtx::rep_t a) const;
    /// Inverse on the image; nullopt when the target element is outside it.
    std::optional<FieldCtx::rep_t> preimage(FieldCtx::rep_t a) const;

private:
    Embedding(const FieldCtx& src, const FieldCtx& tgt);

    const FieldCtx* src_;
    const FieldCtx* tgt_;
    std::vector<FieldCtx::rep_t> alpha_pow_; // images of t^0..t^{m-1}
    std::vector<std::int64_t> preimage_;     // dense reverse map (src q is small)
    std::vector<FieldCtx::rep_t> image_;     // forward map cache over src
};

/// True iff n is prime (deterministic trial division; n fits the size cap).
bool is_prime_u64(std::uint64_t n);

} // namespace goodline

#endif
