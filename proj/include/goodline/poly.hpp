#ifndef GOODLINE_POLY_HPP
#define GOODLINE_POLY_HPP

#include <string>
#include <utility>
#include <vector>

#include "goodline/gf.hpp"

namespace goodline {

/// Dense univariate polynomial over an interned field context.
/// Coefficient of x^i sits at index i; the vector carries no trailing zeros,
/// so the zero polynomial is the empty vector and has degree -1.
class Poly {
public:
    using rep_t = FieldCtx::rep_t;

    explicit Poly(const FieldCtx& F) : F_(&F) {}
    Poly(const FieldCtx& F, std::vector<rep_t> coeffs) : F_(&F), c_(std::move(coeffs)) { trim(); }

    static Poly constant(const FieldCtx& F, rep_t a);
    static Poly x(const FieldCtx& F);
    /// x - r
    static Poly linear_root(const FieldCtx& F, rep_t r);

    const FieldCtx& field() const { return *F_; }
    int deg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    rep_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    rep_t lc() const { return c_.empty() ? 0 : c_.back(); }
    const std::vector<rep_t>& coeffs() const { return c_; }

    rep_t eval(rep_t a) const;

    Poly monic() const;
    Poly derivative() const;
    /// Coefficient-wise image under an embedding into a larger field.
    Poly lift(const Embedding& e) const;
    /// Coefficient-wise preimage; throws internal if any coefficient is
    /// outside the subfield.
    Poly lower(const Embedding& e) const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly scaled(rep_t a) const;
    /// this * x^k
    Poly shifted(std::size_t k) const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    const FieldCtx* F_;
    std::vector<rep_t> c_;
};

/// Quotient and remainder; g must be nonzero.
std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g);
Poly operator%(const Poly& f, const Poly& g);
Poly operator/(const Poly& f, const Poly& g);

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

/// base^e mod m, e a machine integer.
Poly pow_mod(const Poly& base, std::uint64_t e, const Poly& m);

/// x^(Q^e) mod m via iterated Q-power maps (Q = field size).
Poly frobenius_power_mod(const Poly& m, std::uint64_t e);

/// Squarefree decomposition in characteristic p: pairs (g, e) with g monic
/// squarefree, pairwise coprime, and f = lc(f) * prod g^e. Sorted by e, then
/// by coefficient sequence.
std::vector<std::pair<Poly, std::uint64_t>> squarefree_decomposition(const Poly& f);

/// Distinct-degree factorization of a monic squarefree f: pairs (e, product
/// of the monic irreducible factors of degree e), ascending in e.
std::vector<std::pair<std::uint64_t, Poly>> distinct_degree_factorization(const Poly& f);

/// All roots of f in its base field, ascending by packed rep.
std::vector<FieldCtx::rep_t> find_roots(const Poly& f);

/// Unique polynomial of degree < n through n distinct nodes.
Poly interpolate(const FieldCtx& F, const std::vector<FieldCtx::rep_t>& xs,
                 const std::vector<FieldCtx::rep_t>& ys);

/// Resultant of f and g: lc(f)^deg(g) * prod of g over the roots of f.
/// Matches the Sylvester determinant with the f rows on top.
FieldCtx::rep_t resultant(const Poly& f, const Poly& g);

/// True iff f is irreducible over its base field (deg >= 1).
bool is_irreducible(const Poly& f);

std::string to_string(const Poly& f, const std::string& var = "x");

} // namespace goodline

#endif
