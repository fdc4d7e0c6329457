#ifndef GOODLINE_FORMS_HPP
#define GOODLINE_FORMS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "goodline/poly.hpp"

namespace goodline {

/// Homogeneous form in (s, t). coeffs[i] multiplies s^i t^(d-i), so reading
/// the vector as a univariate polynomial in s dehomogenizes at t = 1, and the
/// degree drop of that polynomial is the multiplicity of the root [1:0].
class BinaryForm {
public:
    using rep_t = FieldCtx::rep_t;

    BinaryForm(const FieldCtx& F, int degree)
        : F_(&F), deg_(degree), c_(static_cast<std::size_t>(degree) + 1, 0) {}
    BinaryForm(const FieldCtx& F, int degree, std::vector<rep_t> coeffs);
    /// Homogenize a univariate polynomial (in s) to the stated degree.
    static BinaryForm from_poly(const Poly& f, int degree);

    const FieldCtx& field() const { return *F_; }
    int degree() const { return deg_; }
    bool is_zero() const;
    rep_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    const std::vector<rep_t>& coeffs() const { return c_; }

    rep_t eval(rep_t s, rep_t t) const;
    Poly dehomogenized() const { return Poly(*F_, c_); }
    /// Multiplicity of the root [1:0]; degree() for the zero form.
    int infinity_multiplicity() const;

    BinaryForm derivative(int var) const; // 0 = s, 1 = t
    BinaryForm lift(const Embedding& e) const;
    BinaryForm scaled(rep_t a) const;

    friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b);
    friend bool operator==(const BinaryForm& a, const BinaryForm& b) {
        return a.deg_ == b.deg_ && a.c_ == b.c_;
    }

private:
    const FieldCtx* F_;
    int deg_;
    std::vector<rep_t> c_;
};

/// gcd of two binary forms (monic-normalized dehomogenization, plus the
/// shared power of t); the zero form acts as the gcd identity.
BinaryForm gcd(const BinaryForm& a, const BinaryForm& b);

/// Sylvester resultant with the f rows on top, formal degrees = form degrees.
FieldCtx::rep_t resultant(const BinaryForm& f, const BinaryForm& g);

struct ProfileEntry {
    std::uint64_t e;     // residue degree of the root
    std::uint64_t m;     // multiplicity
    std::uint64_t count; // number of Galois orbits with this (e, m)
    friend bool operator==(const ProfileEntry& a, const ProfileEntry& b) {
        return a.e == b.e && a.m == b.m && a.count == b.count;
    }
};

/// Multiset of root data for a zero-dimensional intersection, sorted by
/// (e, m). total_degree() returns sum of e*m*count.
struct IntersectionProfile {
    std::vector<ProfileEntry> entries;
    std::uint64_t total_degree() const;
    bool all_simple() const; // every multiplicity 1
    bool has_rational_tangency() const; // some entry with e = 1, m >= 2
    bool has_tangency() const;          // some entry with m >= 2
    friend bool operator==(const IntersectionProfile& a, const IntersectionProfile& b) {
        return a.entries == b.entries;
    }
};

IntersectionProfile factor_profile(const BinaryForm& g);

/// Homogeneous form in (x, y, z), stored densely by exponent pair (i, j)
/// with k = d - i - j implied.
class TernaryForm {
public:
    using rep_t = FieldCtx::rep_t;

    TernaryForm(const FieldCtx& F, int degree);
    static TernaryForm monomial(const FieldCtx& F, rep_t c, int i, int j, int k);

    const FieldCtx& field() const { return *F_; }
    int degree() const { return deg_; }
    bool is_zero() const;

    rep_t coeff(int i, int j) const;
    rep_t coeff(int i, int j, int k) const { return k == deg_ - i - j ? coeff(i, j) : 0; }
    void set_coeff(int i, int j, rep_t c);
    /// Nonzero terms as (i, j, k, coeff), in descending (i, j, k) order.
    std::vector<std::array<std::uint32_t, 4>> terms() const;

    rep_t eval(rep_t x, rep_t y, rep_t z) const;
    TernaryForm partial(int var) const; // 0 = x, 1 = y, 2 = z

    TernaryForm lift(const Embedding& e) const;
    TernaryForm scaled(rep_t a) const;
    /// F(M v): substitute each variable by the corresponding row-combination.
    TernaryForm coordinate_change(const std::array<std::array<rep_t, 3>, 3>& M) const;
    /// Swap two of the three variables.
    TernaryForm swapped(int va, int vb) const;

    /// Coefficient of z^j: a binary form in (x, y) of degree d - j.
    BinaryForm z_coefficient(int j) const;
    int z_degree() const; // largest j with nonzero z_coefficient; -1 for zero
    /// True iff the monomial z^d has a nonzero (necessarily constant) coefficient.
    bool z_regular() const { return deg_ >= 0 && coeff(0, 0) != 0; }

    /// Specialize x = x0, y = y0, leaving a univariate polynomial in z.
    Poly specialize_xy(rep_t x0, rep_t y0) const;
    /// Restriction F(s*A + t*B) for explicit basis points A, B.
    BinaryForm restrict(const std::array<rep_t, 3>& A, const std::array<rep_t, 3>& B) const;

    friend TernaryForm operator+(const TernaryForm& a, const TernaryForm& b);
    friend TernaryForm operator-(const TernaryForm& a, const TernaryForm& b);
    friend TernaryForm operator*(const TernaryForm& a, const TernaryForm& b);
    friend bool operator==(const TernaryForm& a, const TernaryForm& b) {
        return a.deg_ == b.deg_ && a.c_ == b.c_;
    }
    friend bool operator!=(const TernaryForm& a, const TernaryForm& b) { return !(a == b); }

private:
    const FieldCtx* F_;
    int deg_;
    std::vector<rep_t> c_; // triangular, index (i, j) -> i*(deg+1) - i*(i-1)/2 + j
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * (static_cast<std::size_t>(deg_) + 1) -
               static_cast<std::size_t>(i) * (static_cast<std::size_t>(i) - 1) / 2 +
               static_cast<std::size_t>(j);
    }
};

std::array<TernaryForm, 3> partials(const TernaryForm& F);

/// x^q F_x + y^q F_y + z^q F_z over the base field of F (q = field size).
TernaryForm frobenius_form(const TernaryForm& F);

/// Determinant of the matrix of second partials; degree 3(d-2) or zero.
TernaryForm hessian(const TernaryForm& F);

/// F_uu F_w^2 - 2 F_uw F_u F_w + F_ww F_u^2, the numerator of the second
/// derivative of the branch in the (u, w) chart; degree 3d-4. Its value at a
/// point P of F measures the tangent contact there: zero means contact >= 3,
/// valid whenever the coordinate complementary to (u, w) is nonzero at P.
TernaryForm contact_form(const TernaryForm& F, int u, int w);

/// Exact divisibility F | G, decided by making F monic in a distinguished
/// variable under deterministic coordinate changes and dividing exactly.
bool divides(const TernaryForm& F, const TernaryForm& G);

/// Resultant eliminating one variable (0 = x, 1 = y, 2 = z); the result is a
/// binary form of degree deg F * deg G in the remaining variables, in their
/// canonical order. Requires F or G regular in the eliminated variable.
BinaryForm resultant_eliminate(const TernaryForm& F, const TernaryForm& G, int var);

/// The deterministic sequence of unimodular coordinate changes used by
/// divisibility/smoothness retries: index 0 is the identity.
std::array<std::array<FieldCtx::rep_t, 3>, 3> coordinate_change_matrix(const FieldCtx& F,
                                                                       unsigned index);
std::array<std::array<FieldCtx::rep_t, 3>, 3>
invert_matrix(const FieldCtx& F, const std::array<std::array<FieldCtx::rep_t, 3>, 3>& M);

inline constexpr unsigned kCoordinateChangeRetries = 8;

} // namespace goodline

#endif
