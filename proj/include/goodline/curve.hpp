#ifndef GOODLINE_CURVE_HPP
#define GOODLINE_CURVE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "goodline/projective.hpp"

namespace goodline {

/// A verified singular point, living over GF(q^e).
struct SingularWitness {
    ProjPoint point;
    std::uint32_t e;
};

/// Outcome of the generic-contact-order sampling rule: tangency
/// multiplicities observed at non-rational points over GF(q^2) and GF(q^3),
/// with q' the minimum. The histogram is part of the contract so that
/// non-generic exceptions stay visible.
struct ContactReport {
    std::uint64_t q_prime = 0;
    std::map<std::uint64_t, std::uint64_t> histogram; // multiplicity -> samples
    std::uint64_t samples = 0;
};

class PlaneCurve {
public:
    explicit PlaneCurve(TernaryForm F);

    const TernaryForm& form() const { return F_; }
    const FieldCtx& field() const { return F_.field(); }
    int degree() const { return F_.degree(); }

    bool is_smooth() const;
    /// Canonical witness (first point of P^2(GF(q^e)) in global order,
    /// ascending e) when the curve is singular; nullopt when smooth.
    std::optional<SingularWitness> singular_witness() const;

    /// Tangent line [F_x(P) : F_y(P) : F_z(P)] at a smooth point P of C. P
    /// may live over an extension of the base field; the line follows it.
    ProjLine tangent_line(const ProjPoint& P) const;

    bool is_reflexive() const;
    bool is_frobenius_nonclassical() const;
    std::uint64_t dual_degree() const;
    std::vector<ProjPoint> rational_flexes() const;
    ContactReport generic_contact_order() const;

    std::uint64_t count_points(std::uint32_t e = 1) const;
    const std::vector<ProjPoint>& rational_points() const;
    bool is_plane_filling() const;

private:
    void require_smooth(const char* op) const;
    void compute_smoothness() const;

    TernaryForm F_;
    mutable std::optional<bool> smooth_;
    mutable std::optional<SingularWitness> witness_;
    mutable std::optional<bool> reflexive_;
    mutable std::optional<bool> fnc_;
    mutable std::optional<std::vector<ProjPoint>> rational_;
};

/// a^p x + b^p y + c^p z for equal-degree forms a, b, c; degree tp+1.
PlaneCurve pardini_form(const TernaryForm& a, const TernaryForm& b, const TernaryForm& c);

/// x^e + y^e + z^e over GF(q0^n) with e = (q0^n - 1)/(q0 - 1).
PlaneCurve hermitian_family(std::uint64_t q0, std::uint32_t n);

} // namespace goodline

#endif
