#ifndef GOODLINE_PROJECTIVE_HPP
#define GOODLINE_PROJECTIVE_HPP

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "goodline/forms.hpp"

namespace goodline {

/// Point of PG(2, q), stored with the first nonzero coordinate scaled to 1.
struct ProjPoint {
    using rep_t = FieldCtx::rep_t;

    const FieldCtx* F = nullptr;
    std::array<rep_t, 3> c{0, 0, 0};

    static ProjPoint make(const FieldCtx& F, rep_t x, rep_t y, rep_t z);

    ProjPoint lift(const Embedding& e) const;
    /// Coordinate-wise q0^s power followed by renormalization.
    ProjPoint frobenius(std::uint32_t s) const;

    friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.c == b.c; }
    friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }
};

/// Line of PG(2, q) with dual coordinates [a:b:c] (the locus ax+by+cz = 0),
/// normalized like a point.
struct ProjLine {
    using rep_t = FieldCtx::rep_t;

    const FieldCtx* F = nullptr;
    std::array<rep_t, 3> c{0, 0, 0};

    static ProjLine make(const FieldCtx& F, rep_t a, rep_t b, rep_t c);

    friend bool operator==(const ProjLine& a, const ProjLine& b) { return a.c == b.c; }
    friend bool operator!=(const ProjLine& a, const ProjLine& b) { return !(a == b); }
};

/// Canonical enumeration: the [1:y:z] block with (y, z) ascending by packed
/// rep, then [0:1:z], then [0:0:1]. Lines use the same scheme on duals, so
/// line 0 is x = 0.
std::uint64_t point_index(const ProjPoint& P);
ProjPoint point_at(const FieldCtx& F, std::uint64_t index);
std::vector<ProjPoint> all_points(const FieldCtx& F);

std::uint64_t line_index(const ProjLine& L);
ProjLine line_at(const FieldCtx& F, std::uint64_t index);
std::vector<ProjLine> all_lines(const FieldCtx& F);

bool incident(const ProjLine& L, const ProjPoint& P);
ProjLine line_through(const ProjPoint& P, const ProjPoint& Q);

/// The two points of L least in the global order, in closed form.
std::pair<ProjPoint, ProjPoint> line_basis(const ProjLine& L);
/// All q+1 points of L: parameter [1:0] gives basis.first, [a:1] gives
/// a*first + second with a ascending.
std::vector<ProjPoint> points_on_line(const ProjLine& L);
/// Normalized s*A + t*B for the canonical basis (A, B) of L.
ProjPoint point_on_line(const ProjLine& L, FieldCtx::rep_t s, FieldCtx::rep_t t);

TernaryForm line_form(const ProjLine& L);
/// F restricted to L via the canonical basis.
BinaryForm restrict_to_line(const TernaryForm& F, const ProjLine& L);

} // namespace goodline

#endif
