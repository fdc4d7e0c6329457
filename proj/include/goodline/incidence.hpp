#ifndef GOODLINE_INCIDENCE_HPP
#define GOODLINE_INCIDENCE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "goodline/curve.hpp"

namespace goodline {

enum class LineClass { Transverse, RationalTangent, SpecialTangent };

const char* line_class_name(LineClass c);

/// One line against one curve: the class, the full intersection profile of
/// the restriction, and the rational intersection points with multiplicities.
struct LineReport {
    ProjLine line;
    LineClass cls;
    IntersectionProfile profile;
    std::vector<std::pair<ProjPoint, std::uint64_t>> rational_points;
};

/// Exhaustive census of all q^2+q+1 lines.
struct CensusReport {
    std::uint64_t lines_total = 0;
    std::uint64_t transverse = 0;
    std::uint64_t rational_tangent = 0;
    std::uint64_t special_tangent = 0;
    /// Per class, how often each profile shape occurred (keyed by the
    /// canonical profile string).
    std::map<std::string, std::uint64_t> profile_histogram[3];
    std::optional<ProjLine> good_line; // first transverse line, if any
    std::vector<LineReport> lines;     // in global line order
};

/// One entry of the Frobenius incidence divisor: `points` geometric points of
/// residue degree e, each appearing with multiplicity m.
struct FrobeniusEntry {
    std::uint64_t e;
    std::uint64_t m;
    std::uint64_t points;
    friend bool operator==(const FrobeniusEntry& a, const FrobeniusEntry& b) {
        return a.e == b.e && a.m == b.m && a.points == b.points;
    }
};

struct FrobeniusProfile {
    std::vector<FrobeniusEntry> entries; // sorted by (e, m)
    std::uint64_t total_degree = 0;      // d(q+d-1)
    std::uint64_t rational_points = 0;   // support points with e = 1
    std::uint64_t n_nonrational = 0;     // distinct support points with e >= 2
    /// How N is read: distinct non-rational points of the support.
    std::string n_reading;
};

std::string profile_to_string(const IntersectionProfile& p);

/// Classify a line against a smooth curve. Raises CurveContainsLine when the
/// restriction vanishes identically.
LineReport classify_line(const PlaneCurve& C, const ProjLine& L);

/// First transverse line in the global line order, scanning lazily.
std::optional<ProjLine> find_good_line(const PlaneCurve& C);

/// Classify every line of PG(2, q).
CensusReport tangent_census(const PlaneCurve& C);

/// Intersection divisor of C with its Frobenius incidence form. Requires a
/// smooth Frobenius-classical curve.
FrobeniusProfile frobenius_incidence(const PlaneCurve& C);

/// Maximum number of rational curve points on one line, with the first line
/// attaining it.
std::pair<std::uint64_t, ProjLine> collinear_rational_max(const PlaneCurve& C);

/// Exact fraction #C(F_q) * (q+1) / (q^2+q+1), with the lower-bound chain
/// evaluated when the curve is Frobenius-nonclassical.
struct AverageReport {
    std::uint64_t count_rational = 0; // #C(F_q)
    std::uint64_t num = 0, den = 0;   // #C*(q+1) and q^2+q+1, kept unreduced
    bool fnc = false;
    bool count_matches_fnc_formula = false; // #C == d(q - d + 2)
    std::uint64_t bound_num = 0, bound_den = 0; // d(q+1-d)/(q+1), reduced
    bool exceeds_bound = false;                 // average > bound
};

AverageReport average_rational_per_line(const PlaneCurve& C);

} // namespace goodline

#endif
