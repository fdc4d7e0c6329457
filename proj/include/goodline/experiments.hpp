#ifndef GOODLINE_EXPERIMENTS_HPP
#define GOODLINE_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "goodline/incidence.hpp"

namespace goodline {

enum class ExperimentKind {
    BertiniReflexive,
    BertiniNonreflexive,
    FncReport,
    SvbCheck,
    PlaneFillingSearch,
};

const char* experiment_kind_name(ExperimentKind k);

/// Shape constraint for rejection sampling.
struct Constraint {
    enum class Kind { Any, Reflexive, Pardini } kind = Kind::Any;
    int t = 0; // Pardini coefficient degree

    static Constraint any() { return {}; }
    static Constraint reflexive() { return {Kind::Reflexive, 0}; }
    static Constraint pardini(int t) { return {Kind::Pardini, t}; }
};

inline constexpr std::uint64_t kDefaultSampleBudget = 20000;
inline constexpr int kDefaultMaxDegree = 10;

struct SampledCurve {
    PlaneCurve curve;
    std::uint64_t rejections = 0;
};

/// Rejection-sample a smooth curve of degree d (for the Pardini constraint,
/// d is t*p + 1 and the argument d is ignored). Deterministic in the seed.
SampledCurve random_smooth_curve(const FieldCtx& F, int d, Constraint cons, std::uint64_t seed,
                                 std::uint64_t budget = kDefaultSampleBudget);

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::SvbCheck;
    std::uint32_t p = 0, r = 1;
    std::vector<int> degrees; // bertini-reflexive: cycled over samples
    int t = 0;                // bertini-nonreflexive: Pardini parameter
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t budget = kDefaultSampleBudget;
    int max_degree = kDefaultMaxDegree;
};

/// One named observation inside a verdict; values are preformatted text so
/// reports stay byte-deterministic.
struct Fact {
    std::string key;
    std::string value;
};

struct CurveVerdict {
    std::uint64_t index = 0;
    std::uint64_t seed = 0;  // per-sample seed, re-runnable standalone
    std::string curve;       // canonical curve spec text
    int degree = 0;
    std::uint64_t rejections = 0;
    bool pass = false;
    bool falsified = false; // a theorem-level assertion failed
    std::vector<Fact> facts;
};

struct ExperimentResult {
    ExperimentSpec spec;
    std::vector<CurveVerdict> verdicts;
    std::vector<std::string> notes;
    std::uint64_t passed = 0, failed = 0, falsified = 0;

    bool any_falsified() const { return falsified > 0; }
};

/// Sample smooth reflexive curves with degrees cycled from `degrees` and
/// assert that each admits a transverse line and satisfies the incidence
/// inequality.
ExperimentResult verify_bertini_reflexive(const FieldCtx& F, const std::vector<int>& degrees,
                                          std::uint64_t samples, std::uint64_t seed,
                                          std::uint64_t budget = kDefaultSampleBudget);

/// Sample smooth Pardini-form curves of degree t*p + 1 over GF(p^r) and
/// assert a transverse line exists; t = 1 additionally checks the
/// two-rational-points recipe, and (p, r, t) = (3, 2, 2) the degree-7
/// tangency structure.
ExperimentResult verify_bertini_nonreflexive(std::uint32_t p, std::uint32_t r, int t,
                                             std::uint64_t samples, std::uint64_t seed,
                                             std::uint64_t budget = kDefaultSampleBudget);

/// Full report on a Frobenius-nonclassical curve: point-count formula,
/// degree bounds from the generic contact order, collinearity probe,
/// transversality structure, and the average-per-line chain.
ExperimentResult fnc_report(const PlaneCurve& C);

/// Evaluate 2#C(F_q) + N <= d(q+d-1) and report the slack.
ExperimentResult svb_check(const PlaneCurve& C);

/// Budgeted random search for a smooth plane-filling curve of degree q+2,
/// sampling from the linear system of forms through every rational point.
/// Non-discovery is a clean non-result.
ExperimentResult plane_filling_search(const FieldCtx& F, std::uint64_t budget,
                                      std::uint64_t seed);

/// The checks a discovered (or fixture-supplied) plane-filling curve must
/// pass; tangency assertions apply only to smooth curves.
ExperimentResult plane_filling_check(const PlaneCurve& C);

} // namespace goodline

#endif
