#include "doctest.h"

#include <algorithm>

#include "goodline/experiments.hpp"
#include "goodline/io.hpp"

using namespace goodline;

namespace {

std::string fact_of(const CurveVerdict& v, const std::string& key) {
    for (const auto& f : v.facts)
        if (f.key == key) return f.value;
    return "<missing>";
}

void check_aggregates(const ExperimentResult& r) {
    CHECK(r.passed + r.failed == r.verdicts.size());
    std::uint64_t p = 0, f = 0, fd = 0;
    for (const auto& v : r.verdicts) {
        (v.pass ? p : f)++;
        if (v.falsified) ++fd;
    }
    CHECK(p == r.passed);
    CHECK(f == r.failed);
    CHECK(fd == r.falsified);
    CHECK(r.any_falsified() == (fd > 0));
}

} // namespace

TEST_CASE("experiment kind names") {
    CHECK(std::string(experiment_kind_name(ExperimentKind::BertiniReflexive)) ==
          "bertini-reflexive");
    CHECK(std::string(experiment_kind_name(ExperimentKind::BertiniNonreflexive)) ==
          "bertini-nonreflexive");
    CHECK(std::string(experiment_kind_name(ExperimentKind::FncReport)) == "fnc-report");
    CHECK(std::string(experiment_kind_name(ExperimentKind::SvbCheck)) == "svb-check");
    CHECK(std::string(experiment_kind_name(ExperimentKind::PlaneFillingSearch)) ==
          "plane-filling-search");
}

TEST_CASE("random_smooth_curve is deterministic and honors constraints") {
    const FieldCtx& F5 = FieldCtx::get(5, 1);
    SampledCurve a = random_smooth_curve(F5, 3, Constraint::any(), 99);
    SampledCurve b = random_smooth_curve(F5, 3, Constraint::any(), 99);
    CHECK(a.curve.form() == b.curve.form());
    CHECK(a.rejections == b.rejections);
    CHECK(a.curve.degree() == 3);
    CHECK(a.curve.is_smooth());

    SampledCurve c = random_smooth_curve(F5, 3, Constraint::any(), 100);
    CHECK(a.curve.form() != c.curve.form()); // different seed, different draw

    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        SampledCurve s = random_smooth_curve(F5, 4, Constraint::reflexive(), seed);
        CHECK(s.curve.degree() == 4);
        CHECK(s.curve.is_smooth());
        CHECK(s.curve.is_reflexive());
    }
}

TEST_CASE("random_smooth_curve Pardini constraint gives non-reflexive curves") {
    const FieldCtx& F9 = FieldCtx::get(3, 2);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        SampledCurve s = random_smooth_curve(F9, 0, Constraint::pardini(2), seed);
        CHECK(s.curve.degree() == 7); // t*p + 1
        CHECK(s.curve.is_smooth());
        CHECK_FALSE(s.curve.is_reflexive());
    }
    SampledCurve q = random_smooth_curve(F9, 0, Constraint::pardini(1), 5);
    CHECK(q.curve.degree() == 4);
    CHECK_FALSE(q.curve.is_reflexive());
}

TEST_CASE("random_smooth_curve exhausts a zero budget") {
    const FieldCtx& F3 = FieldCtx::get(3, 1);
    CHECK_THROWS_WITH_AS(random_smooth_curve(F3, 3, Constraint::any(), 1, 0),
                         doctest::Contains("attempts"), error);
    try {
        random_smooth_curve(F3, 3, Constraint::any(), 1, 0);
    } catch (const error& e) {
        CHECK(e.code() == errc::budget_exhausted);
    }
}

TEST_CASE("verify_bertini_reflexive passes and cycles degrees") {
    const FieldCtx& F5 = FieldCtx::get(5, 1);
    std::vector<int> degrees = {3, 4, 5, 6};
    ExperimentResult r = verify_bertini_reflexive(F5, degrees, 8, 1000);
    check_aggregates(r);
    CHECK(r.verdicts.size() == 8);
    CHECK(r.passed == 8);
    CHECK(r.falsified == 0);
    for (std::size_t i = 0; i < r.verdicts.size(); ++i) {
        const CurveVerdict& v = r.verdicts[i];
        CHECK(v.degree == degrees[i % degrees.size()]);
        CHECK(v.seed == 1000 + i);
        CHECK(fact_of(v, "good_line") != "none");
        CHECK(fact_of(v, "good_line") != "<missing>");
        CHECK(fact_of(v, "slack").substr(0, 1) != "-");
        // the verdict seed re-runs to the same curve
        SampledCurve again = random_smooth_curve(F5, v.degree, Constraint::reflexive(), v.seed);
        CHECK(curve_spec_text(again.curve) == v.curve);
    }

    ExperimentResult r2 = verify_bertini_reflexive(F5, degrees, 8, 1000);
    CHECK(result_to_json(r) == result_to_json(r2));
}

TEST_CASE("verify_bertini_reflexive rejects out-of-range degrees") {
    const FieldCtx& F3 = FieldCtx::get(3, 1);
    CHECK_THROWS_AS(verify_bertini_reflexive(F3, {5}, 1, 0), error);  // 5 > q+1
    CHECK_THROWS_AS(verify_bertini_reflexive(F3, {1}, 1, 0), error);  // below quadratic
    CHECK_THROWS_AS(verify_bertini_reflexive(F3, {}, 1, 0), error);   // nothing to cycle
    const FieldCtx& F25 = FieldCtx::get(5, 2);
    CHECK_THROWS_AS(verify_bertini_reflexive(F25, {11}, 1, 0), error); // above the cap
}

TEST_CASE("verify_bertini_nonreflexive t=1 checks the canonical recipe") {
    ExperimentResult r = verify_bertini_nonreflexive(3, 2, 1, 5, 50);
    check_aggregates(r);
    REQUIRE(r.verdicts.size() == 6); // canonical model + 5 samples
    CHECK(r.passed == 6);
    CHECK(r.falsified == 0);
    const CurveVerdict& canon = r.verdicts[0];
    CHECK(fact_of(canon, "canonical_model") == "true");
    CHECK(fact_of(canon, "smooth") == "true");
    // by hand: the prime-subfield points are [1:0:0], [0:1:0], [0:0:1] and
    // [1:1:1]; a coordinate pair spans a coordinate line, whose restriction
    // s*t^3 is tangent, while the three joins through [1:1:1] come out
    // transverse (e.g. through [0:0:1] the restriction is s*t*(s^2+t^2))
    CHECK(fact_of(canon, "prime_subfield_points") == "4");
    CHECK(fact_of(canon, "recipe_pairs_transverse") == "3/6");
    CHECK(fact_of(canon, "recipe_pair").find(" on ") != std::string::npos);
    for (std::size_t i = 1; i < r.verdicts.size(); ++i) {
        CHECK(r.verdicts[i].degree == 4);
        CHECK(fact_of(r.verdicts[i], "good_line") != "none");
    }

    ExperimentResult r5 = verify_bertini_nonreflexive(5, 2, 1, 3, 7);
    check_aggregates(r5);
    REQUIRE(r5.verdicts.size() == 4);
    CHECK(r5.passed == 4);
    CHECK(fact_of(r5.verdicts[0], "prime_subfield_points") == "6");
    CHECK(fact_of(r5.verdicts[0], "recipe_pairs_transverse") == "9/15");
    for (std::size_t i = 1; i < r5.verdicts.size(); ++i) CHECK(r5.verdicts[i].degree == 6);
}

TEST_CASE("verify_bertini_nonreflexive (3,2,2) checks tangent structure") {
    ExperimentResult r = verify_bertini_nonreflexive(3, 2, 2, 4, 21);
    check_aggregates(r);
    CHECK(r.passed == 4);
    CHECK(r.falsified == 0);
    for (const auto& v : r.verdicts) {
        CHECK(v.degree == 7);
        CHECK(fact_of(v, "good_line") != "none");
        const std::string mx = fact_of(v, "rational_tangent_max_points");
        CHECK(mx != "<missing>");
        CHECK(std::stoull(mx) <= 5);
        CHECK(fact_of(v, "special_tangent_lines") != "<missing>");
    }
}

TEST_CASE("verify_bertini_nonreflexive validates its parameters") {
    CHECK_THROWS_AS(verify_bertini_nonreflexive(3, 2, 3, 1, 0), error); // t out of range
    CHECK_THROWS_AS(verify_bertini_nonreflexive(3, 1, 1, 1, 0), error); // needs r >= 2
    CHECK_THROWS_AS(verify_bertini_nonreflexive(5, 2, 2, 1, 0), error); // degree 11 > 10
}

TEST_CASE("fnc_report on the Hermitian quartic") {
    ExperimentResult r = fnc_report(hermitian_family(3, 2));
    check_aggregates(r);
    REQUIRE(r.verdicts.size() == 1);
    const CurveVerdict& v = r.verdicts[0];
    CHECK(v.pass);
    CHECK_FALSE(v.falsified);
    CHECK(fact_of(v, "count_rational") == "28");
    CHECK(fact_of(v, "count_formula_d(q-d+2)") == "28");
    CHECK(fact_of(v, "q_prime") == "3");
    CHECK(fact_of(v, "collinear_max") == "4");
    CHECK(fact_of(v, "collinear_matches_degree") == "true");
    CHECK(fact_of(v, "transverse_lines") == "63");
    CHECK(fact_of(v, "transverse_all_rational") == "true");
    CHECK(fact_of(v, "average") == "280/91");
    CHECK(fact_of(v, "average_bound") == "12/5");
    CHECK(fact_of(v, "average_exceeds_bound") == "true");
}

TEST_CASE("fnc_report on the Hermitian sextic over GF(25)") {
    ExperimentResult r = fnc_report(hermitian_family(5, 2));
    REQUIRE(r.verdicts.size() == 1);
    const CurveVerdict& v = r.verdicts[0];
    CHECK(v.pass);
    CHECK(fact_of(v, "count_rational") == "126");
    CHECK(fact_of(v, "q_prime") == "5");
    CHECK(fact_of(v, "average") == "3276/651");
    CHECK(fact_of(v, "average_exceeds_bound") == "true");
}

TEST_CASE("fnc_report refuses Frobenius-classical curves") {
    const FieldCtx& F3 = FieldCtx::get(3, 1);
    TernaryForm f(F3, 2);
    f.set_coeff(2, 0, 1);
    f.set_coeff(0, 2, 1);
    f.set_coeff(0, 0, 1);
    try {
        fnc_report(PlaneCurve{f});
        CHECK(false);
    } catch (const error& e) {
        CHECK(e.code() == errc::not_frobenius_non_classical);
    }
}

TEST_CASE("svb_check worked examples") {
    const FieldCtx& F3 = FieldCtx::get(3, 1);
    TernaryForm conic(F3, 2);
    conic.set_coeff(2, 0, 1);
    conic.set_coeff(0, 2, 1);
    conic.set_coeff(0, 0, 1);
    ExperimentResult r = svb_check(PlaneCurve{conic});
    check_aggregates(r);
    REQUIRE(r.verdicts.size() == 1);
    CHECK(r.verdicts[0].pass);
    CHECK(fact_of(r.verdicts[0], "lhs") == "8");
    CHECK(fact_of(r.verdicts[0], "rhs") == "8");
    CHECK(fact_of(r.verdicts[0], "slack") == "0");
    CHECK(fact_of(r.verdicts[0], "reflexive") == "true");

    const FieldCtx& F7 = FieldCtx::get(7, 1);
    TernaryForm fermat(F7, 3);
    fermat.set_coeff(3, 0, 1);
    fermat.set_coeff(0, 3, 1);
    fermat.set_coeff(0, 0, 1);
    ExperimentResult rf = svb_check(PlaneCurve{fermat});
    CHECK(rf.verdicts[0].pass);
    CHECK(fact_of(rf.verdicts[0], "lhs") == "18");
    CHECK(fact_of(rf.verdicts[0], "rhs") == "27");
    CHECK(fact_of(rf.verdicts[0], "slack") == "9");
}

TEST_CASE("svb_check passes on random reflexive curves") {
    for (auto [p, m] : {std::pair<std::uint32_t, std::uint32_t>{3, 1}, {5, 1}}) {
        const FieldCtx& F = FieldCtx::get(p, m);
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            SampledCurve s =
                random_smooth_curve(F, 2 + static_cast<int>(seed % 3), Constraint::reflexive(),
                                    700 + seed);
            ExperimentResult r = svb_check(s.curve);
            CHECK(r.verdicts[0].pass);
            CHECK_FALSE(r.any_falsified());
        }
    }
}

TEST_CASE("svb_check propagates the Frobenius-nonclassical refusal") {
    CHECK_THROWS_AS(svb_check(hermitian_family(3, 2)), error);
    try {
        svb_check(hermitian_family(3, 2));
    } catch (const error& e) {
        CHECK(e.code() == errc::frobenius_non_classical);
    }
}

TEST_CASE("plane_filling_search with zero budget is a clean non-result") {
    const FieldCtx& F3 = FieldCtx::get(3, 1);
    ExperimentResult r = plane_filling_search(F3, 0, 1);
    check_aggregates(r);
    CHECK(r.verdicts.empty());
    CHECK_FALSE(r.any_falsified());
    REQUIRE(!r.notes.empty());
    CHECK(r.notes.back().find("no smooth plane-filling curve") != std::string::npos);
}

TEST_CASE("plane_filling_search finds a smooth quintic over GF(3)") {
    const FieldCtx& F3 = FieldCtx::get(3, 1);
    ExperimentResult r = plane_filling_search(F3, 500, 1);
    check_aggregates(r);
    REQUIRE(r.verdicts.size() == 1);
    const CurveVerdict& v = r.verdicts[0];
    CHECK(v.pass);
    CHECK_FALSE(v.falsified);
    CHECK(v.degree == 5);
    CHECK(fact_of(v, "plane_filling") == "true");
    CHECK(fact_of(v, "smooth") == "true");
    CHECK(fact_of(v, "good_line") == "none");
    CHECK(fact_of(v, "all_lines_rational_tangent") == "true");

    // the reported curve text reproduces the curve
    PlaneCurve C = parse_curve_spec(v.curve);
    CHECK(C.degree() == 5);
    CHECK(C.is_smooth());
    CHECK(C.is_plane_filling());
    CHECK(C.rational_points().size() == 13);
    CensusReport census = tangent_census(C);
    CHECK(census.transverse == 0);
    CHECK(census.rational_tangent == 13);
    CHECK(census.special_tangent == 0);
    CHECK_FALSE(find_good_line(C).has_value());

    ExperimentResult r2 = plane_filling_search(F3, 500, 1);
    CHECK(result_to_json(r) == result_to_json(r2));
}

TEST_CASE("plane_filling_check accepts fillers and rejects others") {
    const FieldCtx& F3 = FieldCtx::get(3, 1);
    ExperimentResult found = plane_filling_search(F3, 500, 2);
    REQUIRE(found.verdicts.size() == 1);
    ExperimentResult chk = plane_filling_check(parse_curve_spec(found.verdicts[0].curve));
    REQUIRE(chk.verdicts.size() == 1);
    CHECK(chk.verdicts[0].pass);
    CHECK_FALSE(chk.any_falsified());

    TernaryForm conic(F3, 2);
    conic.set_coeff(2, 0, 1);
    conic.set_coeff(0, 2, 1);
    conic.set_coeff(0, 0, 1);
    ExperimentResult miss = plane_filling_check(PlaneCurve{conic});
    CHECK_FALSE(miss.verdicts[0].pass);
    CHECK_FALSE(miss.verdicts[0].falsified); // wrong input, not a broken theorem
    CHECK(fact_of(miss.verdicts[0], "plane_filling") == "false");
}
