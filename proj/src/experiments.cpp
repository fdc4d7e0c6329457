#include "goodline/experiments.hpp"

#include <random>
#include <sstream>

#include "goodline/io.hpp"
#include "goodline/rand.hpp"

namespace goodline {

namespace {

using rep_t = FieldCtx::rep_t;

std::string u64s(std::uint64_t v) { return std::to_string(v); }

Fact fact(std::string key, std::string value) { return {std::move(key), std::move(value)}; }

TernaryForm random_form(const FieldCtx& F, int d, std::mt19937_64& rng) {
    TernaryForm r(F, d);
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d - i; ++j)
            r.set_coeff(i, j, static_cast<rep_t>(uniform_below(rng, F.q())));
    return r;
}

void check_degree_range(int d, int max_degree) {
    if (d < 2 || d > max_degree)
        raise(errc::degree_mismatch, "degree " + std::to_string(d) +
                                         " outside the supported range [2, " +
                                         std::to_string(max_degree) + "]");
}

void finish_verdict(ExperimentResult& res, CurveVerdict v) {
    if (v.pass)
        ++res.passed;
    else
        ++res.failed;
    if (v.falsified) ++res.falsified;
    res.verdicts.push_back(std::move(v));
}

/// 2#C + N <= d(q+d-1) facts shared by svb-check and the Bertini suites;
/// returns whether the inequality holds.
bool add_incidence_facts(CurveVerdict& v, const PlaneCurve& C) {
    FrobeniusProfile p = frobenius_incidence(C);
    const std::uint64_t lhs = 2 * p.rational_points + p.n_nonrational;
    v.facts.push_back(fact("count_rational", u64s(p.rational_points)));
    v.facts.push_back(fact("n_nonrational", u64s(p.n_nonrational)));
    v.facts.push_back(fact("n_reading", p.n_reading));
    v.facts.push_back(fact("lhs", u64s(lhs)));
    v.facts.push_back(fact("rhs", u64s(p.total_degree)));
    v.facts.push_back(fact("inequality", "2#C + N ≤ d(q+d−1): " + u64s(2 * p.rational_points) +
                                             " + " + u64s(p.n_nonrational) + " = " + u64s(lhs) +
                                             " ≤ " + u64s(p.total_degree)));
    if (lhs <= p.total_degree) {
        v.facts.push_back(fact("slack", u64s(p.total_degree - lhs)));
        return true;
    }
    v.facts.push_back(
        fact("slack", "-" + u64s(lhs - p.total_degree)));
    return false;
}

CurveVerdict make_verdict(std::uint64_t index, std::uint64_t seed, const SampledCurve& s) {
    CurveVerdict v;
    v.index = index;
    v.seed = seed;
    v.curve = curve_spec_text(s.curve);
    v.degree = s.curve.degree();
    v.rejections = s.rejections;
    return v;
}

/// Basis of the space of degree-d forms vanishing at every rational point,
/// by Gaussian elimination on the evaluation matrix.
std::vector<TernaryForm> vanishing_system(const FieldCtx& F, int d) {
    std::vector<std::pair<int, int>> mono;
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d - i; ++j) mono.push_back({i, j});
    const std::size_t cols = mono.size();
    const auto pts = all_points(F);
    const std::size_t rows = pts.size();

    std::vector<std::vector<rep_t>> a(rows, std::vector<rep_t>(cols, 0));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            const auto [i, j] = mono[c];
            const int k = d - i - j;
            rep_t v = F.mul(F.pow(pts[r].c[0], static_cast<std::uint64_t>(i)),
                            F.pow(pts[r].c[1], static_cast<std::uint64_t>(j)));
            a[r][c] = F.mul(v, F.pow(pts[r].c[2], static_cast<std::uint64_t>(k)));
        }

    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[rank], a[piv]);
        const rep_t s = F.inv(a[rank][col]);
        for (auto& x : a[rank]) x = F.mul(x, s);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            const rep_t f = a[r][col];
            for (std::size_t c = col; c < cols; ++c)
                a[r][c] = F.sub(a[r][c], F.mul(f, a[rank][c]));
        }
        pivot_col.push_back(col);
        ++rank;
    }

    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    std::vector<TernaryForm> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        TernaryForm b(F, d);
        b.set_coeff(mono[free].first, mono[free].second, 1);
        for (std::size_t r = 0; r < rank; ++r)
            if (a[r][free] != 0)
                b.set_coeff(mono[pivot_col[r]].first, mono[pivot_col[r]].second,
                            F.neg(a[r][free]));
        basis.push_back(std::move(b));
    }
    return basis;
}

} // namespace

const char* experiment_kind_name(ExperimentKind k) {
    switch (k) {
    case ExperimentKind::BertiniReflexive: return "bertini-reflexive";
    case ExperimentKind::BertiniNonreflexive: return "bertini-nonreflexive";
    case ExperimentKind::FncReport: return "fnc-report";
    case ExperimentKind::SvbCheck: return "svb-check";
    default: return "plane-filling-search";
    }
}

SampledCurve random_smooth_curve(const FieldCtx& F, int d, Constraint cons, std::uint64_t seed,
                                 std::uint64_t budget) {
    std::mt19937_64 rng(seed);
    std::uint64_t attempts = 0;
    for (;;) {
        if (attempts >= budget)
            raise(errc::budget_exhausted,
                  "no smooth curve found in " + u64s(budget) + " attempts");
        ++attempts;
        try {
            if (cons.kind == Constraint::Kind::Pardini) {
                if (cons.t < 1)
                    raise(errc::degree_mismatch, "Pardini coefficient degree must be positive");
                TernaryForm a = random_form(F, cons.t, rng);
                TernaryForm b = random_form(F, cons.t, rng);
                TernaryForm c = random_form(F, cons.t, rng);
                if (a.degree() != cons.t || b.degree() != cons.t || c.degree() != cons.t ||
                    a.is_zero() || b.is_zero() || c.is_zero())
                    continue;
                PlaneCurve C = pardini_form(a, b, c);
                if (!C.is_smooth()) continue;
                return {C, attempts - 1};
            }
            TernaryForm f = random_form(F, d, rng);
            if (f.is_zero()) continue;
            PlaneCurve C{f};
            if (!C.is_smooth()) continue;
            if (cons.kind == Constraint::Kind::Reflexive && !C.is_reflexive()) continue;
            return {C, attempts - 1};
        } catch (const error& e) {
            // undecidable or degenerate candidates are rejected, not fatal
            if (e.code() == errc::zero_form || e.code() == errc::degree_mismatch ||
                e.code() == errc::size_cap_exceeded ||
                e.code() == errc::coordinate_change_exhausted)
                continue;
            throw;
        }
    }
}

ExperimentResult verify_bertini_reflexive(const FieldCtx& F, const std::vector<int>& degrees,
                                          std::uint64_t samples, std::uint64_t seed,
                                          std::uint64_t budget) {
    ExperimentResult res;
    res.spec = {ExperimentKind::BertiniReflexive, F.p(), F.m(), degrees,
                0,                                samples, seed,  budget,
                kDefaultMaxDegree};
    if (degrees.empty()) raise(errc::degree_mismatch, "no degrees given");
    for (int d : degrees) {
        check_degree_range(d, kDefaultMaxDegree);
        if (static_cast<std::uint64_t>(d) > F.q() + 1)
            raise(errc::degree_mismatch,
                  "degree " + std::to_string(d) + " exceeds q+1 = " + u64s(F.q() + 1));
    }
    for (std::uint64_t i = 0; i < samples; ++i) {
        const std::uint64_t si = seed + i;
        const int d = degrees[static_cast<std::size_t>(i % degrees.size())];
        SampledCurve s = random_smooth_curve(F, d, Constraint::reflexive(), si, budget);
        CurveVerdict v = make_verdict(i, si, s);
        auto L = find_good_line(s.curve);
        v.facts.push_back(fact("good_line", L ? line_to_string(*L) : "none"));
        const bool svb_ok = add_incidence_facts(v, s.curve);
        v.pass = L.has_value() && svb_ok;
        v.falsified = !v.pass;
        finish_verdict(res, v);
    }
    return res;
}

ExperimentResult verify_bertini_nonreflexive(std::uint32_t p, std::uint32_t r, int t,
                                             std::uint64_t samples, std::uint64_t seed,
                                             std::uint64_t budget) {
    if (t != 1 && t != 2)
        raise(errc::degree_mismatch, "the Pardini parameter t must be 1 or 2");
    if (r < 2) raise(errc::degree_mismatch, "nonreflexive verification needs r >= 2");
    const FieldCtx& F = FieldCtx::get(p, r);
    const int d = t * static_cast<int>(p) + 1;
    check_degree_range(d, kDefaultMaxDegree);

    ExperimentResult res;
    res.spec = {ExperimentKind::BertiniNonreflexive, p, r, {}, t, samples, seed, budget,
                kDefaultMaxDegree};
    const bool structure_facts = p == 3 && r == 2 && t == 2;

    if (t == 1) {
        // Every smooth non-reflexive curve of degree p+1 is projectively
        // equivalent to x y^p + y z^p + z x^p; on that model the recipe is
        // concrete: join two prime-subfield points of the curve, the line is
        // transverse.
        const int pi = static_cast<int>(p);
        TernaryForm k(F, d);
        k.set_coeff(1, pi, 1);
        k.set_coeff(0, 1, 1);
        k.set_coeff(pi, 0, 1);
        PlaneCurve K{k};
        CurveVerdict v;
        v.curve = curve_spec_text(K);
        v.degree = d;
        std::vector<ProjPoint> fp;
        for (const ProjPoint& P : K.rational_points())
            if (P.c[0] < p && P.c[1] < p && P.c[2] < p) fp.push_back(P);
        std::uint64_t pairs = 0, transverse = 0;
        std::string witness = "none";
        for (std::size_t a = 0; a < fp.size(); ++a)
            for (std::size_t b = a + 1; b < fp.size(); ++b) {
                ++pairs;
                LineReport lr = classify_line(K, line_through(fp[a], fp[b]));
                if (lr.cls != LineClass::Transverse) continue;
                ++transverse;
                if (witness == "none")
                    witness = point_to_string(fp[a]) + " " + point_to_string(fp[b]) + " on " +
                              line_to_string(lr.line);
            }
        v.facts.push_back(fact("canonical_model", "true"));
        v.facts.push_back(fact("smooth", K.is_smooth() ? "true" : "false"));
        v.facts.push_back(fact("prime_subfield_points", u64s(fp.size())));
        v.facts.push_back(fact("recipe_pairs_transverse", u64s(transverse) + "/" + u64s(pairs)));
        v.facts.push_back(fact("recipe_pair", witness));
        v.pass = K.is_smooth() && fp.size() >= 2 && transverse >= 1;
        v.falsified = !v.pass;
        finish_verdict(res, v);
    }

    for (std::uint64_t i = 0; i < samples; ++i) {
        const std::uint64_t si = seed + i;
        SampledCurve s = random_smooth_curve(F, d, Constraint::pardini(t), si, budget);
        CurveVerdict v = make_verdict(res.verdicts.size(), si, s);
        bool ok = true;

        auto L = find_good_line(s.curve);
        v.facts.push_back(fact("good_line", L ? line_to_string(*L) : "none"));
        if (!L) ok = false;

        if (structure_facts) {
            CensusReport c = tangent_census(s.curve);
            std::uint64_t max_rational = 0;
            bool special_ok = true;
            for (const auto& lr : c.lines) {
                if (lr.cls == LineClass::RationalTangent)
                    max_rational = std::max(max_rational,
                                            static_cast<std::uint64_t>(lr.rational_points.size()));
                if (lr.cls == LineClass::SpecialTangent) {
                    const auto& en = lr.profile.entries;
                    if (!(en.size() == 2 && en[0] == ProfileEntry{1, 1, 1} && en[1].e == 2 &&
                          en[1].m >= 3 && en[1].count == 1))
                        special_ok = false;
                }
            }
            v.facts.push_back(fact("rational_tangent_max_points", u64s(max_rational)));
            v.facts.push_back(fact("special_tangent_lines", u64s(c.special_tangent)));
            if (max_rational > 5 || !special_ok) ok = false;
        }

        v.pass = ok;
        v.falsified = !ok;
        finish_verdict(res, v);
    }
    return res;
}

ExperimentResult fnc_report(const PlaneCurve& C) {
    if (!C.is_frobenius_nonclassical())
        raise(errc::not_frobenius_non_classical, "fnc-report needs a Frobenius-nonclassical curve");
    const FieldCtx& F = C.field();
    const std::uint64_t q = F.q();
    const std::uint64_t d = static_cast<std::uint64_t>(C.degree());

    ExperimentResult res;
    res.spec = {ExperimentKind::FncReport, F.p(), F.m(), {}, 0, 1, 0, 0, kDefaultMaxDegree};
    CurveVerdict v;
    v.curve = curve_spec_text(C);
    v.degree = C.degree();
    bool ok = true;

    const std::uint64_t count = C.rational_points().size();
    const std::uint64_t expected = d * (q - d + 2);
    v.facts.push_back(fact("count_rational", u64s(count)));
    v.facts.push_back(fact("count_formula_d(q-d+2)", u64s(expected)));
    if (count != expected) ok = false;

    ContactReport contact = C.generic_contact_order();
    std::string hist;
    for (const auto& [order, n] : contact.histogram) {
        if (!hist.empty()) hist += ", ";
        hist += u64s(order) + ":" + u64s(n);
    }
    v.facts.push_back(fact("q_prime", u64s(contact.q_prime)));
    v.facts.push_back(fact("contact_histogram", hist));
    // sqrt(q)+1 <= d <= (q-1)/(q'-1), kept in integers
    const bool lower_ok = (d - 1) * (d - 1) >= q;
    const bool upper_ok = d * (contact.q_prime - 1) <= (q - 1) + (contact.q_prime - 1);
    v.facts.push_back(fact("degree_bounds",
                           "√q+1 ≤ d ≤ (q−1)/(q′−1): d = " + u64s(d) + ", (d−1)² = " +
                               u64s((d - 1) * (d - 1)) + " ≥ q = " + u64s(q) +
                               ", (q−1)/(q′−1) = " + u64s((q - 1) / (contact.q_prime - 1))));
    if (!lower_ok || !upper_ok) ok = false;

    auto [maxcol, maxline] = collinear_rational_max(C);
    v.facts.push_back(fact("collinear_max", u64s(maxcol)));
    v.facts.push_back(fact("collinear_max_line", line_to_string(maxline)));
    // open-question probe, reported but never asserted
    v.facts.push_back(fact("collinear_matches_degree", maxcol == d ? "true" : "false"));

    CensusReport census = tangent_census(C);
    bool transverse_rational = true;
    for (const auto& lr : census.lines) {
        if (lr.cls != LineClass::Transverse) continue;
        if (!(lr.profile.entries.size() == 1 &&
              lr.profile.entries[0] == ProfileEntry{1, 1, d}))
            transverse_rational = false;
    }
    v.facts.push_back(fact("transverse_lines", u64s(census.transverse)));
    v.facts.push_back(
        fact("transverse_all_rational", transverse_rational ? "true" : "false"));
    if (!transverse_rational) ok = false;

    AverageReport avg = average_rational_per_line(C);
    v.facts.push_back(fact("average", u64s(avg.num) + "/" + u64s(avg.den)));
    v.facts.push_back(fact("average_bound", u64s(avg.bound_num) + "/" + u64s(avg.bound_den)));
    v.facts.push_back(fact("average_exceeds_bound", avg.exceeds_bound ? "true" : "false"));
    if (!avg.exceeds_bound) ok = false;

    v.pass = ok;
    v.falsified = !ok;
    finish_verdict(res, v);
    return res;
}

ExperimentResult svb_check(const PlaneCurve& C) {
    const FieldCtx& F = C.field();
    ExperimentResult res;
    res.spec = {ExperimentKind::SvbCheck, F.p(), F.m(), {}, 0, 1, 0, 0, kDefaultMaxDegree};
    CurveVerdict v;
    v.curve = curve_spec_text(C);
    v.degree = C.degree();
    v.facts.push_back(fact("reflexive", C.is_reflexive() ? "true" : "false"));
    v.pass = add_incidence_facts(v, C);
    v.falsified = !v.pass;
    finish_verdict(res, v);
    return res;
}

ExperimentResult plane_filling_check(const PlaneCurve& C) {
    const FieldCtx& F = C.field();
    ExperimentResult res;
    res.spec = {ExperimentKind::PlaneFillingSearch, F.p(), F.m(), {}, 0, 1, 0, 0,
                kDefaultMaxDegree};
    CurveVerdict v;
    v.curve = curve_spec_text(C);
    v.degree = C.degree();

    const bool filling = C.is_plane_filling();
    const bool smooth = C.is_smooth();
    v.facts.push_back(fact("plane_filling", filling ? "true" : "false"));
    v.facts.push_back(fact("smooth", smooth ? "true" : "false"));
    v.facts.push_back(fact("degree_q_plus_2",
                           static_cast<std::uint64_t>(C.degree()) == F.q() + 2 ? "true" : "false"));
    bool ok = filling;
    if (filling && smooth) {
        auto L = find_good_line(C);
        v.facts.push_back(fact("good_line", L ? line_to_string(*L) : "none"));
        CensusReport c = tangent_census(C);
        const bool all_tangent = c.transverse == 0 && c.special_tangent == 0;
        v.facts.push_back(fact("all_lines_rational_tangent", all_tangent ? "true" : "false"));
        if (L.has_value() || !all_tangent) {
            ok = false;
            v.falsified = true; // a smooth plane-filling curve admitting a
                                // transverse line contradicts the tangency
                                // mechanism
        }
    }
    v.pass = ok;
    finish_verdict(res, v);
    return res;
}

ExperimentResult plane_filling_search(const FieldCtx& F, std::uint64_t budget,
                                      std::uint64_t seed) {
    if (F.q() > 1024)
        raise(errc::size_cap_exceeded, "plane-filling search is desk-scale only (q <= 1024)");
    const int d = static_cast<int>(F.q()) + 2;

    ExperimentResult res;
    res.spec = {ExperimentKind::PlaneFillingSearch, F.p(), F.m(), {}, 0, 0, seed, budget,
                kDefaultMaxDegree};
    const auto basis = vanishing_system(F, d);
    res.notes.push_back("searching degree " + std::to_string(d) + " forms through all " +
                        u64s(F.q() * F.q() + F.q() + 1) + " rational points, system dimension " +
                        u64s(basis.size()));
    if (basis.empty()) {
        res.notes.push_back("empty linear system, nothing to search");
        return res;
    }

    std::mt19937_64 rng(seed);
    for (std::uint64_t it = 0; it < budget; ++it) {
        TernaryForm f(F, d);
        bool nonzero = false;
        for (const auto& b : basis) {
            const rep_t c = static_cast<rep_t>(uniform_below(rng, F.q()));
            if (c == 0) continue;
            nonzero = true;
            for (const auto& term : b.terms())
                f.set_coeff(static_cast<int>(term[0]), static_cast<int>(term[1]),
                            F.add(f.coeff(static_cast<int>(term[0]), static_cast<int>(term[1])),
                                  F.mul(c, term[3])));
        }
        if (!nonzero) continue;
        try {
            PlaneCurve C{f};
            if (!C.is_smooth()) continue;
            res.notes.push_back("smooth plane-filling curve found after " + u64s(it + 1) +
                                " candidates");
            ExperimentResult checked = plane_filling_check(C);
            CurveVerdict v = std::move(checked.verdicts[0]);
            v.seed = seed;
            v.rejections = it;
            finish_verdict(res, v);
            return res;
        } catch (const error& e) {
            if (e.code() == errc::zero_form || e.code() == errc::size_cap_exceeded ||
                e.code() == errc::coordinate_change_exhausted)
                continue;
            throw;
        }
    }
    res.notes.push_back("no smooth plane-filling curve found within budget " + u64s(budget));
    return res;
}

} // namespace goodline
