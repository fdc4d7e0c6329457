#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "goodline/experiments.hpp"
#include "goodline/io.hpp"
#include "goodline/rand.hpp"

using namespace goodline;

namespace {

int failures = 0;
std::string fixtures;

std::string fx(const std::string& name) { return read_text_file(fixtures + "/" + name); }

std::string fact_of(const CurveVerdict& v, const std::string& key) {
    for (const auto& f : v.facts)
        if (f.key == key) return f.value;
    return "<missing>";
}

struct Check {
    bool ok = true;
    std::string why;
    void require(bool cond, const std::string& msg) {
        if (!cond && ok) {
            ok = false;
            why = msg;
        }
    }
};

template <typename Body>
void criterion(int n, const char* label, Body body) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    std::printf("criterion %2d: %s (%5lld ms) %s%s%s\n", n, c.ok ? "PASS" : "FAIL",
                static_cast<long long>(ms), label, c.ok ? "" : " -- ", c.ok ? "" : c.why.c_str());
    std::fflush(stdout);
    if (!c.ok) ++failures;
}

std::uint64_t isqrt(std::uint64_t n) {
    std::uint64_t s = 0;
    while ((s + 1) * (s + 1) <= n) ++s;
    return s;
}

// multiplicity of a as a root of sum c[i] s^i, by repeated synthetic division
std::uint64_t root_multiplicity(const FieldCtx& E, std::vector<FieldCtx::rep_t> c,
                                FieldCtx::rep_t a) {
    while (!c.empty() && c.back() == 0) c.pop_back();
    std::uint64_t m = 0;
    while (c.size() > 1) {
        std::vector<FieldCtx::rep_t> q(c.size() - 1, 0);
        FieldCtx::rep_t acc = 0;
        for (std::size_t i = c.size(); i-- > 1;) {
            acc = E.add(E.mul(acc, a), c[i]);
            q[i - 1] = acc;
        }
        if (E.add(E.mul(acc, a), c[0]) != 0) break;
        c = std::move(q);
        ++m;
    }
    return m;
}

// least f with a inside GF(q^f), over the base field K = GF(q)
std::uint32_t exact_degree(const FieldCtx& K, const FieldCtx& E, std::uint32_t e,
                           FieldCtx::rep_t a) {
    for (std::uint32_t f = 1; f < e; ++f) {
        if (e % f != 0) continue;
        const FieldCtx& Kf = FieldCtx::get(K.p(), K.m() * f);
        if (Embedding::get(Kf, E).preimage(a)) return f;
    }
    return e;
}

// census-level invariants shared by criterion 9; throws CurveContainsLine
// for curves with a linear component
bool census_invariants_hold(const PlaneCurve& C) {
    const FieldCtx& K = C.field();
    const std::uint64_t nlines = K.q() * K.q() + K.q() + 1;
    const std::uint64_t d = static_cast<std::uint64_t>(C.degree());
    CensusReport cen = tangent_census(C);
    bool ok = cen.lines_total == nlines && cen.lines.size() == nlines;
    ok = ok && cen.transverse + cen.rational_tangent + cen.special_tangent == nlines;
    std::uint64_t incidence_sum = 0;
    for (const auto& lr : cen.lines) {
        ok = ok && lr.profile.total_degree() == d;
        LineClass expect = lr.profile.all_simple()
                               ? LineClass::Transverse
                               : (lr.profile.has_rational_tangency() ? LineClass::RationalTangent
                                                                     : LineClass::SpecialTangent);
        ok = ok && lr.cls == expect;
        incidence_sum += lr.rational_points.size();
    }
    ok = ok && incidence_sum == C.rational_points().size() * (K.q() + 1);
    if (ok && C.is_smooth() && C.is_frobenius_nonclassical()) {
        for (const auto& lr : cen.lines)
            if (lr.cls == LineClass::Transverse) ok = ok && lr.rational_points.size() == d;
    }
    return ok;
}

TernaryForm random_form(const FieldCtx& F, int d, std::mt19937_64& rng) {
    TernaryForm f(F, d);
    for (int i = 0; i <= d; ++i)
        for (int j = 0; i + j <= d; ++j)
            f.set_coeff(i, j, static_cast<FieldCtx::rep_t>(uniform_below(rng, F.q())));
    return f;
}

} // namespace

int main() {
    const char* fdir = std::getenv("GOODLINE_FIXTURES");
    if (!fdir) {
        std::printf("GOODLINE_FIXTURES is not set\n");
        return 1;
    }
    fixtures = fdir;

    criterion(1, "conic over GF(3): census (9,4,0), divisor degree 8, slack 0", [](Check& c) {
        PlaneCurve C = parse_curve_spec(fx("conic-3.curve"));
        CensusReport cen = tangent_census(C);
        c.require(cen.transverse == 9 && cen.rational_tangent == 4 && cen.special_tangent == 0,
                  "census is not (9,4,0)");
        c.require(C.rational_points().size() == 4, "#C(F_3) != 4");
        FrobeniusProfile p = frobenius_incidence(C);
        c.require(p.total_degree == 8, "divisor degree != 8");
        c.require(p.n_nonrational == 0, "N != 0");
        const std::uint64_t lhs = 2 * p.rational_points + p.n_nonrational;
        c.require(lhs == 8 && lhs <= p.total_degree, "2#C + N != 8");
    });

    criterion(2, "Hermitian over GF(9): count, classes, contact order, average", [](Check& c) {
        PlaneCurve H = hermitian_family(3, 2);
        const std::uint64_t q = H.field().q(), d = 4;
        c.require(H.rational_points().size() == d * (q - d + 2), "#C(F_9) != d(q-d+2)");
        c.require(H.rational_points().size() == 28, "#C(F_9) != 28");
        c.require(H.is_frobenius_nonclassical(), "not Frobenius-nonclassical");
        c.require(!H.is_reflexive(), "reflexive");
        CensusReport cen = tangent_census(H);
        c.require(cen.transverse == 63 && cen.rational_tangent == 28 && cen.special_tangent == 0,
                  "census is not (63,28,0)");
        c.require(collinear_rational_max(H).first == d, "collinear max != d");
        ContactReport ct = H.generic_contact_order();
        c.require(ct.q_prime == 3, "q' != 3");
        const std::uint64_t lower = isqrt(q) + 1;
        const std::uint64_t upper = (q - 1) / (ct.q_prime - 1);
        c.require(lower == 4 && upper == 4 && lower == d && d == upper,
                  "degree bounds are not 4 <= 4 <= 4");
        AverageReport avg = average_rational_per_line(H);
        c.require(avg.num == 280 && avg.den == 91, "average != 280/91");
        c.require(avg.bound_num == 12 && avg.bound_den == 5, "bound != 12/5");
        c.require(avg.exceeds_bound && avg.num * avg.bound_den > avg.bound_num * avg.den,
                  "average does not exceed the bound");
    });

    criterion(3, "Hermitian over GF(25): 126 rational points", [](Check& c) {
        PlaneCurve H = hermitian_family(5, 2);
        c.require(H.degree() == 6, "degree != 6");
        c.require(H.rational_points().size() == 126, "#C(F_25) != 126");
        c.require(126 == 6 * 21 && 126 == 125 + 1, "126 decompositions are off");
    });

    criterion(4, "Pardini quartic over GF(9): dual degree 4 and a two-point line", [](Check& c) {
        PlaneCurve P = parse_curve_spec(fx("pardini-9.curve"));
        c.require(P.is_smooth(), "not smooth");
        c.require(!P.is_reflexive(), "reflexive");
        c.require(P.dual_degree() == 4, "dual degree != 4");
        c.require(find_good_line(P).has_value(), "no good line");
        CensusReport cen = tangent_census(P);
        bool two_point_line = false;
        for (const auto& lr : cen.lines)
            if (lr.cls == LineClass::Transverse && lr.rational_points.size() >= 2)
                two_point_line = true;
        c.require(two_point_line, "no transverse line through two rational points");
    });

    criterion(5, "reflexive suite: 50 curves over GF(5), 20 of degree 8 over GF(7)",
              [](Check& c) {
                  ExperimentResult r5 =
                      verify_bertini_reflexive(FieldCtx::get(5, 1), {3, 4, 5, 6}, 50, 101);
                  c.require(r5.verdicts.size() == 50 && r5.passed == 50 && r5.falsified == 0,
                            "GF(5) suite had failures");
                  for (const auto& v : r5.verdicts)
                      c.require(fact_of(v, "good_line") != "none", "GF(5) verdict without a line");
                  ExperimentResult r7 =
                      verify_bertini_reflexive(FieldCtx::get(7, 1), {8}, 20, 202);
                  c.require(r7.verdicts.size() == 20 && r7.passed == 20 && r7.falsified == 0,
                            "GF(7) suite had failures");
                  for (const auto& v : r7.verdicts)
                      c.require(fact_of(v, "good_line") != "none", "GF(7) verdict without a line");
              });

    criterion(6, "degree-7 Pardini suite over GF(9): good lines and tangency structure",
              [](Check& c) {
                  ExperimentResult r = verify_bertini_nonreflexive(3, 2, 2, 20, 303);
                  c.require(r.verdicts.size() == 20 && r.passed == 20 && r.falsified == 0,
                            "suite had failures");
                  for (const auto& v : r.verdicts)
                      c.require(fact_of(v, "good_line") != "none", "verdict without a line");
                  // audit the census structure directly on the first three curves
                  for (std::size_t i = 0; i < 3 && i < r.verdicts.size(); ++i) {
                      PlaneCurve C = parse_curve_spec(r.verdicts[i].curve);
                      CensusReport cen = tangent_census(C);
                      for (const auto& lr : cen.lines) {
                          if (lr.cls == LineClass::RationalTangent)
                              c.require(lr.rational_points.size() <= 5,
                                        "rational tangent with more than 5 rational points");
                          if (lr.cls == LineClass::SpecialTangent) {
                              const auto& en = lr.profile.entries;
                              c.require(en.size() == 2 && en[0].e == 1 && en[0].m == 1 &&
                                            en[0].count == 1 && en[1].e == 2 && en[1].m >= 3 &&
                                            en[1].count == 1,
                                        "special tangent profile is not (1,1)+(2,>=3)");
                          }
                      }
                  }
              });

    criterion(7, "Fermat cubic over GF(7): 9 points, 9 flexes, bound 18 <= 27", [](Check& c) {
        PlaneCurve C = parse_curve_spec(fx("fermat3-7.curve"));
        c.require(C.rational_points().size() == 9, "#C(F_7) != 9");
        c.require(C.is_reflexive(), "not reflexive");
        c.require(C.rational_flexes().size() == 9, "flex count != 9");
        ExperimentResult s = svb_check(C);
        c.require(s.passed == 1 && !s.any_falsified(), "svb-check failed");
        FrobeniusProfile p = frobenius_incidence(C);
        const std::uint64_t lhs = 2 * p.rational_points + p.n_nonrational;
        c.require(lhs == 18 && p.total_degree == 27 && lhs <= 27, "sides are not 18 <= 27");
    });

    criterion(8, "factor profiles match brute-force roots on 100 random pairs", [](Check& c) {
        std::mt19937_64 rng(8080);
        std::uint64_t done = 0, mismatches = 0;
        for (std::uint32_t base : {3u, 5u}) {
            const FieldCtx& K = FieldCtx::get(base, 1);
            const std::uint64_t nlines = K.q() * K.q() + K.q() + 1;
            for (int i = 0; i < 50; ++i) {
                const int d = 2 + (i % 4);
                TernaryForm f(K, d);
                BinaryForm rb(K, d);
                for (;;) {
                    f = random_form(K, d, rng);
                    if (f.is_zero()) continue;
                    ProjLine L = line_at(K, uniform_below(rng, nlines));
                    rb = restrict_to_line(f, L);
                    if (!rb.is_zero()) break;
                }
                std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> brute, lib;
                const auto& cb = rb.coeffs();
                std::size_t top = cb.size();
                while (top > 0 && cb[top - 1] == 0) --top;
                if (cb.size() - top > 0) brute[{1, cb.size() - top}] += 1; // the root [1:0]
                for (std::uint32_t e = 1; e <= 4; ++e) {
                    const FieldCtx& E = FieldCtx::get(K.p(), e);
                    std::vector<FieldCtx::rep_t> ce(cb.begin(), cb.end());
                    if (e > 1) {
                        const Embedding& up = Embedding::get(K, E);
                        for (auto& v : ce) v = up.map(v);
                    }
                    for (FieldCtx::rep_t a = 0; a < E.q(); ++a) {
                        if (exact_degree(K, E, e, a) != e) continue;
                        std::uint64_t m = root_multiplicity(E, ce, a);
                        if (m > 0) brute[{e, m}] += 1;
                    }
                }
                for (const auto& en : factor_profile(rb).entries)
                    if (en.e <= 4) lib[{en.e, en.m}] += en.count * en.e;
                if (brute != lib) ++mismatches;
                ++done;
            }
        }
        c.require(done == 100, "did not reach 100 pairs");
        c.require(mismatches == 0, "profile/brute-force mismatches: " + std::to_string(mismatches));
    });

    criterion(9, "census invariants over all fixtures and 100 random curves", [](Check& c) {
        std::uint64_t audited = 0, violations = 0;
        json manifest = json::parse(fx("manifest.json"))["fixtures"];
        for (const auto& entry : manifest) {
            PlaneCurve C = parse_curve_spec(fx(entry["file"].get<std::string>()));
            if (!census_invariants_hold(C)) ++violations;
            ++audited;
        }
        c.require(audited >= 7, "fewer than 7 fixtures");
        std::mt19937_64 rng(9090);
        struct Pick {
            std::uint32_t p, r;
            int n;
        };
        for (Pick pick : {Pick{3, 1, 40}, Pick{5, 1, 40}, Pick{3, 2, 20}}) {
            const FieldCtx& K = FieldCtx::get(pick.p, pick.r);
            for (int i = 0; i < pick.n;) {
                TernaryForm f = random_form(K, 2 + (i % 4), rng);
                if (f.is_zero()) continue;
                try {
                    if (!census_invariants_hold(PlaneCurve(f))) ++violations;
                } catch (const error& e) {
                    if (e.code() != errc::curve_contains_line) throw;
                    continue; // reducible draw; take another
                }
                ++audited;
                ++i;
            }
        }
        c.require(audited == manifest.size() + 100, "audited curve count is off");
        c.require(violations == 0, std::to_string(violations) + " invariant violations");
    });

    criterion(10, "CLI determinism: identical flags give identical output files", [](Check& c) {
        const char* cli = std::getenv("GOODLINE_CLI");
        c.require(cli != nullptr, "GOODLINE_CLI is not set");
        if (!cli) return;
        auto run_once = [&](const std::string& args, const std::string& out) {
            std::string cmd = std::string(cli) + " " + args + " --out " + out +
                              " > acc_cli.out 2> acc_cli.err";
            return std::system(cmd.c_str());
        };
        const std::vector<std::string> runs = {
            "analyze --curve " + fixtures + "/conic-3.curve",
            "analyze --curve " + fixtures + "/filling-3.curve --format md",
            "analyze --pardini 1 --p 3 --r 2 --seed 4",
            "census --curve " + fixtures + "/hermitian-9.curve --format csv",
            "census --curve " + fixtures + "/conic-3.curve",
            "good-line --curve " + fixtures + "/pardini-9.curve",
            "frobenius --curve " + fixtures + "/fermat3-7.curve",
            "fnc-report --hermitian 3 2",
            "svb-check --curve " + fixtures + "/conic-3.curve --format md",
            "verify-reflexive --p 5 --degrees 3,4 --samples 4 --seed 11",
            "verify-nonreflexive --p 3 --r 2 --t 1 --samples 1 --seed 7",
            "search-plane-filling --p 3 --budget 80 --seed 1",
        };
        for (const auto& args : runs) {
            int s1 = run_once(args, "acc_out_a.txt");
            int s2 = run_once(args, "acc_out_b.txt");
            c.require(s1 == 0 && s2 == 0, "nonzero exit: " + args);
            if (s1 != 0 || s2 != 0) continue;
            std::string a = read_text_file("acc_out_a.txt");
            std::string b = read_text_file("acc_out_b.txt");
            c.require(!a.empty() && a == b, "output differs: " + args);
        }
        for (const char* f : {"acc_out_a.txt", "acc_out_b.txt", "acc_cli.out", "acc_cli.err"})
            std::remove(f);
    });

    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
