#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "goodline/curve.hpp"
#include "goodline/rand.hpp"

using namespace goodline;
using rep_t = FieldCtx::rep_t;

namespace {

struct Term {
    int i, j, k;
    std::int64_t c;
};

TernaryForm tform(const FieldCtx& F, int d, std::initializer_list<Term> terms) {
    TernaryForm r(F, d);
    for (const auto& t : terms) r.set_coeff(t.i, t.j, F.add(r.coeff(t.i, t.j), F.from_int(t.c)));
    return r;
}

TernaryForm random_ternary(const FieldCtx& F, int d, std::mt19937_64& rng) {
    TernaryForm r(F, d);
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d - i; ++j)
            r.set_coeff(i, j, static_cast<rep_t>(uniform_below(rng, F.q())));
    return r;
}

TernaryForm fermat(const FieldCtx& F, int d) {
    return tform(F, d, {{d, 0, 0, 1}, {0, d, 0, 1}, {0, 0, d, 1}});
}

// Singular points of F over GF(q^e) found by direct evaluation, in canonical
// order: gradient and form all vanish.
std::vector<ProjPoint> brute_singular(const TernaryForm& F, std::uint32_t e) {
    const FieldCtx& K = F.field();
    const FieldCtx& E = FieldCtx::get(K.p(), K.m() * e);
    TernaryForm Fe = F;
    auto pe = partials(F);
    if (e > 1) {
        const Embedding& emb = Embedding::get(K, E);
        Fe = F.lift(emb);
        pe = {pe[0].lift(emb), pe[1].lift(emb), pe[2].lift(emb)};
    }
    std::vector<ProjPoint> out;
    for (const ProjPoint& P : all_points(E)) {
        if (Fe.eval(P.c[0], P.c[1], P.c[2]) != 0) continue;
        bool sing = true;
        for (const auto& D : pe)
            if (D.eval(P.c[0], P.c[1], P.c[2]) != 0) {
                sing = false;
                break;
            }
        if (sing) out.push_back(P);
    }
    return out;
}

std::uint64_t brute_count(const TernaryForm& F, std::uint32_t e) {
    const FieldCtx& K = F.field();
    const FieldCtx& E = FieldCtx::get(K.p(), K.m() * e);
    TernaryForm Fe = e == 1 ? F : F.lift(Embedding::get(K, E));
    std::uint64_t n = 0;
    for (const ProjPoint& P : all_points(E))
        if (Fe.eval(P.c[0], P.c[1], P.c[2]) == 0) ++n;
    return n;
}

} // namespace

TEST_CASE("curve constructor rejects degenerate forms") {
    const FieldCtx& F = FieldCtx::get(3, 1);
    CHECK_THROWS_AS(PlaneCurve(TernaryForm(F, 2)), error);
    try {
        PlaneCurve(TernaryForm(F, 2));
    } catch (const error& e) {
        CHECK(e.code() == errc::zero_form);
    }
    try {
        PlaneCurve(TernaryForm::monomial(F, 2, 0, 0, 0));
    } catch (const error& e) {
        CHECK(e.code() == errc::degree_mismatch);
    }
}

TEST_CASE("smoothness of the worked examples") {
    const FieldCtx& F9 = FieldCtx::get(3, 2);
    const FieldCtx& F5 = FieldCtx::get(5, 1);

    PlaneCurve hermitian(fermat(F9, 4));
    CHECK(hermitian.is_smooth());
    CHECK(!hermitian.singular_witness().has_value());

    PlaneCurve pardini(tform(F9, 4, {{1, 3, 0, 1}, {0, 1, 3, 1}, {3, 0, 1, 1}}));
    CHECK(pardini.is_smooth());

    PlaneCurve triangle(tform(F5, 3, {{1, 1, 1, 1}}));
    CHECK(!triangle.is_smooth());
    auto w = triangle.singular_witness();
    REQUIRE(w.has_value());
    CHECK(w->e == 1);
    CHECK(w->point == ProjPoint::make(F5, 1, 0, 0));
}

TEST_CASE("smoothness of further hand-checked forms") {
    const FieldCtx& F3 = FieldCtx::get(3, 1);
    const FieldCtx& F7 = FieldCtx::get(7, 1);

    CHECK(PlaneCurve(fermat(F3, 2)).is_smooth());
    CHECK(PlaneCurve(fermat(F7, 3)).is_smooth());
    CHECK(PlaneCurve(tform(F3, 1, {{1, 0, 0, 1}, {0, 1, 0, 2}})).is_smooth());

    // x^4 over GF(3): the whole line x = 0 is singular, [0:1:0] comes first.
    PlaneCurve quad(tform(F3, 4, {{4, 0, 0, 1}}));
    CHECK(!quad.is_smooth());
    auto w = quad.singular_witness();
    REQUIRE(w.has_value());
    CHECK(w->e == 1);
    CHECK(w->point == ProjPoint::make(F3, 0, 1, 0));

    // (x + y + z)^3 over GF(3) is a cube: every partial vanishes identically.
    TernaryForm line = tform(F3, 1, {{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}});
    PlaneCurve cube(line * line * line);
    auto pc = partials(cube.form());
    CHECK(pc[0].is_zero());
    CHECK(pc[1].is_zero());
    CHECK(pc[2].is_zero());
    CHECK(!cube.is_smooth());
    auto wc = cube.singular_witness();
    REQUIRE(wc.has_value());
    CHECK(wc->e == 1);
    CHECK(wc->point == ProjPoint::make(F3, 1, 0, 2));
}

TEST_CASE("smoothness agrees with a brute-force scan on random curves") {
    std::mt19937_64 rng(0x5EED);
    for (const auto& [p, m] : {std::pair{3u, 1u}, {5u, 1u}, {3u, 2u}}) {
        const FieldCtx& F = FieldCtx::get(p, m);
        for (int trial = 0; trial < 40; ++trial) {
            int d = 2 + static_cast<int>(uniform_below(rng, 3));
            TernaryForm f = random_ternary(F, d, rng);
            if (f.is_zero()) continue;
            PlaneCurve C(f);
            std::vector<ProjPoint> s1 = brute_singular(f, 1);
            if (C.is_smooth()) {
                CHECK(s1.empty());
                CHECK(brute_singular(f, 2).empty());
            } else {
                auto w = C.singular_witness();
                REQUIRE(w.has_value());
                if (w->e == 1) {
                    REQUIRE(!s1.empty());
                    CHECK(w->point == s1.front());
                } else {
                    CHECK(s1.empty());
                    if (w->e == 2) {
                        auto s2 = brute_singular(f, 2);
                        REQUIRE(!s2.empty());
                        CHECK(w->point == s2.front());
                    }
                }
            }
        }
    }
}

TEST_CASE("tangent lines at rational points") {
    const FieldCtx& F3 = FieldCtx::get(3, 1);
    PlaneCurve conic(fermat(F3, 2));
    ProjPoint P = ProjPoint::make(F3, 1, 1, 1);
    ProjLine T = conic.tangent_line(P);
    CHECK(T == ProjLine::make(F3, 1, 1, 1));
    CHECK(incident(T, P));
    CHECK(restrict_to_line(conic.form(), T).infinity_multiplicity() == 0);

    CHECK_THROWS_AS(conic.tangent_line(ProjPoint::make(F3, 1, 0, 0)), error);
    try {
        conic.tangent_line(ProjPoint::make(F3, 1, 0, 0));
    } catch (const error& e) {
        CHECK(e.code() == errc::point_not_on_curve);
    }

    // Tangency: the restriction to the tangent vanishes doubly at P, while a
    // generic line through P meets simply there.
    for (const ProjPoint& Q : conic.rational_points()) {
        ProjLine TQ = conic.tangent_line(Q);
        auto [A, B] = line_basis(TQ);
        BinaryForm r = conic.form().restrict(Q.c, (A == Q ? B : A).c);
        CHECK(r.infinity_multiplicity() >= 2);
    }
}

TEST_CASE("tangent lines on singular curves are a local notion") {
    const FieldCtx& F5 = FieldCtx::get(5, 1);
    PlaneCurve triangle(tform(F5, 3, {{1, 1, 1, 1}})); // xyz
    ProjLine T = triangle.tangent_line(ProjPoint::make(F5, 1, 1, 0));
    CHECK(T == ProjLine::make(F5, 0, 0, 1));
    try {
        triangle.tangent_line(ProjPoint::make(F5, 1, 0, 0));
        CHECK(false);
    } catch (const error& e) {
        CHECK(e.code() == errc::singular_point);
    }
}

TEST_CASE("tangent lines follow points into extensions") {
    const FieldCtx& F9 = FieldCtx::get(3, 2);
    const FieldCtx& F81 = FieldCtx::get(3, 4);
    PlaneCurve hermitian(fermat(F9, 4));
    const Embedding& emb = Embedding::get(F9, F81);
    TernaryForm Fe = hermitian.form().lift(emb);
    std::uint64_t checked = 0;
    for (rep_t y = 0; y < F81.q() && checked < 12; ++y) {
        for (rep_t z : find_roots(Fe.specialize_xy(F81.one(), y))) {
            ProjPoint P = ProjPoint::make(F81, 1, y, z);
            ProjLine T = hermitian.tangent_line(P);
            CHECK(incident(T, P));
            auto [A, B] = line_basis(T);
            CHECK(Fe.restrict(P.c, (A == P ? B : A).c).infinity_multiplicity() >= 2);
            ++checked;
        }
    }
    CHECK(checked >= 12);
}

TEST_CASE("reflexivity of the worked examples") {
    const FieldCtx& F3 = FieldCtx::get(3, 1);
    const FieldCtx& F7 = FieldCtx::get(7, 1);
    const FieldCtx& F9 = FieldCtx::get(3, 2);

    CHECK(PlaneCurve(fermat(F3, 2)).is_reflexive());
    CHECK(PlaneCurve(fermat(F7, 3)).is_reflexive());
    CHECK(!PlaneCurve(fermat(F9, 4)).is_reflexive());
    CHECK(!PlaneCurve(tform(F9, 4, {{1, 3, 0, 1}, {0, 1, 3, 1}, {3, 0, 1, 1}})).is_reflexive());

    PlaneCurve singular(tform(F3, 3, {{1, 1, 1, 1}}));
    try {
        singular.is_reflexive();
        CHECK(false);
    } catch (const error& e) {
        CHECK(e.code() == errc::singular_point);
    }
}

TEST_CASE("frobenius-nonclassical examples and a pointwise oracle") {
    const FieldCtx& F3 = FieldCtx::get(3, 1);
    const FieldCtx& F5 = FieldCtx::get(5, 1);
    const FieldCtx& F9 = FieldCtx::get(3, 2);
    const FieldCtx& F27 = FieldCtx::get(3, 3);

    PlaneCurve hermitian9(fermat(F9, 4));
    PlaneCurve hermitian27(fermat(F27, 13));
    PlaneCurve conic3(fermat(F3, 2));
    PlaneCurve conic5(fermat(F5, 2));
    PlaneCurve pardini(tform(F9, 4, {{1, 3, 0, 1}, {0, 1, 3, 1}, {3, 0, 1, 1}}));

    CHECK(hermitian9.is_frobenius_nonclassical());
    CHECK(hermitian27.is_frobenius_nonclassical());
    CHECK(!conic3.is_frobenius_nonclassical());
    CHECK(!conic5.is_frobenius_nonclassical());
    CHECK(!pardini.is_frobenius_nonclassical());

    // Nonclassical means the image of each point under Frobenius stays on the
    // tangent there; check that pointwise, rational points first.
    for (const ProjPoint& P : hermitian9.rational_points())
        CHECK(incident(hermitian9.tangent_line(P), P.frobenius(F9.m())));
    const FieldCtx& F81 = FieldCtx::get(3, 4);
    TernaryForm He = hermitian9.form().lift(Embedding::get(F9, F81));
    std::uint64_t checked = 0;
    for (rep_t y = 0; y < F81.q() && checked < 15; ++y)
        for (rep_t z : find_roots(He.specialize_xy(F81.one(), y))) {
            ProjPoint P = ProjPoint::make(F81, 1, y, z);
            CHECK(incident(hermitian9.tangent_line(P), P.frobenius(F9.m())));
            ++checked;
        }
    CHECK(checked >= 15);

    bool escaped = false;
    for (const ProjPoint& P : conic5.rational_points()) {
        ProjLine T = conic5.tangent_line(P);
        if (!incident(T, P.frobenius(F5.m()))) escaped = true;
    }
    // over the base field Frobenius fixes P, so look over GF(25)
    const FieldCtx& F25 = FieldCtx::get(5, 2);
    TernaryForm Ce = conic5.form().lift(Embedding::get(F5, F25));
    for (rep_t y = 0; y < F25.q() && !escaped; ++y)
        for (rep_t z : find_roots(Ce.specialize_xy(F25.one(), y))) {
            ProjPoint P = ProjPoint::make(F25, 1, y, z);
            if (!incident(conic5.tangent_line(P), P.frobenius(F5.m()))) {
                escaped = true;
                break;
            }
        }
    CHECK(escaped);

    // Nonclassical forces non-reflexive.
    CHECK(!hermitian9.is_reflexive());
    CHECK(!hermitian27.is_reflexive());
}

TEST_CASE("characteristic divides d(d-1) on the non-reflexive examples") {
    const FieldCtx& F9 = FieldCtx::get(3, 2);
    const FieldCtx& F27 = FieldCtx::get(3, 3);
    for (const PlaneCurve& C :
         {PlaneCurve(fermat(F9, 4)), PlaneCurve(fermat(F27, 13)),
          PlaneCurve(tform(F9, 4, {{1, 3, 0, 1}, {0, 1, 3, 1}, {3, 0, 1, 1}}))}) {
        REQUIRE(!C.is_reflexive());
        CHECK(static_cast<std::uint64_t>(C.degree()) * (C.degree() - 1) % C.field().p() == 0);
    }
}

TEST_CASE("dual degrees") {
    const FieldCtx& F3 = FieldCtx::get(3, 1);
    const FieldCtx& F7 = FieldCtx::get(7, 1);
    const FieldCtx& F9 = FieldCtx::get(3, 2);
    const FieldCtx& F27 = FieldCtx::get(3, 3);
    CHECK(PlaneCurve(fermat(F3, 2)).dual_degree() == 2);
    CHECK(PlaneCurve(fermat(F7, 3)).dual_degree() == 6);
    CHECK(PlaneCurve(fermat(F9, 4)).dual_degree() == 4);
    CHECK(PlaneCurve(tform(F9, 4, {{1, 3, 0, 1}, {0, 1, 3, 1}, {3, 0, 1, 1}})).dual_degree() == 4);
    CHECK(PlaneCurve(fermat(F27, 13)).dual_degree() == 52);
}

TEST_CASE("rational flexes") {
    const FieldCtx& F3 = FieldCtx::get(3, 1);
    const FieldCtx& F7 = FieldCtx::get(7, 1);
    const FieldCtx& F9 = FieldCtx::get(3, 2);

    CHECK(PlaneCurve(fermat(F3, 2)).rational_flexes().empty());

    PlaneCurve cubic(fermat(F7, 3));
    auto flexes = cubic.rational_flexes();
    CHECK(flexes.size() == 9);
    // here the flexes exhaust the rational points, and each has a zero coordinate
    CHECK(flexes == cubic.rational_points());
    for (const ProjPoint& P : flexes)
        CHECK((P.c[0] == 0 || P.c[1] == 0 || P.c[2] == 0));

    try {
        PlaneCurve(fermat(F9, 4)).rational_flexes();
        CHECK(false);
    } catch (const error& e) {
        CHECK(e.code() == errc::non_reflexive);
    }
}

TEST_CASE("generic contact order") {
    const FieldCtx& F5 = FieldCtx::get(5, 1);
    const FieldCtx& F9 = FieldCtx::get(3, 2);

    ContactReport conic = PlaneCurve(fermat(F5, 2)).generic_contact_order();
    CHECK(conic.q_prime == 2);
    CHECK(conic.samples >= 20);
    CHECK(conic.histogram.size() == 1); // a conic meets every tangent exactly twice

    ContactReport hermitian = PlaneCurve(fermat(F9, 4)).generic_contact_order();
    CHECK(hermitian.q_prime == 3);
    CHECK(hermitian.samples >= 20);

    ContactReport pardini =
        PlaneCurve(tform(F9, 4, {{1, 3, 0, 1}, {0, 1, 3, 1}, {3, 0, 1, 1}})).generic_contact_order();
    CHECK(pardini.q_prime == 3);

    ContactReport cubic = PlaneCurve(fermat(FieldCtx::get(7, 1), 3)).generic_contact_order();
    CHECK(cubic.q_prime == 2); // classical reflexive curve
}

TEST_CASE("point counts against brute enumeration") {
    const FieldCtx& F3 = FieldCtx::get(3, 1);
    const FieldCtx& F9 = FieldCtx::get(3, 2);

    PlaneCurve conic(fermat(F3, 2));
    CHECK(conic.count_points(1) == 4);
    CHECK(conic.count_points(2) == 10);
    CHECK(conic.rational_points().size() == 4);

    PlaneCurve hermitian(fermat(F9, 4));
    CHECK(hermitian.count_points(1) == 28);
    CHECK(hermitian.rational_points().size() == 28);

    CHECK(hermitian_family(5, 2).count_points(1) == 126);

    std::mt19937_64 rng(0xC0117);
    for (int trial = 0; trial < 25; ++trial) {
        const FieldCtx& F = trial % 2 == 0 ? F3 : FieldCtx::get(5, 1);
        TernaryForm f = random_ternary(F, 2 + static_cast<int>(uniform_below(rng, 3)), rng);
        if (f.is_zero()) continue;
        PlaneCurve C(f);
        CHECK(C.count_points(1) == brute_count(f, 1));
        CHECK(C.count_points(2) == brute_count(f, 2));
    }
}

TEST_CASE("plane filling") {
    const FieldCtx& F3 = FieldCtx::get(3, 1);
    const FieldCtx& F9 = FieldCtx::get(3, 2);
    CHECK(!PlaneCurve(fermat(F3, 2)).is_plane_filling());
    CHECK(!PlaneCurve(fermat(F9, 4)).is_plane_filling());

    // x y^3 - x^3 y vanishes at every rational point of PG(2,3).
    PlaneCurve filling(tform(F3, 4, {{1, 3, 0, 1}, {3, 1, 0, -1}}));
    CHECK(filling.is_plane_filling());
    CHECK(filling.count_points(1) == 13);
}

TEST_CASE("hermitian family constructor") {
    PlaneCurve h9 = hermitian_family(3, 2);
    CHECK(h9.field().q() == 9);
    CHECK(h9.degree() == 4);
    CHECK(h9.form() == fermat(FieldCtx::get(3, 2), 4));

    PlaneCurve h27 = hermitian_family(3, 3);
    CHECK(h27.field().q() == 27);
    CHECK(h27.degree() == 13);

    PlaneCurve h625 = hermitian_family(9, 2);
    CHECK(h625.field().q() == 81);
    CHECK(h625.degree() == 10);

    for (auto [q0, n, code] :
         {std::tuple<std::uint64_t, std::uint32_t, errc>{4, 2, errc::even_characteristic},
          {6, 2, errc::not_prime},
          {3, 1, errc::degree_mismatch}}) {
        try {
            hermitian_family(q0, n);
            CHECK(false);
        } catch (const error& e) {
            CHECK(e.code() == code);
        }
    }
}

TEST_CASE("pardini forms") {
    const FieldCtx& F3 = FieldCtx::get(3, 1);
    const FieldCtx& F9 = FieldCtx::get(3, 2);

    TernaryForm x = TernaryForm::monomial(F9, 1, 1, 0, 0);
    TernaryForm y = TernaryForm::monomial(F9, 1, 0, 1, 0);
    TernaryForm z = TernaryForm::monomial(F9, 1, 0, 0, 1);
    PlaneCurve quartic = pardini_form(y, z, x);
    CHECK(quartic.degree() == 4);
    CHECK(quartic.form() == tform(F9, 4, {{1, 3, 0, 1}, {0, 1, 3, 1}, {3, 0, 1, 1}}));
    CHECK(quartic.is_smooth());
    CHECK(!quartic.is_reflexive());
    CHECK(quartic.degree() % quartic.field().p() == 1);

    TernaryForm x3 = TernaryForm::monomial(F3, 1, 1, 0, 0);
    PlaneCurve cusp = pardini_form(x3, TernaryForm(F3, 1), TernaryForm(F3, 1));
    CHECK(cusp.degree() == 4);
    CHECK(cusp.form() == TernaryForm::monomial(F3, 1, 4, 0, 0));
    CHECK(!cusp.is_smooth());

    try {
        pardini_form(x, y * z, z);
        CHECK(false);
    } catch (const error& e) {
        CHECK(e.code() == errc::degree_mismatch);
    }
}
