#include "goodline/incidence.hpp"

#include <algorithm>
#include <numeric>

namespace goodline {

namespace {

using rep_t = FieldCtx::rep_t;

const FieldCtx* try_extension(const FieldCtx& K, std::uint64_t e) {
    const std::uint64_t cap = FieldCtx::size_cap();
    std::uint64_t qe = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (qe > cap / K.q()) return nullptr;
        qe *= K.q();
    }
    return &FieldCtx::get(K.p(), K.m() * static_cast<std::uint32_t>(e));
}

/// Truncated power series in t over an interned field.
struct Series {
    const FieldCtx* F;
    std::vector<rep_t> c;
    Series(const FieldCtx& f, std::size_t n) : F(&f), c(n, 0) {}
};

Series smul(const Series& a, const Series& b) {
    Series r(*a.F, a.c.size());
    const FieldCtx& F = *a.F;
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j + i < b.c.size(); ++j)
            r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
    }
    return r;
}

Series ssub(const Series& a, const Series& b) {
    Series r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.F->sub(a.c[i], b.c[i]);
    return r;
}

void saxpy(Series& dst, rep_t s, const Series& a) {
    if (s == 0) return;
    for (std::size_t i = 0; i < dst.c.size(); ++i)
        dst.c[i] = dst.F->add(dst.c[i], dst.F->mul(s, a.c[i]));
}

Series sinv(const Series& a) {
    const FieldCtx& F = *a.F;
    Series r(F, a.c.size());
    rep_t i0 = F.inv(a.c[0]);
    r.c[0] = i0;
    for (std::size_t k = 1; k < a.c.size(); ++k) {
        rep_t acc = 0;
        for (std::size_t j = 1; j <= k; ++j) acc = F.add(acc, F.mul(a.c[j], r.c[k - j]));
        r.c[k] = F.neg(F.mul(i0, acc));
    }
    return r;
}

/// H with the chart variable set to 1 and the parameter variable set to
/// P_param + t, written as a polynomial in the solved variable whose
/// coefficients are truncated series in t.
std::vector<Series> variable_slices(const TernaryForm& H, int param, int solved, rep_t p_par,
                                    std::size_t n) {
    const FieldCtx& E = H.field();
    const int dH = H.degree();
    std::vector<Series> out(static_cast<std::size_t>(dH) + 1, Series(E, n));
    std::vector<Series> pw;
    pw.reserve(static_cast<std::size_t>(dH) + 1);
    Series one(E, n);
    one.c[0] = 1;
    pw.push_back(one);
    Series lin(E, n);
    lin.c[0] = p_par;
    if (n > 1) lin.c[1] = 1;
    for (int k = 1; k <= dH; ++k) pw.push_back(smul(pw.back(), lin));
    for (const auto& t : H.terms()) {
        const std::array<std::uint32_t, 3> ex = {t[0], t[1], t[2]};
        saxpy(out[ex[static_cast<std::size_t>(solved)]], t[3],
              pw[ex[static_cast<std::size_t>(param)]]);
    }
    return out;
}

/// v_P(G restricted to the branch of F through P), for F smooth at P. The
/// branch is parameterized by Newton iteration in E[[t]] after picking an
/// affine chart and a direction transverse at P; Euler's identity guarantees
/// one of the two affine partials is nonzero at a smooth point.
std::uint64_t local_multiplicity(const TernaryForm& F, const TernaryForm& G,
                                 std::array<rep_t, 3> P, std::size_t n) {
    const FieldCtx& E = F.field();
    if (n < 2) n = 2;
    const int chart = P[0] != 0 ? 0 : (P[1] != 0 ? 1 : 2);
    const rep_t sc = E.inv(P[static_cast<std::size_t>(chart)]);
    for (auto& v : P) v = E.mul(v, sc);
    const int u = chart == 0 ? 1 : 0;
    const int v = chart == 2 ? 1 : 2;
    const auto pF = partials(F);
    int solved = v, param = u;
    if (pF[static_cast<std::size_t>(v)].eval(P[0], P[1], P[2]) == 0) {
        solved = u;
        param = v;
    }
    if (pF[static_cast<std::size_t>(solved)].eval(P[0], P[1], P[2]) == 0)
        raise(errc::internal, "no transverse direction at a smooth point");

    const rep_t p_par = P[static_cast<std::size_t>(param)];
    const auto fs = variable_slices(F, param, solved, p_par, n);
    const auto gs = variable_slices(G, param, solved, p_par, n);

    Series w(E, n);
    w.c[0] = P[static_cast<std::size_t>(solved)];
    std::size_t iters = 1;
    while ((std::size_t{1} << iters) < n) ++iters;
    ++iters;
    std::vector<Series> wp;
    auto build_powers = [&](std::size_t top) {
        wp.assign(1, Series(E, n));
        wp[0].c[0] = 1;
        for (std::size_t k = 1; k <= top; ++k) wp.push_back(smul(wp.back(), w));
    };
    const std::size_t dF = fs.size() - 1, dG = gs.size() - 1;
    auto combine = [&](const std::vector<Series>& hs) {
        Series acc(E, n);
        for (std::size_t k = 0; k < hs.size(); ++k) saxpy(acc, 1, smul(hs[k], wp[k]));
        return acc;
    };
    for (std::size_t it = 0; it < iters; ++it) {
        build_powers(dF);
        Series fval = combine(fs);
        Series fder(E, n);
        for (std::size_t k = 1; k <= dF; ++k)
            saxpy(fder, E.from_int(static_cast<std::int64_t>(k)), smul(fs[k], wp[k - 1]));
        if (fder.c[0] == 0) raise(errc::internal, "branch parameterization lost its slope");
        w = ssub(w, smul(fval, sinv(fder)));
    }
    build_powers(std::max(dF, dG));
    for (rep_t cv : combine(fs).c)
        if (cv != 0) raise(errc::internal, "branch parameterization did not converge");
    Series gval = combine(gs);
    for (std::size_t i = 0; i < n; ++i)
        if (gval.c[i] != 0) return i;
    raise(errc::internal, "local multiplicity exceeds its precision bound");
}

Poly squarefree_part(const Poly& f) {
    Poly r = Poly::constant(f.field(), 1);
    for (const auto& [piece, mult] : squarefree_decomposition(f)) r = r * piece;
    return r;
}

bool least_in_orbit(const FieldCtx& E, rep_t a, std::uint32_t steps) {
    rep_t b = E.frobenius(a, steps);
    while (b != a) {
        if (b < a) return false;
        b = E.frobenius(b, steps);
    }
    return true;
}

/// Resolve one fiber of the incidence divisor over the projection point
/// (a0 : b0) defined over E = GF(q^e); mult is the multiplicity of that root
/// of the resultant, i.e. the sum of the local intersection numbers in the
/// fiber. Returns false when a needed extension exceeds the field cap.
bool process_fiber(const FieldCtx& K, std::map<std::pair<std::uint64_t, std::uint64_t>,
                                               std::uint64_t>& acc,
                   const TernaryForm& Fe, const TernaryForm& Ge, const FieldCtx& E,
                   std::uint64_t e, rep_t a0, rep_t b0, std::uint64_t mult) {
    Poly f = Fe.specialize_xy(a0, b0);
    Poly g = Ge.specialize_xy(a0, b0);
    Poly w = squarefree_part(gcd(f, g));
    if (w.deg() < 1) raise(errc::internal, "resultant root without a fiber point");
    if (w.deg() == 1) {
        acc[{e, mult}] += e; // one closed point, Galois orbit of size e
        return true;
    }
    if (is_irreducible(w)) {
        const std::uint64_t e2 = static_cast<std::uint64_t>(w.deg());
        if (mult % e2 != 0) raise(errc::internal, "indivisible fiber multiplicity");
        acc[{e * e2, mult / e2}] += e * e2;
        return true;
    }
    // Mixed fiber: several closed points share this projection, so the
    // resultant multiplicity has to be split by branch-local valuations.
    std::uint64_t fiber_sum = 0;
    for (const auto& [e2, prod] : distinct_degree_factorization(w)) {
        const FieldCtx* E2p = try_extension(K, e * e2);
        if (E2p == nullptr) return false;
        const FieldCtx& E2 = *E2p;
        TernaryForm F2 = Fe, G2 = Ge;
        Poly prod2 = prod;
        rep_t a2 = a0, b2 = b0;
        if (&E2 != &E) {
            const Embedding& up = Embedding::get(E, E2);
            F2 = Fe.lift(up);
            G2 = Ge.lift(up);
            prod2 = prod.lift(up);
            a2 = up.map(a0);
            b2 = up.map(b0);
        }
        for (rep_t z0 : find_roots(prod2)) {
            if (!least_in_orbit(E2, z0, E.m())) continue;
            const std::uint64_t I =
                local_multiplicity(F2, G2, {a2, b2, z0}, static_cast<std::size_t>(mult) + 1);
            acc[{e * e2, I}] += e * e2;
            fiber_sum += e2 * I;
        }
    }
    if (fiber_sum != mult) raise(errc::internal, "fiber multiplicities do not sum");
    return true;
}

std::uint64_t plane_line_count(const FieldCtx& F) { return F.q() * F.q() + F.q() + 1; }

} // namespace

const char* line_class_name(LineClass c) {
    switch (c) {
    case LineClass::Transverse: return "Transverse";
    case LineClass::RationalTangent: return "RationalTangent";
    default: return "SpecialTangent";
    }
}

std::string profile_to_string(const IntersectionProfile& p) {
    std::string out;
    for (const auto& en : p.entries) {
        if (!out.empty()) out += "+";
        out += "(" + std::to_string(en.e) + "," + std::to_string(en.m) + ")x" +
               std::to_string(en.count);
    }
    return out.empty() ? "-" : out;
}

LineReport classify_line(const PlaneCurve& C, const ProjLine& L) {
    BinaryForm r = restrict_to_line(C.form(), L);
    if (r.is_zero()) raise(errc::curve_contains_line, "the line lies on the curve");
    LineReport rep{L, LineClass::Transverse, factor_profile(r), {}};
    auto [A, B] = line_basis(L);
    if (r.infinity_multiplicity() > 0)
        rep.rational_points.push_back({A, static_cast<std::uint64_t>(r.infinity_multiplicity())});
    std::map<rep_t, std::uint64_t> by_parameter;
    for (const auto& [piece, mult] : squarefree_decomposition(r.dehomogenized()))
        for (rep_t a : find_roots(piece)) by_parameter[a] = mult;
    for (const auto& [a, mult] : by_parameter)
        rep.rational_points.push_back({point_on_line(L, a, 1), mult});
    if (rep.profile.has_rational_tangency())
        rep.cls = LineClass::RationalTangent;
    else if (rep.profile.has_tangency())
        rep.cls = LineClass::SpecialTangent;
    return rep;
}

std::optional<ProjLine> find_good_line(const PlaneCurve& C) {
    const FieldCtx& F = C.field();
    const std::uint64_t n = plane_line_count(F);
    for (std::uint64_t i = 0; i < n; ++i) {
        ProjLine L = line_at(F, i);
        BinaryForm r = restrict_to_line(C.form(), L);
        if (r.is_zero()) continue;
        if (factor_profile(r).all_simple()) return L;
    }
    return std::nullopt;
}

CensusReport tangent_census(const PlaneCurve& C) {
    const FieldCtx& F = C.field();
    CensusReport rep;
    rep.lines_total = plane_line_count(F);
    rep.lines.reserve(rep.lines_total);
    for (std::uint64_t i = 0; i < rep.lines_total; ++i) {
        LineReport lr = classify_line(C, line_at(F, i));
        switch (lr.cls) {
        case LineClass::Transverse: ++rep.transverse; break;
        case LineClass::RationalTangent: ++rep.rational_tangent; break;
        case LineClass::SpecialTangent: ++rep.special_tangent; break;
        }
        ++rep.profile_histogram[static_cast<int>(lr.cls)][profile_to_string(lr.profile)];
        if (!rep.good_line && lr.cls == LineClass::Transverse) rep.good_line = lr.line;
        rep.lines.push_back(std::move(lr));
    }
    return rep;
}

FrobeniusProfile frobenius_incidence(const PlaneCurve& C) {
    if (!C.is_smooth())
        raise(errc::singular_point, "frobenius_incidence requires a smooth curve");
    if (C.is_frobenius_nonclassical())
        raise(errc::frobenius_non_classical, "the incidence divisor is the whole curve");
    const FieldCtx& K = C.field();
    const std::uint64_t q = K.q();
    const std::uint64_t d = static_cast<std::uint64_t>(C.degree());
    const std::uint64_t total = d * (q + d - 1);
    for (unsigned attempt = 0; attempt < kCoordinateChangeRetries; ++attempt) {
        TernaryForm Fc = attempt == 0
                             ? C.form()
                             : C.form().coordinate_change(coordinate_change_matrix(K, attempt));
        if (!Fc.z_regular()) continue;
        TernaryForm Gc = frobenius_form(Fc);
        BinaryForm R = resultant_eliminate(Fc, Gc, 2);
        if (R.is_zero())
            raise(errc::internal, "classical curve with identically vanishing resultant");

        std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> acc;
        bool undecided = false;
        if (R.infinity_multiplicity() > 0 &&
            !process_fiber(K, acc, Fc, Gc, K, 1, K.one(), K.zero(),
                           static_cast<std::uint64_t>(R.infinity_multiplicity())))
            undecided = true;
        Poly Rd = R.dehomogenized();
        for (const auto& [piece, mult] : squarefree_decomposition(Rd)) {
            if (undecided) break;
            for (const auto& [e, prod] : distinct_degree_factorization(piece)) {
                if (mult == 1) {
                    // a simple root carries exactly one point, rational over
                    // its own residue field
                    acc[{e, 1}] += static_cast<std::uint64_t>(prod.deg());
                    continue;
                }
                const FieldCtx* Ep = try_extension(K, e);
                if (Ep == nullptr) {
                    undecided = true;
                    break;
                }
                const FieldCtx& E = *Ep;
                TernaryForm Fe = Fc, Ge = Gc;
                Poly pe = prod;
                if (e > 1) {
                    const Embedding& emb = Embedding::get(K, E);
                    Fe = Fc.lift(emb);
                    Ge = Gc.lift(emb);
                    pe = prod.lift(emb);
                }
                for (rep_t x0 : find_roots(pe)) {
                    if (!least_in_orbit(E, x0, K.m())) continue;
                    if (!process_fiber(K, acc, Fe, Ge, E, e, x0, E.one(), mult)) {
                        undecided = true;
                        break;
                    }
                }
                if (undecided) break;
            }
        }
        if (undecided) continue;

        FrobeniusProfile prof;
        prof.total_degree = total;
        std::uint64_t weighted = 0;
        for (const auto& [em, pts] : acc) {
            prof.entries.push_back({em.first, em.second, pts});
            weighted += em.second * pts;
            if (em.first == 1) {
                prof.rational_points += pts;
                if (em.second < 2)
                    raise(errc::internal, "rational divisor point with multiplicity one");
            } else {
                prof.n_nonrational += pts;
            }
        }
        if (weighted != total) raise(errc::internal, "incidence divisor degree mismatch");
        if (prof.rational_points != C.rational_points().size())
            raise(errc::internal, "divisor support misses rational curve points");
        prof.n_reading =
            "N counts the distinct non-rational points of the divisor support";
        return prof;
    }
    raise(errc::coordinate_change_exhausted, "frobenius incidence ran out of projections");
}

std::pair<std::uint64_t, ProjLine> collinear_rational_max(const PlaneCurve& C) {
    const FieldCtx& F = C.field();
    const auto& pts = C.rational_points();
    std::uint64_t best = 0;
    ProjLine best_line = line_at(F, 0);
    const std::uint64_t n = plane_line_count(F);
    for (std::uint64_t i = 0; i < n; ++i) {
        ProjLine L = line_at(F, i);
        std::uint64_t cnt = 0;
        for (const ProjPoint& P : pts)
            if (incident(L, P)) ++cnt;
        if (cnt > best) {
            best = cnt;
            best_line = L;
        }
    }
    return {best, best_line};
}

AverageReport average_rational_per_line(const PlaneCurve& C) {
    const FieldCtx& F = C.field();
    const std::uint64_t q = F.q();
    AverageReport rep;
    rep.count_rational = C.rational_points().size();
    rep.num = rep.count_rational * (q + 1); // left unreduced: #C * (q+1)
    rep.den = plane_line_count(F);
    rep.fnc = C.is_frobenius_nonclassical();
    if (rep.fnc) {
        const std::uint64_t d = static_cast<std::uint64_t>(C.degree());
        rep.count_matches_fnc_formula = rep.count_rational == d * (q - d + 2);
        std::uint64_t bn = d * (q + 1 - d), bd = q + 1;
        const std::uint64_t g = std::gcd(bn, bd);
        rep.bound_num = bn / g;
        rep.bound_den = bd / g;
        rep.exceeds_bound = rep.num * rep.bound_den > rep.bound_num * rep.den;
    }
    return rep;
}

} // namespace goodline
