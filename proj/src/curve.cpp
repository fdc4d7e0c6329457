#include "goodline/curve.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "goodline/rand.hpp"

namespace goodline {

namespace {

using rep_t = FieldCtx::rep_t;

/// GF(q^e) when q^e fits the size cap, nullptr otherwise.
const FieldCtx* try_extension(const FieldCtx& K, std::uint64_t e) {
    const std::uint64_t cap = FieldCtx::size_cap();
    std::uint64_t qe = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (qe > cap / K.q()) return nullptr;
        qe *= K.q();
    }
    return &FieldCtx::get(K.p(), K.m() * static_cast<std::uint32_t>(e));
}

/// Common z-roots of F and every nonzero partial above an affine projection
/// point (x0 : y0); a nonconstant gcd certifies a singular point in the fiber.
bool fiber_has_singular_point(const TernaryForm& F, const std::array<TernaryForm, 3>& P,
                              rep_t x0, rep_t y0) {
    Poly u = F.specialize_xy(x0, y0);
    for (const auto& D : P) {
        if (D.is_zero()) continue;
        if (u.deg() < 1) break;
        u = gcd(u, D.specialize_xy(x0, y0));
    }
    return u.deg() >= 1;
}

} // namespace

PlaneCurve::PlaneCurve(TernaryForm F) : F_(std::move(F)) {
    if (F_.is_zero()) raise(errc::zero_form, "a plane curve needs a nonzero form");
    if (F_.degree() < 1) raise(errc::degree_mismatch, "a plane curve needs degree at least 1");
}

bool PlaneCurve::is_smooth() const {
    if (!smooth_) compute_smoothness();
    return *smooth_;
}

void PlaneCurve::compute_smoothness() const {
    const FieldCtx& K = field();
    const auto base_partials = partials(F_);
    if (base_partials[0].is_zero() && base_partials[1].is_zero() && base_partials[2].is_zero()) {
        smooth_ = false; // p-th power: the gradient vanishes along the whole curve
        return;
    }
    for (unsigned attempt = 0; attempt < kCoordinateChangeRetries; ++attempt) {
        TernaryForm Fc =
            attempt == 0 ? F_ : F_.coordinate_change(coordinate_change_matrix(K, attempt));
        if (!Fc.z_regular()) continue;
        const auto pc = partials(Fc);

        std::optional<BinaryForm> g;
        bool shared_component = false;
        for (int i = 0; i < 3 && !shared_component; ++i) {
            if (pc[i].is_zero()) continue;
            BinaryForm R = resultant_eliminate(Fc, pc[i], 2);
            if (R.is_zero()) {
                // F shares a component with a partial, so F is reducible or
                // non-squarefree; any two components of a plane curve meet.
                shared_component = true;
            } else {
                g = g ? gcd(*g, R) : R;
            }
        }
        if (shared_component) {
            smooth_ = false;
            return;
        }
        if (g->degree() == 0) {
            smooth_ = true;
            return;
        }

        bool singular = false;
        bool undecided = false;
        if (g->infinity_multiplicity() > 0 &&
            fiber_has_singular_point(Fc, pc, K.one(), K.zero()))
            singular = true;
        Poly gd = g->dehomogenized();
        if (!singular && gd.deg() >= 1) {
            for (const auto& [piece, mult] : squarefree_decomposition(gd)) {
                for (const auto& [e, prod] : distinct_degree_factorization(piece)) {
                    const FieldCtx* Ep = try_extension(K, e);
                    if (Ep == nullptr) {
                        undecided = true; // candidate beyond the cap; retry the projection
                        continue;
                    }
                    if (e == 1) {
                        for (rep_t x0 : find_roots(prod))
                            if (fiber_has_singular_point(Fc, pc, x0, K.one())) {
                                singular = true;
                                break;
                            }
                    } else {
                        const Embedding& emb = Embedding::get(K, *Ep);
                        TernaryForm Fe = Fc.lift(emb);
                        std::array<TernaryForm, 3> pe = {pc[0].lift(emb), pc[1].lift(emb),
                                                         pc[2].lift(emb)};
                        for (rep_t x0 : find_roots(prod.lift(emb)))
                            if (fiber_has_singular_point(Fe, pe, x0, Ep->one())) {
                                singular = true;
                                break;
                            }
                    }
                    if (singular) break;
                }
                if (singular) break;
            }
        }
        if (singular) {
            smooth_ = false;
            return;
        }
        if (!undecided) {
            smooth_ = true;
            return;
        }
    }
    // A curve through every rational point (plane-filling, say) defeats all
    // rational projections: the z-leading coefficient after a coordinate
    // change is a value of F at a rational point. Smoothness is geometric,
    // so decide it over a quadratic extension instead.
    if (const FieldCtx* E2 = try_extension(K, 2)) {
        const Embedding& up = Embedding::get(K, *E2);
        PlaneCurve lifted{F_.lift(up)};
        smooth_ = lifted.is_smooth();
        return;
    }
    raise(errc::coordinate_change_exhausted, "smoothness test ran out of usable projections");
}

std::optional<SingularWitness> PlaneCurve::singular_witness() const {
    if (is_smooth()) return std::nullopt;
    if (witness_) return witness_;
    const FieldCtx& K = field();
    const auto base_partials = partials(F_);
    for (std::uint32_t e = 1;; ++e) {
        const FieldCtx* Ep = try_extension(K, e);
        if (Ep == nullptr || Ep->q() > 2048)
            raise(errc::size_cap_exceeded, "singular witness lies beyond the scan budget");
        const FieldCtx& E = *Ep;
        TernaryForm Fe = F_;
        std::array<TernaryForm, 3> pe = base_partials;
        if (e > 1) {
            const Embedding& emb = Embedding::get(K, E);
            Fe = F_.lift(emb);
            pe = {base_partials[0].lift(emb), base_partials[1].lift(emb),
                  base_partials[2].lift(emb)};
        }
        const std::uint64_t n = E.q() * E.q() + E.q() + 1;
        for (std::uint64_t idx = 0; idx < n; ++idx) {
            ProjPoint P = point_at(E, idx);
            if (Fe.eval(P.c[0], P.c[1], P.c[2]) != 0) continue;
            bool sing = true;
            for (const auto& D : pe)
                if (D.eval(P.c[0], P.c[1], P.c[2]) != 0) {
                    sing = false;
                    break;
                }
            if (sing) {
                witness_ = SingularWitness{P, e};
                return witness_;
            }
        }
    }
}

ProjLine PlaneCurve::tangent_line(const ProjPoint& P) const {
    const FieldCtx& K = field();
    const FieldCtx& E = *P.F;
    TernaryForm Fl = &E == &K ? F_ : F_.lift(Embedding::get(K, E));
    if (Fl.eval(P.c[0], P.c[1], P.c[2]) != 0)
        raise(errc::point_not_on_curve, "tangent_line needs a point of the curve");
    const auto pl = partials(Fl);
    rep_t a = pl[0].eval(P.c[0], P.c[1], P.c[2]);
    rep_t b = pl[1].eval(P.c[0], P.c[1], P.c[2]);
    rep_t c = pl[2].eval(P.c[0], P.c[1], P.c[2]);
    if (a == 0 && b == 0 && c == 0)
        raise(errc::singular_point, "tangent_line at a singular point");
    ProjLine L = ProjLine::make(E, a, b, c);
    if (!incident(L, P)) raise(errc::internal, "tangent line misses its point");
    return L;
}

void PlaneCurve::require_smooth(const char* op) const {
    if (!is_smooth()) raise(errc::singular_point, std::string(op) + " requires a smooth curve");
}

bool PlaneCurve::is_reflexive() const {
    if (reflexive_) return *reflexive_;
    require_smooth("is_reflexive");
    if (degree() == 1) {
        reflexive_ = false; // a line's Gauss map is constant
        return false;
    }
    // On the chart z = 1 with local parameter x, the second derivative of
    // the branch is -(F_xx F_y^2 - 2 F_xy F_x F_y + F_yy F_x^2) / F_y^3, so
    // the tangent at a general point has contact exactly 2 iff the numerator
    // stays outside (F). The bare Hessian determinant is useless here: it
    // vanishes identically whenever d = 1 mod p.
    TernaryForm S = contact_form(F_, 0, 1);
    reflexive_ = !S.is_zero() && !divides(F_, S);
    return *reflexive_;
}

bool PlaneCurve::is_frobenius_nonclassical() const {
    if (fnc_) return *fnc_;
    require_smooth("is_frobenius_nonclassical");
    fnc_ = divides(F_, frobenius_form(F_));
    return *fnc_;
}

std::uint64_t PlaneCurve::dual_degree() const {
    require_smooth("dual_degree");
    const std::uint64_t dd =
        static_cast<std::uint64_t>(degree()) * static_cast<std::uint64_t>(degree() - 1);
    if (is_reflexive()) return dd;
    if (dd % field().p() != 0)
        raise(errc::non_integral_dual_degree, "d(d-1)/p is not an integer");
    return dd / field().p();
}

std::vector<ProjPoint> PlaneCurve::rational_flexes() const {
    require_smooth("rational_flexes");
    if (!is_reflexive()) raise(errc::non_reflexive, "rational_flexes needs a reflexive curve");
    TernaryForm Sxy = contact_form(F_, 0, 1);
    TernaryForm Syz = contact_form(F_, 1, 2);
    TernaryForm Sxz = contact_form(F_, 0, 2);
    std::vector<ProjPoint> out;
    for (const ProjPoint& P : rational_points()) {
        ProjLine T = tangent_line(P);
        auto [A, B] = line_basis(T);
        const ProjPoint& Q = A == P ? B : A;
        BinaryForm r = F_.restrict(P.c, Q.c);
        bool flex = r.infinity_multiplicity() >= 3;
        // the chart form is valid where the left-out coordinate is nonzero
        const TernaryForm& S = P.c[2] != 0 ? Sxy : (P.c[0] != 0 ? Syz : Sxz);
        bool contact_zero = S.eval(P.c[0], P.c[1], P.c[2]) == 0;
        if (flex != contact_zero) raise(errc::internal, "flex criteria disagree");
        if (flex) out.push_back(P);
    }
    return out;
}

ContactReport PlaneCurve::generic_contact_order() const {
    require_smooth("generic_contact_order");
    const FieldCtx& K = field();
    ContactReport report;
    std::mt19937_64 rng(0x6F0D11E5C0417ull); // fixed: the report is a function of the curve
    constexpr std::uint64_t kTargetPerExtension = 20;
    constexpr std::uint64_t kAttempts = 4000;
    for (std::uint32_t e : {2u, 3u}) {
        const FieldCtx* Ep = try_extension(K, e);
        if (Ep == nullptr) continue;
        const FieldCtx& E = *Ep;
        const Embedding& emb = Embedding::get(K, E);
        TernaryForm Fe = F_.lift(emb);
        const auto pe = partials(Fe);
        std::set<std::array<rep_t, 3>> seen;
        std::uint64_t got = 0;
        for (std::uint64_t it = 0; it < kAttempts && got < kTargetPerExtension; ++it) {
            rep_t y0 = static_cast<rep_t>(uniform_below(rng, E.q()));
            for (rep_t z0 : find_roots(Fe.specialize_xy(E.one(), y0))) {
                ProjPoint P = ProjPoint::make(E, E.one(), y0, z0);
                if (P.frobenius(K.m()) == P) continue; // F_q-rational
                if (!seen.insert(P.c).second) continue;
                rep_t a = pe[0].eval(P.c[0], P.c[1], P.c[2]);
                rep_t b = pe[1].eval(P.c[0], P.c[1], P.c[2]);
                rep_t c = pe[2].eval(P.c[0], P.c[1], P.c[2]);
                ProjLine T = ProjLine::make(E, a, b, c);
                auto [A, B] = line_basis(T);
                const ProjPoint& Q = A == P ? B : A;
                BinaryForm r = Fe.restrict(P.c, Q.c);
                if (r.is_zero())
                    raise(errc::curve_contains_line, "tangent line lies on the curve");
                auto contact = static_cast<std::uint64_t>(r.infinity_multiplicity());
                if (contact < 2) raise(errc::internal, "tangent contact below two");
                ++report.histogram[contact];
                ++report.samples;
                if (++got >= kTargetPerExtension) break;
            }
        }
    }
    if (report.samples < 20)
        raise(errc::insufficient_sample_points,
              "generic_contact_order found fewer than 20 usable points");
    report.q_prime = report.histogram.begin()->first;
    return report;
}

std::uint64_t PlaneCurve::count_points(std::uint32_t e) const {
    const FieldCtx& K = field();
    const FieldCtx* Ep = try_extension(K, e);
    if (Ep == nullptr) raise(errc::size_cap_exceeded, "count_points extension exceeds the cap");
    const FieldCtx& E = *Ep;
    TernaryForm Fe = e == 1 ? F_ : F_.lift(Embedding::get(K, E));
    auto roots_in_field = [&](const Poly& f) -> std::uint64_t {
        if (f.is_zero()) return E.q();
        if (f.deg() < 1) return 0;
        Poly g = gcd(frobenius_power_mod(f, 1) - Poly::x(E), f);
        return static_cast<std::uint64_t>(g.deg());
    };
    std::uint64_t n = 0;
    for (std::uint64_t y = 0; y < E.q(); ++y)
        n += roots_in_field(Fe.specialize_xy(E.one(), static_cast<rep_t>(y)));
    n += roots_in_field(Fe.specialize_xy(E.zero(), E.one()));
    if (Fe.eval(E.zero(), E.zero(), E.one()) == 0) ++n;
    return n;
}

const std::vector<ProjPoint>& PlaneCurve::rational_points() const {
    if (!rational_) {
        std::vector<ProjPoint> pts;
        for (const ProjPoint& P : all_points(field()))
            if (F_.eval(P.c[0], P.c[1], P.c[2]) == 0) pts.push_back(P);
        rational_ = std::move(pts);
    }
    return *rational_;
}

bool PlaneCurve::is_plane_filling() const {
    const FieldCtx& K = field();
    if (degree() <= static_cast<int>(K.q())) return false; // too few intersections per line
    return count_points(1) == K.q() * K.q() + K.q() + 1;
}

PlaneCurve pardini_form(const TernaryForm& a, const TernaryForm& b, const TernaryForm& c) {
    const FieldCtx& K = a.field();
    if (&b.field() != &K || &c.field() != &K)
        raise(errc::degree_mismatch, "pardini_form needs three forms over one field");
    if (a.degree() != b.degree() || a.degree() != c.degree() || a.degree() < 1)
        raise(errc::degree_mismatch, "pardini_form needs equal degrees t >= 1");
    auto pth_power = [&](const TernaryForm& f) {
        TernaryForm r = f;
        for (std::uint32_t i = 1; i < K.p(); ++i) r = r * f;
        return r;
    };
    TernaryForm G = pth_power(a) * TernaryForm::monomial(K, K.one(), 1, 0, 0) +
                    pth_power(b) * TernaryForm::monomial(K, K.one(), 0, 1, 0) +
                    pth_power(c) * TernaryForm::monomial(K, K.one(), 0, 0, 1);
    return PlaneCurve(G);
}

PlaneCurve hermitian_family(std::uint64_t q0, std::uint32_t n) {
    if (n < 2) raise(errc::degree_mismatch, "hermitian_family needs n >= 2");
    if (q0 < 3) raise(errc::even_characteristic, "hermitian_family needs odd q0 >= 3");
    std::uint64_t p = 0;
    for (std::uint64_t d = 2; d * d <= q0; ++d)
        if (q0 % d == 0) {
            p = d;
            break;
        }
    if (p == 0) p = q0;
    std::uint32_t s = 0;
    for (std::uint64_t v = q0; v > 1; v /= p, ++s)
        if (v % p != 0) raise(errc::not_prime, "hermitian_family needs a prime power q0");
    if (p == 2) raise(errc::even_characteristic, "hermitian_family needs odd characteristic");
    const FieldCtx& E = FieldCtx::get(static_cast<std::uint32_t>(p), s * n);
    std::uint64_t qn = 1;
    for (std::uint32_t i = 0; i < n; ++i) qn *= q0;
    const std::uint64_t exponent = (qn - 1) / (q0 - 1);
    if (exponent > 2000) raise(errc::size_cap_exceeded, "hermitian_family exponent too large");
    const int d = static_cast<int>(exponent);
    TernaryForm F = TernaryForm::monomial(E, E.one(), d, 0, 0) +
                    TernaryForm::monomial(E, E.one(), 0, d, 0) +
                    TernaryForm::monomial(E, E.one(), 0, 0, d);
    return PlaneCurve(F);
}

} // namespace goodline
