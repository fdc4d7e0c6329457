#include "goodline/projective.hpp"

namespace goodline {

namespace {

std::array<FieldCtx::rep_t, 3> normalize(const FieldCtx& F,
                                         std::array<FieldCtx::rep_t, 3> c) {
    for (auto v : c)
        if (v != 0) {
            auto inv = F.inv(v);
            for (auto& w : c) w = F.mul(w, inv);
            return c;
        }
    raise(errc::internal, "projective coordinates all zero");
}

std::uint64_t triple_index(const FieldCtx& F, const std::array<FieldCtx::rep_t, 3>& c) {
    std::uint64_t q = F.q();
    if (c[0] == 1) return static_cast<std::uint64_t>(c[1]) * q + c[2];
    if (c[1] == 1) return q * q + c[2];
    return q * q + q;
}

std::array<FieldCtx::rep_t, 3> triple_at(const FieldCtx& F, std::uint64_t index) {
    std::uint64_t q = F.q();
    if (index < q * q)
        return {1, static_cast<FieldCtx::rep_t>(index / q),
                static_cast<FieldCtx::rep_t>(index % q)};
    if (index < q * q + q) return {0, 1, static_cast<FieldCtx::rep_t>(index - q * q)};
    if (index == q * q + q) return {0, 0, 1};
    raise(errc::internal, "projective index out of range");
}

} // namespace

ProjPoint ProjPoint::make(const FieldCtx& F, rep_t x, rep_t y, rep_t z) {
    return ProjPoint{&F, normalize(F, {x, y, z})};
}

ProjPoint ProjPoint::lift(const Embedding& e) const {
    return ProjPoint::make(e.tgt(), e.map(c[0]), e.map(c[1]), e.map(c[2]));
}

ProjPoint ProjPoint::frobenius(std::uint32_t s) const {
    return ProjPoint::make(*F, F->frobenius(c[0], s), F->frobenius(c[1], s),
                           F->frobenius(c[2], s));
}

ProjLine ProjLine::make(const FieldCtx& F, rep_t a, rep_t b, rep_t c) {
    return ProjLine{&F, normalize(F, {a, b, c})};
}

std::uint64_t point_index(const ProjPoint& P) { return triple_index(*P.F, P.c); }

ProjPoint point_at(const FieldCtx& F, std::uint64_t index) {
    return ProjPoint{&F, triple_at(F, index)};
}

std::vector<ProjPoint> all_points(const FieldCtx& F) {
    std::uint64_t n = F.q() * F.q() + F.q() + 1;
    std::vector<ProjPoint> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(point_at(F, i));
    return out;
}

std::uint64_t line_index(const ProjLine& L) { return triple_index(*L.F, L.c); }

ProjLine line_at(const FieldCtx& F, std::uint64_t index) {
    return ProjLine{&F, triple_at(F, index)};
}

std::vector<ProjLine> all_lines(const FieldCtx& F) {
    std::uint64_t n = F.q() * F.q() + F.q() + 1;
    std::vector<ProjLine> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(line_at(F, i));
    return out;
}

bool incident(const ProjLine& L, const ProjPoint& P) {
    const FieldCtx& F = *L.F;
    FieldCtx::rep_t acc = 0;
    for (int i = 0; i < 3; ++i) acc = F.add(acc, F.mul(L.c[i], P.c[i]));
    return acc == 0;
}

ProjLine line_through(const ProjPoint& P, const ProjPoint& Q) {
    if (P == Q) raise(errc::coincident_points, "line through a repeated point");
    const FieldCtx& F = *P.F;
    auto a = F.sub(F.mul(P.c[1], Q.c[2]), F.mul(P.c[2], Q.c[1]));
    auto b = F.sub(F.mul(P.c[2], Q.c[0]), F.mul(P.c[0], Q.c[2]));
    auto c = F.sub(F.mul(P.c[0], Q.c[1]), F.mul(P.c[1], Q.c[0]));
    return ProjLine::make(F, a, b, c);
}

std::pair<ProjPoint, ProjPoint> line_basis(const ProjLine& L) {
    const FieldCtx& F = *L.F;
    auto a = L.c[0], b = L.c[1], c = L.c[2];
    if (c != 0) {
        auto ci = F.inv(c);
        auto za = F.neg(F.mul(a, ci));
        auto zb = F.neg(F.mul(F.add(a, b), ci));
        return {ProjPoint{&F, {1, 0, za}}, ProjPoint{&F, {1, 1, zb}}};
    }
    if (b != 0) {
        auto y = F.neg(F.mul(a, F.inv(b)));
        return {ProjPoint{&F, {1, y, 0}}, ProjPoint{&F, {1, y, 1}}};
    }
    return {ProjPoint{&F, {0, 1, 0}}, ProjPoint{&F, {0, 1, 1}}};
}

ProjPoint point_on_line(const ProjLine& L, FieldCtx::rep_t s, FieldCtx::rep_t t) {
    const FieldCtx& F = *L.F;
    auto [A, B] = line_basis(L);
    std::array<FieldCtx::rep_t, 3> c{};
    for (int i = 0; i < 3; ++i) c[i] = F.add(F.mul(s, A.c[i]), F.mul(t, B.c[i]));
    return ProjPoint::make(F, c[0], c[1], c[2]);
}

std::vector<ProjPoint> points_on_line(const ProjLine& L) {
    const FieldCtx& F = *L.F;
    std::vector<ProjPoint> out;
    out.reserve(F.q() + 1);
    out.push_back(point_on_line(L, 1, 0));
    for (FieldCtx::rep_t a = 0; a < F.q(); ++a) out.push_back(point_on_line(L, a, 1));
    return out;
}

TernaryForm line_form(const ProjLine& L) {
    TernaryForm f(*L.F, 1);
    f.set_coeff(1, 0, L.c[0]);
    f.set_coeff(0, 1, L.c[1]);
    f.set_coeff(0, 0, L.c[2]);
    return f;
}

BinaryForm restrict_to_line(const TernaryForm& F, const ProjLine& L) {
    if (&F.field() != L.F) raise(errc::internal, "field mismatch in restriction");
    auto [A, B] = line_basis(L);
    return F.restrict(A.c, B.c);
}

} // namespace goodline
