#include "goodline/forms.hpp"

#include <algorithm>
#include <map>

#include "goodline/rand.hpp"

namespace goodline {

BinaryForm::BinaryForm(const FieldCtx& F, int degree, std::vector<rep_t> coeffs)
    : F_(&F), deg_(degree), c_(std::move(coeffs)) {
    if (c_.size() != static_cast<std::size_t>(degree) + 1)
        raise(errc::internal, "binary form coefficient count mismatch");
}

BinaryForm BinaryForm::from_poly(const Poly& f, int degree) {
    if (f.deg() > degree) raise(errc::internal, "polynomial degree exceeds form degree");
    BinaryForm b(f.field(), degree);
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) b.c_[i] = f.coeffs()[i];
    return b;
}

bool BinaryForm::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](rep_t v) { return v == 0; });
}

BinaryForm::rep_t BinaryForm::eval(rep_t s, rep_t t) const {
    rep_t acc = 0;
    rep_t sp = 1;
    std::vector<rep_t> tp(c_.size());
    tp[c_.size() - 1] = 1;
    for (std::size_t i = c_.size() - 1; i-- > 0;) tp[i] = F_->mul(tp[i + 1], t);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] != 0) acc = F_->add(acc, F_->mul(c_[i], F_->mul(sp, tp[i])));
        sp = F_->mul(sp, s);
    }
    return acc;
}

int BinaryForm::infinity_multiplicity() const {
    for (std::size_t i = c_.size(); i-- > 0;)
        if (c_[i] != 0) return deg_ - static_cast<int>(i);
    return deg_;
}

BinaryForm BinaryForm::derivative(int var) const {
    if (deg_ == 0) return BinaryForm(*F_, 0);
    BinaryForm r(*F_, deg_ - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (var == 0 && i >= 1)
            r.c_[i - 1] = F_->mul(c_[i], F_->from_int(static_cast<std::int64_t>(i)));
        if (var == 1 && static_cast<int>(i) <= deg_ - 1)
            r.c_[i] = F_->mul(c_[i], F_->from_int(deg_ - static_cast<std::int64_t>(i)));
    }
    return r;
}

BinaryForm BinaryForm::lift(const Embedding& e) const {
    BinaryForm r(e.tgt(), deg_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = e.map(c_[i]);
    return r;
}

BinaryForm BinaryForm::scaled(rep_t a) const {
    BinaryForm r(*F_, deg_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = F_->mul(c_[i], a);
    return r;
}

BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
    const FieldCtx& F = a.field();
    BinaryForm r(F, a.deg_ + b.deg_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            r.c_[i + j] = F.add(r.c_[i + j], F.mul(a.c_[i], b.c_[j]));
    }
    return r;
}

BinaryForm gcd(const BinaryForm& a, const BinaryForm& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int va = a.infinity_multiplicity();
    int vb = b.infinity_multiplicity();
    Poly g = gcd(a.dehomogenized(), b.dehomogenized());
    int v = std::min(va, vb);
    return BinaryForm::from_poly(g, g.deg() + v);
}

FieldCtx::rep_t resultant(const BinaryForm& f, const BinaryForm& g) {
    const FieldCtx& F = f.field();
    int n = f.degree(), m = g.degree();
    int size = n + m;
    if (size == 0) return 1;
    // Sylvester matrix, f rows on top, coefficients by descending s-power.
    std::vector<std::vector<FieldCtx::rep_t>> a(
        static_cast<std::size_t>(size), std::vector<FieldCtx::rep_t>(static_cast<std::size_t>(size), 0));
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= n; ++k) a[i][i + k] = f.coeff(static_cast<std::size_t>(n - k));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k) a[m + i][i + k] = g.coeff(static_cast<std::size_t>(m - k));
    FieldCtx::rep_t det = 1;
    for (int col = 0; col < size; ++col) {
        int pivot = -1;
        for (int row = col; row < size; ++row)
            if (a[row][col] != 0) {
                pivot = row;
                break;
            }
        if (pivot < 0) return 0;
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = F.neg(det);
        }
        det = F.mul(det, a[col][col]);
        auto inv = F.inv(a[col][col]);
        for (int row = col + 1; row < size; ++row) {
            if (a[row][col] == 0) continue;
            auto factor = F.mul(a[row][col], inv);
            for (int k = col; k < size; ++k)
                a[row][k] = F.sub(a[row][k], F.mul(factor, a[col][k]));
        }
    }
    return det;
}

std::uint64_t IntersectionProfile::total_degree() const {
    std::uint64_t t = 0;
    for (const auto& en : entries) t += en.e * en.m * en.count;
    return t;
}

bool IntersectionProfile::all_simple() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const ProfileEntry& en) { return en.m == 1; });
}

bool IntersectionProfile::has_rational_tangency() const {
    return std::any_of(entries.begin(), entries.end(),
                       [](const ProfileEntry& en) { return en.e == 1 && en.m >= 2; });
}

bool IntersectionProfile::has_tangency() const {
    return std::any_of(entries.begin(), entries.end(),
                       [](const ProfileEntry& en) { return en.m >= 2; });
}

IntersectionProfile factor_profile(const BinaryForm& g) {
    if (g.is_zero()) raise(errc::zero_form, "factor profile of the zero form");
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> acc;
    int vinf = g.infinity_multiplicity();
    if (vinf > 0) acc[{1, static_cast<std::uint64_t>(vinf)}] += 1;
    Poly f = g.dehomogenized();
    if (f.deg() >= 1) {
        for (const auto& [part, mult] : squarefree_decomposition(f)) {
            for (const auto& [e, prod] : distinct_degree_factorization(part)) {
                std::uint64_t count = static_cast<std::uint64_t>(prod.deg()) / e;
                acc[{e, mult}] += count;
            }
        }
    }
    IntersectionProfile profile;
    for (const auto& [key, count] : acc) profile.entries.push_back({key.first, key.second, count});
    if (profile.total_degree() != static_cast<std::uint64_t>(g.degree()))
        raise(errc::internal, "factor profile degree mismatch");
    return profile;
}

TernaryForm::TernaryForm(const FieldCtx& F, int degree) : F_(&F), deg_(degree) {
    if (degree < 0) raise(errc::internal, "negative form degree");
    c_.assign((static_cast<std::size_t>(degree) + 1) * (static_cast<std::size_t>(degree) + 2) / 2, 0);
}

TernaryForm TernaryForm::monomial(const FieldCtx& F, rep_t c, int i, int j, int k) {
    TernaryForm r(F, i + j + k);
    r.set_coeff(i, j, c);
    return r;
}

bool TernaryForm::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](rep_t v) { return v == 0; });
}

TernaryForm::rep_t TernaryForm::coeff(int i, int j) const {
    if (i < 0 || j < 0 || i + j > deg_) return 0;
    return c_[idx(i, j)];
}

void TernaryForm::set_coeff(int i, int j, rep_t c) {
    if (i < 0 || j < 0 || i + j > deg_) raise(errc::internal, "exponent outside form support");
    c_[idx(i, j)] = c;
}

std::vector<std::array<std::uint32_t, 4>> TernaryForm::terms() const {
    std::vector<std::array<std::uint32_t, 4>> out;
    for (int i = deg_; i >= 0; --i)
        for (int j = deg_ - i; j >= 0; --j) {
            rep_t c = c_[idx(i, j)];
            if (c != 0)
                out.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                               static_cast<std::uint32_t>(deg_ - i - j), c});
        }
    return out;
}

TernaryForm::rep_t TernaryForm::eval(rep_t x, rep_t y, rep_t z) const {
    std::vector<rep_t> px(static_cast<std::size_t>(deg_) + 1),
        py(static_cast<std::size_t>(deg_) + 1), pz(static_cast<std::size_t>(deg_) + 1);
    px[0] = py[0] = pz[0] = 1;
    for (int e = 1; e <= deg_; ++e) {
        px[e] = F_->mul(px[e - 1], x);
        py[e] = F_->mul(py[e - 1], y);
        pz[e] = F_->mul(pz[e - 1], z);
    }
    rep_t acc = 0;
    for (int i = 0; i <= deg_; ++i)
        for (int j = 0; j <= deg_ - i; ++j) {
            rep_t c = c_[idx(i, j)];
            if (c != 0)
                acc = F_->add(acc, F_->mul(c, F_->mul(px[i], F_->mul(py[j], pz[deg_ - i - j]))));
        }
    return acc;
}

TernaryForm TernaryForm::partial(int var) const {
    TernaryForm r(*F_, deg_ > 0 ? deg_ - 1 : 0);
    if (deg_ == 0) return r;
    for (int i = 0; i <= deg_; ++i)
        for (int j = 0; j <= deg_ - i; ++j) {
            rep_t c = c_[idx(i, j)];
            if (c == 0) continue;
            int k = deg_ - i - j;
            if (var == 0 && i >= 1)
                r.set_coeff(i - 1, j, F_->add(r.coeff(i - 1, j), F_->mul(c, F_->from_int(i))));
            if (var == 1 && j >= 1)
                r.set_coeff(i, j - 1, F_->add(r.coeff(i, j - 1), F_->mul(c, F_->from_int(j))));
            if (var == 2 && k >= 1)
                r.set_coeff(i, j, F_->add(r.coeff(i, j), F_->mul(c, F_->from_int(k))));
        }
    return r;
}

TernaryForm TernaryForm::lift(const Embedding& e) const {
    TernaryForm r(e.tgt(), deg_);
    for (int i = 0; i <= deg_; ++i)
        for (int j = 0; j <= deg_ - i; ++j) r.c_[r.idx(i, j)] = e.map(c_[idx(i, j)]);
    return r;
}

TernaryForm TernaryForm::scaled(rep_t a) const {
    TernaryForm r(*F_, deg_);
    for (std::size_t n = 0; n < c_.size(); ++n) r.c_[n] = F_->mul(c_[n], a);
    return r;
}

TernaryForm TernaryForm::swapped(int va, int vb) const {
    TernaryForm r(*F_, deg_);
    for (int i = 0; i <= deg_; ++i)
        for (int j = 0; j <= deg_ - i; ++j) {
            rep_t c = c_[idx(i, j)];
            if (c == 0) continue;
            int e[3] = {i, j, deg_ - i - j};
            std::swap(e[va], e[vb]);
            r.set_coeff(e[0], e[1], F_->add(r.coeff(e[0], e[1]), c));
        }
    return r;
}

TernaryForm TernaryForm::coordinate_change(const std::array<std::array<rep_t, 3>, 3>& M) const {
    // powers of the three substituted linear forms
    std::vector<std::vector<TernaryForm>> pows(3);
    for (int v = 0; v < 3; ++v) {
        TernaryForm lin(*F_, 1);
        lin.set_coeff(1, 0, M[static_cast<std::size_t>(v)][0]);
        lin.set_coeff(0, 1, M[static_cast<std::size_t>(v)][1]);
        lin.set_coeff(0, 0, M[static_cast<std::size_t>(v)][2]);
        pows[static_cast<std::size_t>(v)].push_back(
            TernaryForm::monomial(*F_, 1, 0, 0, 0)); // degree-0 one
        for (int e = 1; e <= deg_; ++e)
            pows[static_cast<std::size_t>(v)].push_back(
                pows[static_cast<std::size_t>(v)].back() * lin);
    }
    TernaryForm acc(*F_, deg_);
    for (int i = 0; i <= deg_; ++i)
        for (int j = 0; j <= deg_ - i; ++j) {
            rep_t c = c_[idx(i, j)];
            if (c == 0) continue;
            int k = deg_ - i - j;
            TernaryForm term = pows[0][static_cast<std::size_t>(i)] *
                               pows[1][static_cast<std::size_t>(j)] *
                               pows[2][static_cast<std::size_t>(k)];
            acc = acc + term.scaled(c);
        }
    return acc;
}

BinaryForm TernaryForm::z_coefficient(int j) const {
    std::vector<rep_t> c(static_cast<std::size_t>(deg_ - j) + 1, 0);
    for (int i = 0; i <= deg_ - j; ++i) c[static_cast<std::size_t>(i)] = coeff(i, deg_ - j - i);
    return BinaryForm(*F_, deg_ - j, std::move(c));
}

int TernaryForm::z_degree() const {
    for (int j = deg_; j >= 0; --j)
        if (!z_coefficient(j).is_zero()) return j;
    return -1;
}

Poly TernaryForm::specialize_xy(rep_t x0, rep_t y0) const {
    std::vector<rep_t> px(static_cast<std::size_t>(deg_) + 1),
        py(static_cast<std::size_t>(deg_) + 1);
    px[0] = py[0] = 1;
    for (int e = 1; e <= deg_; ++e) {
        px[e] = F_->mul(px[e - 1], x0);
        py[e] = F_->mul(py[e - 1], y0);
    }
    std::vector<rep_t> zc(static_cast<std::size_t>(deg_) + 1, 0);
    for (int i = 0; i <= deg_; ++i)
        for (int j = 0; j <= deg_ - i; ++j) {
            rep_t c = c_[idx(i, j)];
            if (c == 0) continue;
            int k = deg_ - i - j;
            zc[k] = F_->add(zc[k], F_->mul(c, F_->mul(px[i], py[j])));
        }
    return Poly(*F_, std::move(zc));
}

BinaryForm TernaryForm::restrict(const std::array<rep_t, 3>& A,
                                 const std::array<rep_t, 3>& B) const {
    // (s*Av + t*Bv)^e coefficient tables per variable
    std::vector<std::vector<std::vector<rep_t>>> pows(3);
    for (int v = 0; v < 3; ++v) {
        auto& p = pows[static_cast<std::size_t>(v)];
        p.push_back({1});
        for (int e = 1; e <= deg_; ++e) {
            const auto& prev = p.back();
            std::vector<rep_t> cur(prev.size() + 1, 0);
            for (std::size_t a = 0; a < prev.size(); ++a) {
                if (prev[a] == 0) continue;
                cur[a + 1] = F_->add(cur[a + 1], F_->mul(prev[a], A[static_cast<std::size_t>(v)]));
                cur[a] = F_->add(cur[a], F_->mul(prev[a], B[static_cast<std::size_t>(v)]));
            }
            p.push_back(std::move(cur));
        }
    }
    std::vector<rep_t> out(static_cast<std::size_t>(deg_) + 1, 0);
    for (int i = 0; i <= deg_; ++i)
        for (int j = 0; j <= deg_ - i; ++j) {
            rep_t c = c_[idx(i, j)];
            if (c == 0) continue;
            int k = deg_ - i - j;
            const auto& pi = pows[0][static_cast<std::size_t>(i)];
            const auto& pj = pows[1][static_cast<std::size_t>(j)];
            const auto& pk = pows[2][static_cast<std::size_t>(k)];
            std::vector<rep_t> ij(pi.size() + pj.size() - 1, 0);
            for (std::size_t a = 0; a < pi.size(); ++a) {
                if (pi[a] == 0) continue;
                for (std::size_t b = 0; b < pj.size(); ++b)
                    ij[a + b] = F_->add(ij[a + b], F_->mul(pi[a], pj[b]));
            }
            for (std::size_t a = 0; a < ij.size(); ++a) {
                if (ij[a] == 0) continue;
                rep_t ca = F_->mul(c, ij[a]);
                for (std::size_t b = 0; b < pk.size(); ++b)
                    out[a + b] = F_->add(out[a + b], F_->mul(ca, pk[b]));
            }
        }
    return BinaryForm(*F_, deg_, std::move(out));
}

TernaryForm operator+(const TernaryForm& a, const TernaryForm& b) {
    if (a.deg_ != b.deg_) raise(errc::degree_mismatch, "form degrees differ in addition");
    TernaryForm r(*a.F_, a.deg_);
    for (std::size_t n = 0; n < a.c_.size(); ++n) r.c_[n] = a.F_->add(a.c_[n], b.c_[n]);
    return r;
}

TernaryForm operator-(const TernaryForm& a, const TernaryForm& b) {
    if (a.deg_ != b.deg_) raise(errc::degree_mismatch, "form degrees differ in subtraction");
    TernaryForm r(*a.F_, a.deg_);
    for (std::size_t n = 0; n < a.c_.size(); ++n) r.c_[n] = a.F_->sub(a.c_[n], b.c_[n]);
    return r;
}

TernaryForm operator*(const TernaryForm& a, const TernaryForm& b) {
    const FieldCtx& F = *a.F_;
    TernaryForm r(F, a.deg_ + b.deg_);
    for (int i1 = 0; i1 <= a.deg_; ++i1)
        for (int j1 = 0; j1 <= a.deg_ - i1; ++j1) {
            TernaryForm::rep_t c1 = a.c_[a.idx(i1, j1)];
            if (c1 == 0) continue;
            for (int i2 = 0; i2 <= b.deg_; ++i2)
                for (int j2 = 0; j2 <= b.deg_ - i2; ++j2) {
                    TernaryForm::rep_t c2 = b.c_[b.idx(i2, j2)];
                    if (c2 == 0) continue;
                    std::size_t n = r.idx(i1 + i2, j1 + j2);
                    r.c_[n] = F.add(r.c_[n], F.mul(c1, c2));
                }
        }
    return r;
}

std::array<TernaryForm, 3> partials(const TernaryForm& F) {
    return {F.partial(0), F.partial(1), F.partial(2)};
}

TernaryForm frobenius_form(const TernaryForm& F) {
    const FieldCtx& K = F.field();
    if (K.q() + static_cast<std::uint64_t>(F.degree()) > 5000)
        raise(errc::size_cap_exceeded, "frobenius form degree exceeds the desk-scale cap");
    int q = static_cast<int>(K.q());
    int d = F.degree();
    TernaryForm G(K, q + d - 1);
    auto add_shift = [&](const TernaryForm& P, int var) {
        for (const auto& t : P.terms()) {
            int i = static_cast<int>(t[0]), j = static_cast<int>(t[1]);
            if (var == 0) i += q;
            if (var == 1) j += q;
            // z-shift is implicit in the degree bookkeeping
            G.set_coeff(i, j, K.add(G.coeff(i, j), t[3]));
        }
    };
    add_shift(F.partial(0), 0);
    add_shift(F.partial(1), 1);
    add_shift(F.partial(2), 2);
    return G;
}

TernaryForm hessian(const TernaryForm& F) {
    const FieldCtx& K = F.field();
    int d = F.degree();
    if (d < 2) return TernaryForm(K, 0);
    TernaryForm H[3][3] = {{F.partial(0).partial(0), F.partial(0).partial(1), F.partial(0).partial(2)},
                           {F.partial(1).partial(0), F.partial(1).partial(1), F.partial(1).partial(2)},
                           {F.partial(2).partial(0), F.partial(2).partial(1), F.partial(2).partial(2)}};
    TernaryForm det = H[0][0] * (H[1][1] * H[2][2] - H[1][2] * H[2][1]) -
                      H[0][1] * (H[1][0] * H[2][2] - H[1][2] * H[2][0]) +
                      H[0][2] * (H[1][0] * H[2][1] - H[1][1] * H[2][0]);
    return det;
}

TernaryForm contact_form(const TernaryForm& F, int u, int w) {
    if (F.degree() < 2) raise(errc::degree_mismatch, "contact_form needs degree at least 2");
    TernaryForm Fu = F.partial(u), Fw = F.partial(w);
    TernaryForm M = Fu.partial(w) * (Fu * Fw);
    return Fu.partial(u) * (Fw * Fw) + Fw.partial(w) * (Fu * Fu) - M - M;
}

std::array<std::array<FieldCtx::rep_t, 3>, 3> coordinate_change_matrix(const FieldCtx& F,
                                                                       unsigned index) {
    using rep_t = FieldCtx::rep_t;
    std::array<std::array<rep_t, 3>, 3> M{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    if (index == 0) return M;
    std::mt19937_64 rng(0x600D11E5ull ^ (0x9E3779B97F4A7C15ull * index));
    auto r = [&] { return static_cast<rep_t>(uniform_below(rng, F.q())); };
    // unimodular by construction: permutation * unit-lower * unit-upper
    std::array<std::array<rep_t, 3>, 3> L{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    L[1][0] = r();
    L[2][0] = r();
    L[2][1] = r();
    std::array<std::array<rep_t, 3>, 3> U{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    U[0][1] = r();
    U[0][2] = r();
    U[1][2] = r();
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                    {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    const int* perm = perms[uniform_below(rng, 6)];
    std::array<std::array<rep_t, 3>, 3> LU{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            rep_t acc = 0;
            for (int k = 0; k < 3; ++k) acc = F.add(acc, F.mul(L[i][k], U[k][j]));
            LU[i][j] = acc;
        }
    for (int i = 0; i < 3; ++i) M[i] = LU[perm[i]];
    return M;
}

std::array<std::array<FieldCtx::rep_t, 3>, 3>
invert_matrix(const FieldCtx& F, const std::array<std::array<FieldCtx::rep_t, 3>, 3>& M) {
    using rep_t = FieldCtx::rep_t;
    auto minor2 = [&](int r0, int r1, int c0, int c1) {
        return F.sub(F.mul(M[r0][c0], M[r1][c1]), F.mul(M[r0][c1], M[r1][c0]));
    };
    rep_t det = F.add(F.sub(F.mul(M[0][0], minor2(1, 2, 1, 2)), F.mul(M[0][1], minor2(1, 2, 0, 2))),
                      F.mul(M[0][2], minor2(1, 2, 0, 1)));
    if (det == 0) raise(errc::internal, "singular coordinate change");
    rep_t dinv = F.inv(det);
    std::array<std::array<rep_t, 3>, 3> adj{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
            int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            // cofactor transpose with the cyclic index trick keeping signs
            adj[i][j] = F.sub(F.mul(M[r0][c0], M[r1][c1]), F.mul(M[r0][c1], M[r1][c0]));
        }
    std::array<std::array<rep_t, 3>, 3> inv{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) inv[i][j] = F.mul(adj[i][j], dinv);
    return inv;
}

bool divides(const TernaryForm& F, const TernaryForm& G) {
    if (F.is_zero()) raise(errc::zero_form, "divisibility by the zero form");
    if (G.is_zero()) return true;
    if (G.degree() < F.degree()) return false;
    const FieldCtx& K = F.field();
    for (unsigned attempt = 0; attempt < kCoordinateChangeRetries; ++attempt) {
        auto M = coordinate_change_matrix(K, attempt);
        TernaryForm Fc = attempt == 0 ? F : F.coordinate_change(M);
        if (!Fc.z_regular()) continue;
        TernaryForm Gc = attempt == 0 ? G : G.coordinate_change(M);
        TernaryForm Fm = Fc.scaled(K.inv(Fc.coeff(0, 0)));
        int df = Fm.degree();
        TernaryForm R = Gc;
        for (int j = R.z_degree(); j >= df; --j) {
            BinaryForm qj = R.z_coefficient(j);
            if (qj.is_zero()) continue;
            // subtract (qj * z^(j-df)) * Fm
            TernaryForm Q(K, R.degree() - df);
            for (std::size_t i = 0; i < qj.coeffs().size(); ++i) {
                auto c = qj.coeffs()[i];
                if (c != 0)
                    Q.set_coeff(static_cast<int>(i),
                                qj.degree() - static_cast<int>(i), c);
            }
            R = R - Q * Fm;
        }
        return R.is_zero();
    }
    // A divisor vanishing at every rational point stays z-irregular under all
    // rational changes; divisibility is stable under base extension, so retry
    // over the quadratic extension.
    const std::uint64_t cap = FieldCtx::size_cap();
    if (K.q() <= cap / K.q()) {
        const FieldCtx& E2 = FieldCtx::get(K.p(), 2 * K.m());
        const Embedding& up = Embedding::get(K, E2);
        return divides(F.lift(up), G.lift(up));
    }
    raise(errc::coordinate_change_exhausted, "no coordinate change made the divisor regular");
}

namespace {

BinaryForm eliminate_z_anchored(const TernaryForm& F, const TernaryForm& G) {
    const FieldCtx& K = F.field();
    int dF = F.degree(), dG = G.degree();
    std::uint64_t D = static_cast<std::uint64_t>(dF) * static_cast<std::uint64_t>(dG);
    int mG = G.z_degree();
    FieldCtx::rep_t c = F.coeff(0, 0);

    std::uint32_t k = 1;
    std::uint64_t qk = K.q();
    while (qk < D + 2) {
        ++k;
        qk *= K.q();
    }
    const FieldCtx& E = FieldCtx::get(K.p(), K.m() * k);
    const Embedding& emb = Embedding::get(K, E);
    TernaryForm Fl = F.lift(emb);
    TernaryForm Gl = G.lift(emb);
    FieldCtx::rep_t cl = emb.map(c);

    std::vector<FieldCtx::rep_t> xs, ys;
    xs.reserve(D + 2);
    ys.reserve(D + 2);
    for (std::uint64_t i = 0; i < D + 2; ++i) {
        auto x0 = static_cast<FieldCtx::rep_t>(i);
        Poly fi = Fl.specialize_xy(x0, 1);
        Poly gi = Gl.specialize_xy(x0, 1);
        FieldCtx::rep_t val = 0;
        if (!gi.is_zero()) {
            val = resultant(fi, gi);
            int drop = mG - gi.deg();
            if (drop > 0) val = E.mul(val, E.pow(cl, static_cast<std::uint64_t>(drop)));
        }
        xs.push_back(x0);
        ys.push_back(val);
    }
    auto vx = xs.back();
    auto vy = ys.back();
    xs.pop_back();
    ys.pop_back();
    Poly T = interpolate(E, xs, ys);
    if (T.deg() > static_cast<int>(D)) raise(errc::internal, "resultant interpolation overflow");
    if (T.eval(vx) != vy) raise(errc::internal, "resultant verification node mismatch");
    const FieldCtx& base = K;
    Poly lowered(base);
    {
        std::vector<FieldCtx::rep_t> lc(T.coeffs().size());
        for (std::size_t i = 0; i < T.coeffs().size(); ++i) {
            auto pre = emb.preimage(T.coeffs()[i]);
            if (!pre) raise(errc::internal, "resultant coefficient outside the base field");
            lc[i] = *pre;
        }
        lowered = Poly(base, std::move(lc));
    }
    return BinaryForm::from_poly(lowered, static_cast<int>(D));
}

} // namespace

BinaryForm resultant_eliminate(const TernaryForm& F, const TernaryForm& G, int var) {
    if (F.is_zero() || G.is_zero()) raise(errc::zero_form, "resultant of a zero form");
    TernaryForm Fv = var == 2 ? F : F.swapped(var, 2);
    TernaryForm Gv = var == 2 ? G : G.swapped(var, 2);
    const FieldCtx& K = F.field();
    BinaryForm R(K, 0);
    bool swapped_roles = false;
    if (Fv.z_regular()) {
        R = eliminate_z_anchored(Fv, Gv);
    } else if (Gv.z_regular()) {
        R = eliminate_z_anchored(Gv, Fv);
        swapped_roles = true;
    } else {
        raise(errc::degenerate_leading_coefficient,
              "neither form is regular in the eliminated variable");
    }
    if (swapped_roles && (F.degree() & 1) && (G.degree() & 1)) R = R.scaled(K.neg(1));
    if (var == 0) {
        // eliminate x: anchored result is in (z, y); flip to canonical (y, z)
        std::vector<FieldCtx::rep_t> rev(R.coeffs().rbegin(), R.coeffs().rend());
        R = BinaryForm(K, R.degree(), std::move(rev));
    }
    return R;
}

} // namespace goodline
