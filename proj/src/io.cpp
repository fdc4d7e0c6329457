#include "goodline/io.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

namespace goodline {

namespace {

using rep_t = FieldCtx::rep_t;

constexpr std::size_t kMaxTerms = 100000;
constexpr std::uint64_t kMaxExponent = 4096;

[[noreturn]] void fail_at(std::size_t pos, const std::string& msg) {
    raise(errc::parse_error, "at offset " + std::to_string(pos) + ": " + msg);
}

// ---- expression lexer ----

enum class Tok { Num, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::uint64_t num = 0;
    std::string ident;
    std::size_t pos = 0;
};

std::vector<Token> lex_expr(const std::string& s, std::size_t start) {
    std::vector<Token> out;
    std::size_t i = start;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j - i > 18) fail_at(i, "integer literal too large");
            out.push_back({Tok::Num, std::stoull(s.substr(i, j - i)), "", i});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            out.push_back({Tok::Ident, 0, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        switch (c) {
        case '+': out.push_back({Tok::Plus, 0, "", i}); break;
        case '-': out.push_back({Tok::Minus, 0, "", i}); break;
        case '*': out.push_back({Tok::Star, 0, "", i}); break;
        case '^': out.push_back({Tok::Caret, 0, "", i}); break;
        case '(': out.push_back({Tok::LParen, 0, "", i}); break;
        case ')': out.push_back({Tok::RParen, 0, "", i}); break;
        default: fail_at(i, std::string("unexpected character '") + c + "'");
        }
        ++i;
    }
    out.push_back({Tok::End, 0, "", s.size()});
    return out;
}

// ---- sparse trivariate polynomial ----

struct XYZ {
    const FieldCtx* F;
    std::map<std::array<std::uint32_t, 3>, rep_t> t;
};

XYZ xyz_const(const FieldCtx& F, rep_t a) {
    XYZ r{&F, {}};
    if (a != 0) r.t[{0, 0, 0}] = a;
    return r;
}

XYZ xyz_var(const FieldCtx& F, int which) {
    XYZ r{&F, {}};
    std::array<std::uint32_t, 3> e{0, 0, 0};
    e[static_cast<std::size_t>(which)] = 1;
    r.t[e] = 1;
    return r;
}

XYZ xyz_add(const XYZ& a, const XYZ& b, std::size_t at) {
    XYZ r = a;
    for (const auto& [e, c] : b.t) {
        rep_t v = r.F->add(r.t.count(e) ? r.t[e] : 0, c);
        if (v == 0)
            r.t.erase(e);
        else
            r.t[e] = v;
    }
    if (r.t.size() > kMaxTerms) fail_at(at, "expression too large");
    return r;
}

XYZ xyz_neg(const XYZ& a) {
    XYZ r = a;
    for (auto& [e, c] : r.t) c = r.F->neg(c);
    return r;
}

XYZ xyz_mul(const XYZ& a, const XYZ& b, std::size_t at) {
    XYZ r{a.F, {}};
    for (const auto& [ea, ca] : a.t)
        for (const auto& [eb, cb] : b.t) {
            std::array<std::uint32_t, 3> e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
            if (e[0] > kMaxExponent || e[1] > kMaxExponent || e[2] > kMaxExponent)
                fail_at(at, "exponent too large");
            rep_t v = r.F->add(r.t.count(e) ? r.t[e] : 0, r.F->mul(ca, cb));
            if (v == 0)
                r.t.erase(e);
            else
                r.t[e] = v;
        }
    if (r.t.size() > kMaxTerms) fail_at(at, "expression too large");
    return r;
}

XYZ xyz_pow(XYZ base, std::uint64_t e, std::size_t at) {
    if (e > kMaxExponent) fail_at(at, "exponent too large");
    XYZ r = xyz_const(*base.F, 1);
    while (e > 0) {
        if (e & 1) r = xyz_mul(r, base, at);
        e >>= 1;
        if (e > 0) base = xyz_mul(base, base, at);
    }
    return r;
}

// ---- recursive descent over the token stream ----

struct ExprParser {
    const std::vector<Token>& ts;
    const FieldCtx& F;
    std::size_t i = 0;

    const Token& peek() const { return ts[i]; }
    const Token& next() { return ts[i++]; }

    XYZ expr() {
        bool neg = false;
        if (peek().kind == Tok::Plus)
            next();
        else if (peek().kind == Tok::Minus) {
            next();
            neg = true;
        }
        XYZ acc = term();
        if (neg) acc = xyz_neg(acc);
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            bool minus = next().kind == Tok::Minus;
            XYZ rhs = term();
            acc = xyz_add(acc, minus ? xyz_neg(rhs) : rhs, peek().pos);
        }
        return acc;
    }

    XYZ term() {
        XYZ acc = factor();
        while (peek().kind == Tok::Star) {
            std::size_t at = next().pos;
            acc = xyz_mul(acc, factor(), at);
        }
        return acc;
    }

    XYZ factor() {
        XYZ base = atom();
        if (peek().kind == Tok::Caret) {
            std::size_t at = next().pos;
            if (peek().kind != Tok::Num) fail_at(peek().pos, "expected an exponent");
            return xyz_pow(base, next().num, at);
        }
        return base;
    }

    XYZ atom() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Num:
            next();
            return xyz_const(F, F.from_int(static_cast<std::int64_t>(t.num)));
        case Tok::Ident:
            next();
            if (t.ident == "x") return xyz_var(F, 0);
            if (t.ident == "y") return xyz_var(F, 1);
            if (t.ident == "z") return xyz_var(F, 2);
            if (t.ident == "g") return xyz_const(F, F.generator());
            raise(errc::bad_field_literal,
                  "unknown literal '" + t.ident + "' at offset " + std::to_string(t.pos));
        case Tok::LParen: {
            next();
            XYZ inner = expr();
            if (peek().kind != Tok::RParen) fail_at(peek().pos, "expected ')'");
            next();
            return inner;
        }
        default: fail_at(t.pos, "expected a term");
        }
    }
};

// ---- header scanning ----

std::size_t skip_inline_ws(const std::string& s, std::size_t i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    return i;
}

std::uint64_t scan_header_int(const std::string& s, std::size_t& i, char key) {
    i = skip_inline_ws(s, i);
    if (i >= s.size() || s[i] != key)
        fail_at(i, std::string("expected '") + key + "=' in the header");
    ++i;
    i = skip_inline_ws(s, i);
    if (i >= s.size() || s[i] != '=') fail_at(i, "expected '='");
    ++i;
    i = skip_inline_ws(s, i);
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) fail_at(i, "expected an integer");
    if (j - i > 9) fail_at(i, "header value too large");
    std::uint64_t v = std::stoull(s.substr(i, j - i));
    i = j;
    return v;
}

// ---- generator-basis digits for literal emission ----

// Row-reduce over GF(p) to invert the change of basis from the residue-class
// basis t^i to the generator basis g^i; the least primitive element always
// generates the field over GF(p), so the matrix is invertible.
const std::vector<std::vector<std::uint32_t>>& g_basis_inverse(const FieldCtx& F) {
    static std::mutex mu;
    static std::map<const FieldCtx*, std::vector<std::vector<std::uint32_t>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(&F);
    if (it != cache.end()) return it->second;

    const FieldCtx& P = FieldCtx::get(F.p(), 1);
    const std::size_t m = F.m();
    // columns are the t-digit vectors of g^0 .. g^{m-1}
    std::vector<std::vector<std::uint32_t>> a(m, std::vector<std::uint32_t>(2 * m, 0));
    for (std::size_t j = 0; j < m; ++j) {
        auto col = F.coeffs(F.pow(F.generator(), j));
        for (std::size_t i = 0; i < m; ++i) a[i][j] = col[i];
    }
    for (std::size_t i = 0; i < m; ++i) a[i][m + i] = 1;
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        while (piv < m && a[piv][col] == 0) ++piv;
        if (piv == m) raise(errc::internal, "generator powers do not span the field");
        std::swap(a[col], a[piv]);
        rep_t s = P.inv(a[col][col]);
        for (auto& v : a[col]) v = P.mul(v, s);
        for (std::size_t row = 0; row < m; ++row) {
            if (row == col || a[row][col] == 0) continue;
            rep_t f = a[row][col];
            for (std::size_t k = 0; k < 2 * m; ++k)
                a[row][k] = P.sub(a[row][k], P.mul(f, a[col][k]));
        }
    }
    std::vector<std::vector<std::uint32_t>> inv(m, std::vector<std::uint32_t>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) inv[i][j] = a[i][m + j];
    return cache.emplace(&F, std::move(inv)).first->second;
}

// digits d with a = sum d[i] * g^i, d[i] in the prime subfield
std::vector<std::uint32_t> g_digits(const FieldCtx& F, rep_t a) {
    const auto& inv = g_basis_inverse(F);
    const FieldCtx& P = FieldCtx::get(F.p(), 1);
    auto t_digits = F.coeffs(a);
    std::vector<std::uint32_t> d(F.m(), 0);
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j)
            d[i] = P.add(d[i], P.mul(inv[i][j], t_digits[j]));
    return d;
}

std::string power_piece(const std::string& var, std::uint32_t c, std::size_t e) {
    std::string s;
    if (c != 1) s = std::to_string(c) + "*";
    if (e == 0) return std::to_string(c);
    s += var;
    if (e > 1) s += "^" + std::to_string(e);
    return s;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') out += '"';
    }
    out += "\"";
    return out;
}

std::string scalar_to_string(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

std::string field_display(std::uint32_t p, std::uint32_t r) {
    std::string s = "GF(" + std::to_string(p);
    if (r > 1) s += "^" + std::to_string(r);
    return s + ")";
}

} // namespace

PlaneCurve parse_curve_spec(const std::string& text) {
    std::size_t i = 0;
    std::uint64_t p = scan_header_int(text, i, 'p');
    std::uint64_t r = scan_header_int(text, i, 'r');
    i = skip_inline_ws(text, i);
    if (i >= text.size() || text[i] != '\n') fail_at(i, "expected a newline after the header");
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size() || text[i] != 'F') fail_at(i, "expected 'F ='");
    ++i;
    i = skip_inline_ws(text, i);
    if (i >= text.size() || text[i] != '=') fail_at(i, "expected '=' after 'F'");
    ++i;

    if (r < 1 || r > 64) fail_at(0, "extension degree out of range");
    const FieldCtx& F = FieldCtx::get(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(r));

    auto tokens = lex_expr(text, i);
    ExprParser parser{tokens, F};
    XYZ poly = parser.expr();
    if (parser.peek().kind != Tok::End) fail_at(parser.peek().pos, "unexpected trailing input");

    if (poly.t.empty()) raise(errc::zero_form, "the form vanishes identically");
    std::uint32_t degree = 0;
    bool first = true;
    for (const auto& [e, c] : poly.t) {
        std::uint32_t d = e[0] + e[1] + e[2];
        if (first) {
            degree = d;
            first = false;
        } else if (d != degree) {
            raise(errc::non_homogeneous, "terms of degree " + std::to_string(degree) + " and " +
                                             std::to_string(d) + " in one form");
        }
    }
    TernaryForm form(F, static_cast<int>(degree));
    for (const auto& [e, c] : poly.t)
        form.set_coeff(static_cast<int>(e[0]), static_cast<int>(e[1]), c);
    return PlaneCurve(form);
}

std::string field_literal(const FieldCtx& F, FieldCtx::rep_t a) {
    if (F.in_prime_subfield(a)) return std::to_string(a);
    auto d = g_digits(F, a);
    std::vector<std::string> pieces;
    for (std::size_t k = d.size(); k-- > 0;) {
        if (d[k] == 0) continue;
        pieces.push_back(power_piece("g", d[k], k));
    }
    std::string body;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        if (k > 0) body += " + ";
        body += pieces[k];
    }
    return pieces.size() > 1 ? "(" + body + ")" : body;
}

std::string form_to_string(const TernaryForm& F) {
    const auto terms = F.terms();
    if (terms.empty()) return "0";
    const FieldCtx& K = F.field();
    std::string out;
    for (const auto& t : terms) {
        if (!out.empty()) out += " + ";
        std::string mono;
        const char* names[3] = {"x", "y", "z"};
        for (int v = 0; v < 3; ++v) {
            if (t[static_cast<std::size_t>(v)] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names[v];
            if (t[static_cast<std::size_t>(v)] > 1)
                mono += "^" + std::to_string(t[static_cast<std::size_t>(v)]);
        }
        rep_t c = t[3];
        if (mono.empty())
            out += field_literal(K, c);
        else if (c == K.one())
            out += mono;
        else
            out += field_literal(K, c) + "*" + mono;
    }
    return out;
}

std::string curve_spec_text(const PlaneCurve& C) {
    const FieldCtx& F = C.field();
    return "p=" + std::to_string(F.p()) + " r=" + std::to_string(F.m()) + "\nF = " +
           form_to_string(C.form()) + "\n";
}

std::string modulus_to_string(const FieldCtx& F) {
    const auto& mod = F.modulus();
    std::string out;
    for (std::size_t k = mod.size(); k-- > 0;) {
        if (mod[k] == 0) continue;
        if (!out.empty()) out += " + ";
        out += power_piece("t", mod[k], k);
    }
    return out.empty() ? "0" : out;
}

std::string point_to_string(const ProjPoint& P) {
    return "[" + field_literal(*P.F, P.c[0]) + ":" + field_literal(*P.F, P.c[1]) + ":" +
           field_literal(*P.F, P.c[2]) + "]";
}

std::string line_to_string(const ProjLine& L) {
    return "[" + field_literal(*L.F, L.c[0]) + ":" + field_literal(*L.F, L.c[1]) + ":" +
           field_literal(*L.F, L.c[2]) + "]";
}

ReportFormat parse_format(const std::string& name) {
    if (name == "json") return ReportFormat::Json;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "md") return ReportFormat::Markdown;
    raise(errc::parse_error, "unknown format '" + name + "' (expected json, csv or md)");
}

Report make_report(const std::string& command, const FieldCtx& F) {
    Report rep;
    rep.command = command;
    rep.p = F.p();
    rep.r = F.m();
    rep.modulus = modulus_to_string(F);
    rep.body = json::object();
    return rep;
}

json census_to_json(const CensusReport& c) {
    json body = json::object();
    body["lines_total"] = c.lines_total;
    body["transverse"] = c.transverse;
    body["rational_tangent"] = c.rational_tangent;
    body["special_tangent"] = c.special_tangent;
    body["good_line"] = c.good_line ? json(line_to_string(*c.good_line)) : json(nullptr);
    json hist = json::object();
    for (int k = 0; k < 3; ++k) {
        json h = json::object();
        for (const auto& [prof, count] : c.profile_histogram[k]) h[prof] = count;
        hist[line_class_name(static_cast<LineClass>(k))] = std::move(h);
    }
    body["profile_histogram"] = std::move(hist);
    json lines = json::array();
    for (std::size_t i = 0; i < c.lines.size(); ++i) {
        const LineReport& lr = c.lines[i];
        json row = json::object();
        row["index"] = i;
        row["line"] = line_to_string(lr.line);
        row["class"] = line_class_name(lr.cls);
        row["profile"] = profile_to_string(lr.profile);
        json pts = json::array();
        for (const auto& [P, m] : lr.rational_points)
            pts.push_back(json{{"point", point_to_string(P)}, {"multiplicity", m}});
        row["rational_points"] = std::move(pts);
        lines.push_back(std::move(row));
    }
    body["lines"] = std::move(lines);
    return body;
}

json frobenius_to_json(const FrobeniusProfile& p) {
    json body = json::object();
    body["total_degree"] = p.total_degree;
    json entries = json::array();
    for (const auto& en : p.entries)
        entries.push_back(json{{"e", en.e}, {"m", en.m}, {"points", en.points}});
    body["entries"] = std::move(entries);
    body["rational_points"] = p.rational_points;
    body["n_nonrational"] = p.n_nonrational;
    body["n_reading"] = p.n_reading;
    const std::uint64_t lhs = 2 * p.rational_points + p.n_nonrational;
    body["lhs_2c_plus_n"] = lhs;
    body["rhs_total_degree"] = p.total_degree;
    body["inequality_holds"] = lhs <= p.total_degree;
    body["slack"] = static_cast<std::int64_t>(p.total_degree) - static_cast<std::int64_t>(lhs);
    return body;
}

json spec_to_json(const ExperimentSpec& s) {
    json j = json::object();
    j["kind"] = experiment_kind_name(s.kind);
    j["p"] = s.p;
    j["r"] = s.r;
    j["degrees"] = s.degrees;
    j["t"] = s.t;
    j["samples"] = s.samples;
    j["seed"] = s.seed;
    j["budget"] = s.budget;
    j["max_degree"] = s.max_degree;
    return j;
}

json result_to_json(const ExperimentResult& r) {
    json j = json::object();
    j["spec"] = spec_to_json(r.spec);
    j["aggregates"] = json{{"verdicts", r.verdicts.size()},
                           {"passed", r.passed},
                           {"failed", r.failed},
                           {"falsified", r.falsified}};
    j["notes"] = r.notes;
    json vs = json::array();
    for (const auto& v : r.verdicts) {
        json row = json::object();
        row["index"] = v.index;
        row["seed"] = v.seed;
        row["degree"] = v.degree;
        row["rejections"] = v.rejections;
        row["pass"] = v.pass;
        row["falsified"] = v.falsified;
        row["curve"] = v.curve;
        json facts = json::object();
        for (const auto& f : v.facts) facts[f.key] = f.value;
        row["facts"] = std::move(facts);
        vs.push_back(std::move(row));
    }
    j["verdicts"] = std::move(vs);
    return j;
}

namespace {

std::string emit_csv(const Report& rep) {
    std::ostringstream out;
    const json& b = rep.body;
    if (rep.command == "census" && b.contains("lines")) {
        out << "index,line,class,profile,rational_points\n";
        for (const auto& row : b["lines"])
            out << row["index"].get<std::uint64_t>() << ','
                << csv_quote(row["line"].get<std::string>()) << ','
                << row["class"].get<std::string>() << ','
                << csv_quote(row["profile"].get<std::string>()) << ','
                << row["rational_points"].size() << '\n';
        return out.str();
    }
    if (b.contains("entries")) {
        out << "e,m,points\n";
        for (const auto& en : b["entries"])
            out << en["e"].get<std::uint64_t>() << ',' << en["m"].get<std::uint64_t>() << ','
                << en["points"].get<std::uint64_t>() << '\n';
        return out.str();
    }
    if (b.contains("verdicts")) {
        out << "index,seed,degree,rejections,pass,falsified\n";
        for (const auto& v : b["verdicts"])
            out << v["index"].get<std::uint64_t>() << ',' << v["seed"].get<std::uint64_t>()
                << ',' << v["degree"].get<std::int64_t>() << ','
                << v["rejections"].get<std::uint64_t>() << ','
                << (v["pass"].get<bool>() ? "true" : "false") << ','
                << (v["falsified"].get<bool>() ? "true" : "false") << '\n';
        return out.str();
    }
    out << "key,value\n";
    for (const auto& [k, v] : b.items()) out << csv_quote(k) << ',' << csv_quote(scalar_to_string(v)) << '\n';
    return out.str();
}

void emit_md_kv_table(std::ostringstream& out, const json& obj) {
    out << "| key | value |\n| --- | --- |\n";
    for (const auto& [k, v] : obj.items()) {
        if (v.is_structured()) continue;
        out << "| " << k << " | " << scalar_to_string(v) << " |\n";
    }
}

std::string emit_md(const Report& rep) {
    std::ostringstream out;
    out << "# goodline " << rep.command << "\n\n";
    out << "Field: " << field_display(rep.p, rep.r) << ", modulus " << rep.modulus << "\n\n";
    const json& b = rep.body;
    if (rep.command == "census" && b.contains("lines")) {
        out << "| lines | transverse | rational-tangent | special-tangent |\n";
        out << "| --- | --- | --- | --- |\n";
        out << "| " << b["lines_total"] << " | " << b["transverse"] << " | "
            << b["rational_tangent"] << " | " << b["special_tangent"] << " |\n\n";
        out << "Good line: "
            << (b["good_line"].is_null() ? std::string("none")
                                         : b["good_line"].get<std::string>())
            << "\n\n";
        out << "| class | profile | lines |\n| --- | --- | --- |\n";
        for (const auto& [cls, hist] : b["profile_histogram"].items())
            for (const auto& [prof, count] : hist.items())
                out << "| " << cls << " | " << prof << " | " << count << " |\n";
        return out.str();
    }
    if (b.contains("entries") && b.contains("n_reading")) {
        out << "| e | m | points |\n| --- | --- | --- |\n";
        for (const auto& en : b["entries"])
            out << "| " << en["e"] << " | " << en["m"] << " | " << en["points"] << " |\n";
        out << "\n" << b["n_reading"].get<std::string>() << "\n\n";
        out << "2#C + N ≤ d(q+d−1): " << (2 * b["rational_points"].get<std::uint64_t>()) << " + "
            << b["n_nonrational"].get<std::uint64_t>() << " = " << b["lhs_2c_plus_n"] << " ≤ "
            << b["rhs_total_degree"] << " (slack " << b["slack"] << ", "
            << (b["inequality_holds"].get<bool>() ? "holds" : "VIOLATED") << ")\n";
        return out.str();
    }
    if (b.contains("verdicts")) {
        const json& agg = b["aggregates"];
        out << "| verdicts | passed | failed | falsified |\n| --- | --- | --- | --- |\n";
        out << "| " << agg["verdicts"] << " | " << agg["passed"] << " | " << agg["failed"]
            << " | " << agg["falsified"] << " |\n\n";
        for (const auto& n : b["notes"]) out << "- " << n.get<std::string>() << "\n";
        if (!b["notes"].empty()) out << "\n";
        if (b["verdicts"].size() == 1) {
            const json& v = b["verdicts"][0];
            out << "| fact | value |\n| --- | --- |\n";
            out << "| pass | " << (v["pass"].get<bool>() ? "true" : "false") << " |\n";
            for (const auto& [k, val] : v["facts"].items())
                out << "| " << k << " | " << val.get<std::string>() << " |\n";
            out << "\n```\n" << v["curve"].get<std::string>() << "```\n";
            return out.str();
        }
        out << "| index | seed | degree | rejections | pass | falsified |\n";
        out << "| --- | --- | --- | --- | --- | --- |\n";
        for (const auto& v : b["verdicts"])
            out << "| " << v["index"] << " | " << v["seed"] << " | " << v["degree"] << " | "
                << v["rejections"] << " | " << (v["pass"].get<bool>() ? "true" : "false")
                << " | " << (v["falsified"].get<bool>() ? "true" : "false") << " |\n";
        bool header = false;
        for (const auto& v : b["verdicts"]) {
            if (!v["falsified"].get<bool>()) continue;
            if (!header) {
                out << "\n## Falsified records\n";
                header = true;
            }
            out << "\n```\n" << v["curve"].get<std::string>() << "```\n";
            for (const auto& [k, val] : v["facts"].items())
                out << "- " << k << ": " << val.get<std::string>() << "\n";
        }
        return out.str();
    }
    emit_md_kv_table(out, b);
    return out.str();
}

} // namespace

std::string emit_report(const Report& rep, ReportFormat format) {
    if (format == ReportFormat::Json) {
        json env = json::object();
        env["schema"] = kReportSchema;
        env["version"] = kArtifactVersion;
        env["command"] = rep.command;
        env["field"] =
            json{{"p", rep.p}, {"r", rep.r}, {"modulus", rep.modulus}};
        env["report"] = rep.body;
        return env.dump(2) + "\n";
    }
    if (format == ReportFormat::Csv) return emit_csv(rep);
    return emit_md(rep);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(errc::io_error, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) raise(errc::io_error, "read failure on " + path);
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise(errc::io_error, "cannot open " + path + " for writing");
    out << bytes;
    out.flush();
    if (!out) raise(errc::io_error, "write failure on " + path);
}

} // namespace goodline
