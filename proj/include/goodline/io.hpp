#ifndef GOODLINE_IO_HPP
#define GOODLINE_IO_HPP

#include <cstdint>
#include <string>

#include "json.hpp"

#include "goodline/experiments.hpp"

namespace goodline {

using json = nlohmann::ordered_json;

inline constexpr const char* kArtifactVersion = "0.1.0";
inline constexpr const char* kReportSchema = "goodline-report/1";

/// Parse the fixture grammar: a `p=<int> r=<int>` header line followed by
/// `F = <expression>` in x, y, z with field literals (integers and the
/// generator symbol g). The expression may use +, -, *, ^ and parentheses;
/// the result must be homogeneous.
PlaneCurve parse_curve_spec(const std::string& text);

/// Canonical literal for a field element: an integer for prime-subfield
/// values, otherwise a polynomial in g (the least primitive element).
std::string field_literal(const FieldCtx& F, FieldCtx::rep_t a);

/// Canonical form text: terms in descending (i, j, k) order, `*` products,
/// `^` powers, exponent 1 and unit coefficients left implicit.
std::string form_to_string(const TernaryForm& F);

/// Canonical round-trip text: header line plus form line.
std::string curve_spec_text(const PlaneCurve& C);

/// The field modulus as a polynomial in t, e.g. "t^2 + 1".
std::string modulus_to_string(const FieldCtx& F);

std::string point_to_string(const ProjPoint& P);
std::string line_to_string(const ProjLine& L);

enum class ReportFormat { Json, Csv, Markdown };

/// Accepts "json", "csv", "md".
ReportFormat parse_format(const std::string& name);

/// Envelope shared by every command: schema, version, command echo, field
/// model, and the command-specific body.
struct Report {
    std::string command;
    std::uint32_t p = 0, r = 1;
    std::string modulus;
    json body;
};

Report make_report(const std::string& command, const FieldCtx& F);

json census_to_json(const CensusReport& c);
json frobenius_to_json(const FrobeniusProfile& p);
json spec_to_json(const ExperimentSpec& s);
json result_to_json(const ExperimentResult& r);

/// Byte-deterministic rendering of a report.
std::string emit_report(const Report& rep, ReportFormat format);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& bytes);

} // namespace goodline

#endif
