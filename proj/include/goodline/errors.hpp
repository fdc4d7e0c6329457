#ifndef GOODLINE_ERRORS_HPP
#define GOODLINE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace goodline {

enum class errc {
    not_prime,
    even_characteristic,
    size_cap_exceeded,
    not_a_subfield,
    zero_form,
    degree_mismatch,
    degenerate_leading_coefficient,
    coordinate_change_exhausted,
    non_integral_dual_degree,
    non_reflexive,
    insufficient_sample_points,
    point_not_on_curve,
    singular_point,
    curve_contains_line,
    coincident_points,
    frobenius_non_classical,
    not_frobenius_non_classical,
    budget_exhausted,
    parse_error,
    non_homogeneous,
    bad_field_literal,
    io_error,
    internal,
};

const char* errc_name(errc c);

/// Library-wide exception carrying a machine-readable code.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw error(code, what); }

} // namespace goodline

#endif
