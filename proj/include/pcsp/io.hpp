#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pcsp/core.hpp"

namespace pcsp::io {

/// Parse failure carrying the 1-based source line.
class ParseError : public Error {
public:
    ParseError(int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

/// Reads a problem from the PCSP text format:
///
///     problem <name>
///     var <name> : <label> <label> ...
///     constraint <id> <necessity> on <var> ... <allow|forbid> { <tuple> ; ... }
///
/// `#` starts a comment.  A tuple is one label per scope variable, in scope
/// order; `{}` is the empty relation and a tuple block may span lines.
/// Problem invariants are checked as declarations arrive, so diagnostics
/// carry line numbers.
Problem parse_problem(std::string_view text);

/// Canonical text form: declaration order preserved, one declaration per
/// line, tuples in lexicographic order.  parse_problem(write_problem(p))
/// equals p structurally.
std::string write_problem(const Problem& problem);

/// The four-course menu problem used throughout the tests: choose a drink,
/// entrance, dish and dessert under fifteen prioritized compatibility
/// rules (labelled a through o).
Problem builtin_menu();

/// Parameters for the seeded random instance generator.
struct GeneratorSpec {
    std::uint64_t seed = 0;
    int n_vars = 3;
    int domain_size = 3;
    int n_constraints = 3;
    int max_arity = 2;
    /// Fraction of each constraint's cross-product that gets forbidden.
    double tightness = 0.5;
    std::vector<Degree> necessity_levels = {Degree::one()};
};

/// Deterministic random problem: variables x0..x{n-1} over labels
/// d0..d{m-1}, FORBID constraints with round(tightness * cross-product)
/// forbidden tuples each, necessities drawn uniformly from the levels.
Problem random_problem(const GeneratorSpec& spec);

} // namespace pcsp::io
