#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "pcsp/error.hpp"

namespace pcsp {

/// A priority or satisfaction degree in [0, 1].
///
/// Degrees are stored as exact decimal fixed-point numbers with nine
/// fractional digits, so min, max, complement and comparisons are exact and
/// values survive text round trips unchanged.  Binary doubles would not give
/// us that: 1.0 - 0.8 is not the double closest to 0.2, and the solver
/// compares degrees for equality all the time.
class Degree {
public:
    /// Number of fixed-point units per 1.0.
    static constexpr std::int64_t scale = 1'000'000'000;

    constexpr Degree() = default;

    static constexpr Degree zero() { return Degree{0}; }
    static constexpr Degree one() { return Degree{scale}; }

    /// Parses a plain decimal literal in [0, 1] such as "0", "1", "0.8" or
    /// ".25".  At most nine significant fractional digits are accepted.
    /// Throws Error on anything else.
    static Degree parse(std::string_view text);

    /// Rounds a double in [0, 1] to the nearest representable degree.
    static Degree from_double(double value);

    /// 1 - x, exactly.
    constexpr Degree complement() const { return Degree{scale - units_}; }

    double to_double() const { return static_cast<double>(units_) / scale; }

    /// Shortest decimal form: "0", "1", "0.8", "0.25".
    std::string str() const;

    constexpr std::int64_t raw() const { return units_; }

    constexpr auto operator<=>(const Degree&) const = default;

private:
    explicit constexpr Degree(std::int64_t units) : units_(units) {}

    std::int64_t units_ = 0;
};

constexpr Degree min(Degree a, Degree b) { return b < a ? b : a; }
constexpr Degree max(Degree a, Degree b) { return a < b ? b : a; }

} // namespace pcsp
