#include "pcsp/degree.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

namespace pcsp {

Degree Degree::parse(std::string_view text) {
    const auto fail = [&] {
        throw Error("bad degree literal '" + std::string(text) + "'");
    };

    std::size_t pos = 0;
    std::int64_t whole = 0;
    bool whole_digits = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        whole = whole * 10 + (text[pos] - '0');
        whole_digits = true;
        if (whole > 1) fail();
        ++pos;
    }

    std::int64_t frac = 0;
    int frac_digits = 0;
    bool saw_point = false;
    if (pos < text.size() && text[pos] == '.') {
        saw_point = true;
        ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            if (frac_digits < 9) {
                frac = frac * 10 + (text[pos] - '0');
            } else if (text[pos] != '0') {
                throw Error("degree literal '" + std::string(text) +
                            "' has more than nine fractional digits");
            }
            ++frac_digits;
            ++pos;
        }
        if (frac_digits == 0) fail();
    }

    if (pos != text.size() || (!whole_digits && !saw_point)) fail();

    for (int i = std::min(frac_digits, 9); i < 9; ++i) frac *= 10;
    const std::int64_t units = whole * scale + frac;
    if (units > scale) {
        throw Error("degree '" + std::string(text) + "' is outside [0, 1]");
    }
    return Degree{units};
}

Degree Degree::from_double(double value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw Error("degree " + std::to_string(value) + " is outside [0, 1]");
    }
    return Degree{static_cast<std::int64_t>(std::llround(value * scale))};
}

std::string Degree::str() const {
    const std::int64_t whole = units_ / scale;
    std::int64_t frac = units_ % scale;
    if (frac == 0) return std::to_string(whole);
    char digits[16];
    std::snprintf(digits, sizeof digits, "%09lld", static_cast<long long>(frac));
    std::string out = std::to_string(whole);
    out += '.';
    out += digits;
    while (out.back() == '0') out.pop_back();
    return out;
}

} // namespace pcsp
