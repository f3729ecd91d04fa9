#pragma once

#include <stdexcept>
#include <string>

namespace pcsp {

/// Base class for every error the library raises on purpose: malformed
/// input, domain violations, exhausted enumeration budgets.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

} // namespace pcsp
