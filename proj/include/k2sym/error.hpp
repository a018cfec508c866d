#pragma once

#include <stdexcept>
#include <string>

namespace k2sym {

/// Malformed or out-of-domain input (zero where a unit is required, a
/// composite where a prime is required, a parse error, ...).
class invalid_input : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A property that must hold mathematically did not hold. Seeing this
/// means an implementation bug, never bad input.
class verification_failure : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw invalid_input(what);
}

inline void verify(bool cond, const std::string& what) {
    if (!cond) throw verification_failure(what);
}

}  // namespace k2sym
