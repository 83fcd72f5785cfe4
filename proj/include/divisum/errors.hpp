#pragma once

#include <stdexcept>
#include <string>

namespace divisum {

// Bad argument values (empty ranges, non-squarefree inputs, n = 0 where
// n != 0 is required) raise std::invalid_argument directly.

// A documented range condition of a formula was violated, e.g. p(j) must
// divide k, or |k| <= R for the pair main term.
class precondition_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The requested case is outside what the library evaluates (j >= 4 singular
// series, off-diagonal correlation constants beyond k = 3, ...).
class unsupported_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A size guard tripped before allocating or looping.
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
    if (!ok) throw precondition_error(what);
}

inline void require_arg(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

} // namespace divisum
