#pragma once

#include <stdexcept>
#include <string>

namespace takagi {

/// Malformed textual input (sign specs, rationals, bit strings).
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An enumeration or search would exceed its configured resource budget.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace takagi
