#ifndef IPOLY_ERRORS_HPP
#define IPOLY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ipoly {

/// Invalid or degenerate inputs (CLI exit code 2).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Working precision exhausted or internal consistency check failed (exit code 3).
class PrecisionError : public std::runtime_error {
public:
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

/// Iteration or step budget exhausted before the goal was reached (exit code 4).
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ipoly

#endif  // IPOLY_ERRORS_HPP
