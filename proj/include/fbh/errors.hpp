#ifndef FBH_ERRORS_HPP
#define FBH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fbh {

// Argument outside the mathematical domain of an operation.
struct domain_error : std::domain_error {
    explicit domain_error(const std::string& msg) : std::domain_error(msg) {}
};

// Gamma-type pole hit (argument within pole_tolerance of a non-positive integer).
struct pole_error : domain_error {
    explicit pole_error(const std::string& msg) : domain_error(msg) {}
};

// A quadrature failed to meet its accuracy budget.
struct quadrature_error : std::runtime_error {
    explicit quadrature_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad run configuration (CLI layer).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace fbh

#endif
