#ifndef QMS_ERRORS_HPP
#define QMS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qms {

// Error taxonomy mirrored by the CLI exit codes:
//   structural_error -> 1, numeric_error -> 2, capacity_error -> 3.

struct structural_error : std::runtime_error {
    explicit structural_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct argument_error : structural_error {
    explicit argument_error(const std::string& msg) : structural_error(msg) {}
};

struct numeric_error : std::runtime_error {
    double residual = 0.0;
    explicit numeric_error(const std::string& msg, double res = 0.0)
        : std::runtime_error(msg), residual(res) {}
};

struct convergence_error : numeric_error {
    explicit convergence_error(const std::string& msg, double res)
        : numeric_error(msg, res) {}
};

struct capacity_error : std::runtime_error {
    explicit capacity_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A requested check or quantity cannot be produced from the data at hand
// (e.g. strip continuation missing, per-generator summands not retained).
struct capability_error : std::runtime_error {
    explicit capability_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace qms

#endif
