#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nashbound {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Validation failures (bad inputs, broken preconditions).
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotNegativeDefiniteError : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};
struct PointOutsideSetError : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};
struct BallDoesNotFitError : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};
struct BadASpecError : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};
struct DeltaTooLargeError : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};
struct ZeroCapacityError : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};
struct SingularSigmaError : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

// Runtime failures (numerics that did not converge, budgets exceeded).
struct QuadratureFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RegularityViolatedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EnumerationBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Config parsing collects every problem before failing.
struct ConfigError : std::runtime_error {
    explicit ConfigError(std::vector<std::string> errors);
    const std::vector<std::string>& errors() const { return errors_; }

  private:
    std::vector<std::string> errors_;
};

inline constexpr const char* kVersionString = "nashbound 0.1.0";

// FNV-1a, used to stamp outputs with a stable hash of the config text.
std::uint64_t fnv1a64(const std::string& text);

}  // namespace nashbound
