#pragma once

#include <stdexcept>
#include <string>

namespace dispersive {

/// Rejected input: bad parameters, mismatched grids, malformed config text.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A pivot fell below the relative singularity threshold.
class SingularMatrixError : public std::runtime_error {
public:
    explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

/// A nonlinear solve failed where the caller needs a solution (march steps).
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dispersive
