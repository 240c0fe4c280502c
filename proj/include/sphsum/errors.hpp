#pragma once

#include <stdexcept>
#include <string>

namespace sphsum {

/// Malformed configuration (bad JSON, unknown variant, ...). CLI exit code 2.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Incompatible vector/matrix dimensions. CLI exit code 3.
struct dimension_error : std::invalid_argument {
  explicit dimension_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Requested operation outside the supported regime (dimension caps,
/// unsamplable ensembles, missing derivatives). CLI exit code 4.
struct capability_error : std::runtime_error {
  explicit capability_error(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical-quality gate failed (quadrature non-convergence, excessive
/// imaginary residue, KS gate). CLI exit code 5.
struct quality_error : std::runtime_error {
  explicit quality_error(const std::string& what) : std::runtime_error(what) {}
};

/// A confluent cluster asked for a derivative order the function family
/// cannot provide.
struct missing_derivative_error : capability_error {
  explicit missing_derivative_error(const std::string& what) : capability_error(what) {}
};

/// Linearly dependent weights: the moment matrix of a polynomial ensemble is
/// singular and the ensemble is not well defined.
struct degenerate_ensemble_error : std::invalid_argument {
  explicit degenerate_ensemble_error(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace sphsum
