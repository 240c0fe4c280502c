#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "sphsum/detkit.hpp"
#include "sphsum/rng.hpp"

namespace sphsum {

/// Bounded spherical function phi_s(x) via the determinantal (HCIZ) formula,
/// evaluated through divided-difference tables in both s and x so that
/// coincident entries take their limiting values. phi at s = 0 is exactly 1.
cplx spherical_phi(const FrequencyVector& s, const SpectralVector& x, double cluster_tol = 1e-8);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the
/// phase-of-R-diagonal correction.
Eigen::MatrixXcd haar_unitary(int n, Rng& rng);

struct PhiMcResult {
  cplx estimate;
  double stderr_value = 0.0;  // combined standard error of the complex mean
};

/// Monte Carlo average of e^{i Tr(S U X U*)} over Haar samples with
/// S = diag(s), X = diag(x). Substreams of fixed size are merged in index
/// order, so results depend on (samples, seed) but not on the thread count.
PhiMcResult spherical_phi_mc(const FrequencyVector& s, const SpectralVector& x,
                             std::int64_t samples, std::uint64_t seed, int threads = 1);

}  // namespace sphsum
