#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mfp/database.hpp"
#include "mfp/model.hpp"

namespace mfp {

/// Standardized homogeneous loading program: uniaxial-tension stretches
/// followed by simple-shear amounts. Fingerprints list the UT stress block
/// first, then the SS block.
struct HomogeneousProtocol {
  std::vector<double> ut_stretches;
  std::vector<double> ss_shears;

  /// 15 equidistant stretches in [1.0, 1.5] and 15 shears in [0.0, 0.5].
  static HomogeneousProtocol standard();

  std::size_t fingerprint_length() const {
    return ut_stretches.size() + ss_shears.size();
  }

  nlohmann::json descriptor() const;
};

/// Stress fingerprint of an incompressible model under the protocol.
/// Raw (unnormalized); values[k] = P11(lambda_k) for the UT block, then
/// P12(gamma_k) for the SS block.
std::vector<double> simulate_fingerprint(const MaterialModel& model,
                                         const HomogeneousProtocol& protocol);

struct NormalizedTriplet {
  std::vector<double> fingerprint;  // unit norm
  std::vector<double> theta_bar;
  double norm = 0.0;
};

/// (f, theta) -> (f/||f||, theta/||f||, ||f||). Throws ZeroFingerprint
/// when ||f|| = 0.
NormalizedTriplet normalize(std::span<const double> fingerprint,
                            std::span<const double> theta);

/// Parameter-grid density for supervised database generation.
struct SupervisedGridSpec {
  std::size_t points_per_axis = 100;
  bool log_spacing = false;
};

std::vector<double> parameter_grid(double lo, double hi, std::size_t n,
                                   bool log_spacing = false);

/// Generates the supervised database: one record per Blatz-Ko and Neo-Hooke,
/// a full parameter sweep for the other five families, all normalized.
/// 502 records under defaults.
Database generate_supervised_database(const HomogeneousProtocol& protocol,
                                      const SupervisedGridSpec& grid = {});

}  // namespace mfp
