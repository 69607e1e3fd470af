#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace mfp {

/// Portable seeded normal sampler: std::mt19937_64 (bit-exact across
/// conforming implementations) feeding a Box-Muller transform.
class NormalSampler {
public:
  explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

  double uniform01();  // in (0, 1]
  double standard_normal();

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct NoiseSpec {
  double level = 0.0;  // std = level * max |value| of the targeted block
  std::uint64_t seed = 0;
};

/// Adds zero-mean Gaussian noise, std = level * max|f| over the whole
/// vector (supervised convention). level 0 returns the input unchanged.
std::vector<double> add_noise(std::span<const double> fingerprint,
                              const NoiseSpec& spec);

/// Split convention for unsupervised fingerprints: the force block
/// [0, n_force) and the displacement block get independent stds from their
/// own max|.|, drawn from a single seeded stream in block order.
std::vector<double> add_noise_split(std::span<const double> fingerprint,
                                    std::size_t n_force,
                                    const NoiseSpec& spec);

}  // namespace mfp
