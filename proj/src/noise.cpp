#include "mfp/noise.hpp"

#include <algorithm>
#include <cmath>

#include "mfp/errors.hpp"

namespace mfp {

double NormalSampler::uniform01() {
  // (0, 1]: avoids log(0) in the Box-Muller transform.
  const std::uint64_t r = engine_();
  return (static_cast<double>(r >> 11) + 1.0) * 0x1.0p-53;
}

double NormalSampler::standard_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * M_PI * u2;
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

namespace {

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

std::vector<double> add_noise(std::span<const double> fingerprint,
                              const NoiseSpec& spec) {
  return add_noise_split(fingerprint, fingerprint.size(), spec);
}

std::vector<double> add_noise_split(std::span<const double> fingerprint,
                                    std::size_t n_force,
                                    const NoiseSpec& spec) {
  if (spec.level < 0.0) throw UsageError("noise level must be nonnegative");
  std::vector<double> out(fingerprint.begin(), fingerprint.end());
  if (spec.level == 0.0) return out;

  NormalSampler rng(spec.seed);
  const double std_force = spec.level * max_abs(fingerprint.subspan(0, n_force));
  for (std::size_t k = 0; k < n_force; ++k) {
    out[k] += std_force * rng.standard_normal();
  }
  if (n_force < fingerprint.size()) {
    const double std_disp = spec.level * max_abs(fingerprint.subspan(n_force));
    for (std::size_t k = n_force; k < fingerprint.size(); ++k) {
      out[k] += std_disp * rng.standard_normal();
    }
  }
  return out;
}

}  // namespace mfp
