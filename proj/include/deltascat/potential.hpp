#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "deltascat/errors.hpp"

namespace deltascat {

/// Wavenumber k > 0 in units where hbar = 2m = 1, so the energy is k^2.
template <typename Real>
class BasicWavenumber {
 public:
  explicit BasicWavenumber(Real k) : k_(k) {
    using std::isfinite;
    if (!(k > Real(0)) || !isfinite(k)) {
      throw InvalidWavenumber("wavenumber must be finite and positive, got " +
                              std::to_string(static_cast<double>(k)));
    }
  }

  static BasicWavenumber fromEnergy(Real energy) {
    using std::sqrt;
    if (!(energy > Real(0))) {
      throw InvalidWavenumber("energy must be positive, got " +
                              std::to_string(static_cast<double>(energy)));
    }
    return BasicWavenumber(sqrt(energy));
  }

  Real value() const { return k_; }
  Real energy() const { return k_ * k_; }

  friend bool operator==(const BasicWavenumber&, const BasicWavenumber&) = default;

 private:
  Real k_;
};

using Wavenumber = BasicWavenumber<double>;

/// V0 * delta(x - position). Only barriers (strength >= 0) are admitted.
struct DeltaSpike {
  double position = 0.0;
  double strength = 0.0;

  friend bool operator==(const DeltaSpike&, const DeltaSpike&) = default;
};

/// Ordered, strictly increasing set of delta spikes. Empty means free motion.
class PotentialArray {
 public:
  PotentialArray() = default;
  explicit PotentialArray(std::vector<DeltaSpike> spikes);

  std::span<const DeltaSpike> spikes() const { return spikes_; }
  std::size_t size() const { return spikes_.size(); }
  bool empty() const { return spikes_.empty(); }
  const DeltaSpike& operator[](std::size_t i) const { return spikes_[i]; }

  /// Every spike moved by `offset`.
  PotentialArray translated(double offset) const;

  friend bool operator==(const PotentialArray&, const PotentialArray&) = default;

 private:
  std::vector<DeltaSpike> spikes_;
};

}  // namespace deltascat
