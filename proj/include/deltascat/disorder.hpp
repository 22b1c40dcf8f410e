#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "deltascat/potential.hpp"

namespace deltascat {

/// Chain of identical two-barrier traps with i.i.d. uniform gaps between consecutive traps.
struct DisorderConfig {
  double trapStrength = 10.0;
  double trapSeparation = 3.141592653589793;
  int nTraps = 1;
  double gapMin = 1.0;
  double gapMax = 3.0;
  std::uint64_t masterSeed = 0;

  /// Throws ArgumentError on a malformed configuration.
  void validate() const;
  double meanPeriod() const { return trapSeparation + 0.5 * (gapMin + gapMax); }
};

/// Name of the random stream recorded in run manifests.
inline constexpr std::string_view kGeneratorIdentity = "mt19937_64 seeded by splitmix64(masterSeed, realization)";

/// Seed of realization `index`: splitmix64(masterSeed ^ splitmix64(index)). Realizations are
/// independent streams, so any one can be regenerated without the others.
std::uint64_t realizationSeed(std::uint64_t masterSeed, std::uint64_t index);

/// 2 * nTraps spikes. Trap i sits at [x_i, x_i + L], x_0 = 0, x_{i+1} = x_i + L + gap_i.
/// A realization with fewer traps is a prefix of one with more.
PotentialArray sampleTrapArray(const DisorderConfig& cfg, std::uint64_t realizationIndex);

/// ln |t|^2 of the array, never leaving log space.
double logTransmission(const PotentialArray& array, Wavenumber k);

struct EnsemblePoint {
  int nTraps = 0;
  double meanLnT = 0.0;
  double varLnT = 0.0;
  int nRealizations = 0;
};

struct EnsembleStats {
  double energy = 0.0;
  std::vector<EnsemblePoint> pointsPerN;
};

/// ln T for realizations 0..nRealizations-1 (rows) at each chain length in nTrapsList
/// (columns). Each row is produced from a single stream, truncated at every listed length.
Eigen::MatrixXd realizationLogTransmissions(const DisorderConfig& cfg, double energy,
                                            std::span<const int> nTrapsList, int nRealizations);

EnsembleStats ensembleLogTransmission(const DisorderConfig& cfg, double energy,
                                      std::span<const int> nTrapsList, int nRealizations);

struct LyapunovEstimate {
  double gammaPerTrap = 0.0;
  double interceptLnT = 0.0;
  double stdError = 0.0;  // standard error of the fitted slope of meanLnT vs N
  double rSquared = 0.0;
  double localizationLengthTraps = 0.0;
};

/// Least-squares fit meanLnT = intercept - 2 gamma N over the ensemble points.
LyapunovEstimate lyapunovEstimate(const EnsembleStats& stats);

/// gamma per unit length, using the mean trap period of `cfg`.
double gammaPerLength(const LyapunovEstimate& est, const DisorderConfig& cfg);

/// Smallest |t|^2 over realizations 0..nRealizations-1 at kResonance.
double resonanceTransparencyCheck(const DisorderConfig& cfg, Wavenumber kResonance,
                                  int nRealizations);

}  // namespace deltascat
