#pragma once

#include <span>
#include <vector>

#include "deltascat/potential.hpp"
#include "deltascat/wavefunction.hpp"

namespace deltascat {

/// Two identical barriers V0 delta(x - x0) + V0 delta(x - x0 - L).
struct DoubleBarrier {
  double strength = 0.0;
  double separation = 1.0;
  double leftPosition = 0.0;

  DoubleBarrier(double strength, double separation, double leftPosition = 0.0);

  PotentialArray toArray() const;
};

struct Resonance {
  int index = 0;
  Wavenumber k{1.0};
  double energy = 0.0;
  double transmissionAtPeak = 0.0;
};

/// Resonances ordered by index; k strictly increasing.
struct ResonanceSet {
  std::vector<Resonance> resonances;
};

/// Roots of kL = pi/2 + atan(V0/(2k)) + n pi for n = 0..nMax, one per bracket
/// ((n + 1/2) pi / L, (n + 1) pi / L), bisected down to adjacent doubles. Each root's transmission is
/// recomputed from transfer matrices and checked against unity.
ResonanceSet phaseConditionRoots(const DoubleBarrier& barrier, int nMax);

struct RefinedResonance {
  Wavenumber k{1.0};
  double reflectance = 0.0;  // |r(k)|^2 at the returned k
  bool unimodal = true;      // false if the search bracket held several local minima
};

/// Local minimizer of |r(k)|^2 on [0.9 kGuess, 1.1 kGuess].
RefinedResonance refineResonance(const PotentialArray& array, Wavenumber kGuess);

/// Left-incidence solution e^{ikx} + R e^{-ikx} | T e^{ikx} of one barrier at `position`,
/// or its mirror image for right incidence. Built from the closed-form amplitudes.
ScatteringSolution singleBarrierSolution(double strength, Wavenumber k, Incidence incidence,
                                         double position = 0.0);

/// Left-incidence solution plus the right-incidence solution scaled by -R/T: the
/// left-moving waves cancel on the left, leaving pure e^{ikx} there.
ScatteringSolution superposeSingleBarrier(double strength, Wavenumber k, double position = 0.0);

/// Intermediate solutions of the joining construction for a double barrier.
struct JoiningConstruction {
  ScatteringSolution leftIncident;         // single left barrier, unit wave from the left
  ScatteringSolution rightIncidentScaled;  // single left barrier, from the right, times -R/T
  ScatteringSolution superposed;           // sum of the two above
  ScatteringSolution shiftedRight;         // right barrier, left incidence, rescaled to match
  double residual = 0.0;
};

JoiningConstruction joinSolutions(const DoubleBarrier& barrier, Wavenumber k);

/// Sine of the angle between the inter-barrier coefficient vectors of the superposed
/// left-barrier solution and the right-barrier solution. Zero exactly at resonances.
double joiningResidual(const DoubleBarrier& barrier, Wavenumber k);

struct SpectrumPoint {
  double energy = 0.0;
  double transmission = 0.0;
  double reflection = 0.0;
};

struct Spectrum {
  std::vector<SpectrumPoint> points;
};

/// |t|^2 and |r|^2 on the uniform grid eMin..eMax (both included), merged with any extra
/// energies, sorted by energy.
Spectrum transmissionSpectrum(const PotentialArray& array, double eMin, double eMax, int nPoints,
                              std::span<const double> extraEnergies = {});

}  // namespace deltascat
