#pragma once

#include <complex>
#include <vector>

#include "deltascat/potential.hpp"

namespace deltascat {

enum class Incidence { Left, Right };

/// psi(x) = a e^{ikx} + b e^{-ikx} on [xLeft, xRight]. The outermost regions are unbounded.
struct Region {
  double xLeft = 0.0;
  double xRight = 0.0;
  std::complex<double> a{0.0};
  std::complex<double> b{0.0};
};

/// Piecewise plane-wave solution of the scattering problem on a spike array.
class ScatteringSolution {
 public:
  ScatteringSolution(Wavenumber k, std::vector<Region> regions);

  Wavenumber k() const { return k_; }
  const std::vector<Region>& regions() const { return regions_; }

  /// Index of the region containing x; a point on a boundary belongs to the left region.
  std::size_t regionIndex(double x) const;

  std::complex<double> psi(double x) const;
  std::complex<double> psi(double x, std::size_t region) const;
  /// d psi / dx evaluated with the coefficients of `region`.
  std::complex<double> derivative(double x, std::size_t region) const;

 private:
  Wavenumber k_;
  std::vector<Region> regions_;
};

/// Unit-amplitude wave incident from `incidence`, nothing incoming from the far side.
/// Coefficients are propagated from the transmitted end toward the incident end.
ScatteringSolution reconstructWavefunction(const PotentialArray& array, Wavenumber k,
                                           Incidence incidence = Incidence::Left);

inline std::complex<double> evaluatePsi(const ScatteringSolution& sol, double x) {
  return sol.psi(x);
}

}  // namespace deltascat
