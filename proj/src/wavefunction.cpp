#include "deltascat/wavefunction.hpp"

#include <algorithm>
#include <limits>

#include "deltascat/transfer_matrix.hpp"

namespace deltascat {

namespace {

using Complex = std::complex<double>;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

ScatteringSolution::ScatteringSolution(Wavenumber k, std::vector<Region> regions)
    : k_(k), regions_(std::move(regions)) {
  if (regions_.empty()) throw ArgumentError("a scattering solution needs at least one region");
}

std::size_t ScatteringSolution::regionIndex(double x) const {
  auto it = std::lower_bound(regions_.begin(), regions_.end() - 1, x,
                             [](const Region& r, double v) { return r.xRight < v; });
  return static_cast<std::size_t>(it - regions_.begin());
}

Complex ScatteringSolution::psi(double x) const { return psi(x, regionIndex(x)); }

Complex ScatteringSolution::psi(double x, std::size_t region) const {
  const auto& r = regions_.at(region);
  const Complex e = std::polar(1.0, k_.value() * x);
  return r.a * e + r.b * std::conj(e);
}

Complex ScatteringSolution::derivative(double x, std::size_t region) const {
  const auto& r = regions_.at(region);
  const Complex e = std::polar(1.0, k_.value() * x);
  return Complex(0.0, k_.value()) * (r.a * e - r.b * std::conj(e));
}

ScatteringSolution reconstructWavefunction(const PotentialArray& array, Wavenumber k,
                                           Incidence incidence) {
  const auto spikes = array.spikes();
  const std::size_t n = spikes.size();
  std::vector<Region> regions(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    regions[j].xLeft = j == 0 ? -kInf : spikes[j - 1].position;
    regions[j].xRight = j == n ? kInf : spikes[j].position;
  }

  const auto amps = scatteringAmplitudes(transferMatrix(array, k));
  if (incidence == Incidence::Left) {
    // (t, 0) on the right, then step backwards with the inverse (unit-determinant) spike matrices.
    Complex a = amps.t;
    Complex b = 0.0;
    regions[n].a = a;
    regions[n].b = b;
    for (std::size_t j = n; j-- > 0;) {
      const auto m = deltaTransferMatrix(spikes[j], k).trueMatrix();
      const Complex na = m(1, 1) * a - m(0, 1) * b;
      const Complex nb = -m(1, 0) * a + m(0, 0) * b;
      a = na;
      b = nb;
      regions[j].a = a;
      regions[j].b = b;
    }
  } else {
    Complex a = 0.0;
    Complex b = amps.tPrime;
    regions[0].a = a;
    regions[0].b = b;
    for (std::size_t j = 0; j < n; ++j) {
      const auto m = deltaTransferMatrix(spikes[j], k).trueMatrix();
      const Complex na = m(0, 0) * a + m(0, 1) * b;
      const Complex nb = m(1, 0) * a + m(1, 1) * b;
      a = na;
      b = nb;
      regions[j + 1].a = a;
      regions[j + 1].b = b;
    }
  }
  return ScatteringSolution(k, std::move(regions));
}

}  // namespace deltascat
