#include "deltascat/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "deltascat/tolerances.hpp"
#include "deltascat/transfer_matrix.hpp"

namespace deltascat {

namespace {

using Complex = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double reflectionMagnitude(const PotentialArray& array, double k) {
  return std::abs(scatteringAmplitudes(transferMatrix(array, Wavenumber(k))).r);
}

}  // namespace

DoubleBarrier::DoubleBarrier(double strength, double separation, double leftPosition)
    : strength(strength), separation(separation), leftPosition(leftPosition) {
  if (!(strength >= 0.0) || !std::isfinite(strength)) {
    throw ArgumentError("double barrier strength must be finite and non-negative");
  }
  if (!(separation > 0.0) || !std::isfinite(separation)) {
    throw ArgumentError("double barrier separation must be finite and positive");
  }
  if (!std::isfinite(leftPosition)) throw ArgumentError("double barrier position must be finite");
}

PotentialArray DoubleBarrier::toArray() const {
  return PotentialArray({{leftPosition, strength}, {leftPosition + separation, strength}});
}

ResonanceSet phaseConditionRoots(const DoubleBarrier& barrier, int nMax) {
  if (nMax < 0) throw ArgumentError("nMax must be non-negative");
  if (!(barrier.strength > 0.0)) {
    throw ArgumentError("the phase condition needs a positive barrier strength");
  }
  const double length = barrier.separation;
  const double v0 = barrier.strength;
  const PotentialArray array = barrier.toArray();

  ResonanceSet out;
  for (int n = 0; n <= nMax; ++n) {
    const double shift = kPi / 2 + n * kPi;
    auto phase = [&](double k) { return k * length - std::atan2(v0, 2 * k) - shift; };
    double lo = (n + 0.5) * kPi / length;
    double hi = (n + 1.0) * kPi / length;
    if (!(phase(lo) < 0.0) || !(phase(hi) > 0.0)) {
      std::ostringstream os;
      os << "phase equation not bracketed for n=" << n << " on [" << lo << ", " << hi << "]";
      throw NumericError(os.str());
    }
    // Run to adjacent doubles, well inside kRootWidth; very narrow resonances need it.
    for (;;) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (phase(mid) < 0.0 ? lo : hi) = mid;
    }
    const Wavenumber k(0.5 * (lo + hi));
    const double trans = scatteringAmplitudes(transferMatrix(array, k)).transmission();
    if (trans < 1.0 - tol::kUnitarity) {
      std::ostringstream os;
      os.precision(17);
      os << "root k=" << k.value() << " of the phase equation has transmission " << trans;
      throw NumericError(os.str());
    }
    out.resonances.push_back({n, k, k.energy(), trans});
  }
  return out;
}

RefinedResonance refineResonance(const PotentialArray& array, Wavenumber kGuess) {
  const double lo = 0.9 * kGuess.value();
  const double hi = 1.1 * kGuess.value();
  auto f = [&](double k) { return reflectionMagnitude(array, k); };

  constexpr int kCells = 64;
  std::vector<double> xs(kCells + 1), fs(kCells + 1);
  for (int i = 0; i <= kCells; ++i) {
    xs[i] = i == kCells ? hi : lo + (hi - lo) * i / kCells;
    fs[i] = f(xs[i]);
  }
  const auto [minIt, maxIt] = std::minmax_element(fs.begin(), fs.end());
  if (*maxIt == *minIt) {
    const double r = f(kGuess.value());
    return {kGuess, r * r, true};
  }

  int localMinima = 0;
  for (int i = 0; i <= kCells; ++i) {
    const bool belowLeft = i == 0 || fs[i] < fs[i - 1];
    const bool belowRight = i == kCells || fs[i] < fs[i + 1];
    if (belowLeft && belowRight) ++localMinima;
  }

  const auto best = static_cast<int>(minIt - fs.begin());
  double a = xs[std::max(best - 1, 0)];
  double b = xs[std::min(best + 1, kCells)];

  // Golden-section search on |r|, which is V-shaped at a zero and so resolvable to rounding.
  const double invPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invPhi * (b - a);
  double d = a + invPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < 200 && b - a > tol::kRootWidth; ++iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invPhi * (b - a);
      fd = f(d);
    }
  }
  double kBest = 0.5 * (a + b);
  double rBest = f(kBest);
  if (fs[best] < rBest) {
    kBest = xs[best];
    rBest = fs[best];
  }
  return {Wavenumber(kBest), rBest * rBest, localMinima == 1};
}

ScatteringSolution singleBarrierSolution(double strength, Wavenumber k, Incidence incidence,
                                         double position) {
  const auto amps = singleDeltaAmplitudes(strength, k);
  const Complex shift = std::polar(1.0, k.value() * position);  // e^{ikp}
  Region left{-kInf, position, 0.0, 0.0};
  Region right{position, kInf, 0.0, 0.0};
  if (incidence == Incidence::Left) {
    left.a = std::conj(shift);
    left.b = amps.r * shift;
    right.a = amps.t * std::conj(shift);
  } else {
    left.b = amps.t * shift;
    right.a = amps.r * std::conj(shift);
    right.b = shift;
  }
  return ScatteringSolution(k, {left, right});
}

namespace {

ScatteringSolution scaled(const ScatteringSolution& sol, Complex factor) {
  auto regions = sol.regions();
  for (auto& r : regions) {
    r.a *= factor;
    r.b *= factor;
  }
  return ScatteringSolution(sol.k(), std::move(regions));
}

ScatteringSolution sum(const ScatteringSolution& x, const ScatteringSolution& y) {
  auto regions = x.regions();
  for (std::size_t i = 0; i < regions.size(); ++i) {
    regions[i].a += y.regions()[i].a;
    regions[i].b += y.regions()[i].b;
  }
  return ScatteringSolution(x.k(), std::move(regions));
}

}  // namespace

ScatteringSolution superposeSingleBarrier(double strength, Wavenumber k, double position) {
  const auto amps = singleDeltaAmplitudes(strength, k);
  const auto incidentLeft = singleBarrierSolution(strength, k, Incidence::Left, position);
  const auto incidentRight = singleBarrierSolution(strength, k, Incidence::Right, position);
  auto out = sum(incidentLeft, scaled(incidentRight, -amps.r / amps.t));
  // The left region is purely right-moving by construction; drop the rounding residue.
  auto regions = out.regions();
  regions.front().b = 0.0;
  return ScatteringSolution(k, std::move(regions));
}

JoiningConstruction joinSolutions(const DoubleBarrier& barrier, Wavenumber k) {
  const double x0 = barrier.leftPosition;
  const double x1 = x0 + barrier.separation;
  const auto amps = singleDeltaAmplitudes(barrier.strength, k);

  auto leftIncident = singleBarrierSolution(barrier.strength, k, Incidence::Left, x0);
  auto rightScaled = scaled(singleBarrierSolution(barrier.strength, k, Incidence::Right, x0),
                            -amps.r / amps.t);
  auto superposed = superposeSingleBarrier(barrier.strength, k, x0);
  auto shifted = singleBarrierSolution(barrier.strength, k, Incidence::Left, x1);

  // Inter-barrier coefficients: right region of the superposition, left region of the shift.
  const Region& inner1 = superposed.regions().back();
  const Region& inner2 = shifted.regions().front();
  const double norm1 = std::hypot(std::abs(inner1.a), std::abs(inner1.b));
  const double norm2 = std::hypot(std::abs(inner2.a), std::abs(inner2.b));
  const Complex overlap = std::conj(inner2.a) * inner1.a + std::conj(inner2.b) * inner1.b;
  const double residual = std::abs(inner1.a * inner2.b - inner1.b * inner2.a) / (norm1 * norm2);

  return {std::move(leftIncident), std::move(rightScaled), std::move(superposed),
          scaled(shifted, overlap / (norm2 * norm2)), residual};
}

double joiningResidual(const DoubleBarrier& barrier, Wavenumber k) {
  return joinSolutions(barrier, k).residual;
}

Spectrum transmissionSpectrum(const PotentialArray& array, double eMin, double eMax, int nPoints,
                              std::span<const double> extraEnergies) {
  if (!(eMin > 0.0) || !(eMax > eMin) || !std::isfinite(eMax)) {
    throw ArgumentError("spectrum range must satisfy 0 < eMin < eMax");
  }
  if (nPoints < 2) throw ArgumentError("spectrum needs at least 2 points");
  std::vector<double> energies;
  energies.reserve(static_cast<std::size_t>(nPoints) + extraEnergies.size());
  for (int i = 0; i < nPoints; ++i) {
    energies.push_back(i == nPoints - 1 ? eMax : eMin + (eMax - eMin) * i / (nPoints - 1));
  }
  for (double e : extraEnergies) {
    if (!(e > 0.0) || !std::isfinite(e)) throw ArgumentError("extra energies must be positive");
    energies.push_back(e);
  }
  std::stable_sort(energies.begin(), energies.end());

  Spectrum out;
  out.points.reserve(energies.size());
  for (double e : energies) {
    const auto amps = scatteringAmplitudes(transferMatrix(array, Wavenumber::fromEnergy(e)));
    out.points.push_back({e, amps.transmission(), amps.reflection()});
  }
  return out;
}

}  // namespace deltascat
