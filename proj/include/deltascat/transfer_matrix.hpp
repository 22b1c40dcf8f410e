#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>

#include "deltascat/errors.hpp"
#include "deltascat/potential.hpp"
#include "deltascat/tolerances.hpp"

namespace deltascat {

/// t, r for a unit wave incident from the left; tPrime, rPrime for incidence from the right.
template <typename Real>
struct BasicScatteringAmplitudes {
  std::complex<Real> t{1};
  std::complex<Real> r{0};
  std::complex<Real> tPrime{1};
  std::complex<Real> rPrime{0};

  Real transmission() const { return std::norm(t); }
  Real reflection() const { return std::norm(r); }
};

/// 2x2 transfer matrix in the (e^{ikx}, e^{-ikx}) basis, mapping coefficients on the left
/// of a segment to those on its right. The true matrix is `stored * 2^scaleExponent`, i.e.
/// `stored * exp(logScale())`; the stored part is kept with max-entry magnitude in [1/2, 2].
/// Rescaling is by powers of two, so it is exact and the exponent accumulates without
/// rounding. `determinant` is the determinant of the true matrix, tracked multiplicatively
/// so it survives long products.
template <typename Real>
struct BasicScaledTransferMatrix {
  using Complex = std::complex<Real>;
  using Matrix = Eigen::Matrix<Complex, 2, 2>;

  Matrix stored = Matrix::Identity();
  std::int64_t scaleExponent = 0;
  Complex determinant = Complex(1);

  static BasicScaledTransferMatrix identity() { return {}; }

  /// Wraps an arbitrary (true) matrix.
  static BasicScaledTransferMatrix fromMatrix(const Matrix& m) {
    BasicScaledTransferMatrix out;
    out.stored = m;
    out.determinant = m.determinant();
    out.normalize();
    return out;
  }

  const Complex& m11() const { return stored(0, 0); }
  const Complex& m12() const { return stored(0, 1); }
  const Complex& m21() const { return stored(1, 0); }
  const Complex& m22() const { return stored(1, 1); }

  /// Natural log of the factor the true matrix was divided by.
  Real logScale() const { return static_cast<Real>(scaleExponent) * std::numbers::ln2_v<Real>; }

  /// stored * 2^scaleExponent; overflows for long chains, intended for short products and tests.
  Matrix trueMatrix() const { return scaledBy(stored, scaleExponent); }

  void normalize() {
    using std::frexp;
    using std::isfinite;
    const Real peak = stored.cwiseAbs().maxCoeff();
    if (!(peak > Real(0)) || !isfinite(peak)) {
      throw NumericError("transfer matrix became zero or non-finite during rescaling");
    }
    if (peak < Real(0.5) || peak > Real(2)) {
      int e = 0;
      frexp(peak, &e);  // peak = f 2^e, f in [1/2, 1)
      stored = scaledBy(stored, -e);
      scaleExponent += e;
    }
  }

  /// The matrix of `*this` followed by `next` (i.e. next * this).
  BasicScaledTransferMatrix& append(const BasicScaledTransferMatrix& next) {
    stored = (next.stored * stored).eval();
    scaleExponent += next.scaleExponent;
    determinant *= next.determinant;
    normalize();
    return *this;
  }

  /// z * 2^e, exact unless it over- or underflows.
  static Complex scaledBy(const Complex& z, std::int64_t e) {
    using std::ldexp;
    const int ie = static_cast<int>(e);
    return {ldexp(z.real(), ie), ldexp(z.imag(), ie)};
  }
  static Matrix scaledBy(const Matrix& m, std::int64_t e) {
    return m.unaryExpr([e](const Complex& z) { return scaledBy(z, e); });
  }
};

using ScatteringAmplitudes = BasicScatteringAmplitudes<double>;
using ScaledTransferMatrix = BasicScaledTransferMatrix<double>;

/// Closed-form amplitudes of a single barrier: t = 2ik/(2ik - V0), r = V0/(2ik - V0).
template <typename Real>
BasicScatteringAmplitudes<Real> singleDeltaAmplitudes(Real strength, BasicWavenumber<Real> k) {
  using Complex = std::complex<Real>;
  const Complex twoIk(Real(0), Real(2) * k.value());
  const Complex denom = twoIk - Complex(strength);
  BasicScatteringAmplitudes<Real> out;
  out.t = twoIk / denom;
  out.r = Complex(strength) / denom;
  out.tPrime = out.t;
  out.rPrime = out.r;
  return out;
}

/// With beta = V0/(2k) and spike position a:
///   [[1 - i beta, -i beta e^{-2ika}], [i beta e^{2ika}, 1 + i beta]].
template <typename Real>
BasicScaledTransferMatrix<Real> deltaTransferMatrix(Real position, Real strength,
                                                    BasicWavenumber<Real> k) {
  using Complex = std::complex<Real>;
  const Real beta = strength / (Real(2) * k.value());
  const Complex phase = std::polar(Real(1), Real(2) * k.value() * position);
  const Complex ib(Real(0), beta);
  BasicScaledTransferMatrix<Real> out;
  out.stored << Complex(1) - ib, -ib * std::conj(phase), ib * phase, Complex(1) + ib;
  out.normalize();
  return out;
}

inline ScaledTransferMatrix deltaTransferMatrix(const DeltaSpike& spike, Wavenumber k) {
  return deltaTransferMatrix(spike.position, spike.strength, k);
}

/// Product of `ms` with ms[0] applied first (rightmost factor). Empty input gives identity.
template <typename Real>
BasicScaledTransferMatrix<Real> compose(std::span<const BasicScaledTransferMatrix<Real>> ms) {
  auto out = BasicScaledTransferMatrix<Real>::identity();
  for (const auto& m : ms) out.append(m);
  return out;
}

inline ScaledTransferMatrix compose(std::span<const ScaledTransferMatrix> ms) {
  return compose<double>(ms);
}

/// Composed matrix of the whole array, left to right.
inline ScaledTransferMatrix transferMatrix(const PotentialArray& array, Wavenumber k) {
  auto out = ScaledTransferMatrix::identity();
  for (const auto& s : array.spikes()) out.append(deltaTransferMatrix(s, k));
  return out;
}

namespace detail {
template <typename Real>
void requireNondegenerate(const BasicScaledTransferMatrix<Real>& m) {
  using std::abs;
  using std::isfinite;
  const Real mag = abs(m.m22());
  if (!isfinite(mag) || mag < Real(tol::kUnderflowGuard)) {
    throw NumericError("transfer matrix m22 is degenerate; amplitudes are undefined");
  }
}
}  // namespace detail

/// t = 1/m22, r = -m21/m22, rPrime = m12/m22, tPrime = det/m22, with the scale folded in.
template <typename Real>
BasicScatteringAmplitudes<Real> scatteringAmplitudes(const BasicScaledTransferMatrix<Real>& m) {
  using M = BasicScaledTransferMatrix<Real>;
  detail::requireNondegenerate(m);
  BasicScatteringAmplitudes<Real> out;
  out.t = M::scaledBy(Real(1) / m.m22(), -m.scaleExponent);
  out.r = -m.m21() / m.m22();
  out.rPrime = m.m12() / m.m22();
  out.tPrime = M::scaledBy(m.determinant / m.m22(), -m.scaleExponent);
  return out;
}

/// ln |t|^2 computed entirely in log space; valid when |t| underflows double.
template <typename Real>
Real logTransmission(const BasicScaledTransferMatrix<Real>& m) {
  using std::abs;
  using std::log;
  detail::requireNondegenerate(m);
  return Real(-2) * (m.logScale() + log(abs(m.m22())));
}

}  // namespace deltascat
