#pragma once

namespace deltascat::tol {

// Flux conservation, SU(1,1) structure, matching conditions.
inline constexpr double kUnitarity = 1e-10;
// Transfer-matrix amplitudes against the closed-form single-delta result.
inline constexpr double kOracle = 1e-12;
// Upper bound on the bracket width of resonance searches.
inline constexpr double kRootWidth = 1e-12;
// Joining-construction residual regarded as zero.
inline constexpr double kJoining = 1e-10;
// Transparency of random trap chains at a resonance.
inline constexpr double kTransparency = 1e-8;
// Stored |m22| below this is treated as degenerate.
inline constexpr double kUnderflowGuard = 1e-280;

}  // namespace deltascat::tol
