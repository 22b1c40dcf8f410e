#include "deltascat/disorder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "deltascat/transfer_matrix.hpp"

namespace deltascat {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

class GapStream {
 public:
  GapStream(const DisorderConfig& cfg, std::uint64_t index)
      : engine_(realizationSeed(cfg.masterSeed, index)), lo_(cfg.gapMin), width_(cfg.gapMax - cfg.gapMin) {}

  double next() {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo_ + width_ * u;
  }

 private:
  std::mt19937_64 engine_;
  double lo_;
  double width_;
};

void validateLengths(std::span<const int> nTrapsList) {
  if (nTrapsList.empty()) throw ArgumentError("nTrapsList must not be empty");
  for (std::size_t i = 0; i < nTrapsList.size(); ++i) {
    if (nTrapsList[i] < 1) throw ArgumentError("trap counts must be at least 1");
    if (i > 0 && nTrapsList[i] <= nTrapsList[i - 1]) {
      throw ArgumentError("nTrapsList must be strictly increasing");
    }
  }
}

// Runs body(i) for i in [0, n) over a few worker threads; each index is written by one thread.
template <typename Body>
void parallelFor(int n, Body body) {
  const int workers =
      std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, std::max(n / 16, 1));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([=, &body] {
      for (int i = w; i < n; i += workers) body(i);
    });
  }
}

}  // namespace

void DisorderConfig::validate() const {
  auto positiveFinite = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!(trapStrength >= 0.0) || !std::isfinite(trapStrength)) {
    throw ArgumentError("trap strength must be finite and non-negative");
  }
  if (!positiveFinite(trapSeparation)) throw ArgumentError("trap separation must be positive");
  if (nTraps < 1) throw ArgumentError("nTraps must be at least 1");
  if (!(gapMin >= 0.0) || !std::isfinite(gapMax) || gapMax < gapMin) {
    throw ArgumentError("gaps must satisfy 0 <= gapMin <= gapMax");
  }
}

std::uint64_t realizationSeed(std::uint64_t masterSeed, std::uint64_t index) {
  return splitmix64(masterSeed ^ splitmix64(index));
}

PotentialArray sampleTrapArray(const DisorderConfig& cfg, std::uint64_t realizationIndex) {
  cfg.validate();
  GapStream gaps(cfg, realizationIndex);
  std::vector<DeltaSpike> spikes;
  spikes.reserve(2 * static_cast<std::size_t>(cfg.nTraps));
  double x = 0.0;
  for (int i = 0; i < cfg.nTraps; ++i) {
    if (i > 0) x += cfg.trapSeparation + gaps.next();
    spikes.push_back({x, cfg.trapStrength});
    spikes.push_back({x + cfg.trapSeparation, cfg.trapStrength});
  }
  return PotentialArray(std::move(spikes));
}

double logTransmission(const PotentialArray& array, Wavenumber k) {
  return logTransmission(transferMatrix(array, k));
}

Eigen::MatrixXd realizationLogTransmissions(const DisorderConfig& cfg, double energy,
                                            std::span<const int> nTrapsList, int nRealizations) {
  validateLengths(nTrapsList);
  if (nRealizations < 1) throw ArgumentError("nRealizations must be at least 1");
  const Wavenumber k = Wavenumber::fromEnergy(energy);
  DisorderConfig longest = cfg;
  longest.nTraps = nTrapsList.back();
  longest.validate();

  Eigen::MatrixXd out(nRealizations, static_cast<Eigen::Index>(nTrapsList.size()));
  parallelFor(nRealizations, [&](int row) {
    const PotentialArray array = sampleTrapArray(longest, static_cast<std::uint64_t>(row));
    auto m = ScaledTransferMatrix::identity();
    std::size_t col = 0;
    for (int trap = 0; trap < longest.nTraps; ++trap) {
      m.append(deltaTransferMatrix(array[2 * trap], k));
      m.append(deltaTransferMatrix(array[2 * trap + 1], k));
      if (trap + 1 == nTrapsList[col]) {
        out(row, static_cast<Eigen::Index>(col)) = logTransmission(m);
        ++col;
      }
    }
  });
  return out;
}

EnsembleStats ensembleLogTransmission(const DisorderConfig& cfg, double energy,
                                      std::span<const int> nTrapsList, int nRealizations) {
  if (nRealizations < 2) throw ArgumentError("nRealizations must be at least 2");
  const Eigen::MatrixXd lnT = realizationLogTransmissions(cfg, energy, nTrapsList, nRealizations);
  EnsembleStats stats;
  stats.energy = energy;
  for (Eigen::Index col = 0; col < lnT.cols(); ++col) {
    // Accumulated in realization order so the result is independent of threading.
    double sum = 0.0;
    for (Eigen::Index row = 0; row < lnT.rows(); ++row) sum += lnT(row, col);
    const double mean = sum / nRealizations;
    double ss = 0.0;
    for (Eigen::Index row = 0; row < lnT.rows(); ++row) {
      const double d = lnT(row, col) - mean;
      ss += d * d;
    }
    stats.pointsPerN.push_back({nTrapsList[col], mean, ss / (nRealizations - 1), nRealizations});
  }
  return stats;
}

LyapunovEstimate lyapunovEstimate(const EnsembleStats& stats) {
  const auto& pts = stats.pointsPerN;
  std::vector<int> distinct;
  for (const auto& p : pts) distinct.push_back(p.nTraps);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3) throw ArgumentError("a Lyapunov fit needs at least 3 distinct N values");

  const double n = static_cast<double>(pts.size());
  double meanX = 0.0, meanY = 0.0;
  for (const auto& p : pts) {
    meanX += p.nTraps;
    meanY += p.meanLnT;
  }
  meanX /= n;
  meanY /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& p : pts) {
    const double dx = p.nTraps - meanX;
    const double dy = p.meanLnT - meanY;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double slope = sxy / sxx;
  const double intercept = meanY - slope * meanX;
  double ssRes = 0.0;
  for (const auto& p : pts) {
    const double e = p.meanLnT - (intercept + slope * p.nTraps);
    ssRes += e * e;
  }

  LyapunovEstimate est;
  est.gammaPerTrap = -slope / 2.0;
  est.interceptLnT = intercept;
  est.stdError = std::sqrt(ssRes / (n - 2.0) / sxx);
  est.rSquared = syy > 0.0 ? std::clamp(1.0 - ssRes / syy, 0.0, 1.0) : 1.0;
  if (syy == 0.0) est.gammaPerTrap = 0.0;  // flat data: avoid a signed zero
  est.localizationLengthTraps = est.gammaPerTrap <= est.stdError
                                    ? std::numeric_limits<double>::infinity()
                                    : 1.0 / est.gammaPerTrap;
  return est;
}

double gammaPerLength(const LyapunovEstimate& est, const DisorderConfig& cfg) {
  return est.gammaPerTrap / cfg.meanPeriod();
}

double resonanceTransparencyCheck(const DisorderConfig& cfg, Wavenumber kResonance,
                                  int nRealizations) {
  if (nRealizations < 1) throw ArgumentError("nRealizations must be at least 1");
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < nRealizations; ++i) {
    const double lnT = logTransmission(sampleTrapArray(cfg, static_cast<std::uint64_t>(i)), kResonance);
    worst = std::min(worst, std::exp(lnT));
  }
  return worst;
}

}  // namespace deltascat
