#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "deltascat/disorder.hpp"
#include "deltascat/resonance.hpp"
#include "deltascat/transfer_matrix.hpp"

using namespace deltascat;
constexpr double pi = std::numbers::pi;
constexpr double kFirstResonance = 0.94079904835254134;

namespace {

DisorderConfig trapConfig(int nTraps, std::uint64_t seed = 7) {
  return DisorderConfig{10.0, pi, nTraps, 1.0, 3.0, seed};
}

}  // namespace

TEST_CASE("config validation") {
  auto cfg = trapConfig(3);
  CHECK_NOTHROW(cfg.validate());
  cfg.gapMax = 0.5;
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
  cfg = trapConfig(0);
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
  cfg = trapConfig(2);
  cfg.gapMin = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
}

TEST_CASE("sampleTrapArray") {
  SUBCASE("zero-width gaps give a periodic lattice") {
    DisorderConfig cfg{10.0, pi, 5, 2.0, 2.0, 1};
    const auto arr = sampleTrapArray(cfg, 3);
    REQUIRE(arr.size() == 10);
    for (int i = 0; i < 5; ++i) {
      CHECK(arr[2 * i].position == doctest::Approx(i * (pi + 2.0)));
      CHECK(arr[2 * i + 1].position == doctest::Approx(i * (pi + 2.0) + pi));
    }
  }
  SUBCASE("three traps") {
    const auto cfg = trapConfig(3);
    const auto arr = sampleTrapArray(cfg, 0);
    REQUIRE(arr.size() == 6);
    CHECK(arr[0].position == 0.0);
    for (std::size_t i = 0; i < arr.size(); ++i) CHECK(arr[i].strength == 10.0);
    for (int t = 0; t < 3; ++t) CHECK(arr[2 * t + 1].position - arr[2 * t].position == doctest::Approx(pi));
    for (int t = 0; t + 1 < 3; ++t) {
      const double gap = arr[2 * t + 2].position - arr[2 * t + 1].position;
      CHECK(gap >= 1.0 - 1e-12);
      CHECK(gap <= 3.0 + 1e-12);
    }
  }
  SUBCASE("determinism and independence of realizations") {
    const auto cfg = trapConfig(20);
    CHECK(sampleTrapArray(cfg, 4) == sampleTrapArray(cfg, 4));
    CHECK_FALSE(sampleTrapArray(cfg, 4) == sampleTrapArray(cfg, 5));
    auto other = cfg;
    other.masterSeed = 8;
    CHECK_FALSE(sampleTrapArray(cfg, 4) == sampleTrapArray(other, 4));
  }
  SUBCASE("shorter chains are prefixes") {
    const auto longArr = sampleTrapArray(trapConfig(50), 2);
    const auto shortArr = sampleTrapArray(trapConfig(10), 2);
    for (std::size_t i = 0; i < shortArr.size(); ++i) CHECK(shortArr[i] == longArr[i]);
  }
  CHECK(realizationSeed(1, 0) != realizationSeed(0, 1));
}

TEST_CASE("logTransmission") {
  CHECK(logTransmission(PotentialArray{}, Wavenumber(1.0)) == 0.0);
  CHECK(logTransmission(PotentialArray({{0.0, 10.0}}), Wavenumber(1.0)) ==
        doctest::Approx(-3.258096538021482).epsilon(1e-13));

  SUBCASE("split into two composed halves") {
    const auto arr = sampleTrapArray(trapConfig(200), 0);
    const Wavenumber k(std::sqrt(2.0));
    const double whole = logTransmission(arr, k);
    CHECK(std::isfinite(whole));
    CHECK(whole < 0.0);
    const auto spikes = arr.spikes();
    const auto first = transferMatrix(PotentialArray({spikes.begin(), spikes.begin() + 200}), k);
    const auto second = transferMatrix(PotentialArray({spikes.begin() + 200, spikes.end()}), k);
    const std::vector<ScaledTransferMatrix> halves{first, second};
    CHECK(std::abs(logTransmission(compose(halves)) - whole) < 1e-8);
  }
  SUBCASE("global translation is a gauge") {
    const auto arr = sampleTrapArray(trapConfig(100), 1);
    const Wavenumber k(1.3);
    CHECK(std::abs(logTransmission(arr.translated(12.345), k) - logTransmission(arr, k)) < 1e-10);
  }
}

TEST_CASE("ensemble statistics") {
  const std::vector<int> lengths{25, 50, 100, 200};
  SUBCASE("periodic lattice at resonance is transparent") {
    DisorderConfig cfg{10.0, pi, 1, 2.0, 2.0, 3};
    const auto stats = ensembleLogTransmission(cfg, kFirstResonance * kFirstResonance, lengths, 4);
    for (const auto& p : stats.pointsPerN) {
      CHECK(std::abs(p.meanLnT) < 1e-10);
      CHECK(p.varLnT < 1e-20);
    }
  }
  SUBCASE("off resonance the mean decreases with N") {
    const auto stats = ensembleLogTransmission(trapConfig(1), 2.0, lengths, 50);
    for (std::size_t i = 1; i < stats.pointsPerN.size(); ++i) {
      CHECK(stats.pointsPerN[i].meanLnT < stats.pointsPerN[i - 1].meanLnT);
    }
    for (const auto& p : stats.pointsPerN) CHECK(p.nRealizations == 50);
  }
  SUBCASE("per-realization values equal independently sampled chains") {
    const auto cfg = trapConfig(1);
    const auto lnT = realizationLogTransmissions(cfg, 2.0, lengths, 3);
    for (int row = 0; row < 3; ++row) {
      for (std::size_t col = 0; col < lengths.size(); ++col) {
        auto c = cfg;
        c.nTraps = lengths[col];
        CHECK(lnT(row, static_cast<Eigen::Index>(col)) ==
              logTransmission(sampleTrapArray(c, static_cast<std::uint64_t>(row)), Wavenumber::fromEnergy(2.0)));
      }
    }
  }
  SUBCASE("doubling realizations keeps the original substreams") {
    const auto small = realizationLogTransmissions(trapConfig(1), 2.0, lengths, 40);
    const auto big = realizationLogTransmissions(trapConfig(1), 2.0, lengths, 80);
    CHECK(big.topRows(40) == small);
  }
  SUBCASE("bit-identical repeats") {
    const auto a = ensembleLogTransmission(trapConfig(1), 2.0, lengths, 64);
    const auto b = ensembleLogTransmission(trapConfig(1), 2.0, lengths, 64);
    for (std::size_t i = 0; i < lengths.size(); ++i) {
      CHECK(a.pointsPerN[i].meanLnT == b.pointsPerN[i].meanLnT);
      CHECK(a.pointsPerN[i].varLnT == b.pointsPerN[i].varLnT);
    }
  }
  const std::vector<int> bad{50, 25, 100};
  CHECK_THROWS_AS(ensembleLogTransmission(trapConfig(1), 2.0, bad, 10), ArgumentError);
  CHECK_THROWS_AS(ensembleLogTransmission(trapConfig(1), 2.0, lengths, 1), ArgumentError);
  CHECK_THROWS_AS(ensembleLogTransmission(trapConfig(1), 2.0, std::vector<int>{}, 10), ArgumentError);
}

TEST_CASE("Lyapunov fit") {
  SUBCASE("exactly linear data") {
    EnsembleStats s;
    for (int n : {10, 20, 30, 40}) s.pointsPerN.push_back({n, 1.5 - 0.2 * n, 0.0, 10});
    const auto est = lyapunovEstimate(s);
    CHECK(est.gammaPerTrap == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(est.interceptLnT == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(est.rSquared == doctest::Approx(1.0));
    CHECK(est.stdError < 1e-12);
    CHECK(est.localizationLengthTraps == doctest::Approx(10.0).epsilon(1e-10));
  }
  SUBCASE("flat data at resonance") {
    EnsembleStats s;
    for (int n : {25, 50, 100}) s.pointsPerN.push_back({n, 0.0, 0.0, 10});
    const auto est = lyapunovEstimate(s);
    CHECK(est.gammaPerTrap == 0.0);
    CHECK(std::isinf(est.localizationLengthTraps));
  }
  SUBCASE("noisy data: hand-computed regression") {
    EnsembleStats s;
    // y = {-1, -2.1, -2.9, -4.2} at x = {1, 2, 3, 4}: slope -1.04, intercept 0.05,
    // residuals {-0.01, -0.07, 0.17, -0.09}, SSres = 0.042, Sxx = 5, Syy = 5.45.
    const double ys[] = {-1.0, -2.1, -2.9, -4.2};
    for (int i = 0; i < 4; ++i) s.pointsPerN.push_back({i + 1, ys[i], 0.0, 2});
    const auto est = lyapunovEstimate(s);
    CHECK(est.gammaPerTrap == doctest::Approx(0.52));
    CHECK(est.interceptLnT == doctest::Approx(0.05));
    CHECK(est.stdError == doctest::Approx(std::sqrt(0.042 / 2.0 / 5.0)));
    CHECK(est.rSquared == doctest::Approx(1.0 - 0.042 / 5.45));
  }
  SUBCASE("too few points") {
    EnsembleStats s;
    s.pointsPerN = {{10, -1.0, 0.0, 2}, {20, -2.0, 0.0, 2}};
    CHECK_THROWS_AS(lyapunovEstimate(s), ArgumentError);
  }
  SUBCASE("per-length figure") {
    LyapunovEstimate est;
    est.gammaPerTrap = 0.5;
    CHECK(gammaPerLength(est, trapConfig(1)) == doctest::Approx(0.5 / (pi + 2.0)));
  }
}

TEST_CASE("transparency at resonance") {
  const Wavenumber k0(kFirstResonance);
  CHECK(resonanceTransparencyCheck(trapConfig(100), k0, 100) >= 1.0 - 1e-8);
  CHECK(std::abs(resonanceTransparencyCheck(trapConfig(1), k0, 5) - 1.0) < 1e-12);
  const auto single = phaseConditionRoots(DoubleBarrier(10.0, pi), 0).resonances[0];
  CHECK(std::abs(resonanceTransparencyCheck(trapConfig(1), single.k, 1) - single.transmissionAtPeak) < 1e-12);

  const Wavenumber detuned(kFirstResonance * 1.01);
  const double t10 = resonanceTransparencyCheck(trapConfig(10), detuned, 20);
  const double t100 = resonanceTransparencyCheck(trapConfig(100), detuned, 20);
  CHECK(t10 < 0.99);
  CHECK(t100 < t10);

  SUBCASE("every resonance, many seeds") {
    const auto roots = phaseConditionRoots(DoubleBarrier(10.0, pi), 2);
    for (std::uint64_t seed : {1ull, 2ull, 123456789ull}) {
      for (const auto& r : roots.resonances) {
        CHECK(resonanceTransparencyCheck(trapConfig(1000, seed), r.k, 3) >= 1.0 - 1e-8);
      }
    }
  }
  SUBCASE("spectrum spike through a random chain") {
    const auto arr = sampleTrapArray(trapConfig(50), 0);
    const double e0 = kFirstResonance * kFirstResonance;
    const std::vector<double> extra{e0};
    const auto s = transmissionSpectrum(arr, e0 - 0.01, e0 + 0.01, 2, extra);
    REQUIRE(s.points.size() == 3);
    CHECK(std::abs(s.points[1].transmission - 1.0) < 1e-8);
    CHECK(s.points[0].transmission < 1e-3);
    CHECK(s.points[2].transmission < 1e-3);
  }
}

TEST_CASE("million-spike chain stays in range") {
  const auto arr = sampleTrapArray(trapConfig(500000), 0);
  REQUIRE(arr.size() == 1000000);
  const double lnT = logTransmission(arr, Wavenumber(std::sqrt(2.0)));
  CHECK(std::isfinite(lnT));
  CHECK(lnT < -1e4);
}
