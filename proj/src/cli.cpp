#include "deltascat/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <ostream>
#include <sstream>

#include "deltascat/disorder.hpp"
#include "deltascat/errors.hpp"
#include "deltascat/output.hpp"
#include "deltascat/resonance.hpp"
#include "deltascat/transfer_matrix.hpp"
#include "deltascat/wavefunction.hpp"

namespace deltascat::cli {

namespace {

struct Common {
  std::string out;
  std::string format = "csv";
};

void addCommon(CLI::App& sub, Common& common) {
  sub.add_option("--out", common.out, "output file")->required();
  sub.add_option("--format", common.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

// Flags exactly as they were given, in declaration order.
RunManifest manifestFor(const CLI::App& sub) {
  RunManifest m;
  m.toolVersion = std::string(kToolVersion);
  m.subcommand = sub.get_name();
  m.timestampUtc = utcTimestamp();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    std::string value;
    for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
    std::string key = opt->get_name();
    key.erase(0, key.find_first_not_of('-'));
    m.parameters.emplace_back(std::move(key), std::move(value));
  }
  return m;
}

void emit(const Common& common, const OutputTable& table, const RunManifest& manifest) {
  writeTable(common.out, table, manifest,
             common.format == "json" ? OutputFormat::Json : OutputFormat::Csv);
}

struct SpectrumArgs {
  double v0 = 0.0, sep = 0.0;
  int nTraps = 0;
  double gapMin = 0.0, gapMax = 0.0;
  std::uint64_t seed = 0;
  double eMin = 0.0, eMax = 0.0;
  int nPoints = 0;
  std::vector<double> includeK;
};

struct ResonancesArgs {
  double v0 = 0.0, sep = 0.0;
  int nMax = 0;
};

struct WavefunctionArgs {
  double v0 = 0.0, sep = 0.0, k = 0.0, xMin = 0.0, xMax = 0.0;
  int nPoints = 0;
};

struct LocalizeArgs {
  double v0 = 0.0, sep = 0.0, gapMin = 0.0, gapMax = 0.0, energy = 0.0;
  std::vector<int> nTrapsList;
  int realizations = 0;
  std::uint64_t seed = 0;
};

void runSpectrum(const CLI::App& sub, const SpectrumArgs& a, const Common& common) {
  RunManifest manifest = manifestFor(sub);
  PotentialArray array;
  if (sub.count("--ntraps") > 0) {
    DisorderConfig cfg{a.v0, a.sep, a.nTraps, a.gapMin, a.gapMax, a.seed};
    array = sampleTrapArray(cfg, 0);
    manifest.masterSeed = a.seed;
    manifest.generatorIdentity = std::string(kGeneratorIdentity);
  } else {
    array = DoubleBarrier(a.v0, a.sep).toArray();
  }
  std::vector<double> extra;
  for (double k : a.includeK) extra.push_back(Wavenumber(k).energy());
  const Spectrum spectrum = transmissionSpectrum(array, a.eMin, a.eMax, a.nPoints, extra);

  OutputTable table({"energy", "transmission", "reflection"});
  for (const auto& p : spectrum.points) table.addRow({p.energy, p.transmission, p.reflection});
  emit(common, table, manifest);
}

void runResonances(const CLI::App& sub, const ResonancesArgs& a, const Common& common) {
  const DoubleBarrier barrier(a.v0, a.sep);
  const ResonanceSet set = phaseConditionRoots(barrier, a.nMax);
  OutputTable table({"n", "k", "energy", "transmissionAtPeak", "joiningResidual"});
  for (const auto& r : set.resonances) {
    table.addRow({static_cast<double>(r.index), r.k.value(), r.energy, r.transmissionAtPeak,
                  joiningResidual(barrier, r.k)});
  }
  emit(common, table, manifestFor(sub));
}

void runWavefunction(const CLI::App& sub, const WavefunctionArgs& a, const Common& common) {
  if (!(a.xMax > a.xMin)) throw ArgumentError("--xmax must exceed --xmin");
  if (a.nPoints < 2) throw ArgumentError("--npoints must be at least 2");
  const auto sol = reconstructWavefunction(DoubleBarrier(a.v0, a.sep).toArray(), Wavenumber(a.k),
                                           Incidence::Left);
  OutputTable table({"x", "rePsi", "imPsi", "absPsi"});
  for (int i = 0; i < a.nPoints; ++i) {
    const double x = i == a.nPoints - 1 ? a.xMax : a.xMin + (a.xMax - a.xMin) * i / (a.nPoints - 1);
    const auto psi = sol.psi(x);
    table.addRow({x, psi.real(), psi.imag(), std::abs(psi)});
  }
  emit(common, table, manifestFor(sub));
}

void runLocalize(const CLI::App& sub, const LocalizeArgs& a, const Common& common) {
  const DisorderConfig cfg{a.v0, a.sep, 1, a.gapMin, a.gapMax, a.seed};
  cfg.validate();
  const EnsembleStats stats = ensembleLogTransmission(cfg, a.energy, a.nTrapsList, a.realizations);
  const LyapunovEstimate est = lyapunovEstimate(stats);

  RunManifest manifest = manifestFor(sub);
  manifest.masterSeed = a.seed;
  manifest.generatorIdentity = std::string(kGeneratorIdentity);
  const double perLength = gammaPerLength(est, cfg);
  manifest.results = {
      {"gammaPerTrap", est.gammaPerTrap},
      {"interceptLnT", est.interceptLnT},
      {"stdError", est.stdError},
      {"rSquared", est.rSquared},
      {"localizationLengthTraps", est.localizationLengthTraps},
      {"gammaPerLength", perLength},
      {"localizationLength", std::isinf(est.localizationLengthTraps)
                                 ? est.localizationLengthTraps
                                 : 1.0 / perLength},
  };
  OutputTable table({"nTraps", "meanLnT", "varLnT"});
  for (const auto& p : stats.pointsPerN) table.addRow({static_cast<double>(p.nTraps), p.meanLnT, p.varLnT});
  emit(common, table, manifest);
}

std::string oneLine(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scattering on arrays of delta barriers: spectra, resonances, localization",
               "deltascat"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  Common common;

  SpectrumArgs sp;
  CLI::App* spectrum = app.add_subcommand("spectrum", "transmission vs energy");
  spectrum->add_option("--v0", sp.v0, "barrier strength")->required();
  spectrum->add_option("--sep", sp.sep, "barrier separation within a trap")->required();
  CLI::Option* nTraps = spectrum->add_option("--ntraps", sp.nTraps, "random chain of this many traps");
  CLI::Option* spGapMin = spectrum->add_option("--gap-min", sp.gapMin, "smallest inter-trap gap");
  CLI::Option* spGapMax = spectrum->add_option("--gap-max", sp.gapMax, "largest inter-trap gap");
  CLI::Option* spSeed = spectrum->add_option("--seed", sp.seed, "master seed");
  nTraps->needs(spGapMin)->needs(spGapMax);
  spGapMin->needs(nTraps);
  spGapMax->needs(nTraps);
  spSeed->needs(nTraps);
  spectrum->add_option("--emin", sp.eMin, "lowest energy")->required();
  spectrum->add_option("--emax", sp.eMax, "highest energy")->required();
  spectrum->add_option("--npoints", sp.nPoints, "grid points")->required();
  spectrum->add_option("--include-k", sp.includeK, "extra wavenumber to evaluate (repeatable)")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  addCommon(*spectrum, common);

  ResonancesArgs rs;
  CLI::App* resonances = app.add_subcommand("resonances", "resonance tunneling energies");
  resonances->add_option("--v0", rs.v0, "barrier strength")->required();
  resonances->add_option("--sep", rs.sep, "barrier separation")->required();
  resonances->add_option("--nmax", rs.nMax, "highest resonance index")->required();
  addCommon(*resonances, common);

  WavefunctionArgs wf;
  CLI::App* wavefunction = app.add_subcommand("wavefunction", "left-incidence scattering solution");
  wavefunction->add_option("--v0", wf.v0, "barrier strength")->required();
  wavefunction->add_option("--sep", wf.sep, "barrier separation")->required();
  wavefunction->add_option("--k", wf.k, "wavenumber")->required();
  wavefunction->add_option("--xmin", wf.xMin, "first sample")->required();
  wavefunction->add_option("--xmax", wf.xMax, "last sample")->required();
  wavefunction->add_option("--npoints", wf.nPoints, "samples")->required();
  addCommon(*wavefunction, common);

  LocalizeArgs lz;
  CLI::App* localize = app.add_subcommand("localize", "ensemble ln T vs chain length");
  localize->add_option("--v0", lz.v0, "barrier strength")->required();
  localize->add_option("--sep", lz.sep, "barrier separation within a trap")->required();
  localize->add_option("--gap-min", lz.gapMin, "smallest inter-trap gap")->required();
  localize->add_option("--gap-max", lz.gapMax, "largest inter-trap gap")->required();
  localize->add_option("--energy", lz.energy, "energy")->required();
  localize->add_option("--ntraps-list", lz.nTrapsList, "comma-separated chain lengths")
      ->required()
      ->delimiter(',');
  localize->add_option("--realizations", lz.realizations, "realizations per chain length")->required();
  localize->add_option("--seed", lz.seed, "master seed")->required();
  addCommon(*localize, common);

  std::vector<const char*> argv{"deltascat"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "deltascat: " << oneLine(e.what()) << '\n';
    return kExitUsage;
  }

  try {
    if (*spectrum) runSpectrum(*spectrum, sp, common);
    else if (*resonances) runResonances(*resonances, rs, common);
    else if (*wavefunction) runWavefunction(*wavefunction, wf, common);
    else if (*localize) runLocalize(*localize, lz, common);
  } catch (const ArgumentError& e) {
    err << "deltascat: " << oneLine(e.what()) << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "deltascat: numeric failure: " << oneLine(e.what()) << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "deltascat: " << oneLine(e.what()) << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace deltascat::cli
