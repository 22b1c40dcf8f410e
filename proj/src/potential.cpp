#include "deltascat/potential.hpp"

#include <sstream>

namespace deltascat {

PotentialArray::PotentialArray(std::vector<DeltaSpike> spikes) : spikes_(std::move(spikes)) {
  for (std::size_t i = 0; i < spikes_.size(); ++i) {
    const auto& s = spikes_[i];
    if (!std::isfinite(s.position) || !std::isfinite(s.strength)) {
      throw ArgumentError("spike " + std::to_string(i) + " has a non-finite field");
    }
    if (s.strength < 0.0) {
      std::ostringstream os;
      os << "spike " << i << " has negative strength " << s.strength
         << " (only barriers are supported)";
      throw ArgumentError(os.str());
    }
    if (i > 0 && !(s.position > spikes_[i - 1].position)) {
      std::ostringstream os;
      os << "spike positions must be strictly increasing: spike " << i << " at " << s.position
         << " follows " << spikes_[i - 1].position;
      throw ArgumentError(os.str());
    }
  }
}

PotentialArray PotentialArray::translated(double offset) const {
  std::vector<DeltaSpike> moved(spikes_);
  for (auto& s : moved) s.position += offset;
  return PotentialArray(std::move(moved));
}

}  // namespace deltascat
