#include "rho/trace.hpp"

#include <cmath>

namespace rho {

double round12(double v) {
  const double r = std::round(v * 1e12) / 1e12;
  return r == 0.0 ? 0.0 : r;  // normalize -0
}

nlohmann::ordered_json state_json(const std::string& label, const RegisterState& state) {
  nlohmann::ordered_json j;
  j["label"] = label;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : state.entries) {
    j["entries"].push_back({{"r1", e.r1},
                            {"r2", e.r2},
                            {"r3", e.r3},
                            {"re", round12(e.amp.real())},
                            {"im", round12(e.amp.imag())}});
  }
  j["norm"] = round12(state.norm());
  return j;
}

nlohmann::ordered_json distribution_json(const OutcomeDistribution& dist,
                                         double min_probability) {
  nlohmann::ordered_json j;
  j["ell_bits"] = dist.ell_bits;
  j["outcomes"] = nlohmann::ordered_json::array();
  for (std::uint64_t c = 0; c < dist.probabilities.size(); ++c) {
    const double p = dist.probabilities[c];
    if (p >= min_probability)
      j["outcomes"].push_back({{"c", c}, {"p", round12(p)}});
  }
  j["total"] = round12(dist.total());
  return j;
}

}  // namespace rho
