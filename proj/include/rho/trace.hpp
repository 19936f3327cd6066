#pragma once

#include <string>

#include <json.hpp>

#include "rho/quantum_sim.hpp"

namespace rho {

// Amplitudes and probabilities are rounded to 12 decimals before
// serialization so traces are byte-stable across runs and machines.
double round12(double v);

nlohmann::ordered_json state_json(const std::string& label, const RegisterState& state);
nlohmann::ordered_json distribution_json(const OutcomeDistribution& dist,
                                         double min_probability = 1e-12);

}  // namespace rho
