#pragma once

#include <string>

#include "spinstar/model.hpp"

namespace spinstar {

// Prepared S+I states.  phi family: sin(theta)|+-> +/- e^{i beta} cos(theta)|-+>
// (single excitation shared between S and I).  psi family:
// sin(theta)|++> +/- e^{i beta} cos(theta)|--> (zero or two excitations).
enum class StateFamily { phi_plus, phi_minus, psi_plus, psi_minus };

XState build_state(StateFamily family, double theta, double beta);

StateFamily parse_family(const std::string& name); // "phi+", "phi-", "psi+", "psi-"
std::string family_name(StateFamily family);

} // namespace spinstar
