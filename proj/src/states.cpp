#include "spinstar/states.hpp"

#include <cmath>
#include <stdexcept>

namespace spinstar {

void ModelParams::validate() const {
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("gamma must be finite and >= 0");
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("alpha must be finite and >= 0");
    if (bath_size < 1)
        throw std::invalid_argument("bath_size must be >= 1");
}

void XState::validate(double tol) const {
    const double diag[4] = {rho11, rho22, rho33, rho44};
    for (double d : diag)
        if (!(d >= -tol) || !std::isfinite(d))
            throw std::invalid_argument("XState: diagonal entry negative or not finite");
    const double trace = rho11 + rho22 + rho33 + rho44;
    if (std::abs(trace - 1.0) > tol)
        throw std::invalid_argument("XState: trace must be 1");
    if (std::abs(rho23) > std::sqrt(rho22 * rho33) + tol)
        throw std::invalid_argument("XState: |rho23| violates positivity bound");
    if (std::abs(rho14) > std::sqrt(rho11 * rho44) + tol)
        throw std::invalid_argument("XState: |rho14| violates positivity bound");
}

XState build_state(StateFamily family, double theta, double beta) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const cplx coh = std::polar(s * c, -beta);
    XState x;
    switch (family) {
    case StateFamily::phi_plus:
        x.rho22 = s * s; x.rho33 = c * c; x.rho23 = coh;
        break;
    case StateFamily::phi_minus:
        x.rho22 = s * s; x.rho33 = c * c; x.rho23 = -coh;
        break;
    case StateFamily::psi_plus:
        x.rho11 = s * s; x.rho44 = c * c; x.rho14 = coh;
        break;
    case StateFamily::psi_minus:
        x.rho11 = s * s; x.rho44 = c * c; x.rho14 = -coh;
        break;
    }
    return x;
}

StateFamily parse_family(const std::string& name) {
    if (name == "phi+") return StateFamily::phi_plus;
    if (name == "phi-") return StateFamily::phi_minus;
    if (name == "psi+") return StateFamily::psi_plus;
    if (name == "psi-") return StateFamily::psi_minus;
    throw std::invalid_argument("unknown state family: " + name);
}

std::string family_name(StateFamily family) {
    switch (family) {
    case StateFamily::phi_plus: return "phi+";
    case StateFamily::phi_minus: return "phi-";
    case StateFamily::psi_plus: return "psi+";
    case StateFamily::psi_minus: return "psi-";
    }
    return "?";
}

} // namespace spinstar
