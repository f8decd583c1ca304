#pragma once

#include <complex>

namespace spinstar {

using cplx = std::complex<double>;

// Couplings of the star chain: central spin S talks to the intermediate
// spin I with strength gamma, I talks to the N-spin bath with collective
// strength alpha (per-spin coupling alpha / (2 sqrt(N))).  hbar = 1.
struct ModelParams {
    double gamma = 1.0;
    double alpha = 0.0;
    int bath_size = 1;

    void validate() const;
};

// X-shaped two-qubit density matrix of the S+I pair in the product basis
// |++>, |+->, |-+>, |--> (first label S, second I).  Only the diagonal,
// the inner coherence rho23 and the outer coherence rho14 are nonzero;
// the evolution preserves that shape when the bath starts unpolarized.
struct XState {
    double rho11 = 0.0;
    double rho22 = 0.0;
    double rho33 = 0.0;
    double rho44 = 0.0;
    cplx rho23{0.0, 0.0};
    cplx rho14{0.0, 0.0};

    // trace one, nonnegative diagonal, coherences inside their positivity
    // bounds |rho23|^2 <= rho22*rho33, |rho14|^2 <= rho11*rho44
    void validate(double tol = 1e-12) const;
};

} // namespace spinstar
