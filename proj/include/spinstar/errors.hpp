#pragma once

#include <stdexcept>
#include <string>

namespace spinstar {

// Thrown when a sector's eigenvalue splitting collapses (F ~ 0) and the
// closed-form entries would divide by zero.  Callers fall back to the
// block oracle for that sector.
struct SingularSector : std::runtime_error {
    explicit SingularSector(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a series cannot reach the requested tolerance in double
// precision (terms grow past the roundoff floor before decaying).
struct NonConvergent : std::runtime_error {
    explicit NonConvergent(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by the infinite-bath closed form at alpha = 0, where it reduces
// to bare Rabi flopping; the exact solver handles that case directly.
struct DegenerateAlpha : std::runtime_error {
    explicit DegenerateAlpha(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by the dense oracle when 2^(N+2) basis states will not fit.
struct BathTooLarge : std::runtime_error {
    explicit BathTooLarge(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by the master-equation integrator when probability conservation
// drifts past its bound, which indicates the step size is too coarse.
struct StepTooLarge : std::runtime_error {
    explicit StepTooLarge(const std::string& what) : std::runtime_error(what) {}
};

} // namespace spinstar
