#include "spinstar/trajectory.hpp"

#include <cmath>
#include <stdexcept>

namespace spinstar {

TimeGrid make_grid(double t_max, int n_points) {
    if (!(t_max >= 0.0) || !std::isfinite(t_max))
        throw std::invalid_argument("grid: t_max must be finite and >= 0");
    if (n_points < 2)
        throw std::invalid_argument("grid: need at least 2 points");
    TimeGrid grid;
    grid.t.resize(n_points);
    const double dt = t_max / (n_points - 1);
    for (int i = 0; i < n_points; ++i) grid.t[i] = dt * i;
    grid.t.back() = t_max;
    return grid;
}

const Column& Trajectory::column(const std::string& name) const {
    for (const auto& c : columns)
        if (c.name == name) return c;
    throw std::invalid_argument("trajectory: no column named " + name);
}

bool Trajectory::has_column(const std::string& name) const {
    for (const auto& c : columns)
        if (c.name == name) return true;
    return false;
}

DeviationMetrics deviation(const TimeGrid& grid, const std::vector<double>& a,
                           const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() != grid.t.size())
        throw std::invalid_argument("deviation: column lengths differ");
    DeviationMetrics m;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = std::abs(a[i] - b[i]);
        if (d > m.max_abs) {
            m.max_abs = d;
            m.t_at_max = grid.t[i];
        }
    }
    return m;
}

DeviationMetrics deviation(const Trajectory& traj, const std::string& a,
                           const std::string& b) {
    return deviation(traj.grid, traj.column(a).values, traj.column(b).values);
}

} // namespace spinstar
