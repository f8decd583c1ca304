#pragma once

#include <map>
#include <string>
#include <vector>

namespace spinstar {

// Uniform grid of n_points times from 0 to t_max inclusive.
struct TimeGrid {
    std::vector<double> t;
};

TimeGrid make_grid(double t_max, int n_points);

// One named column of samples over a shared grid, e.g. "rho11_exact".
struct Column {
    std::string name;
    std::vector<double> values;
};

struct Trajectory {
    TimeGrid grid;
    std::vector<Column> columns;
    std::map<std::string, std::string> metadata;

    const Column& column(const std::string& name) const;
    bool has_column(const std::string& name) const;
};

struct DeviationMetrics {
    double max_abs = 0.0;
    double t_at_max = 0.0;
};

DeviationMetrics deviation(const Trajectory& traj, const std::string& a,
                           const std::string& b);
DeviationMetrics deviation(const TimeGrid& grid, const std::vector<double>& a,
                           const std::vector<double>& b);

} // namespace spinstar
