#include "dispersive/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dispersive {

Grid::Grid(double length, int intervals) : length_(length), intervals_(intervals) {
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw ValidationError("grid length must be positive and finite, got " + std::to_string(length));
    }
    if (intervals < kMinIntervals) {
        throw ValidationError("grid needs at least " + std::to_string(kMinIntervals) +
                              " intervals, got " + std::to_string(intervals));
    }
    spacing_ = length / intervals;
}

std::vector<double> Grid::nodes() const {
    std::vector<double> x(size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = node(i);
    return x;
}

Grid build_grid(double length, int intervals) { return Grid(length, intervals); }

GridFunction::GridFunction(const Grid& grid) : grid_(grid), values_(grid.size(), 0.0) {}

GridFunction::GridFunction(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw ValidationError("grid function has " + std::to_string(values_.size()) +
                              " values but the grid has " + std::to_string(grid_.size()) + " nodes");
    }
}

void require_same_grid(const GridFunction& u, const GridFunction& v) {
    if (!(u.grid() == v.grid())) throw ValidationError("grid functions live on different grids");
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
    require_same_grid(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
    require_same_grid(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

GridFunction& GridFunction::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

double trapezoid(std::span<const double> values, double dx) {
    if (values.empty()) return 0.0;
    double sum = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
    return sum * dx;
}

double l2_inner(const GridFunction& u, const GridFunction& v) {
    require_same_grid(u, v);
    std::vector<double> p(u.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = u[i] * v[i];
    return trapezoid(p, u.grid().spacing());
}

double l2_norm(const GridFunction& u) { return std::sqrt(l2_inner(u, u)); }

double weighted_f2(const GridFunction& f) {
    const Grid& g = f.grid();
    std::vector<double> p(f.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = (1.0 + g.node(i)) * f[i] * f[i];
    return trapezoid(p, g.spacing());
}

double sup_norm(const GridFunction& u) {
    double m = 0.0;
    for (double v : u.values()) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace dispersive
