#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dispersive/errors.hpp"

namespace dispersive {

/**
 * Uniform mesh on [0, L] with N intervals (N + 1 nodes).
 *
 * Node coordinates are x_i = i * dx with x_N pinned to L exactly.
 * Operators that need wide stencils check their own, stricter, size
 * requirement (see StationaryOperator).
 */
class Grid {
public:
    static constexpr int kMinIntervals = 4;

    Grid(double length, int intervals);

    double length() const { return length_; }
    int intervals() const { return intervals_; }
    std::size_t size() const { return static_cast<std::size_t>(intervals_) + 1; }
    double spacing() const { return spacing_; }

    double node(std::size_t i) const {
        return i == static_cast<std::size_t>(intervals_) ? length_ : static_cast<double>(i) * spacing_;
    }
    std::vector<double> nodes() const;

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.length_ == b.length_ && a.intervals_ == b.intervals_;
    }

private:
    double length_;
    int intervals_;
    double spacing_;
};

Grid build_grid(double length, int intervals);

/// Nodal samples of a function on a Grid.
class GridFunction {
public:
    explicit GridFunction(const Grid& grid);
    GridFunction(const Grid& grid, std::vector<double> values);

    template <typename F>
    static GridFunction sample(const Grid& grid, F&& f) {
        std::vector<double> v(grid.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.node(i));
        return GridFunction(grid, std::move(v));
    }

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }
    const std::vector<double>& vector() const { return values_; }

    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }

    GridFunction& operator+=(const GridFunction& other);
    GridFunction& operator-=(const GridFunction& other);
    GridFunction& operator*=(double s);

    friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
    friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
    friend GridFunction operator*(double s, GridFunction a) { return a *= s; }

private:
    Grid grid_;
    std::vector<double> values_;
};

void require_same_grid(const GridFunction& u, const GridFunction& v);

/// Composite trapezoid approximation of the L2 pairing on (0, L).
double l2_inner(const GridFunction& u, const GridFunction& v);
double l2_norm(const GridFunction& u);

/// Trapezoid approximation of the weighted functional  int_0^L (1 + x) f(x)^2 dx.
double weighted_f2(const GridFunction& f);

double sup_norm(const GridFunction& u);

/// Trapezoid rule on raw nodal values with spacing dx.
double trapezoid(std::span<const double> values, double dx);

}  // namespace dispersive
