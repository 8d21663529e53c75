#include "dispersive/stencils.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace dispersive {

namespace {

constexpr double kMomentTol = 1e-10;

// Fornberg (1988): weights for derivatives 0..max_order at x0 = 0.
std::vector<long double> fornberg(int max_order, const std::vector<int>& offsets) {
    const int n = static_cast<int>(offsets.size());
    const int cols = max_order + 1;
    std::vector<long double> c(static_cast<std::size_t>(n * cols), 0.0L);
    auto at = [&](int j, int k) -> long double& { return c[static_cast<std::size_t>(j * cols + k)]; };

    long double c1 = 1.0L;
    long double c4 = offsets[0];
    at(0, 0) = 1.0L;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, max_order);
        long double c2 = 1.0L;
        const long double c5 = c4;
        c4 = offsets[static_cast<std::size_t>(i)];
        for (int j = 0; j < i; ++j) {
            const long double c3 = static_cast<long double>(offsets[static_cast<std::size_t>(i)]) -
                                   offsets[static_cast<std::size_t>(j)];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) {
                    at(i, k) = c1 * (k * at(i - 1, k - 1) - c5 * at(i - 1, k)) / c2;
                }
                at(i, 0) = -c1 * c5 * at(i - 1, 0) / c2;
            }
            for (int k = mn; k >= 1; --k) at(j, k) = (c4 * at(j, k) - k * at(j, k - 1)) / c3;
            at(j, 0) = c4 * at(j, 0) / c3;
        }
        c1 = c2;
    }

    std::vector<long double> w(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(j)] = at(j, max_order);
    return w;
}

long double factorial(int m) {
    long double f = 1.0L;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
}

}  // namespace

double Stencil::apply(std::span<const double> u, std::size_t center, double dx) const {
    double s = 0.0;
    for (std::size_t j = 0; j < offsets.size(); ++j) {
        s += weights[j] * u[static_cast<std::size_t>(static_cast<long>(center) + offsets[j])];
    }
    return s / std::pow(dx, order);
}

double moment_residual(const Stencil& s) {
    double worst = 0.0;
    const long double target = factorial(s.order);
    for (std::size_t p = 0; p < s.offsets.size(); ++p) {
        long double sum = 0.0L;
        long double scale = 0.0L;
        for (std::size_t j = 0; j < s.offsets.size(); ++j) {
            const long double term = s.weights[j] * std::pow(static_cast<long double>(s.offsets[j]), p);
            sum += term;
            scale += std::abs(term);
        }
        const long double expected = (static_cast<int>(p) == s.order) ? target : 0.0L;
        const long double denom = std::max(scale, 1.0L);
        worst = std::max(worst, static_cast<double>(std::abs(sum - expected) / denom));
    }
    return worst;
}

Stencil fd_weights(int m, std::vector<int> offsets) {
    if (m < 0) throw ValidationError("derivative order must be non-negative");
    std::vector<int> sorted = offsets;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ValidationError("stencil offsets must be distinct");
    }
    if (static_cast<int>(sorted.size()) < m + 1) {
        throw ValidationError("derivative of order " + std::to_string(m) + " needs at least " +
                              std::to_string(m + 1) + " offsets, got " + std::to_string(sorted.size()));
    }

    const std::vector<long double> w = fornberg(m, sorted);
    Stencil s;
    s.order = m;
    s.offsets = std::move(sorted);
    s.weights.reserve(w.size());
    for (long double v : w) {
        // Fornberg leaves signed zeros and 1e-20 dust on symmetric stencils.
        s.weights.push_back(std::abs(v) < 1e-15L ? 0.0 : static_cast<double>(v));
    }
    if (const double r = moment_residual(s); r > kMomentTol) {
        throw ValidationError("stencil moment check failed (residual " + std::to_string(r) + ")");
    }
    return s;
}

int stencil_width(int m) { return m + 3 - (m % 2); }

Stencil one_sided_stencil(int m, BoundaryEnd end) {
    const int count = (m == 0) ? 1 : m + 2;
    std::vector<int> offsets(static_cast<std::size_t>(count));
    std::iota(offsets.begin(), offsets.end(), end == BoundaryEnd::left ? 0 : -(count - 1));
    return fd_weights(m, std::move(offsets));
}

BandedMatrix derivative_matrix(int m, const Grid& grid) {
    if (m < 0) throw ValidationError("derivative order must be non-negative");
    const int width = (m == 0) ? 1 : stencil_width(m);
    const int n = static_cast<int>(grid.size());
    if (n < width) {
        throw ValidationError("grid with " + std::to_string(grid.intervals()) +
                              " intervals is too small for a " + std::to_string(width) +
                              "-point stencil of D^" + std::to_string(m));
    }
    const auto half = static_cast<std::size_t>(width - 1);
    BandedMatrix d(grid.size(), half, half);
    const double scale = 1.0 / std::pow(grid.spacing(), m);

    // Stencils depend only on the window start relative to the row.
    std::vector<Stencil> cache(static_cast<std::size_t>(width));
    std::vector<bool> built(static_cast<std::size_t>(width), false);
    for (int i = 0; i < n; ++i) {
        const int start = std::clamp(i - width / 2, 0, n - width);
        const int shift = i - start;
        if (!built[static_cast<std::size_t>(shift)]) {
            std::vector<int> offsets(static_cast<std::size_t>(width));
            std::iota(offsets.begin(), offsets.end(), -shift);
            cache[static_cast<std::size_t>(shift)] = fd_weights(m, std::move(offsets));
            built[static_cast<std::size_t>(shift)] = true;
        }
        const Stencil& s = cache[static_cast<std::size_t>(shift)];
        for (int j = 0; j < width; ++j) {
            d.at(static_cast<std::size_t>(i), static_cast<std::size_t>(start + j)) =
                s.weights[static_cast<std::size_t>(j)] * scale;
        }
    }
    return d.compacted();
}

std::vector<ConstraintRow> bc_rows(int l, const Grid& grid) {
    if (l < 1) throw ValidationError("dispersive order l must be at least 1");
    // Widest one-sided row has l + 2 points; keep the two ends disjoint.
    if (static_cast<int>(grid.size()) < 2 * (l + 2)) {
        throw ValidationError("grid too small for boundary rows of order " + std::to_string(l));
    }
    const double dx = grid.spacing();
    const std::size_t last = grid.size() - 1;
    std::vector<ConstraintRow> rows;
    rows.reserve(static_cast<std::size_t>(2 * l + 1));

    auto make = [&](int order, BoundaryEnd end) {
        const Stencil s = one_sided_stencil(order, end);
        ConstraintRow r;
        r.order = order;
        r.end = end;
        const double scale = 1.0 / std::pow(dx, order);
        for (double w : s.weights) r.coefficients.push_back(w * scale);
        if (end == BoundaryEnd::left) {
            r.row = static_cast<std::size_t>(order);
            r.first_column = 0;
        } else {
            r.row = last - static_cast<std::size_t>(order);
            r.first_column = last + 1 - s.weights.size();
        }
        rows.push_back(std::move(r));
    };
    for (int o = 0; o < l; ++o) make(o, BoundaryEnd::left);
    for (int o = 0; o <= l; ++o) make(o, BoundaryEnd::right);
    return rows;
}

double boundary_derivative(const GridFunction& u, int m, BoundaryEnd end) {
    if (m < 0) throw ValidationError("derivative order must be non-negative");
    const std::size_t count = (m == 0) ? 1 : static_cast<std::size_t>(m + 2);
    if (u.size() < count) {
        throw ValidationError("one-sided stencil for D^" + std::to_string(m) + " does not fit the grid");
    }
    const Stencil s = one_sided_stencil(m, end);
    const std::size_t center = (end == BoundaryEnd::left) ? 0 : u.size() - 1;
    return s.apply(u.values(), center, u.grid().spacing());
}

}  // namespace dispersive
