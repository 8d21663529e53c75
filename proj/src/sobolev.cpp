#include "dispersive/sobolev.hpp"

#include <cmath>

#include "dispersive/stencils.hpp"

namespace dispersive {

GridFunction discrete_derivative(const GridFunction& u, int m) {
    if (m == 0) return u;
    const BandedMatrix d = derivative_matrix(m, u.grid());
    return GridFunction(u.grid(), d.apply(u.values()));
}

double derivative_l2_norm(const GridFunction& u, int m) { return l2_norm(discrete_derivative(u, m)); }

double sobolev_norm(const GridFunction& u, int m) {
    if (m < 0) throw ValidationError("Sobolev index must be non-negative");
    double sum = 0.0;
    for (int j = 0; j <= m; ++j) {
        const double n = derivative_l2_norm(u, j);
        sum += n * n;
    }
    return std::sqrt(sum);
}

}  // namespace dispersive
