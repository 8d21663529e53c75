#pragma once

#include "dispersive/grid.hpp"

namespace dispersive {

/// (sum_{j<=m} ||D^j u||^2)^{1/2} with discrete derivatives and trapezoid norms.
double sobolev_norm(const GridFunction& u, int m);

/// ||D^m u|| alone (discrete derivative, trapezoid norm).
double derivative_l2_norm(const GridFunction& u, int m);

/// Nodal values of D^m u from derivative_matrix(m).
GridFunction discrete_derivative(const GridFunction& u, int m);

}  // namespace dispersive
