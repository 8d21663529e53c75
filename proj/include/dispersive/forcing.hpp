#pragma once

#include <string>
#include <variant>
#include <vector>

#include "dispersive/grid.hpp"
#include "dispersive/polynomial.hpp"
#include "dispersive/problem.hpp"

namespace dispersive {

namespace forcing {

struct Zero {
    friend bool operator==(const Zero&, const Zero&) = default;
};

/// amp * exp(-((x - x0) / sigma)^2)
struct Gauss {
    double amp = 0.0;
    double x0 = 0.0;
    double sigma = 1.0;
    friend bool operator==(const Gauss&, const Gauss&) = default;
};

/// amp * sin(mode * pi * x / L)
struct Sine {
    int mode = 1;
    double amp = 0.0;
    friend bool operator==(const Sine&, const Sine&) = default;
};

/// sum_j coeffs[j] x^j
struct Poly {
    std::vector<double> coeffs;
    friend bool operator==(const Poly&, const Poly&) = default;
};

/// Forcing generated by u*(x) = x^l (L - x)^{l+1}; l = 0 means "use the problem's l".
struct Manufactured {
    int l = 0;
    friend bool operator==(const Manufactured&, const Manufactured&) = default;
};

}  // namespace forcing

using ForcingDescriptor =
    std::variant<forcing::Zero, forcing::Gauss, forcing::Sine, forcing::Poly, forcing::Manufactured>;

/// "zero", "gauss A X0 S", "sine M A", "poly c0 c1 ...", "manufactured [l]".
ForcingDescriptor parse_forcing(const std::string& text);
std::string format_forcing(const ForcingDescriptor& d);

bool is_manufactured(const ForcingDescriptor& d);

/// x^l (L - x)^{l+1} as a polynomial in x.
Polynomial manufactured_polynomial(int l, double length);

/// Nodal samples of u*.
GridFunction manufactured_solution(const ProblemSpec& spec, const Grid& grid);

/**
 * Nodal samples of the forcing. For the manufactured kind this is the
 * continuous operator applied to u*, evaluated exactly from its derivative
 * polynomials; include_nonlinear = false drops the u^k Du term.
 */
GridFunction sample_forcing(const ForcingDescriptor& d, const ProblemSpec& spec, const Grid& grid,
                            bool include_nonlinear = true);

/// Nodal samples of the descriptor read as a state (manufactured means u* itself).
GridFunction sample_state(const ForcingDescriptor& d, const ProblemSpec& spec, const Grid& grid);

}  // namespace dispersive
