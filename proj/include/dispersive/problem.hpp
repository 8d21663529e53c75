#pragma once

#include <string>

namespace dispersive {

enum class ProblemClass { regular, critical };

/**
 * Coefficients of  a u + sum_{j=1..l} (-1)^{j+1} D^{2j+1} u + u^k Du = f  on (0, L)
 * with D^i u(0) = D^i u(L) = 0 (i < l) and D^l u(L) = 0.
 *
 * The forcing is supplied separately as nodal samples.
 */
struct ProblemSpec {
    double length = 1.0;
    int l = 1;
    int k = 1;
    double a = 1.0;

    /// Throws ValidationError unless L > 0, a > 0, l >= 1 and 1 <= k <= 4l.
    void validate() const;

    /// Regular when k < 4l, critical when k = 4l.
    ProblemClass classification() const;
    bool is_critical() const { return classification() == ProblemClass::critical; }

    /// Order of the leading derivative, 2l + 1.
    int order() const { return 2 * l + 1; }

    friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

std::string to_string(ProblemClass c);

}  // namespace dispersive
