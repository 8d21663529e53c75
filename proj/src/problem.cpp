#include "dispersive/problem.hpp"

#include <cmath>

#include "dispersive/errors.hpp"

namespace dispersive {

void ProblemSpec::validate() const {
    if (!(length > 0.0) || !std::isfinite(length)) throw ValidationError("L must be positive");
    if (!(a > 0.0) || !std::isfinite(a)) throw ValidationError("a must be positive");
    if (l < 1) throw ValidationError("l must be at least 1");
    if (k < 1 || k > 4 * l) {
        throw ValidationError("k must satisfy 1 ≤ k ≤ 4l (got k=" + std::to_string(k) +
                              ", l=" + std::to_string(l) + ")");
    }
}

ProblemClass ProblemSpec::classification() const {
    validate();
    return k < 4 * l ? ProblemClass::regular : ProblemClass::critical;
}

std::string to_string(ProblemClass c) { return c == ProblemClass::regular ? "regular" : "critical"; }

}  // namespace dispersive
