#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dispersive/forcing.hpp"
#include "dispersive/nonlinear_solver.hpp"
#include "dispersive/problem.hpp"

namespace dispersive {

struct RunConfig {
    ProblemSpec spec;
    int intervals = 256;
    SolveMethod solver = SolveMethod::newton;
    double tol = 1e-10;
    /// Unset means the solver default (50, or 200 for Picard).
    std::optional<int> max_iter;
    ForcingDescriptor forcing = forcing::Zero{};
    std::uint64_t seed = 0;

    // Set from the command line, never from the file.
    std::string out_path;
    std::string svg_path;
    std::string report_path;

    int effective_max_iter() const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// `key = value` lines, `#` comments. Required: L, l, k, a.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Text that parse_config maps back to an equal RunConfig (output paths excluded).
std::string serialize_config(const RunConfig& cfg);

}  // namespace dispersive
