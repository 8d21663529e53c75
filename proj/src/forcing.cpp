#include "dispersive/forcing.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dispersive/errors.hpp"

namespace dispersive {

namespace {

std::vector<double> read_numbers(std::istringstream& in, const std::string& text) {
    std::vector<double> out;
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size() || !std::isfinite(v)) {
            throw ValidationError("malformed number '" + tok + "' in forcing '" + text + "'");
        }
        out.push_back(v);
    }
    return out;
}

void expect_count(const std::vector<double>& v, std::size_t n, const std::string& text) {
    if (v.size() != n) {
        throw ValidationError("forcing '" + text + "' expects " + std::to_string(n) + " parameters");
    }
}

int as_int(double v, const std::string& what) {
    if (v != std::floor(v)) throw ValidationError(what + " must be an integer");
    return static_cast<int>(v);
}

int manufactured_l(const forcing::Manufactured& m, const ProblemSpec& spec) {
    if (m.l != 0 && m.l != spec.l) {
        throw ValidationError("manufactured forcing built for l=" + std::to_string(m.l) + " but the problem has l=" +
                              std::to_string(spec.l));
    }
    return spec.l;
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

ForcingDescriptor parse_forcing(const std::string& text) {
    std::istringstream in(text);
    std::string kind;
    if (!(in >> kind)) throw ValidationError("empty forcing descriptor");
    const std::vector<double> p = read_numbers(in, text);
    if (kind == "zero") {
        expect_count(p, 0, text);
        return forcing::Zero{};
    }
    if (kind == "gauss") {
        expect_count(p, 3, text);
        if (!(p[2] > 0.0)) throw ValidationError("gauss width must be positive");
        return forcing::Gauss{p[0], p[1], p[2]};
    }
    if (kind == "sine") {
        expect_count(p, 2, text);
        return forcing::Sine{as_int(p[0], "sine mode"), p[1]};
    }
    if (kind == "poly") {
        if (p.empty()) throw ValidationError("poly forcing needs at least one coefficient");
        return forcing::Poly{p};
    }
    if (kind == "manufactured") {
        if (p.size() > 1) throw ValidationError("manufactured forcing takes at most one parameter (l)");
        const int l = p.empty() ? 0 : as_int(p[0], "manufactured l");
        if (l < 0) throw ValidationError("manufactured l must be positive");
        return forcing::Manufactured{l};
    }
    throw ValidationError("unknown forcing kind '" + kind + "' (expected zero, gauss, sine, poly or manufactured)");
}

std::string format_forcing(const ForcingDescriptor& d) {
    std::ostringstream os;
    os.precision(17);
    std::visit(overloaded{
                   [&](const forcing::Zero&) { os << "zero"; },
                   [&](const forcing::Gauss& g) { os << "gauss " << g.amp << ' ' << g.x0 << ' ' << g.sigma; },
                   [&](const forcing::Sine& s) { os << "sine " << s.mode << ' ' << s.amp; },
                   [&](const forcing::Poly& p) {
                       os << "poly";
                       for (double c : p.coeffs) os << ' ' << c;
                   },
                   [&](const forcing::Manufactured& m) {
                       os << "manufactured";
                       if (m.l != 0) os << ' ' << m.l;
                   },
               },
               d);
    return os.str();
}

bool is_manufactured(const ForcingDescriptor& d) { return std::holds_alternative<forcing::Manufactured>(d); }

Polynomial manufactured_polynomial(int l, double length) {
    return Polynomial::monomial(l) * Polynomial({length, -1.0}).pow(l + 1);
}

GridFunction manufactured_solution(const ProblemSpec& spec, const Grid& grid) {
    const Polynomial u = manufactured_polynomial(spec.l, grid.length());
    return GridFunction::sample(grid, [&](double x) { return u(x); });
}

GridFunction sample_forcing(const ForcingDescriptor& d, const ProblemSpec& spec, const Grid& grid,
                            bool include_nonlinear) {
    const double length = grid.length();
    return std::visit(
        overloaded{
            [&](const forcing::Zero&) { return GridFunction(grid); },
            [&](const forcing::Gauss& g) {
                return GridFunction::sample(grid, [&](double x) {
                    const double z = (x - g.x0) / g.sigma;
                    return g.amp * std::exp(-z * z);
                });
            },
            [&](const forcing::Sine& s) {
                return GridFunction::sample(
                    grid, [&](double x) { return s.amp * std::sin(s.mode * std::numbers::pi * x / length); });
            },
            [&](const forcing::Poly& p) {
                const Polynomial poly(p.coeffs);
                return GridFunction::sample(grid, [&](double x) { return poly(x); });
            },
            [&](const forcing::Manufactured& m) {
                const int l = manufactured_l(m, spec);
                const Polynomial u = manufactured_polynomial(l, length);
                Polynomial lin = spec.a * u;
                for (int j = 1; j <= l; ++j) {
                    lin += (j % 2 == 1 ? 1.0 : -1.0) * u.derivative(2 * j + 1);
                }
                const Polynomial du = u.derivative();
                return GridFunction::sample(grid, [&](double x) {
                    double v = lin(x);
                    if (include_nonlinear) v += std::pow(u(x), spec.k) * du(x);
                    return v;
                });
            },
        },
        d);
}

GridFunction sample_state(const ForcingDescriptor& d, const ProblemSpec& spec, const Grid& grid) {
    if (const auto* m = std::get_if<forcing::Manufactured>(&d)) {
        manufactured_l(*m, spec);
        return manufactured_solution(spec, grid);
    }
    return sample_forcing(d, spec, grid);
}

}  // namespace dispersive
