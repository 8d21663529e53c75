#include "dispersive/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "dispersive/polynomial.hpp"

namespace dispersive {

namespace {

constexpr int kMaxTrialDegree = 12;
constexpr int kMaxAscentSweeps = 60;

// Nodal samples of basis functions and of one or two of their derivatives.
struct Basis {
    std::vector<std::vector<double>> value;
    std::vector<std::vector<double>> first;   // derivative of order `first_order`
    std::vector<std::vector<double>> second;  // derivative of order `second_order` (may be empty)
};

std::vector<double> sample(const Polynomial& p, const Grid& grid, double length) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = p(grid.node(i) / length);
    return v;
}

// phi_j(t) = weight(t) * (2t - 1)^j on t = x / L; derivatives in x carry L^-m.
Basis make_basis(const Polynomial& weight, const Grid& grid, double length, int first_order, int second_order) {
    Basis b;
    const Polynomial s({-1.0, 2.0});
    for (int j = 0; j <= kMaxTrialDegree; ++j) {
        const Polynomial phi = weight * s.pow(j);
        b.value.push_back(sample(phi, grid, length));
        b.first.push_back(sample(std::pow(length, -first_order) * phi.derivative(first_order), grid, length));
        if (second_order >= 0) {
            b.second.push_back(
                sample(std::pow(length, -second_order) * phi.derivative(second_order), grid, length));
        }
    }
    return b;
}

std::vector<double> combine(const std::vector<std::vector<double>>& rows, const std::vector<double>& c) {
    std::vector<double> out(rows.front().size(), 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] == 0.0) continue;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += c[j] * rows[j][i];
    }
    return out;
}

double l2(const std::vector<double>& v, double dx) {
    std::vector<double> sq(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) sq[i] = v[i] * v[i];
    return std::sqrt(trapezoid(sq, dx));
}

double sup(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Coordinate-wise pattern search maximizing `objective`; NaN marks an excluded point.
double ascend(std::vector<double>& c, const std::function<double(const std::vector<double>&)>& objective) {
    double best = objective(c);
    if (!std::isfinite(best)) best = -std::numeric_limits<double>::infinity();
    double scale = 0.0;
    for (double v : c) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) scale = 1.0;
    double h = 0.5 * scale;
    for (int sweep = 0; sweep < kMaxAscentSweeps && h > 1e-4 * scale; ++sweep) {
        bool improved = false;
        for (std::size_t j = 0; j < c.size(); ++j) {
            for (double sign : {1.0, -1.0}) {
                const double saved = c[j];
                c[j] = saved + sign * h;
                const double r = objective(c);
                if (std::isfinite(r) && r > best) {
                    best = r;
                    improved = true;
                    break;
                }
                c[j] = saved;
            }
        }
        if (!improved) h *= 0.5;
    }
    return best;
}

std::vector<double> random_start(std::uint64_t seed, int trial, int min_degree) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<int> degree(min_degree, kMaxTrialDegree);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int d = degree(rng);
    std::vector<double> c(kMaxTrialDegree + 1, 0.0);
    for (int j = 0; j <= d; ++j) c[static_cast<std::size_t>(j)] = normal(rng) / (1.0 + j);
    return c;
}

std::string describe(const std::vector<double>& c) {
    std::ostringstream os;
    os.precision(6);
    os << "p(s) coefficients [";
    for (std::size_t j = 0; j < c.size(); ++j) os << (j ? ", " : "") << c[j];
    os << "], s = 2x/L - 1";
    return os.str();
}

}  // namespace

double gn_ratio(const GridFunction& u, const GridFunction& dlu, int l) {
    require_same_grid(u, dlu);
    const double un = l2_norm(u);
    const double dn = l2_norm(dlu);
    if (un == 0.0 || dn == 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double e = 1.0 / (2.0 * l);
    return sup_norm(u) / (std::pow(dn, e) * std::pow(un, 1.0 - e));
}

ConstantsReport estimate_c_star(int l, double length, const Grid& grid, int trials, std::uint64_t seed) {
    if (l < 1) throw ValidationError("l must be at least 1");
    if (trials < 1) throw ValidationError("need at least one trial");
    if (!(length > 0.0)) throw ValidationError("L must be positive");
    const Polynomial weight = Polynomial::monomial(l) * Polynomial({1.0, -1.0}).pow(l);
    const Basis basis = make_basis(weight, grid, length, l, -1);
    const double dx = grid.spacing();
    const double e = 1.0 / (2.0 * l);

    auto ratio = [&](const std::vector<double>& c) {
        const std::vector<double> u = combine(basis.value, c);
        const std::vector<double> du = combine(basis.first, c);
        const double un = l2(u, dx);
        const double dn = l2(du, dx);
        if (un == 0.0 || dn == 0.0) return std::numeric_limits<double>::quiet_NaN();
        return sup(u) / (std::pow(dn, e) * std::pow(un, 1.0 - e));
    };

    ConstantsReport rep;
    rep.l = l;
    rep.length = length;
    rep.trials = trials;
    rep.seed = seed;
    double best = 0.0;
    for (int t = 0; t < trials; ++t) {
        std::vector<double> c = (t == 0) ? std::vector<double>(kMaxTrialDegree + 1, 0.0) : random_start(seed, t, 0);
        if (t == 0) c[0] = 1.0;
        const double r = ascend(c, ratio);
        if (r > best) {
            best = r;
            rep.best_trial = "trial " + std::to_string(t) + ": " + describe(c);
        }
        rep.history.push_back(best);
    }
    rep.c_star_lower = best;
    return rep;
}

double k_exponent(int l, int i, double theta) {
    const double inv_p = i - theta * (2 * l + 1) + 0.5;
    return inv_p == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / inv_p;
}

ConstantsReport estimate_k_constants(int l, int i, double theta, double length, const Grid& grid, int trials,
                                     std::uint64_t seed) {
    if (l < 1) throw ValidationError("l must be at least 1");
    if (i < 0 || i >= 2 * l + 1) throw ValidationError("derivative index i must satisfy 0 <= i < 2l+1");
    if (trials < 1) throw ValidationError("need at least one trial");
    const double lo = static_cast<double>(i) / (2 * l + 1);
    const double inv_p = i - theta * (2 * l + 1) + 0.5;
    if (!(theta >= lo - 1e-15 && theta <= 1.0) || inv_p < -1e-15) {
        throw ValidationError("theta=" + std::to_string(theta) + " is inadmissible for i=" + std::to_string(i) +
                              ", l=" + std::to_string(l) + " (need i/(2l+1) <= theta <= 1 and 1/p >= 0)");
    }
    const bool sup_norm_lhs = std::abs(inv_p) <= 1e-15;
    const double p = sup_norm_lhs ? 0.0 : 1.0 / inv_p;

    const Basis basis = make_basis(Polynomial({1.0}), grid, length, i, 2 * l + 1);
    const double dx = grid.spacing();

    auto ratio = [&](const std::vector<double>& c) {
        const std::vector<double> u = combine(basis.value, c);
        const std::vector<double> di = combine(basis.first, c);
        const std::vector<double> top = combine(basis.second, c);
        const double un = l2(u, dx);
        if (un == 0.0) return std::numeric_limits<double>::quiet_NaN();
        double lhs = 0.0;
        if (sup_norm_lhs) {
            lhs = sup(di);
        } else {
            std::vector<double> pw(di.size());
            for (std::size_t n = 0; n < di.size(); ++n) pw[n] = std::pow(std::abs(di[n]), p);
            lhs = std::pow(trapezoid(pw, dx), 1.0 / p);
        }
        const double denom = std::pow(l2(top, dx), theta) * std::pow(un, 1.0 - theta) + un;
        return lhs / denom;
    };

    ConstantsReport rep;
    rep.l = l;
    rep.length = length;
    rep.trials = trials;
    rep.seed = seed;
    double best = 0.0;
    for (int t = 0; t < trials; ++t) {
        std::vector<double> c = random_start(seed, t, 2 * l + 1 > kMaxTrialDegree ? kMaxTrialDegree : 2 * l + 1);
        const double r = ascend(c, ratio);
        if (std::isfinite(r) && r > best) {
            best = r;
            rep.best_trial = "trial " + std::to_string(t) + ": " + describe(c);
        }
        rep.history.push_back(best);
    }
    rep.k1_lower = best;
    rep.k2_lower = best;
    return rep;
}

// ---------------------------------------------------------------------------

double beta_constant(double a) { return std::min(a / 2.0, 1.0); }

double c1_constant(int l, int k, double c_star) {
    if (l < 1 || k < 1) throw ValidationError("l and k must be positive");
    if (k >= 4 * l) throw ValidationError("C1 is defined for the regular case k < 4l only");
    const double fl = l;
    const double fk = k;
    const double d = 4.0 * fl - fk;
    return std::pow(2.0 * fk / (4.0 * fl * (2.0 * fl - 1.0)), fk / d) * (d / (4.0 * fl)) *
           std::pow(std::pow(c_star, fk) / (fk + 2.0), 4.0 * fl / d);
}

double c3_constant(int l, int k, double a, double c_star) {
    const double d = 4.0 * l - k;
    return c1_constant(l, k, c_star) * std::pow(a, -(8.0 * l + (4.0 * l - 2.0) * k) / d);
}

double c2_constant(int l, int k, double a, double c_star, double wf2) {
    if (!(wf2 >= 0.0)) throw ValidationError("weighted forcing norm must be non-negative");
    const double d = 4.0 * l - k;
    const double c3 = c3_constant(l, k, a, c_star);
    return std::sqrt((c3 * std::pow(wf2, 2.0 * l * k / d) + 1.0 / (2.0 * a)) / beta_constant(a));
}

double gamma_margin(int l, double a, double c_star, double f_l2) {
    const double e = 4.0 * l;
    return (2.0 * l + 1.0) / 2.0 - std::pow(c_star, e) / ((4.0 * l + 2.0) * std::pow(a, e)) * std::pow(f_l2, e);
}

double gamma_l(int l, double a, double c_star, double f_l2) {
    const double third = gamma_margin(l, a, c_star, f_l2);
    if (!(third > 0.0)) {
        throw ValidationError("gamma_l undefined: ||f|| is at or above the critical smallness bound");
    }
    return std::min({a / 2.0, 1.5, third});
}

double gamma_1(double a, double c_star, double f_l2) {
    const double second = 1.5 - std::pow(c_star, 4) / (6.0 * std::pow(a, 4)) * std::pow(f_l2, 4);
    if (!(second > 0.0)) {
        throw ValidationError("gamma_1 undefined: ||f|| is at or above the critical smallness bound");
    }
    return std::min(a / 2.0, second);
}

double critical_threshold(int l, double a, double c_star) {
    if (l < 1 || !(a > 0.0) || !(c_star > 0.0)) throw ValidationError("threshold needs l >= 1, a > 0, C > 0");
    const double e = 1.0 / (4.0 * l);
    return std::pow((2.0 * l + 1.0) * (4.0 * l + 2.0), e) * a / (std::pow(2.0, e) * c_star);
}

namespace {

double require_k(const std::optional<double>& v, const char* name) {
    if (!v || !(*v > 0.0)) {
        throw ValidationError(std::string("the l = 1 threshold needs a positive ") + name +
                              " (run gn-estimate or pass it explicitly)");
    }
    return *v;
}

}  // namespace

ThresholdReport uniqueness_threshold(const ProblemSpec& spec, const UniquenessInputs& in) {
    spec.validate();
    if (!(in.c_star > 0.0)) throw ValidationError("C* must be positive");
    const int l = spec.l;
    const int k = spec.k;
    const double a = spec.a;
    const double fk = k;
    const double beta = beta_constant(a);
    ThresholdReport rep;
    rep.terms["beta"] = beta;

    if (l >= 2 && !spec.is_critical()) {
        rep.case_name = "l>=2 regular";
        const double c3 = c3_constant(l, k, a, in.c_star);
        const double t1 = std::pow(1.0 / (2.0 * a * c3), (4.0 * l - fk) / (4.0 * l * fk));
        const double t2 = std::pow(a, 1.0 / fk) /
                          (std::pow((std::pow(2.0, (fk - 2.0) / 2.0) + std::pow(2.0, 1.5 * fk)) * fk, 1.0 / fk) *
                           std::pow(a * beta, -0.5));
        rep.terms["C3"] = c3;
        rep.terms["first"] = t1;
        rep.terms["second"] = t2;
        rep.value = std::min(t1, t2);
    } else if (l >= 2) {
        rep.case_name = "l>=2 critical";
        const double gamma = gamma_l(l, a, in.c_star, in.f_l2);
        const double eta = l * (std::pow(2.0, 2 * l + 1) + std::pow(2.0, 6 * l + 2)) * std::pow(2.0 * a * gamma, -2.0 * l);
        const double t1 = critical_threshold(l, a, in.c_star);
        const double t2 = std::pow(a / eta, 1.0 / (4.0 * l));
        rep.terms["gamma"] = gamma;
        rep.terms["eta"] = eta;
        rep.terms["first"] = t1;
        rep.terms["second"] = t2;
        rep.value = std::min(t1, t2);
    } else {
        const double k1 = require_k(in.k1, "K1");
        const double k2 = require_k(in.k2, "K2");
        const double k3 = k1 + k1 / (2.0 * a) + k2 / a;
        rep.terms["K1"] = k1;
        rep.terms["K2"] = k2;
        rep.terms["K3"] = k3;
        double t1 = 0.0;
        double t2 = 0.0;
        if (!spec.is_critical()) {
            rep.case_name = "l=1 regular";
            const double c3 = c3_constant(1, k, a, in.c_star);
            const double k4 = fk * (std::pow(2.0, (fk - 3.0) / 2.0) + std::pow(2.0, 1.5 * (fk - 1.0))) *
                              (k1 / 2.0 * std::pow(in.c_star, fk) * std::pow(a * beta, -fk) +
                               k3 * std::pow(a * beta, -(fk - 1.0) / 2.0));
            t1 = std::pow(1.0 / (2.0 * a * c3), (4.0 - fk) / (4.0 * fk));
            t2 = std::pow(a / k4, 1.0 / fk);
            rep.terms["C3"] = c3;
            rep.terms["K4"] = k4;
        } else {
            rep.case_name = "l=1 critical";
            const double gamma = gamma_1(a, in.c_star, in.f_l2);
            const double g = 2.0 * a * gamma;
            const double k5 = (std::pow(2.0, 2.5) + std::pow(2.0, 7.5)) *
                              (k1 / 2.0 * std::pow(in.c_star, 4) * std::pow(g, -4.0) + k3 * std::pow(g, -1.5));
            t1 = std::sqrt(3.0) * a / in.c_star;
            t2 = std::pow(a / k5, 0.25);
            rep.terms["gamma"] = gamma;
            rep.terms["K5"] = k5;
        }
        rep.terms["first"] = t1;
        rep.terms["second"] = t2;
        // The l = 1 bootstrap also uses ((1+x), f^2)^{1/2} <= 1.
        rep.value = std::min({t1, t2, 1.0});
    }
    return rep;
}

EstimateReport estimate_report(const ProblemSpec& spec, double c_star, double wf2, double f_l2,
                               const UniquenessInputs& uniq) {
    spec.validate();
    EstimateReport rep;
    rep.beta = beta_constant(spec.a);
    if (!spec.is_critical()) {
        rep.c1 = c1_constant(spec.l, spec.k, c_star);
        rep.c3 = c3_constant(spec.l, spec.k, spec.a, c_star);
        rep.c2 = c2_constant(spec.l, spec.k, spec.a, c_star, wf2);
    } else if (gamma_margin(spec.l, spec.a, c_star, f_l2) > 0.0) {
        rep.gamma = gamma_l(spec.l, spec.a, c_star, f_l2);
    }
    rep.thresholds["critical"] = critical_threshold(spec.l, spec.a, c_star);
    if (spec.l >= 2 || (uniq.k1 && uniq.k2)) {
        try {
            const ThresholdReport t = uniqueness_threshold(spec, uniq);
            rep.thresholds["uniqueness " + t.case_name] = t.value;
        } catch (const ValidationError&) {
            // gamma undefined: no uniqueness bound for this forcing
        }
    }
    return rep;
}

}  // namespace dispersive
