#include "dispersive/polynomial.hpp"

#include <algorithm>

namespace dispersive {

Polynomial::Polynomial(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

Polynomial Polynomial::monomial(int degree, double coefficient) {
    std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
    c.back() = coefficient;
    return Polynomial(std::move(c));
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator()(double x) const {
    double r = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
    return r;
}

Polynomial Polynomial::derivative(int times) const {
    std::vector<double> c = coeffs_;
    for (int t = 0; t < times && !c.empty(); ++t) {
        for (std::size_t i = 1; i < c.size(); ++i) c[i - 1] = c[i] * static_cast<double>(i);
        c.pop_back();
    }
    return Polynomial(std::move(c));
}

Polynomial Polynomial::pow(int exponent) const {
    Polynomial result({1.0});
    for (int i = 0; i < exponent; ++i) result = result * (*this);
    return result;
}

Polynomial& Polynomial::operator+=(const Polynomial& p) {
    if (p.coeffs_.size() > coeffs_.size()) coeffs_.resize(p.coeffs_.size(), 0.0);
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i) coeffs_[i] += p.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(double s) {
    for (double& c : coeffs_) c *= s;
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.coeffs_.empty() || b.coeffs_.empty()) return Polynomial();
    std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(c));
}

}  // namespace dispersive
