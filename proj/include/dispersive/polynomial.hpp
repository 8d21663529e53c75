#pragma once

#include <vector>

namespace dispersive {

/// Dense polynomial with coefficients in ascending powers.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coefficients);

    static Polynomial monomial(int degree, double coefficient = 1.0);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coefficients() const { return coeffs_; }

    double operator()(double x) const;
    Polynomial derivative(int times = 1) const;
    Polynomial pow(int exponent) const;

    Polynomial& operator+=(const Polynomial& p);
    Polynomial& operator*=(double s);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

private:
    void trim();
    std::vector<double> coeffs_;
};

}  // namespace dispersive
