#include "dispersive/banded.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dispersive {

namespace {
constexpr double kSingularRelTol = 1e-14;
}

BandedMatrix::BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku) : n_(n), kl_(kl), ku_(ku) {
    if (n == 0) throw ValidationError("banded matrix dimension must be positive");
    if (kl >= n && n > 1) kl_ = n - 1;
    if (ku >= n && n > 1) ku_ = n - 1;
    if (n == 1) kl_ = ku_ = 0;
    band_.assign((kl_ + ku_ + 1) * n_, 0.0);
}

double& BandedMatrix::at(std::size_t i, std::size_t j) {
    if (!in_band(i, j)) {
        throw ValidationError("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                              ") lies outside the band");
    }
    return band_[index(i, j)];
}

std::vector<double> BandedMatrix::apply(std::span<const double> x) const {
    if (x.size() != n_) throw ValidationError("matrix-vector length mismatch");
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        for (std::size_t j = row_begin(i); j < row_end(i); ++j) s += band_[index(i, j)] * x[j];
        y[i] = s;
    }
    return y;
}

double BandedMatrix::norm_inf() const {
    double m = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        for (std::size_t j = row_begin(i); j < row_end(i); ++j) s += std::abs(band_[index(i, j)]);
        m = std::max(m, s);
    }
    return m;
}

double BandedMatrix::row_abs_max(std::size_t i) const {
    double m = 0.0;
    for (std::size_t j = row_begin(i); j < row_end(i); ++j) m = std::max(m, std::abs(band_[index(i, j)]));
    return m;
}

void BandedMatrix::scale_row(std::size_t i, double s) {
    for (std::size_t j = row_begin(i); j < row_end(i); ++j) band_[index(i, j)] *= s;
}

void BandedMatrix::clear_row(std::size_t i) { scale_row(i, 0.0); }

BandedMatrix& BandedMatrix::operator+=(const BandedMatrix& other) {
    if (other.n_ != n_ || other.kl_ > kl_ || other.ku_ > ku_) {
        throw ValidationError("cannot add a wider or differently sized band matrix");
    }
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = other.row_begin(i); j < other.row_end(i); ++j) {
            band_[index(i, j)] += other(i, j);
        }
    }
    return *this;
}

BandedMatrix BandedMatrix::widened(std::size_t kl, std::size_t ku) const {
    BandedMatrix out(n_, std::max(kl, kl_), std::max(ku, ku_));
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = row_begin(i); j < row_end(i); ++j) out.at(i, j) = (*this)(i, j);
    }
    return out;
}

BandedMatrix BandedMatrix::compacted() const {
    std::size_t kl = 0;
    std::size_t ku = 0;
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = row_begin(i); j < row_end(i); ++j) {
            if ((*this)(i, j) == 0.0) continue;
            if (j < i) kl = std::max(kl, i - j);
            if (j > i) ku = std::max(ku, j - i);
        }
    }
    BandedMatrix out(n_, kl, ku);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = out.row_begin(i); j < out.row_end(i); ++j) out.at(i, j) = (*this)(i, j);
    }
    return out;
}

std::vector<double> BandedMatrix::to_dense() const {
    std::vector<double> d(n_ * n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = row_begin(i); j < row_end(i); ++j) d[i * n_ + j] = (*this)(i, j);
    }
    return d;
}

BandedLU lu_factor(const BandedMatrix& a) {
    BandedLU lu;
    const std::size_t n = a.size();
    const std::size_t kl = a.lower();
    const std::size_t ku = a.upper();
    lu.n_ = n;
    lu.kl_ = kl;
    lu.ku_ = ku;
    lu.width_ = 2 * kl + ku + 1;
    lu.work_.assign(n * lu.width_, 0.0);
    lu.pivots_.assign(n, 0);

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = a.row_begin(i); j < a.row_end(i); ++j) lu.w(i, j) = a(i, j);
    }

    const double threshold = kSingularRelTol * a.norm_inf();
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t last_row = std::min(n - 1, k + kl);
        const std::size_t last_col = std::min(n - 1, k + kl + ku);

        std::size_t p = k;
        double best = std::abs(lu.w(k, k));
        for (std::size_t i = k + 1; i <= last_row; ++i) {
            const double v = std::abs(lu.w(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (!(best > threshold)) {
            throw SingularMatrixError("matrix is singular to working precision: pivot " +
                                      std::to_string(best) + " at column " + std::to_string(k) +
                                      " (threshold " + std::to_string(threshold) + ")");
        }
        lu.pivots_[k] = p;
        if (p != k) {
            for (std::size_t j = k; j <= last_col; ++j) std::swap(lu.w(k, j), lu.w(p, j));
        }

        const double pivot = lu.w(k, k);
        for (std::size_t i = k + 1; i <= last_row; ++i) {
            const double m = lu.w(i, k) / pivot;
            lu.w(i, k) = m;
            if (m == 0.0) continue;
            for (std::size_t j = k + 1; j <= last_col; ++j) lu.w(i, j) -= m * lu.w(k, j);
        }
    }
    return lu;
}

std::vector<double> BandedLU::solve(std::span<const double> rhs) const {
    if (rhs.size() != n_) {
        throw ValidationError("right-hand side has length " + std::to_string(rhs.size()) +
                              ", expected " + std::to_string(n_));
    }
    std::vector<double> x(rhs.begin(), rhs.end());
    for (std::size_t k = 0; k < n_; ++k) {
        if (pivots_[k] != k) std::swap(x[k], x[pivots_[k]]);
        const std::size_t last_row = std::min(n_ - 1, k + kl_);
        for (std::size_t i = k + 1; i <= last_row; ++i) x[i] -= w(i, k) * x[k];
    }
    for (std::size_t k = n_; k-- > 0;) {
        const std::size_t last_col = std::min(n_ - 1, k + kl_ + ku_);
        double s = x[k];
        for (std::size_t j = k + 1; j <= last_col; ++j) s -= w(k, j) * x[j];
        x[k] = s / w(k, k);
    }
    return x;
}

std::vector<double> lu_solve(const BandedLU& lu, std::span<const double> rhs) { return lu.solve(rhs); }

}  // namespace dispersive
