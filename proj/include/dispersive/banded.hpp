#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "dispersive/errors.hpp"

namespace dispersive {

/**
 * Square band matrix with kl sub- and ku super-diagonals.
 *
 * Storage is diagonal-major: diagonal d = j - i (in [-kl, ku]) occupies the
 * contiguous slice [(d + kl) * n, (d + kl + 1) * n), indexed by row.
 * Entries outside the band read as zero and cannot be written.
 */
class BandedMatrix {
public:
    BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku);

    std::size_t size() const { return n_; }
    std::size_t lower() const { return kl_; }
    std::size_t upper() const { return ku_; }

    bool in_band(std::size_t i, std::size_t j) const {
        return i < n_ && j < n_ && j + kl_ >= i && i + ku_ >= j;
    }

    double operator()(std::size_t i, std::size_t j) const {
        return in_band(i, j) ? band_[index(i, j)] : 0.0;
    }

    /// Mutable access; throws ValidationError outside the band.
    double& at(std::size_t i, std::size_t j);

    /// First and one-past-last column of the band in row i.
    std::size_t row_begin(std::size_t i) const { return i > kl_ ? i - kl_ : 0; }
    std::size_t row_end(std::size_t i) const { return std::min(n_, i + ku_ + 1); }

    std::vector<double> apply(std::span<const double> x) const;
    double norm_inf() const;
    double row_abs_max(std::size_t i) const;

    void scale_row(std::size_t i, double s);
    void clear_row(std::size_t i);

    /// Adds `other` entrywise; other's band must fit inside this one.
    BandedMatrix& operator+=(const BandedMatrix& other);

    /// Copy with widened bandwidths (kl, ku at least the current ones).
    BandedMatrix widened(std::size_t kl, std::size_t ku) const;

    /// Copy shrunk to the diagonals that hold at least one nonzero.
    BandedMatrix compacted() const;

    /// Row-major dense expansion, n * n entries.
    std::vector<double> to_dense() const;

private:
    std::size_t index(std::size_t i, std::size_t j) const {
        return (j + kl_ - i) * n_ + i;
    }

    std::size_t n_;
    std::size_t kl_;
    std::size_t ku_;
    std::vector<double> band_;
};

/**
 * Partial-pivoting LU factors of a BandedMatrix.
 *
 * Each work row i holds columns [i - kl, i + kl + ku]; row interchanges are
 * replayed in order during the forward sweep, so multipliers are never moved.
 * The factors are immutable once built and safe to share between threads.
 */
class BandedLU {
public:
    std::size_t size() const { return n_; }
    std::vector<double> solve(std::span<const double> rhs) const;

    friend BandedLU lu_factor(const BandedMatrix& a);

private:
    BandedLU() = default;

    double& w(std::size_t i, std::size_t j) { return work_[i * width_ + (j + kl_ - i)]; }
    double w(std::size_t i, std::size_t j) const { return work_[i * width_ + (j + kl_ - i)]; }

    std::size_t n_ = 0;
    std::size_t kl_ = 0;
    std::size_t ku_ = 0;
    std::size_t width_ = 0;
    std::vector<double> work_;
    std::vector<std::size_t> pivots_;
};

/// Throws SingularMatrixError when a pivot is below 1e-14 * ||A||_inf.
BandedLU lu_factor(const BandedMatrix& a);

/// Throws ValidationError on a right-hand side of the wrong length.
std::vector<double> lu_solve(const BandedLU& lu, std::span<const double> rhs);

}  // namespace dispersive
