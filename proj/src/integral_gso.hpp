#pragma once

#include <vector>

#include "lattice_lab/basis.hpp"

namespace lattice_lab::detail {

/// Fraction-free Gram-Schmidt state of a basis (Cohen, integral LLL).
///
/// d(0) = 1 and d(i+1) = prod_{j<=i} ||b*_j||^2 are the leading Gram minors;
/// lambda(i, j) = d(j+1) * mu(i, j) for j < i. Every quantity is an integer,
/// and the row operations below keep them exact with divexact only.
class IntegralGso {
public:
    /// Throws RankError if the rows are linearly dependent.
    explicit IntegralGso(std::vector<IntVector> rows);

    std::size_t size() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return rows_.empty() ? 0 : rows_[0].size(); }

    const IntVector& row(std::size_t i) const { return rows_[i]; }
    const std::vector<IntVector>& rows() const noexcept { return rows_; }
    std::vector<IntVector> take_rows() && { return std::move(rows_); }

    const Integer& d(std::size_t k) const { return d_[k]; }
    const Integer& lambda(std::size_t i, std::size_t j) const { return lambda_[i][j]; }

    Rational mu(std::size_t i, std::size_t j) const;
    Rational bstar_norm_sq(std::size_t i) const;

    /// Makes |mu(k, l)| <= 1/2 by subtracting round(mu(k, l)) * b_l.
    /// Returns true if the row changed.
    bool reduce_pair(std::size_t k, std::size_t l);

    /// reduce_pair(k, l) for l = k-1 down to 0.
    void reduce_row(std::size_t k);

    /// Lovasz condition between rows k-1 and k for delta = num/den.
    bool lovasz_holds(std::size_t k, const Integer& delta_num, const Integer& delta_den) const;

    /// Exchanges rows k-1 and k and updates d and lambda.
    void swap_adjacent(std::size_t k);

private:
    std::vector<IntVector> rows_;
    std::vector<Integer> d_;
    std::vector<IntVector> lambda_;
};

} // namespace lattice_lab::detail
