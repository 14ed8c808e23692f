#pragma once

#include <optional>
#include <vector>

#include "lattice_lab/basis.hpp"

namespace lattice_lab {

/// Exact Gram-Schmidt data of a full-rank basis.
///
/// b_i = b*_i + sum_{j<i} mu(i, j) b*_j, with the b*_i pairwise orthogonal.
struct GramSchmidtData {
    /// Strictly lower-triangular part only: mu_rows[i] has i entries.
    std::vector<std::vector<Rational>> mu_rows;
    /// ||b*_i||^2, all strictly positive.
    std::vector<Rational> bstar_norms_sq;

    std::size_t size() const noexcept { return bstar_norms_sq.size(); }
    const Rational& mu(std::size_t i, std::size_t j) const { return mu_rows[i][j]; }
};

/// Throws RankError if some ||b*_i||^2 vanishes.
GramSchmidtData gram_schmidt(const Basis& basis);

/// det(B B^T), the squared lattice volume. Zero iff the rows are dependent.
Integer gram_det_sq(const Basis& basis);

bool is_full_rank(const Basis& basis);

/// Coefficients x with x * basis = target, if the solution exists and is
/// integral. The basis must have full row rank.
std::optional<IntVector> integer_coefficients(const Basis& basis, std::span<const Integer> target);

/// Batch form: one elimination shared by all targets. nullopt if any target
/// is not an integer combination.
std::optional<std::vector<IntVector>> integer_coefficients(const Basis& basis, const std::vector<IntVector>& targets);

} // namespace lattice_lab
