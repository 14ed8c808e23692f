#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "integral_gso.hpp"
#include "lattice_lab/cancel.hpp"

namespace lattice_lab::detail {

/// Integral LLL on `gso`, assuming rows [0, start) are already LLL-reduced.
/// Adds the number of swaps to `swaps`. Returns false if cancelled.
bool lll_in_place(IntegralGso& gso, const Rational& delta, std::size_t start, std::size_t& swaps,
                  const CancelSignal& cancel);

struct BlockSearch {
    /// Coefficients relative to rows [begin, end); empty when nothing strictly
    /// shorter than the radius exists.
    std::vector<long> coeffs;
    /// Projected squared norm of the result, or the radius when none found.
    Rational norm_sq;
    std::uint64_t nodes = 0;
    bool interrupted = false;
};

inline constexpr std::uint64_t kPollInterval = 64;

/// Unpruned Schnorr-Euchner enumeration of the projection of rows
/// [begin, end) orthogonally to rows [0, begin). Only vectors with projected
/// squared norm strictly below `radius` are accepted, so among equally short
/// vectors the first one reached wins. All partial norms are exact.
///
/// Polls `cancel` every kPollInterval nodes; also stops at `node_cap`.
BlockSearch shortest_in_block(const IntegralGso& gso, std::size_t begin, std::size_t end, const Rational& radius,
                              const CancelSignal& cancel, std::optional<std::uint64_t> node_cap = std::nullopt);

/// Replaces rows [begin, begin + coeffs.size()) by a basis of the same
/// sublattice whose first vector is sum_i coeffs[i] * rows[begin + i].
/// The coefficient vector must be primitive.
void insert_combination(std::vector<IntVector>& rows, std::size_t begin, const std::vector<long>& coeffs);

} // namespace lattice_lab::detail
