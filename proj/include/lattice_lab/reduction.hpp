#pragma once

#include <cstddef>
#include <string_view>

#include "lattice_lab/basis.hpp"
#include "lattice_lab/cancel.hpp"

namespace lattice_lab {

struct ReductionParams {
    /// Lovasz parameter, exact. LLL requires 1/4 < delta < 1.
    Rational delta{99, 100};
    /// BKZ block size, 2 <= beta <= n.
    std::size_t beta = 10;
    /// Cap on full BKZ passes.
    std::size_t max_rounds = 64;
};

enum class ReductionStatus {
    ok,
    round_cap_reached,
    /// The cancellation signal fired; the basis is valid but not fully reduced.
    timeout,
};

std::string_view to_string(ReductionStatus status);

struct ReductionReport {
    Basis basis;
    std::size_t swaps = 0;
    std::size_t rounds = 0;
    double wall_time_s = 0.0;
    ReductionStatus status = ReductionStatus::ok;
};

/// Parses "p/q" (or an integer) into a delta, rejecting values outside (1/4, 1].
Rational parse_delta(std::string_view text);

/// Size reduction: afterwards |mu(i, j)| <= 1/2 for all j < i. The
/// Gram-Schmidt vectors, and hence the lattice, are unchanged.
Basis size_reduce(const Basis& basis);

/// LLL reduction with exact integer arithmetic. Throws ParameterError for
/// delta outside (1/4, 1) and RankError for dependent rows. The signal is
/// polled once per swap.
ReductionReport lll(const Basis& basis, const ReductionParams& params = {}, const CancelSignal& cancel = {});

/// BKZ with exact block SVP (unpruned enumeration). Stops after a pass that
/// changes nothing or after params.max_rounds passes.
ReductionReport bkz(const Basis& basis, const ReductionParams& params, const CancelSignal& cancel = {});

/// True iff the two bases generate the same lattice: equal gram_det_sq and
/// every row of `original` is an integer combination of rows of `reduced`.
bool spans_same_lattice(const Basis& original, const Basis& reduced);

/// Exact check of |mu(i, j)| <= 1/2.
bool is_size_reduced(const Basis& basis);

/// Exact check of the Lovasz condition for consecutive rows.
bool satisfies_lovasz(const Basis& basis, const Rational& delta);

} // namespace lattice_lab
