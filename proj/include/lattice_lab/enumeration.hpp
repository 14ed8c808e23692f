#pragma once

#include <cstdint>
#include <optional>
#include <stop_token>
#include <string_view>

#include "lattice_lab/basis.hpp"

namespace lattice_lab {

enum class SvpStatus { ok, timeout };

std::string_view to_string(SvpStatus status);

struct SvpResult {
    /// A lattice vector (not coefficients), length = basis.cols().
    IntVector vector;
    Integer norm_sq;
    std::uint64_t nodes = 0;
    SvpStatus status = SvpStatus::ok;
};

/// Resource limits of an exact solve. Exhausting either limit yields
/// SvpStatus::timeout rather than an error.
struct Budget {
    double wall_time_s = 3600.0;
    std::optional<std::uint64_t> node_cap;

    void validate() const;
};

/// Exact SVP: LLL (delta = 99/100) followed by unpruned depth-first
/// enumeration starting from radius ||b'_1||^2. With status ok the result
/// has norm lambda_1^2; with status timeout it is the best vector found so
/// far, never longer than the LLL first vector. The budget is checked every
/// 64 nodes and on every LLL swap. `stop` lets a caller cancel early.
SvpResult enumerate_svp(const Basis& basis, const Budget& budget = {}, std::stop_token stop = {});

/// Exhaustive search over nonzero coefficient vectors in [-box, box]^n,
/// applied to the basis as given. Ties go to the lexicographically smallest
/// coefficient vector whose first nonzero entry is positive. `nodes` counts
/// the scored candidates. Cost grows as (2 box + 1)^n.
SvpResult bruteforce_svp(const Basis& basis, long box);

} // namespace lattice_lab
