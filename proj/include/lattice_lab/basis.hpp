#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace lattice_lab {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

/// Row basis of an integer lattice: `rows()` vectors b_1..b_n of length
/// `cols()`. Entries are exact. Rank is not checked here; operations that
/// need full rank raise RankError.
class Basis {
public:
    static constexpr std::size_t kMinRows = 2;
    static constexpr std::size_t kMaxRows = 128;

    Basis(std::size_t rows, std::size_t cols);
    explicit Basis(std::vector<IntVector> rows);

    static Basis identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }

    const Integer& operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
    Integer& operator()(std::size_t i, std::size_t j) { return rows_[i][j]; }

    std::span<const Integer> row(std::size_t i) const { return rows_[i]; }
    const std::vector<IntVector>& data() const noexcept { return rows_; }

    /// Squared Euclidean norm of row i.
    Integer row_norm_sq(std::size_t i) const;

    bool operator==(const Basis&) const = default;

private:
    std::vector<IntVector> rows_;
    std::size_t cols_;
};

enum class FamilyKind { uniform, qary, circulant };

std::string_view to_string(FamilyKind kind);
FamilyKind family_kind_from_string(std::string_view name);

struct LatticeFamily {
    FamilyKind kind = FamilyKind::uniform;
    unsigned bits = 30;        // entry size for uniform and circulant
    std::uint64_t q = 12289;   // modulus for qary

    /// Throws ParameterError unless bits in [4, 64] and q is a prime >= 3.
    void validate() const;
};

/// Deterministic basis generation from (family, n, seed).
///
/// uniform:   n x n entries, prng output mod 2^bits.
/// qary:      [[q I, 0], [A, I]] with (n/2) x (n/2) block A uniform mod q; n must be even.
/// circulant: first row mod 2^bits, each following row is the cyclic right
///            shift of the previous one.
///
/// Rank-deficient draws of the uniform and circulant families are retried from
/// the same stream at most 16 times before GenerationError is raised.
Basis gen_basis(const LatticeFamily& family, std::size_t n, std::uint64_t seed);

inline constexpr int kGenerationRetries = 16;

/// Reads the text format: a header line "n m", then n lines of m decimal
/// integers separated by single spaces. Throws ParseError naming the line.
Basis parse_basis(std::string_view text);
Basis read_basis(std::istream& in);

/// Canonical text form. `parse_basis(format_basis(b)) == b` for every basis.
std::string format_basis(const Basis& basis);

/// Dot product of two equal-length integer vectors.
Integer dot(std::span<const Integer> a, std::span<const Integer> b);

} // namespace lattice_lab
