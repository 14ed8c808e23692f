#include "lattice_lab/gram_schmidt.hpp"

#include "integral_gso.hpp"
#include "lattice_lab/error.hpp"

namespace lattice_lab {

namespace {

using Matrix = std::vector<IntVector>;

// Fraction-free (Bareiss) forward elimination over the first `pivot_cols`
// columns. Returns the number of pivots found; stops at the first column
// without a pivot.
std::size_t bareiss_forward(Matrix& a, std::size_t pivot_cols)
{
    const std::size_t rows = a.size();
    const std::size_t width = rows ? a[0].size() : 0;
    Integer prev = 1;
    for (std::size_t k = 0; k < pivot_cols; ++k) {
        std::size_t p = k;
        while (p < rows && a[p][k] == 0)
            ++p;
        if (p == rows)
            return k;
        if (p != k)
            std::swap(a[p], a[k]);
        for (std::size_t i = k + 1; i < rows; ++i) {
            for (std::size_t j = k + 1; j < width; ++j) {
                Integer t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return pivot_cols;
}

} // namespace

GramSchmidtData gram_schmidt(const Basis& basis)
{
    const detail::IntegralGso gso(basis.data());
    const std::size_t n = gso.size();
    GramSchmidtData out;
    out.mu_rows.resize(n);
    out.bstar_norms_sq.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.mu_rows[i].reserve(i);
        for (std::size_t j = 0; j < i; ++j)
            out.mu_rows[i].push_back(gso.mu(i, j));
        out.bstar_norms_sq.push_back(gso.bstar_norm_sq(i));
    }
    return out;
}

Integer gram_det_sq(const Basis& basis)
{
    const std::size_t n = basis.rows();
    Matrix gram(n, IntVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            gram[i][j] = gram[j][i] = dot(basis.row(i), basis.row(j));
    // Bareiss leaves the determinant in the last pivot, up to the sign of the
    // row permutation; the Gram matrix determinant is nonnegative anyway.
    if (bareiss_forward(gram, n) < n)
        return 0;
    return abs(gram[n - 1][n - 1]);
}

bool is_full_rank(const Basis& basis)
{
    return gram_det_sq(basis) != 0;
}

std::optional<std::vector<IntVector>> integer_coefficients(const Basis& basis,
                                                           const std::vector<IntVector>& targets)
{
    const std::size_t n = basis.rows();
    const std::size_t m = basis.cols();
    const std::size_t t = targets.size();
    for (const auto& v : targets)
        if (v.size() != m)
            throw ParameterError("target length does not match basis columns");

    // Equations are the columns: sum_i x_i b_i[c] = target[c].
    Matrix a(m, IntVector(n + t));
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t i = 0; i < n; ++i)
            a[c][i] = basis(i, c);
        for (std::size_t k = 0; k < t; ++k)
            a[c][n + k] = targets[k][c];
    }
    if (bareiss_forward(a, n) < n)
        throw RankError("basis rows are linearly dependent");
    for (std::size_t r = n; r < m; ++r)
        for (std::size_t k = 0; k < t; ++k)
            if (a[r][n + k] != 0)
                return std::nullopt;

    std::vector<IntVector> out(t, IntVector(n));
    std::vector<Rational> x(n);
    for (std::size_t k = 0; k < t; ++k) {
        for (std::size_t i = n; i-- > 0;) {
            Rational acc = a[i][n + k];
            for (std::size_t j = i + 1; j < n; ++j)
                acc -= a[i][j] * x[j];
            x[i] = acc / a[i][i];
            if (x[i].get_den() != 1)
                return std::nullopt;
            out[k][i] = x[i].get_num();
        }
    }
    return out;
}

std::optional<IntVector> integer_coefficients(const Basis& basis, std::span<const Integer> target)
{
    auto solved = integer_coefficients(basis, std::vector<IntVector>{IntVector(target.begin(), target.end())});
    if (!solved)
        return std::nullopt;
    return std::move(solved->front());
}

} // namespace lattice_lab
