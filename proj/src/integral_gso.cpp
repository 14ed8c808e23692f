#include "integral_gso.hpp"

#include "lattice_lab/error.hpp"

namespace lattice_lab::detail {

namespace {

void divexact(Integer& r, const Integer& a, const Integer& b)
{
    mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

// Nearest integer to num/den for den > 0.
Integer round_quotient(const Integer& num, const Integer& den)
{
    Integer twice = 2 * num + den;
    Integer den2 = 2 * den;
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), twice.get_mpz_t(), den2.get_mpz_t());
    return r;
}

} // namespace

IntegralGso::IntegralGso(std::vector<IntVector> rows) : rows_(std::move(rows))
{
    const std::size_t n = rows_.size();
    d_.assign(n + 1, Integer(0));
    d_[0] = 1;
    lambda_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        lambda_[i].assign(i, Integer(0));
        for (std::size_t j = 0; j <= i; ++j) {
            Integer u = dot(rows_[i], rows_[j]);
            for (std::size_t l = 0; l < j; ++l) {
                u = d_[l + 1] * u - lambda_[i][l] * lambda_[j][l];
                divexact(u, u, d_[l]);
            }
            if (j < i) {
                lambda_[i][j] = std::move(u);
            } else {
                if (u == 0)
                    throw RankError("basis rows are linearly dependent (row " + std::to_string(i + 1) + ")");
                d_[i + 1] = std::move(u);
            }
        }
    }
}

Rational IntegralGso::mu(std::size_t i, std::size_t j) const
{
    Rational r(lambda_[i][j], d_[j + 1]);
    r.canonicalize();
    return r;
}

Rational IntegralGso::bstar_norm_sq(std::size_t i) const
{
    Rational r(d_[i + 1], d_[i]);
    r.canonicalize();
    return r;
}

bool IntegralGso::reduce_pair(std::size_t k, std::size_t l)
{
    const Integer& dl = d_[l + 1];
    if (2 * abs(lambda_[k][l]) <= dl)
        return false;
    const Integer r = round_quotient(lambda_[k][l], dl);
    IntVector& bk = rows_[k];
    const IntVector& bl = rows_[l];
    for (std::size_t c = 0; c < bk.size(); ++c)
        bk[c] -= r * bl[c];
    lambda_[k][l] -= r * dl;
    for (std::size_t i = 0; i < l; ++i)
        lambda_[k][i] -= r * lambda_[l][i];
    return true;
}

void IntegralGso::reduce_row(std::size_t k)
{
    for (std::size_t l = k; l-- > 0;)
        reduce_pair(k, l);
}

bool IntegralGso::lovasz_holds(std::size_t k, const Integer& delta_num, const Integer& delta_den) const
{
    const Integer& lam = lambda_[k][k - 1];
    Integer lhs = delta_num * d_[k] * d_[k];
    Integer rhs = delta_den * (d_[k + 1] * d_[k - 1] + lam * lam);
    return lhs <= rhs;
}

void IntegralGso::swap_adjacent(std::size_t k)
{
    const std::size_t n = rows_.size();
    std::swap(rows_[k], rows_[k - 1]);
    for (std::size_t j = 0; j + 1 < k; ++j)
        std::swap(lambda_[k][j], lambda_[k - 1][j]);

    const Integer lam = lambda_[k][k - 1];
    Integer b = d_[k - 1] * d_[k + 1] + lam * lam;
    divexact(b, b, d_[k]);

    for (std::size_t i = k + 1; i < n; ++i) {
        const Integer t = lambda_[i][k];
        Integer hi = d_[k + 1] * lambda_[i][k - 1] - lam * t;
        divexact(hi, hi, d_[k]);
        lambda_[i][k] = hi;
        Integer lo = b * t + lam * hi;
        divexact(lo, lo, d_[k + 1]);
        lambda_[i][k - 1] = std::move(lo);
    }
    d_[k] = std::move(b);
}

} // namespace lattice_lab::detail
