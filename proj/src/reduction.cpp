#include "lattice_lab/reduction.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <stdexcept>

#include "lattice_lab/error.hpp"
#include "lattice_lab/gram_schmidt.hpp"
#include "solver_core.hpp"

namespace lattice_lab {

namespace detail {

bool lll_in_place(IntegralGso& gso, const Rational& delta, std::size_t start, std::size_t& swaps,
                  const CancelSignal& cancel)
{
    const std::size_t n = gso.size();
    const Integer& p = delta.get_num();
    const Integer& q = delta.get_den();
    std::size_t k = std::max<std::size_t>(start, 1);
    while (k < n) {
        gso.reduce_pair(k, k - 1);
        if (!gso.lovasz_holds(k, p, q)) {
            gso.swap_adjacent(k);
            ++swaps;
            if (cancel.requested())
                return false;
            k = std::max<std::size_t>(k - 1, 1);
        } else {
            for (std::size_t l = k - 1; l-- > 0;)
                gso.reduce_pair(k, l);
            ++k;
        }
    }
    return true;
}

void insert_combination(std::vector<IntVector>& rows, std::size_t begin, const std::vector<long>& coeffs)
{
    std::size_t last = coeffs.size();
    while (last > 0 && coeffs[last - 1] == 0)
        --last;
    if (last == 0)
        throw std::logic_error("insert_combination: zero coefficient vector");
    --last;

    // Pairwise unimodular steps [[x/g', g/g'], [-b, a]] with a*x + b*g = g'
    // fold the combination into one accumulated row W, freeing one slot
    // per step for the complementary row.
    IntVector acc = rows[begin + last];
    Integer g = coeffs[last];
    for (std::size_t t = last; t-- > 0;) {
        const Integer x = coeffs[t];
        Integer gp, a, b;
        mpz_gcdext(gp.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        const Integer xs = x / gp;
        const Integer gs = g / gp;
        const IntVector& bt = rows[begin + t];
        IntVector next(bt.size());
        IntVector other(bt.size());
        for (std::size_t c = 0; c < bt.size(); ++c) {
            next[c] = xs * bt[c] + gs * acc[c];
            other[c] = a * acc[c] - b * bt[c];
        }
        rows[begin + t + 1] = std::move(other);
        acc = std::move(next);
        g = gp;
    }
    if (abs(g) != 1)
        throw std::logic_error("insert_combination: coefficient vector is not primitive");
    if (g < 0)
        for (auto& v : acc)
            v = -v;
    rows[begin] = std::move(acc);
}

} // namespace detail

namespace {

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void check_lll_delta(const Rational& delta)
{
    if (delta <= Rational(1, 4) || delta > 1)
        throw ParameterError("delta must lie in (1/4, 1], got " + delta.get_str());
    if (delta == 1)
        throw ParameterError("delta = 1 is not supported: LLL termination is not guaranteed");
}

} // namespace

std::string_view to_string(ReductionStatus status)
{
    switch (status) {
    case ReductionStatus::ok:
        return "ok";
    case ReductionStatus::round_cap_reached:
        return "round_cap_reached";
    case ReductionStatus::timeout:
        return "timeout";
    }
    return "?";
}

Rational parse_delta(std::string_view text)
{
    Rational delta;
    const std::string s(text);
    auto is_int = [](std::string_view t) {
        if (!t.empty() && t.front() == '-')
            t.remove_prefix(1);
        return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || Integer(std::string(den)) == 0)
        throw ParameterError("delta must be written p/q, got '" + s + "'");
    delta = Rational(Integer(std::string(num)), Integer(std::string(den)));
    delta.canonicalize();
    if (delta <= Rational(1, 4) || delta > 1)
        throw ParameterError("delta must lie in (1/4, 1], got " + s);
    return delta;
}

Basis size_reduce(const Basis& basis)
{
    detail::IntegralGso gso(basis.data());
    for (std::size_t k = 1; k < gso.size(); ++k)
        gso.reduce_row(k);
    return Basis(std::move(gso).take_rows());
}

ReductionReport lll(const Basis& basis, const ReductionParams& params, const CancelSignal& cancel)
{
    check_lll_delta(params.delta);
    const auto start = std::chrono::steady_clock::now();
    detail::IntegralGso gso(basis.data());
    ReductionReport report{basis};
    const bool done = detail::lll_in_place(gso, params.delta, 0, report.swaps, cancel);
    report.rounds = 1;
    report.status = done ? ReductionStatus::ok : ReductionStatus::timeout;
    report.basis = Basis(std::move(gso).take_rows());
    report.wall_time_s = seconds_since(start);
    return report;
}

ReductionReport bkz(const Basis& basis, const ReductionParams& params, const CancelSignal& cancel)
{
    check_lll_delta(params.delta);
    const std::size_t n = basis.rows();
    if (params.beta < 2 || params.beta > n)
        throw ParameterError("beta must lie in [2, n] = [2, " + std::to_string(n) + "], got " +
                             std::to_string(params.beta));
    if (params.max_rounds == 0)
        throw ParameterError("max_rounds must be positive");

    const auto start = std::chrono::steady_clock::now();
    ReductionReport report{basis};
    auto gso = std::make_unique<detail::IntegralGso>(basis.data());

    auto finish = [&](ReductionStatus status) {
        report.status = status;
        report.basis = Basis(std::move(*gso).take_rows());
        report.wall_time_s = seconds_since(start);
        return report;
    };

    if (!detail::lll_in_place(*gso, params.delta, 0, report.swaps, cancel))
        return finish(ReductionStatus::timeout);

    while (true) {
        bool changed = false;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            const std::size_t end = std::min(k + params.beta, n);
            auto found = detail::shortest_in_block(*gso, k, end, gso->bstar_norm_sq(k), cancel);
            if (found.interrupted)
                return finish(ReductionStatus::timeout);
            if (found.coeffs.empty())
                continue;
            auto rows = std::move(*gso).take_rows();
            detail::insert_combination(rows, k, found.coeffs);
            gso = std::make_unique<detail::IntegralGso>(std::move(rows));
            if (!detail::lll_in_place(*gso, params.delta, k, report.swaps, cancel))
                return finish(ReductionStatus::timeout);
            changed = true;
        }
        ++report.rounds;
        if (!changed)
            return finish(ReductionStatus::ok);
        if (report.rounds >= params.max_rounds)
            return finish(ReductionStatus::round_cap_reached);
        if (cancel.requested())
            return finish(ReductionStatus::timeout);
    }
}

bool spans_same_lattice(const Basis& original, const Basis& reduced)
{
    if (original.rows() != reduced.rows() || original.cols() != reduced.cols())
        return false;
    const Integer det = gram_det_sq(original);
    if (det == 0 || det != gram_det_sq(reduced))
        return false;
    return integer_coefficients(reduced, original.data()).has_value();
}

bool is_size_reduced(const Basis& basis)
{
    const auto gs = gram_schmidt(basis);
    for (std::size_t i = 0; i < gs.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (abs(gs.mu(i, j)) > Rational(1, 2))
                return false;
    return true;
}

bool satisfies_lovasz(const Basis& basis, const Rational& delta)
{
    const auto gs = gram_schmidt(basis);
    for (std::size_t i = 1; i < gs.size(); ++i) {
        const Rational& prev = gs.bstar_norms_sq[i - 1];
        const Rational& m = gs.mu(i, i - 1);
        if (delta * prev > gs.bstar_norms_sq[i] + m * m * prev)
            return false;
    }
    return true;
}

} // namespace lattice_lab
