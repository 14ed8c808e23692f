#include "lattice_lab/enumeration.hpp"

#include <chrono>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "lattice_lab/error.hpp"
#include "solver_core.hpp"

namespace lattice_lab {

namespace detail {

namespace {

long to_long(const Integer& v)
{
    if (!v.fits_slong_p())
        throw std::overflow_error("enumeration coefficient does not fit in a machine word");
    return v.get_si();
}

// acc -= x * v
void submul(Integer& acc, long x, const Integer& v)
{
    if (x >= 0)
        mpz_submul_ui(acc.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(x));
    else
        mpz_addmul_ui(acc.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(-x));
}

} // namespace

BlockSearch shortest_in_block(const IntegralGso& gso, std::size_t begin, std::size_t end, const Rational& radius,
                              const CancelSignal& cancel, std::optional<std::uint64_t> node_cap)
{
    BlockSearch out;
    out.norm_sq = radius;
    if (end <= begin)
        return out;
    const std::size_t n = end - begin;

    // Level i works with the integer numerator of (x_i - c_i): with
    // D = d(g+1) and c_i = cnum_i / D, the level contributes
    // (x_i D - cnum_i)^2 / (d(g+1) d(g)) to the squared norm.
    std::vector<Integer> d_hi(n), den(n);
    for (std::size_t i = 0; i < n; ++i) {
        d_hi[i] = gso.d(begin + i + 1);
        den[i] = d_hi[i] * gso.d(begin + i);
    }

    std::vector<long> x(n, 0), x0(n, 0), step(n, 0);
    std::vector<int> dir(n, 1);
    // Levels whose ancestors are all zero only walk x >= 0, one of each +/- pair.
    std::vector<char> half(n, 0);
    std::vector<Integer> cnum(n);
    std::vector<Rational> partial(n + 1);
    partial[n] = 0;
    Rational bound = radius;

    auto enter = [&](std::size_t i) {
        step[i] = 0;
        half[i] = (i + 1 == n) || (half[i + 1] && x[i + 1] == 0);
        Integer& c = cnum[i];
        c = 0;
        if (half[i]) {
            x[i] = x0[i] = 0;
            dir[i] = 1;
            return;
        }
        for (std::size_t j = i + 1; j < n; ++j)
            if (x[j] != 0)
                submul(c, x[j], gso.lambda(begin + j, begin + i));
        Integer r = 2 * c + d_hi[i];
        Integer twice_d = 2 * d_hi[i];
        mpz_fdiv_q(r.get_mpz_t(), r.get_mpz_t(), twice_d.get_mpz_t());
        x0[i] = x[i] = to_long(r);
        dir[i] = (c >= r * d_hi[i]) ? 1 : -1;
    };

    // Zig-zag around the center: distances to c_i never decrease, so the
    // first candidate outside the bound ends the level.
    auto advance = [&](std::size_t i) {
        if (half[i]) {
            ++x[i];
            return;
        }
        const long s = ++step[i];
        x[i] = (s & 1) ? x0[i] + dir[i] * ((s + 1) / 2) : x0[i] - dir[i] * (s / 2);
    };

    Integer t;
    Rational term, value;
    std::size_t i = n - 1;
    enter(i);
    while (true) {
        mpz_mul_si(t.get_mpz_t(), d_hi[i].get_mpz_t(), x[i]);
        t -= cnum[i];
        mpz_mul(mpq_numref(term.get_mpq_t()), t.get_mpz_t(), t.get_mpz_t());
        mpz_set(mpq_denref(term.get_mpq_t()), den[i].get_mpz_t());
        term.canonicalize();
        value = partial[i + 1] + term;

        if (value < bound) {
            ++out.nodes;
            if (out.nodes % kPollInterval == 0 && cancel.requested()) {
                out.interrupted = true;
                return out;
            }
            if (node_cap && out.nodes >= *node_cap) {
                out.interrupted = true;
                return out;
            }
            if (i == 0) {
                const bool zero = half[0] && x[0] == 0;
                if (!zero) {
                    bound = value;
                    out.coeffs = x;
                    out.norm_sq = value;
                }
                advance(0);
            } else {
                partial[i] = value;
                --i;
                enter(i);
            }
        } else {
            if (++i == n)
                break;
            advance(i);
        }
    }
    return out;
}

} // namespace detail

std::string_view to_string(SvpStatus status)
{
    return status == SvpStatus::ok ? "ok" : "timeout";
}

void Budget::validate() const
{
    if (!(wall_time_s > 0.0))
        throw ParameterError("budget wall time must be positive");
}

SvpResult enumerate_svp(const Basis& basis, const Budget& budget, std::stop_token stop)
{
    budget.validate();
    // Budgets beyond ~30 years are treated as unlimited to keep the clock arithmetic finite.
    const CancelSignal cancel = budget.wall_time_s > 1e9
                                    ? CancelSignal(CancelSignal::Clock::time_point::max(), stop)
                                    : CancelSignal::after(std::chrono::duration<double>(budget.wall_time_s), stop);

    // The preprocessing LLL ignores the deadline so a timed-out search still
    // reports an incumbent no longer than the reduced first row. Only an
    // explicit stop request interrupts it.
    detail::IntegralGso gso(basis.data());
    std::size_t swaps = 0;
    const bool reduced =
        detail::lll_in_place(gso, Rational(99, 100), 0, swaps, CancelSignal(CancelSignal::Clock::time_point::max(), stop));

    SvpResult result;
    result.vector = gso.row(0);
    result.norm_sq = gso.d(1);
    if (!reduced) {
        result.status = SvpStatus::timeout;
        return result;
    }

    const auto search = detail::shortest_in_block(gso, 0, gso.size(), Rational(gso.d(1)), cancel, budget.node_cap);
    result.nodes = search.nodes;
    result.status = search.interrupted ? SvpStatus::timeout : SvpStatus::ok;
    if (!search.coeffs.empty()) {
        IntVector v(gso.cols(), Integer(0));
        for (std::size_t k = 0; k < search.coeffs.size(); ++k) {
            if (search.coeffs[k] == 0)
                continue;
            const Integer c = search.coeffs[k];
            for (std::size_t col = 0; col < v.size(); ++col)
                v[col] += c * gso.row(k)[col];
        }
        result.norm_sq = dot(v, v);
        result.vector = std::move(v);
    }
    return result;
}

namespace {

template <class T>
struct BruteForce {
    std::vector<std::vector<T>> rows;
    long box;
    std::vector<std::vector<T>> partial; // partial[k] = sum_{i<k} x_i b_i
    std::vector<T> best;
    T best_norm{};
    bool have_best = false;
    std::uint64_t nodes = 0;

    void run(std::size_t k, bool prefix_zero)
    {
        const std::size_t n = rows.size();
        const std::size_t m = rows[0].size();
        if (k == n) {
            if (prefix_zero)
                return;
            ++nodes;
            T norm{};
            for (const auto& y : partial[n])
                norm += y * y;
            if (!have_best || norm < best_norm) {
                best_norm = norm;
                best = partial[n];
                have_best = true;
            }
            return;
        }
        const long lo = prefix_zero ? 0 : -box;
        auto& y = partial[k + 1];
        for (std::size_t c = 0; c < m; ++c)
            y[c] = partial[k][c] + T(lo) * rows[k][c];
        for (long x = lo; x <= box; ++x) {
            run(k + 1, prefix_zero && x == 0);
            for (std::size_t c = 0; c < m; ++c)
                y[c] += rows[k][c];
        }
    }
};

template <class T>
SvpResult brute_force_with(const Basis& basis, long box, auto&& convert_in, auto&& convert_out)
{
    BruteForce<T> bf;
    bf.box = box;
    for (const auto& r : basis.data()) {
        std::vector<T> row;
        for (const auto& v : r)
            row.push_back(convert_in(v));
        bf.rows.push_back(std::move(row));
    }
    bf.partial.assign(basis.rows() + 1, std::vector<T>(basis.cols(), T(0)));
    bf.run(0, true);

    SvpResult result;
    for (const auto& v : bf.best)
        result.vector.push_back(convert_out(v));
    result.norm_sq = convert_out(bf.best_norm);
    result.nodes = bf.nodes;
    return result;
}

} // namespace

SvpResult bruteforce_svp(const Basis& basis, long box)
{
    if (box < 1)
        throw ParameterError("box must be at least 1");

    // Every partial sum is bounded by box * (column sum of |b_ij|); use
    // machine integers when the resulting squared norm cannot overflow.
    Integer max_col = 0;
    for (std::size_t c = 0; c < basis.cols(); ++c) {
        Integer s = 0;
        for (std::size_t i = 0; i < basis.rows(); ++i)
            s += abs(basis(i, c));
        if (s > max_col)
            max_col = s;
    }
    const Integer ymax = max_col * box;
    const Integer norm_bound = ymax * ymax * static_cast<unsigned long>(basis.cols());
    if (norm_bound < Integer(std::numeric_limits<std::int64_t>::max() / 4)) {
        return brute_force_with<std::int64_t>(
            basis, box, [](const Integer& v) { return static_cast<std::int64_t>(v.get_si()); },
            [](std::int64_t v) { return Integer(static_cast<long>(v)); });
    }
    return brute_force_with<Integer>(
        basis, box, [](const Integer& v) { return v; }, [](const Integer& v) { return v; });
}

} // namespace lattice_lab
