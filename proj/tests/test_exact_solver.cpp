#include <doctest.h>

#include <chrono>
#include <thread>

#include "lattice_lab/basis.hpp"
#include "lattice_lab/enumeration.hpp"
#include "lattice_lab/error.hpp"
#include "lattice_lab/gram_schmidt.hpp"
#include "lattice_lab/reduction.hpp"
#include "oracles.hpp"

using namespace lattice_lab;

namespace {

Basis make(std::initializer_list<std::initializer_list<long>> rows)
{
    std::vector<IntVector> out;
    for (auto r : rows) {
        IntVector v;
        for (long x : r)
            v.emplace_back(x);
        out.push_back(std::move(v));
    }
    return Basis(std::move(out));
}

bool in_lattice(const Basis& b, const IntVector& v)
{
    return integer_coefficients(b, v).has_value();
}

} // namespace

TEST_CASE("enumerate_svp examples")
{
    const auto a = enumerate_svp(make({{2, 0}, {0, 3}}));
    CHECK(a.status == SvpStatus::ok);
    CHECK(a.norm_sq == 4);
    CHECK(abs(a.vector[0]) == 2);
    CHECK(a.vector[1] == 0);

    const auto b = enumerate_svp(make({{5, 3}, {3, 2}}));
    CHECK(b.norm_sq == 1);
    CHECK(oracle::box_min_norm(make({{5, 3}, {3, 2}}), 8) == 1);

    CHECK_THROWS_AS(enumerate_svp(make({{1, 1}, {2, 2}})), RankError);
    Budget bad;
    bad.wall_time_s = 0;
    CHECK_THROWS_AS(enumerate_svp(Basis::identity(2), bad), ParameterError);
}

TEST_CASE("bruteforce_svp examples")
{
    const auto id = bruteforce_svp(Basis::identity(3), 2);
    CHECK(id.norm_sq == 1);

    CHECK(bruteforce_svp(make({{5, 3}, {3, 2}}), 8).norm_sq == 1);

    const auto r = bruteforce_svp(make({{2, 1}, {1, 2}}), 3);
    CHECK(r.norm_sq == 2);
    REQUIRE(r.vector.size() == 2);
    CHECK(r.vector[0] == 1);
    CHECK(r.vector[1] == -1);
    CHECK(r.nodes == (7 * 7 - 1) / 2);

    CHECK_THROWS_AS(bruteforce_svp(Basis::identity(2), 0), ParameterError);
}

TEST_CASE("bruteforce tie-break is lexicographic with positive leading coefficient")
{
    // Rows e1, e2: candidates of norm 1 are +-e1, +-e2. Coefficient (0,1) is
    // lexicographically smaller than (1,0).
    const auto r = bruteforce_svp(Basis::identity(2), 2);
    CHECK(r.vector[0] == 0);
    CHECK(r.vector[1] == 1);
}

TEST_CASE("enumeration agrees with the box oracle")
{
    for (std::size_t n = 2; n <= 6; ++n)
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            const Basis b = gen_basis({FamilyKind::uniform, 10, 12289}, n, seed);
            const auto e = enumerate_svp(b);
            REQUIRE(e.status == SvpStatus::ok);
            REQUIRE(e.norm_sq == oracle::norm_sq(e.vector));
            REQUIRE(in_lattice(b, e.vector));
            const Basis reduced = lll(b).basis;
            REQUIRE(e.norm_sq == bruteforce_svp(reduced, 4).norm_sq);
            if (n <= 4)
                REQUIRE(e.norm_sq == oracle::box_min_norm(reduced, 4));
        }
}

TEST_CASE("enumeration never exceeds the reduced first row")
{
    for (auto kind : {FamilyKind::uniform, FamilyKind::qary, FamilyKind::circulant})
        for (std::size_t n : {4, 8, 12}) {
            const Basis b = gen_basis({kind, 20, 12289}, n, 3);
            const auto e = enumerate_svp(b);
            REQUIRE(e.status == SvpStatus::ok);
            REQUIRE(e.norm_sq <= lll(b).basis.row_norm_sq(0));
            REQUIRE(e.norm_sq > 0);
            REQUIRE(in_lattice(b, e.vector));
        }
}

TEST_CASE("enumeration is deterministic")
{
    const Basis b = gen_basis({}, 14, 5);
    const auto x = enumerate_svp(b), y = enumerate_svp(b);
    CHECK(x.vector == y.vector);
    CHECK(x.nodes == y.nodes);
}

TEST_CASE("timeout returns a valid incumbent")
{
    const Basis b = gen_basis({}, 34, 1);
    Budget tiny;
    tiny.wall_time_s = 1e-4;
    const auto t = enumerate_svp(b, tiny);
    CHECK(t.status == SvpStatus::timeout);
    CHECK(in_lattice(b, t.vector));
    CHECK(t.norm_sq == oracle::norm_sq(t.vector));
    CHECK(t.norm_sq <= lll(b).basis.row_norm_sq(0));

    Budget capped;
    capped.node_cap = 100;
    const auto c = enumerate_svp(b, capped);
    CHECK(c.status == SvpStatus::timeout);
    CHECK(c.nodes == 100);
    CHECK(in_lattice(b, c.vector));

    const auto full = enumerate_svp(gen_basis({}, 20, 1));
    CHECK(full.status == SvpStatus::ok);
    const auto partial = enumerate_svp(gen_basis({}, 20, 1), Budget{3600, 20});
    CHECK(partial.norm_sq >= full.norm_sq);
}

TEST_CASE("stop token cancels enumeration")
{
    std::stop_source src;
    src.request_stop();
    const auto r = enumerate_svp(gen_basis({}, 30, 2), Budget{}, src.get_token());
    CHECK(r.status == SvpStatus::timeout);
}
