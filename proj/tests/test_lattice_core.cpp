#include <doctest.h>

#include <sstream>

#include "lattice_lab/basis.hpp"
#include "lattice_lab/error.hpp"
#include "lattice_lab/gram_schmidt.hpp"
#include "lattice_lab/prng.hpp"
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

} // namespace

TEST_CASE("splitmix64 matches reference vectors")
{
    // Pinned from the reference transcription in oracles.hpp.
    const std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>> pinned = {
        {0, {0xe220a8397b1dcdafULL, 0x6e789e6aa1b965f4ULL, 0x06c45d188009454fULL}},
        {1, {0x910a2dec89025cc1ULL, 0xbeeb8da1658eec67ULL, 0xf893a2eefb32555eULL}},
        {2, {0x975835de1c9756ceULL, 0xbfc846100bfc1e42ULL, 0x987bbcbfdd7e532fULL}},
        {42, {0xbdd732262feb6e95ULL, 0x28efe333b266f103ULL, 0x47526757130f9f52ULL}},
    };
    for (const auto& [seed, expect] : pinned) {
        CAPTURE(seed);
        CHECK(oracle::splitmix64(seed, 3) == expect);
        SplitMix64 rng(seed);
        for (auto v : expect)
            CHECK(rng.next() == v);
    }
}

TEST_CASE("splitmix64 streams")
{
    SplitMix64 a(7), b(7);
    for (int i = 0; i < 1000; ++i)
        REQUIRE(a.next() == b.next());
    CHECK(SplitMix64(1).next() != SplitMix64(2).next());

    SplitMix64 r(5);
    for (int i = 0; i < 10000; ++i)
        REQUIRE(r.below(97) < 97);
}

TEST_CASE("gen_basis families")
{
    SUBCASE("uniform is deterministic")
    {
        LatticeFamily f{FamilyKind::uniform, 30, 12289};
        CHECK(gen_basis(f, 10, 42) == gen_basis(f, 10, 42));
        CHECK_FALSE(gen_basis(f, 10, 42) == gen_basis(f, 10, 43));
        const Basis b = gen_basis(f, 10, 42);
        for (std::size_t i = 0; i < 10; ++i)
            for (std::size_t j = 0; j < 10; ++j) {
                REQUIRE(b(i, j) >= 0);
                REQUIRE(b(i, j) < (Integer(1) << 30));
            }
    }
    SUBCASE("uniform entries are masked prng outputs")
    {
        LatticeFamily f{FamilyKind::uniform, 12, 12289};
        const Basis b = gen_basis(f, 3, 9);
        const auto ref = oracle::splitmix64(9, 9);
        for (std::size_t k = 0; k < 9; ++k)
            CHECK(b(k / 3, k % 3) == Integer(static_cast<unsigned long>(ref[k] & 0xfff)));
    }
    SUBCASE("qary block structure")
    {
        LatticeFamily f{FamilyKind::qary, 30, 12289};
        const Basis b = gen_basis(f, 4, 7);
        CHECK(b(0, 0) == 12289);
        CHECK(b(1, 1) == 12289);
        CHECK(b(0, 1) == 0);
        CHECK(b(1, 0) == 0);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 2; j < 4; ++j)
                CHECK(b(i, j) == 0);
        CHECK(b(2, 2) == 1);
        CHECK(b(3, 3) == 1);
        CHECK(b(2, 3) == 0);
        CHECK(b(3, 2) == 0);
        for (std::size_t i = 2; i < 4; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                CHECK(b(i, j) < 12289);
        CHECK(gram_det_sq(b) == Integer(12289) * 12289 * 12289 * 12289);
        CHECK_THROWS_AS(gen_basis(f, 5, 7), ParameterError);
    }
    SUBCASE("circulant rows are cyclic right shifts")
    {
        LatticeFamily f{FamilyKind::circulant, 8, 12289};
        const Basis b = gen_basis(f, 3, 1);
        for (std::size_t i = 1; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                CHECK(b(i, (j + 1) % 3) == b(i - 1, j));
    }
    SUBCASE("parameter validation")
    {
        CHECK_THROWS_AS(gen_basis({FamilyKind::uniform, 3, 12289}, 4, 1), ParameterError);
        CHECK_THROWS_AS(gen_basis({FamilyKind::uniform, 65, 12289}, 4, 1), ParameterError);
        CHECK_THROWS_AS(gen_basis({FamilyKind::qary, 30, 12288}, 4, 1), ParameterError);
        CHECK_THROWS_AS(gen_basis({FamilyKind::qary, 30, 2}, 4, 1), ParameterError);
        CHECK_THROWS_AS(gen_basis({}, 1, 1), ParameterError);
        CHECK_THROWS_AS(gen_basis({}, 129, 1), ParameterError);
    }
    SUBCASE("every generated basis is full rank")
    {
        for (auto kind : {FamilyKind::uniform, FamilyKind::qary, FamilyKind::circulant})
            for (std::size_t n : {2, 4, 6, 12})
                for (std::uint64_t s = 0; s < 5; ++s)
                    REQUIRE(is_full_rank(gen_basis({kind, 4, 12289}, n, s)));
    }
    SUBCASE("family names")
    {
        CHECK(family_kind_from_string("qary") == FamilyKind::qary);
        CHECK(to_string(FamilyKind::circulant) == "circulant");
        CHECK_THROWS_AS(family_kind_from_string("ideal"), ParameterError);
    }
}

TEST_CASE("gram_schmidt examples")
{
    const auto g = gram_schmidt(make({{3, 0}, {1, 2}}));
    CHECK(g.mu(1, 0) == Rational(1, 3));
    CHECK(g.bstar_norms_sq[0] == 9);
    CHECK(g.bstar_norms_sq[1] == 4);

    const auto id = gram_schmidt(Basis::identity(4));
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(id.bstar_norms_sq[i] == 1);
        for (std::size_t j = 0; j < i; ++j)
            CHECK(id.mu(i, j) == 0);
    }
    CHECK_THROWS_AS(gram_schmidt(make({{2, 0}, {2, 0}})), RankError);
}

TEST_CASE("gram_schmidt agrees with the textbook oracle")
{
    for (auto kind : {FamilyKind::uniform, FamilyKind::qary, FamilyKind::circulant})
        for (std::size_t n : {2, 4, 8, 10})
            for (std::uint64_t seed = 0; seed < 3; ++seed) {
                const Basis b = gen_basis({kind, 16, 12289}, n, seed);
                const auto g = gram_schmidt(b);
                const auto ref = oracle::gram_schmidt(b);
                for (std::size_t i = 0; i < n; ++i) {
                    REQUIRE(g.bstar_norms_sq[i] == ref.norm_sq[i]);
                    for (std::size_t j = 0; j < i; ++j)
                        REQUIRE(g.mu(i, j) == ref.mu[i][j]);
                }
                // b_i = b*_i + sum mu_ij b*_j, exactly.
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t k = 0; k < b.cols(); ++k) {
                        Rational acc = ref.bstar[i][k];
                        for (std::size_t j = 0; j < i; ++j)
                            acc += g.mu(i, j) * ref.bstar[j][k];
                        REQUIRE(acc == Rational(b(i, k)));
                    }
            }
}

TEST_CASE("gram_det_sq")
{
    CHECK(gram_det_sq(Basis::identity(3)) == 1);
    CHECK(gram_det_sq(make({{2, 0}, {0, 3}})) == 36);
    CHECK(gram_det_sq(make({{5, 3}, {3, 2}})) == 1);
    CHECK(gram_det_sq(make({{1, 2, 3}, {2, 4, 6}})) == 0);
    CHECK(gram_det_sq(make({{1, 0, 0}, {0, 1, 0}})) == 1);
    CHECK(gram_det_sq(make({{1, 1, 0}, {0, 1, 1}})) == 3);

    for (auto kind : {FamilyKind::uniform, FamilyKind::circulant, FamilyKind::qary})
        for (std::size_t n : {2, 6, 12, 20}) {
            const Basis b = gen_basis({kind, 30, 12289}, n, 11);
            const auto g = gram_schmidt(b);
            Rational prod = 1;
            for (const auto& v : g.bstar_norms_sq)
                prod *= v;
            REQUIRE(prod == Rational(gram_det_sq(b)));
        }
}

TEST_CASE("integer_coefficients")
{
    const Basis b = make({{2, 0}, {1, 3}});
    const IntVector t{Integer(5), Integer(9)};
    const auto x = integer_coefficients(b, t);
    REQUIRE(x);
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 3);
    CHECK_FALSE(integer_coefficients(b, IntVector{Integer(1), Integer(0)}));
    CHECK_FALSE(integer_coefficients(make({{1, 0, 0}, {0, 1, 0}}), IntVector{Integer(0), Integer(0), Integer(1)}));
}

TEST_CASE("basis text format")
{
    const Basis id = parse_basis("2 2\n1 0\n0 1\n");
    CHECK(id == Basis::identity(2));
    CHECK(format_basis(id) == "2 2\n1 0\n0 1\n");

    const Basis neg = parse_basis("2 3\n-1 0 5\n7 -12345678901234567890 0\n");
    CHECK(neg(1, 1) == Integer("-12345678901234567890"));
    CHECK(parse_basis(format_basis(neg)) == neg);

    const Basis g = gen_basis({}, 12, 3);
    CHECK(parse_basis(format_basis(g)) == g);
    std::istringstream in(format_basis(g));
    CHECK(read_basis(in) == g);

    auto line_of = [](std::string_view text) {
        try {
            parse_basis(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    CHECK(line_of("2 2\n1 0\n") == 3);
    CHECK(line_of("2 2\n1 0\n0 x\n") == 3);
    CHECK(line_of("2\n1 0\n0 1\n") == 1);
    CHECK(line_of("2 2\n1  0\n0 1\n") == 2);
    CHECK(line_of("2 2\n1 0 0\n0 1\n") == 2);
    CHECK(line_of("2 2\n1 0\n0 1\n1 1\n") == 4);
    CHECK(line_of("2 2\n1 0\n0 1") == 0);
    CHECK(line_of("2 2\n1 0\n 0 1\n") == 3);
    CHECK(line_of("2 2\n+1 0\n0 1\n") == 2);
    CHECK_THROWS_AS(parse_basis("2 1\n1\n2\n"), Error);
}
