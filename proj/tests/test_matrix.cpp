#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "confring/matrix.hpp"

using namespace confring;

namespace {

Matrix from_ints(const std::vector<std::vector<long>>& rows,
                 std::uint32_t p = 0) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size(), p);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m.at(i, j) = Scalar::from_int(rows[i][j], p);
    return m;
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c,
                     std::uint32_t p) {
    std::uniform_int_distribution<long> d(-4, 4);
    Matrix m(r, c, p);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m.at(i, j) = Scalar::from_int(d(rng), p);
    return m;
}

bool annihilates(const Matrix& m, const std::vector<Scalar>& v) {
    for (const Scalar& x : m.apply(v))
        if (!x.is_zero()) return false;
    return true;
}

}  // namespace

TEST_CASE("rref on a rank-deficient matrix") {
    Matrix m = from_ints({{1, 2}, {2, 4}});
    RrefResult r = rref(m);
    CHECK(r.rank == 1);
    CHECK(r.pivot_cols == std::vector<std::size_t>{0});
    CHECK(r.reduced.at(0, 0).is_one());
    CHECK(r.reduced.at(0, 1) == Scalar::from_int(2));
    CHECK(r.reduced.at(1, 0).is_zero());
    CHECK(r.reduced.at(1, 1).is_zero());
}

TEST_CASE("kernel of a single-row matrix") {
    Matrix m = from_ints({{1, 1}});
    auto k = kernel_basis(m);
    REQUIRE(k.size() == 1);
    // (x, y) with x + y = 0; basis vector has 1 in the free column
    CHECK(k[0][0] == Scalar::from_int(-1));
    CHECK(k[0][1] == Scalar::from_int(1));
    CHECK(annihilates(m, k[0]));
}

TEST_CASE("identity and zero matrices") {
    Matrix id = Matrix::identity(4);
    CHECK(rank(id) == 4);
    CHECK(kernel_basis(id).empty());

    Matrix z(3, 5);
    CHECK(rank(z) == 0);
    auto k = kernel_basis(z);
    CHECK(k.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j)
            CHECK(k[i][j] == (i == j ? Scalar::from_int(1)
                                     : Scalar::from_int(0)));
    }
}

TEST_CASE("exact pivoting avoids rounding traps") {
    // would be rank 2 in floating point with naive epsilon tests
    Matrix m = from_ints({{1, 3}, {1, 3}});
    m.at(1, 1) = Scalar::fraction(3000000000000000001L, 1000000000000000000L);
    CHECK(rank(m) == 2);
    m.at(1, 1) = Scalar::fraction(3, 1);
    CHECK(rank(m) == 1);
}

TEST_CASE("kernel vectors annihilate and rank-nullity holds") {
    std::mt19937_64 rng(12345);
    for (std::uint32_t p : {0u, 5u, 3u}) {
        for (int trial = 0; trial < 25; ++trial) {
            Matrix m = random_matrix(rng, 4, 6, p);
            auto k = kernel_basis(m);
            CHECK(rank(m) + k.size() == m.cols());
            for (const auto& v : k) CHECK(annihilates(m, v));
        }
    }
}

TEST_CASE("rank is invariant under row permutation") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix m = random_matrix(rng, 5, 5, 0);
        Matrix swapped = m;
        for (std::size_t j = 0; j < 5; ++j) {
            std::swap(swapped.at(0, j), swapped.at(3, j));
            std::swap(swapped.at(1, j), swapped.at(4, j));
        }
        CHECK(rank(m) == rank(swapped));
    }
}

TEST_CASE("product, sum, apply") {
    Matrix a = from_ints({{1, 2}, {3, 4}});
    Matrix b = from_ints({{0, 1}, {1, 0}});
    CHECK(a * b == from_ints({{2, 1}, {4, 3}}));
    CHECK(a + b == from_ints({{1, 3}, {4, 4}}));
    CHECK(a - a == Matrix(2, 2));
    CHECK((a - a).is_zero());

    std::vector<Scalar> v{Scalar::from_int(1), Scalar::from_int(-1)};
    auto av = a.apply(v);
    CHECK(av[0] == Scalar::from_int(-1));
    CHECK(av[1] == Scalar::from_int(-1));

    Matrix stacked = a;
    stacked.append_rows(b);
    CHECK(stacked.rows() == 4);
    CHECK(stacked.at(2, 1) == Scalar::from_int(1));
}

TEST_CASE("mode mismatches are rejected") {
    Matrix q(2, 2, 0), f5(2, 2, 5);
    CHECK_THROWS_AS(q * f5, domain_error);
    CHECK_THROWS_AS(q + f5, domain_error);
    CHECK_THROWS_AS(q.set(0, 0, Scalar::from_int(1, 5)), domain_error);
}
