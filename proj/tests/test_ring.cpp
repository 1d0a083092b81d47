#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "confring/ring.hpp"

using namespace confring;

namespace {

// sum of coeff * monomial, already in normal form
Element el(const Presentation& p,
           const std::vector<std::pair<long, std::vector<GeneratorId>>>& t) {
    Element e;
    for (const auto& [c, gens] : t)
        e.add_term(Monomial{gens}, Scalar::from_int(c, p.prime()));
    return e;
}

}  // namespace

TEST_CASE("collision of a mixed pair at level 2") {
    // A[2,0]*A[2,1] = A[1,0]*A[2,1] - A[1,0]*A[2,0]  (any parity)
    for (int n : {2, 3, 4, 5}) {
        Presentation p = Presentation::orbit_ring(n, 2);
        Element want =
            el(p, {{1, {{1, 0}, {2, 1}}}, {-1, {{1, 0}, {2, 0}}}});
        CHECK(p.reduce_collision(2, 0, 1) == want);
    }
}

TEST_CASE("squares vanish") {
    for (int n : {3, 4}) {
        Presentation p = Presentation::orbit_ring(n, 3);
        CHECK(p.reduce_collision(2, 1, 1).is_zero());
        CHECK(p.reduce_collision(3, -2, -2).is_zero());
        CHECK(p.reduce_collision(1, 0, 0).is_zero());
        CHECK(p.multiply(p.gen(1, 0), p.gen(1, 0)).is_zero());
    }
}

TEST_CASE("collision with opposite-sign second indices, n even") {
    // A[3,1]*A[3,-2] = (A[1,0]+A[2,0]-A[2,-1])*(A[3,-2]-A[3,1]) when n = 4
    Presentation p = Presentation::orbit_ring(4, 3);
    Element want = el(p, {{1, {{1, 0}, {3, -2}}},
                          {-1, {{1, 0}, {3, 1}}},
                          {1, {{2, 0}, {3, -2}}},
                          {-1, {{2, 0}, {3, 1}}},
                          {-1, {{2, -1}, {3, -2}}},
                          {1, {{2, -1}, {3, 1}}}});
    CHECK(p.reduce_collision(3, 1, -2) == want);
}

TEST_CASE("non-canonical pairs reduce through the swap sign") {
    for (int n : {3, 4}) {
        Presentation p = Presentation::orbit_ring(n, 3);
        int sgn = p.swap_sign();
        for (int a : {0, 1, -1, 2, -2}) {
            for (int b : {0, 1, -1, 2, -2}) {
                Element ab = p.reduce_collision(3, a, b);
                Element ba = p.reduce_collision(3, b, a);
                ba.scale(Scalar::from_int(sgn, p.prime()));
                CHECK(ab == ba);
            }
        }
    }
}

TEST_CASE("unit law and scalar terms") {
    Presentation p = Presentation::orbit_ring(3, 2);
    Element x = el(p, {{2, {{1, 0}, {2, -1}}}, {-3, {{2, 1}}}, {5, {}}});
    CHECK(p.multiply(p.one(), x) == x);
    CHECK(p.multiply(x, p.one()) == x);
    CHECK(p.multiply(p.zero(), x).is_zero());
}

TEST_CASE("level-3 product identity in the odd-parity ring") {
    // (-A[3,2] + A[3,-2] - A[2,0]) * A[3,0]
    //   = -A[2,0]*A[3,-2] + A[2,0]*A[3,0] - A[2,0]*A[3,2]
    // and the same value arises as -(A[3,2]+A[3,-2]-A[3,0]) * A[2,0]
    Presentation p = Presentation::orbit_ring(3, 3);
    Element lhs1 = el(p, {{-1, {{3, 2}}}, {1, {{3, -2}}}, {-1, {{2, 0}}}});
    Element got = p.multiply(lhs1, p.gen(3, 0));
    Element want = el(p, {{-1, {{2, 0}, {3, -2}}},
                          {1, {{2, 0}, {3, 0}}},
                          {-1, {{2, 0}, {3, 2}}}});
    CHECK(got == want);

    Element lhs2 = el(p, {{-1, {{3, 2}}}, {-1, {{3, -2}}}, {1, {{3, 0}}}});
    CHECK(p.multiply(lhs2, p.gen(2, 0)) == want);
}

TEST_CASE("arnold collision rule") {
    Presentation p = Presentation::arnold_ring(3, 3);
    // A'[3,1]*A'[3,2] = A'[2,1]*(A'[3,2] - A'[3,1])
    Element want = el(p, {{1, {{2, 1}, {3, 2}}}, {-1, {{2, 1}, {3, 1}}}});
    CHECK(p.reduce_collision(3, 1, 2) == want);
    CHECK(p.reduce_collision(3, 2, 2).is_zero());
    // swapped order picks up the commutation sign (+1 for odd n)
    CHECK(p.reduce_collision(3, 2, 1) == want);
    Presentation q = Presentation::arnold_ring(4, 3);
    Element w4 = el(q, {{1, {{2, 1}, {3, 2}}}, {-1, {{2, 1}, {3, 1}}}});
    Element got = q.reduce_collision(3, 2, 1);
    got.scale(Scalar::from_int(-1, 0));
    CHECK(got == w4);
}

TEST_CASE("collision index validation") {
    Presentation p = Presentation::orbit_ring(3, 2);
    CHECK_THROWS_AS(p.reduce_collision(3, 0, 1), domain_error);
    CHECK_THROWS_AS(p.reduce_collision(2, 2, 0), domain_error);
    CHECK_THROWS_AS(p.reduce_collision(2, 0, -2), domain_error);
}

TEST_CASE("basis enumeration order and sizes") {
    for (int n : {2, 3}) {
        Presentation p = Presentation::orbit_ring(n, 2);
        int gd = p.generator_degree();

        auto b0 = p.basis_of_degree(0);
        REQUIRE(b0.size() == 1);
        CHECK(b0[0].factors.empty());

        auto b1 = p.basis_of_degree(gd);
        REQUIRE(b1.size() == 4);
        CHECK(b1[0].factors == std::vector<GeneratorId>{{1, 0}});
        CHECK(b1[1].factors == std::vector<GeneratorId>{{2, 0}});
        CHECK(b1[2].factors == std::vector<GeneratorId>{{2, 1}});
        CHECK(b1[3].factors == std::vector<GeneratorId>{{2, -1}});

        auto b2 = p.basis_of_degree(2 * gd);
        CHECK(b2.size() == 3);
        for (const Monomial& mono : b2) {
            CHECK(mono.factors[0] == GeneratorId{1, 0});
            CHECK(mono.factors[1].i == 2);
        }

        CHECK(p.basis_of_degree(3 * gd).empty());
        if (gd > 1) CHECK(p.basis_of_degree(1).empty());
    }
}

TEST_CASE("basis enumeration follows the monomial order") {
    Presentation p = Presentation::orbit_ring(4, 3);
    for (int q = 0; q <= 3; ++q) {
        auto b = p.basis_of_degree(q * p.generator_degree());
        for (std::size_t t = 1; t < b.size(); ++t) CHECK(b[t - 1] < b[t]);
    }
}

TEST_CASE("closed-form dimension counts") {
    CHECK(Presentation::orbit_ring(3, 2).poincare_polynomial() ==
          std::vector<unsigned long long>{1, 4, 3});
    CHECK(Presentation::orbit_ring(2, 3).poincare_polynomial() ==
          std::vector<unsigned long long>{1, 9, 23, 15});
    CHECK(Presentation::arnold_ring(3, 3).poincare_polynomial() ==
          std::vector<unsigned long long>{1, 3, 2});
    CHECK(Presentation::arnold_ring(5, 4).poincare_polynomial() ==
          std::vector<unsigned long long>{1, 6, 11, 6});
    CHECK(Presentation::arnold_ring(3, 1).poincare_polynomial() ==
          std::vector<unsigned long long>{1});
}

TEST_CASE("enumerated dimensions match the closed form") {
    for (int n : {2, 3, 4, 5}) {
        for (int m = 1; m <= 4; ++m) {
            Presentation p = Presentation::orbit_ring(n, m);
            auto poly = p.poincare_polynomial();
            for (std::size_t q = 0; q < poly.size(); ++q)
                CHECK(p.basis_of_degree(static_cast<int>(q) *
                                        p.generator_degree())
                          .size() == poly[q]);
        }
        for (int k = 1; k <= 4; ++k) {
            Presentation p = Presentation::arnold_ring(n, k);
            auto poly = p.poincare_polynomial();
            for (std::size_t q = 0; q < poly.size(); ++q)
                CHECK(p.basis_of_degree(static_cast<int>(q) *
                                        p.generator_degree())
                          .size() == poly[q]);
        }
    }
}

TEST_CASE("normal form is idempotent on basis monomials") {
    for (int n : {3, 4}) {
        Presentation p = Presentation::orbit_ring(n, 3);
        for (int q = 0; q <= 3; ++q) {
            for (const Monomial& mono :
                 p.basis_of_degree(q * p.generator_degree())) {
                Element e = p.normalize_word(mono.factors, Scalar::one(0));
                REQUIRE(e.term_count() == 1);
                CHECK(e.terms().begin()->first == mono);
                CHECK(e.terms().begin()->second.is_one());
            }
        }
    }
}

TEST_CASE("graded commutativity on all generator pairs") {
    for (int n : {2, 3, 4, 5}) {
        Presentation p = Presentation::orbit_ring(n, 3);
        auto gens = p.generators();
        for (const GeneratorId& g : gens) {
            for (const GeneratorId& h : gens) {
                Element gh = p.multiply(p.gen(g.i, g.j), p.gen(h.i, h.j));
                Element hg = p.multiply(p.gen(h.i, h.j), p.gen(g.i, g.j));
                hg.scale(Scalar::from_int(p.swap_sign(), p.prime()));
                CHECK(gh == hg);
            }
        }
    }
}

TEST_CASE("top products vanish") {
    Presentation p = Presentation::orbit_ring(4, 2);
    // three factors in a two-point ring: degree exceeds the top class
    Element x = p.multiply(p.gen(1, 0), p.gen(2, 1));
    CHECK(p.multiply(x, p.gen(2, -1)).is_zero());
    CHECK(p.multiply(x, p.gen(1, 0)).is_zero());
}

TEST_CASE("prime-field arithmetic goes through the same tables") {
    Presentation q = Presentation::orbit_ring(4, 3);
    Presentation f5 = Presentation::orbit_ring(4, 3, 5);
    Element overq = q.multiply(q.gen(3, 1), q.gen(3, -2));
    Element overf = f5.multiply(f5.gen(3, 1), f5.gen(3, -2));
    CHECK(overq.term_count() == overf.term_count());
    // reduce each rational coefficient mod 5 and compare
    Element reduced;
    for (const auto& [mono, c] : overq.terms()) {
        long num = c.rat().get_num().get_si();
        reduced.add_term(mono, Scalar::from_int(num, 5));
    }
    CHECK(reduced == overf);
    // F_2 ring arithmetic is allowed
    Presentation f2 = Presentation::orbit_ring(3, 2, 2);
    CHECK(!f2.multiply(f2.gen(2, 1), f2.gen(2, 0)).is_zero());
}

TEST_CASE("element printing") {
    Presentation p = Presentation::orbit_ring(3, 2);
    CHECK(p.str(p.zero()) == "0");
    CHECK(p.str(p.one()) == "1");
    Element e = el(p, {{-1, {{1, 0}, {2, 0}}}, {1, {{1, 0}, {2, 1}}}});
    CHECK(p.str(e) == "-A[1,0]*A[2,0] + A[1,0]*A[2,1]");
    Element c = el(p, {{2, {{2, -1}}}, {7, {}}});
    CHECK(p.str(c) == "7 + 2*A[2,-1]");
    Presentation a = Presentation::arnold_ring(3, 3);
    CHECK(a.str(a.gen(3, 2)) == "A'[3,2]");
}

TEST_CASE("associativity harness") {
    Presentation p3 = Presentation::orbit_ring(3, 3);
    ConsistencyReport r3 = p3.verify_associativity(200, 42);
    CHECK(r3.ok);
    CHECK(r3.checks == 200);

    Presentation p4 = Presentation::orbit_ring(4, 3);
    CHECK(p4.verify_associativity(200, 42).ok);

    CHECK_THROWS_AS(p3.verify_associativity(0, 1), domain_error);
}

TEST_CASE("presentation/mode mismatches are rejected") {
    Presentation q = Presentation::orbit_ring(3, 2);
    Presentation f5 = Presentation::orbit_ring(3, 2, 5);
    CHECK_THROWS_AS(q.multiply(q.one(), f5.one()), domain_error);
    Presentation small = Presentation::orbit_ring(3, 1);
    CHECK_THROWS_AS(small.gen(2, 0), domain_error);
    CHECK_THROWS_AS(small.multiply(small.one(), q.gen(2, 1)), domain_error);
    CHECK_THROWS_AS(Presentation::orbit_ring(1, 2), domain_error);
    CHECK_THROWS_AS(Presentation::orbit_ring(3, 2, 6), domain_error);
}
