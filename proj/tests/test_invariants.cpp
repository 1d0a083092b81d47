#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <confring/action.hpp>
#include <confring/derived.hpp>
#include <confring/invariants.hpp>
#include <confring/matrix.hpp>
#include <confring/parse.hpp>
#include <confring/ring.hpp>

#include <json.hpp>

#include <string>
#include <vector>

using namespace confring;

namespace {

Element parse_a(const Presentation& p, const std::string& text) {
    return parse_element(text, p);
}

Element dclass(const Presentation& p, const DerivedClass& c) {
    return derived_class_element(p, c);
}

Element expand(const Presentation& p, const std::vector<DerivedClass>& mono) {
    Element e = p.one();
    for (const DerivedClass& c : mono) e = p.multiply(e, dclass(p, c));
    return e;
}

// Coordinate rows of elements against the degree-d monomial slice.
Matrix rows_of(const Presentation& p, const std::vector<Element>& els, int d) {
    const std::vector<Monomial> basis = p.basis_of_degree(d);
    Matrix rows(els.size(), basis.size(), p.prime());
    for (std::size_t r = 0; r < els.size(); ++r) {
        const std::vector<Scalar> coords = coordinate_vector(p, els[r], basis);
        for (std::size_t c = 0; c < coords.size(); ++c)
            if (!coords[c].is_zero()) rows.set(r, c, coords[c]);
    }
    return rows;
}

bool same_span(const Presentation& p, const std::vector<Element>& xs,
               const std::vector<Element>& ys, int d) {
    Matrix xr = rows_of(p, xs, d);
    const Matrix yr = rows_of(p, ys, d);
    const std::size_t rx = rank(xr);
    if (rx != rank(yr)) return false;
    xr.append_rows(yr);
    return rank(xr) == rx;
}

bool in_span(const Presentation& p, const std::vector<Element>& span,
             const Element& x, int d) {
    Matrix rows = rows_of(p, span, d);
    const std::size_t r0 = rank(rows);
    rows.append_rows(rows_of(p, {x}, d));
    return rank(rows) == r0;
}

std::vector<unsigned long long> invariant_dims(const Presentation& p,
                                               const SubgroupSpec& sub) {
    std::vector<unsigned long long> dims;
    for (int q = 0; q <= p.points(); ++q)
        dims.push_back(
            invariant_basis(p, sub, q * p.generator_degree()).size());
    return dims;
}

}  // namespace

TEST_CASE("subgroup specs list the expected generator indices") {
    CHECK(SubgroupSpec::full(3).generators == std::set<int>{1, 2, 3, 4});
    CHECK(SubgroupSpec::punctured(3).generators == std::set<int>{2, 3, 4});
    CHECK(std::string(invariant_kind_name(InvariantKind::odd_full)) ==
          "odd-full");
    CHECK(std::string(invariant_kind_name(InvariantKind::even_punctured)) ==
          "even-punctured");
}

TEST_CASE("full-group invariants on two points in the first slice") {
    // n = 3, m = 2, degree n-1: the line spanned by
    // C+[2,1] = A[2,1] + A[2,-1] - A[2,0].
    const Presentation p = Presentation::orbit_ring(3, 2);
    const std::vector<Element> inv =
        invariant_basis(p, SubgroupSpec::full(2), 2);
    REQUIRE(inv.size() == 1);
    CHECK(in_span(p, inv, dclass(p, DerivedClass::cplus(2, 1)), 2));

    // and nothing new appears over an odd prime field
    const Presentation p7 = Presentation::orbit_ring(3, 2, 7);
    CHECK(invariant_basis(p7, SubgroupSpec::full(2), 2).size() == 1);
}

TEST_CASE("one even point has no full-group invariants in the slice") {
    // eps_1 negates A[1,0] while eps_2 fixes it, so nothing survives.
    const Presentation p = Presentation::orbit_ring(4, 1);
    CHECK(invariant_basis(p, SubgroupSpec::full(1), 3).empty());
    CHECK(invariant_basis(p, SubgroupSpec::full(1), 0).size() == 1);
}

TEST_CASE("dropping eps_1 enlarges the invariants on the circle case") {
    // n = 2, m = 2, degree 1, subgroup {2,3}: two invariant lines,
    // spanned by A[1,0] and A[2,0] - A[1,0].
    const Presentation p = Presentation::orbit_ring(2, 2);
    const SubgroupSpec sub{{2, 3}};
    const std::vector<Element> inv = invariant_basis(p, sub, 1);
    REQUIRE(inv.size() == 2);
    CHECK(in_span(p, inv, parse_a(p, "A[1,0]"), 1));
    CHECK(in_span(p, inv, parse_a(p, "A[2,0] - A[1,0]"), 1));
    // adding eps_1 back negates both lines, so nothing survives
    CHECK(invariant_basis(p, SubgroupSpec::full(2), 1).empty());
}

TEST_CASE("invariant computation rejects bad setups") {
    const Presentation f2 = Presentation::orbit_ring(3, 2, 2);
    CHECK_THROWS_AS(invariant_basis(f2, SubgroupSpec::full(2), 2),
                    domain_error);

    const Presentation arnold = Presentation::arnold_ring(3, 3);
    CHECK_THROWS_AS(invariant_basis(arnold, SubgroupSpec::full(2), 2),
                    domain_error);

    const Presentation p = Presentation::orbit_ring(3, 2);
    CHECK_THROWS_AS(invariant_basis(p, SubgroupSpec{{4}}, 2), domain_error);
    CHECK_THROWS_AS(invariant_basis(p, SubgroupSpec{{0}}, 2), domain_error);
}

TEST_CASE("degenerate degrees and subgroups") {
    const Presentation p = Presentation::orbit_ring(3, 2);
    CHECK(invariant_basis(p, SubgroupSpec::full(2), 3).empty());   // off-slice
    CHECK_THROWS_AS(invariant_basis(p, SubgroupSpec::full(2), -2),
                    domain_error);
    CHECK(invariant_basis(p, SubgroupSpec::full(2), 6).empty());   // past top
    // the empty subgroup fixes everything
    CHECK(invariant_basis(p, SubgroupSpec{}, 2).size() ==
          p.basis_of_degree(2).size());
}

TEST_CASE("closed-form basis, odd kinds") {
    PredictedBasis pb =
        predicted_invariant_basis(InvariantKind::odd_full, 3, 2, 2);
    CHECK(pb.strs() == std::vector<std::string>{"C+[2,1]"});

    pb = predicted_invariant_basis(InvariantKind::odd_full, 3, 2, 0);
    CHECK(pb.strs() == std::vector<std::string>{"1"});

    // m = 3, one factor: levels 2 and 3 in index order
    pb = predicted_invariant_basis(InvariantKind::odd_punctured, 3, 3, 2);
    CHECK(pb.strs() == std::vector<std::string>{"C+[2,1]", "C+[3,1]",
                                                "C+[3,2]"});

    // two factors force distinct levels
    pb = predicted_invariant_basis(InvariantKind::odd_full, 3, 3, 4);
    CHECK(pb.strs() ==
          std::vector<std::string>{"C+[2,1]*C+[3,1]", "C+[2,1]*C+[3,2]"});

    // top fiber degree m is out of reach for level-increasing products
    CHECK(predicted_invariant_basis(InvariantKind::odd_full, 3, 3, 6)
              .monomials.empty());
    // degrees off the slice grid carry nothing
    CHECK(predicted_invariant_basis(InvariantKind::odd_full, 3, 3, 3)
              .monomials.empty());
    CHECK(predicted_invariant_basis(InvariantKind::odd_full, 3, 3, -2)
              .monomials.empty());
}

TEST_CASE("closed-form basis, even full kind") {
    // the three I classes on three points, in index order
    const PredictedBasis pb =
        predicted_invariant_basis(InvariantKind::even_full, 4, 3, 6);
    CHECK(pb.strs() == std::vector<std::string>{"I-[3,2,1]", "I0[3,2]",
                                                "I+[3,2,1]"});

    // odd fiber degrees vanish
    CHECK(predicted_invariant_basis(InvariantKind::even_full, 4, 3, 3)
              .monomials.empty());
    CHECK(predicted_invariant_basis(InvariantKind::even_full, 4, 3, 9)
              .monomials.empty());

    // single-factor count on five points: sum of 2i-1 over admissible
    // (r,i) pairs = 3 + (3+5) + (3+5+7)
    CHECK(predicted_invariant_basis(InvariantKind::even_full, 4, 5, 6)
              .monomials.size() == 26);

    // two factors need four distinct indices in 2..m
    CHECK(predicted_invariant_basis(InvariantKind::even_full, 4, 4, 12)
              .monomials.empty());
    // on five points: pairs (2,3)(4,5) allow all 3*7 j-choices, while
    // (2,4)(3,5) and (3,4)(2,5) each lose two matching non-positive j's
    // and one sign clash, 15 - 3 apiece
    CHECK(predicted_invariant_basis(InvariantKind::even_full, 4, 5, 12)
              .monomials.size() == 45);
}

TEST_CASE("closed-form basis, even punctured kind") {
    PredictedBasis pb =
        predicted_invariant_basis(InvariantKind::even_punctured, 2, 2, 2);
    CHECK(pb.strs() == std::vector<std::string>{"A[1,0]*D0[2]"});

    pb = predicted_invariant_basis(InvariantKind::even_punctured, 2, 2, 1);
    CHECK(pb.strs() == std::vector<std::string>{"A[1,0]", "D0[2]"});

    // m = 3: all shapes in flattened-index order
    pb = predicted_invariant_basis(InvariantKind::even_punctured, 2, 3, 2);
    CHECK(pb.strs() ==
          std::vector<std::string>{"A[1,0]*D0[2]", "A[1,0]*D0[3]",
                                   "D0[2]*D0[3]", "I-[3,2,1]", "I+[3,2,1]"});
    pb = predicted_invariant_basis(InvariantKind::even_punctured, 2, 3, 3);
    CHECK(pb.strs() ==
          std::vector<std::string>{"A[1,0]*D0[2]*D0[3]", "A[1,0]*I-[3,2,1]",
                                   "A[1,0]*I+[3,2,1]"});
    // D0 levels must avoid the I indices, so nothing pairs with I here
    CHECK(predicted_invariant_basis(InvariantKind::even_punctured, 2, 3, 4)
              .monomials.empty());
}

TEST_CASE("closed-form basis rejects a parity mismatch") {
    CHECK_THROWS_AS(predicted_invariant_basis(InvariantKind::odd_full, 4, 2, 0),
                    domain_error);
    CHECK_THROWS_AS(
        predicted_invariant_basis(InvariantKind::even_full, 3, 2, 0),
        domain_error);
    CHECK_THROWS_AS(
        predicted_invariant_basis(InvariantKind::even_punctured, 5, 2, 0),
        domain_error);
}

TEST_CASE("computed invariants match the closed forms, odd case") {
    const Presentation p = Presentation::orbit_ring(3, 3);
    const InvariantMatchReport full = invariants_match_prediction(
        p, SubgroupSpec::full(3), InvariantKind::odd_full);
    CHECK(full.ok);
    CHECK(full.poincare() ==
          std::vector<unsigned long long>{1, 3, 2, 0});

    // dropping eps_1 changes nothing for odd n
    const InvariantMatchReport punct = invariants_match_prediction(
        p, SubgroupSpec::punctured(3), InvariantKind::odd_punctured);
    CHECK(punct.ok);
    CHECK(punct.poincare() == full.poincare());

    for (int q = 0; q <= 3; ++q) {
        const int d = 2 * q;
        CHECK(same_span(p, invariant_basis(p, SubgroupSpec::full(3), d),
                        invariant_basis(p, SubgroupSpec::punctured(3), d),
                        d));
    }
}

TEST_CASE("computed invariants match the closed forms, even full case") {
    const Presentation p2 = Presentation::orbit_ring(4, 2);
    const InvariantMatchReport two = invariants_match_prediction(
        p2, SubgroupSpec::full(2), InvariantKind::even_full);
    CHECK(two.ok);
    CHECK(two.poincare() == std::vector<unsigned long long>{1, 0, 0});

    const Presentation p3 = Presentation::orbit_ring(4, 3);
    const InvariantMatchReport three = invariants_match_prediction(
        p3, SubgroupSpec::full(3), InvariantKind::even_full);
    CHECK(three.ok);
    CHECK(three.poincare() == std::vector<unsigned long long>{1, 0, 3, 0});

    // odd fiber degrees die: x = eps_1 x = -x there
    const Presentation p4 = Presentation::orbit_ring(4, 4);
    const InvariantMatchReport four = invariants_match_prediction(
        p4, SubgroupSpec::full(4), InvariantKind::even_full);
    CHECK(four.ok);
    CHECK(four.poincare() ==
          std::vector<unsigned long long>{1, 0, 11, 0, 0});
}

TEST_CASE("computed invariants match the closed forms, even punctured case") {
    const Presentation p = Presentation::orbit_ring(2, 2);
    const InvariantMatchReport rep = invariants_match_prediction(
        p, SubgroupSpec::punctured(2), InvariantKind::even_punctured);
    CHECK(rep.ok);
    CHECK(rep.poincare() == std::vector<unsigned long long>{1, 2, 1});

    const Presentation p3 = Presentation::orbit_ring(2, 3);
    const InvariantMatchReport rep3 = invariants_match_prediction(
        p3, SubgroupSpec::punctured(3), InvariantKind::even_punctured);
    CHECK(rep3.ok);
    CHECK(rep3.poincare() == std::vector<unsigned long long>{1, 3, 5, 3});
}

TEST_CASE("kernel invariants can be strictly smaller than the slice ones") {
    // On two even points in fiber degree 2 the whole slice has a
    // one-dimensional space of full-group invariants, spanned by
    // A[1,0]*B[2,0] = A[1,0]*A[2,0]: every eps_l negates both factors.
    // Two-factor shifted products would need two distinct levels in
    // {2}, so the kernel slice is empty outright and the restricted
    // count drops to zero.  The quotient tables must use the kernel
    // count, not the whole-slice one.
    const Presentation p = Presentation::orbit_ring(4, 2);
    const SubgroupSpec full = SubgroupSpec::full(2);
    const int d = 2 * p.generator_degree();

    const std::vector<Element> whole = invariant_basis(p, full, d);
    REQUIRE(whole.size() == 1);
    CHECK(in_span(p, whole, parse_a(p, "A[1,0]*A[2,0]"), d));

    CHECK(kernel_invariant_basis(p, full, 2).empty());

    // Elsewhere the two notions agree; degree 0 keeps the unit.
    CHECK(kernel_invariant_basis(p, full, 0).size() == 1);
    CHECK(kernel_invariant_basis(p, full, 1).empty());
    CHECK(invariant_basis(p, full, p.generator_degree()).empty());

    // The empty subgroup returns the expanded shifted monomials.
    const SubgroupSpec none;
    CHECK(kernel_invariant_basis(p, none, 1).size() == 3);
    CHECK_THROWS_AS(kernel_invariant_basis(Presentation::orbit_ring(4, 2, 2),
                                           full, 1),
                    domain_error);
}

TEST_CASE("matching survives odd prime coefficients") {
    const Presentation p5 = Presentation::orbit_ring(3, 3, 5);
    CHECK(invariants_match_prediction(p5, SubgroupSpec::full(3),
                                      InvariantKind::odd_full)
              .ok);
    const Presentation q5 = Presentation::orbit_ring(4, 3, 5);
    CHECK(invariants_match_prediction(q5, SubgroupSpec::full(3),
                                      InvariantKind::even_full)
              .ok);
    const Presentation r3 = Presentation::orbit_ring(2, 2, 3);
    CHECK(invariants_match_prediction(r3, SubgroupSpec::punctured(2),
                                      InvariantKind::even_punctured)
              .ok);
}

TEST_CASE("matching rejects parity and coefficient mismatches") {
    const Presentation p = Presentation::orbit_ring(3, 2);
    CHECK_THROWS_AS(invariants_match_prediction(p, SubgroupSpec::full(2),
                                                InvariantKind::even_full),
                    domain_error);
    const Presentation f2 = Presentation::orbit_ring(4, 2, 2);
    CHECK_THROWS_AS(invariants_match_prediction(f2, SubgroupSpec::full(2),
                                                InvariantKind::even_full),
                    domain_error);
}

TEST_CASE("every predicted element is fixed by its subgroup") {
    const Presentation podd = Presentation::orbit_ring(3, 3);
    for (int q = 0; q <= 3; ++q) {
        const PredictedBasis pb = predicted_invariant_basis(
            InvariantKind::odd_full, 3, 3, 2 * q);
        for (const auto& mono : pb.monomials) {
            const Element e = expand(podd, mono);
            for (int l = 1; l <= 4; ++l)
                CHECK(epsilon_apply(podd, GroupElement::single(l), e) == e);
        }
    }
    const Presentation pev = Presentation::orbit_ring(2, 3);
    for (int q = 0; q <= 3; ++q) {
        const PredictedBasis pb = predicted_invariant_basis(
            InvariantKind::even_punctured, 2, 3, q);
        for (const auto& mono : pb.monomials) {
            const Element e = expand(pev, mono);
            for (int l = 2; l <= 4; ++l)
                CHECK(epsilon_apply(pev, GroupElement::single(l), e) == e);
        }
    }
}

TEST_CASE("a smaller subgroup never has fewer invariants") {
    const Presentation p = Presentation::orbit_ring(4, 3);
    const std::vector<unsigned long long> full =
        invariant_dims(p, SubgroupSpec::full(3));
    const std::vector<unsigned long long> punct =
        invariant_dims(p, SubgroupSpec::punctured(3));
    REQUIRE(full.size() == punct.size());
    for (std::size_t i = 0; i < full.size(); ++i)
        CHECK(full[i] <= punct[i]);
}

TEST_CASE("match reports serialize to the documented JSON shape") {
    const Presentation p = Presentation::orbit_ring(3, 2);
    const InvariantMatchReport rep = invariants_match_prediction(
        p, SubgroupSpec::full(2), InvariantKind::odd_full);
    const nlohmann::json arr = nlohmann::json::parse(rep.json_str());
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 3);
    CHECK(arr[0]["degree"] == 0);
    CHECK(arr[0]["computed_dim"] == 1);
    CHECK(arr[0]["predicted_dim"] == 1);
    CHECK(arr[0]["match"] == true);
    CHECK(arr[0]["witnesses"] == nlohmann::json::array({"1"}));
    CHECK(arr[1]["degree"] == 2);
    CHECK(arr[1]["witnesses"] == nlohmann::json::array({"C+[2,1]"}));
    CHECK(arr[2]["computed_dim"] == 0);

    // keys come out in the documented order
    CHECK(rep.json_str().find("{\"degree\":0,\"computed_dim\":1") !=
          std::string::npos);

    CHECK(rep.str().find("odd-full") != std::string::npos);
    CHECK(rep.str().find("ok") != std::string::npos);
}

TEST_CASE("presentation check, odd kinds") {
    const PresentationCheckReport rep =
        invariant_presentation_check(InvariantKind::odd_full, 3, 3);
    CHECK(rep.ok);
    CHECK(rep.dims_match);
    CHECK(rep.invariant_dims ==
          std::vector<unsigned long long>{1, 3, 2, 0});
    CHECK(rep.reference_dims ==
          std::vector<unsigned long long>{1, 3, 2, 0});
    REQUIRE(rep.relations.size() == 3);
    CHECK(rep.relations[0].name == "C+[i,j]^2 = 0");
    CHECK(rep.relations[0].cases == 3);
    CHECK(rep.relations[1].cases == 1);  // (r,i,j) = (3,2,1)
    for (const IdentityReport& r : rep.relations) CHECK(r.ok);

    // four points, against the three-strand reference dims (1+t)(1+2t)(1+3t)
    const PresentationCheckReport big =
        invariant_presentation_check(InvariantKind::odd_punctured, 3, 4);
    CHECK(big.ok);
    CHECK(big.invariant_dims ==
          std::vector<unsigned long long>{1, 6, 11, 6, 0});

    const PresentationCheckReport mod7 =
        invariant_presentation_check(InvariantKind::odd_full, 3, 3, 7);
    CHECK(mod7.ok);
}

TEST_CASE("presentation check, even full kind") {
    const PresentationCheckReport rep =
        invariant_presentation_check(InvariantKind::even_full, 4, 3);
    CHECK(rep.ok);
    CHECK(rep.invariant_dims ==
          std::vector<unsigned long long>{1, 0, 3, 0});
    CHECK(rep.reference_dims == rep.invariant_dims);
    CHECK(!rep.relations.empty());
    for (const IdentityReport& r : rep.relations) CHECK(r.ok);

    CHECK(invariant_presentation_check(InvariantKind::even_full, 4, 2, 5).ok);
}

TEST_CASE("presentation check, even punctured kind") {
    const PresentationCheckReport rep =
        invariant_presentation_check(InvariantKind::even_punctured, 2, 2);
    CHECK(rep.ok);
    CHECK(rep.invariant_dims == std::vector<unsigned long long>{1, 2, 1});
    CHECK(rep.relations[0].name == "A[1,0]^2 = 0");
    CHECK(rep.relations[1].name == "D0[s]^2 = 0");
    for (const IdentityReport& r : rep.relations) CHECK(r.ok);

    const PresentationCheckReport rep3 =
        invariant_presentation_check(InvariantKind::even_punctured, 2, 3);
    CHECK(rep3.ok);
    CHECK(rep3.invariant_dims ==
          std::vector<unsigned long long>{1, 3, 5, 3});

    CHECK(invariant_presentation_check(InvariantKind::even_punctured, 2, 2, 3)
              .ok);

    const std::string text = rep.str();
    CHECK(text.find("even-punctured") != std::string::npos);
    CHECK(text.find("dims match") != std::string::npos);
}

TEST_CASE("presentation check rejects mismatched parity or F2") {
    CHECK_THROWS_AS(invariant_presentation_check(InvariantKind::odd_full, 4, 2),
                    domain_error);
    CHECK_THROWS_AS(
        invariant_presentation_check(InvariantKind::even_full, 4, 2, 2),
        domain_error);
}
