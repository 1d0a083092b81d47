#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "confring/derived.hpp"
#include "confring/ring.hpp"

namespace confring {

// Subgroup of the reflection group (Z_2)^{m+1} acting on the orbit ring,
// named by the generator indices it contains.  The full group {1..m+1}
// computes classes of the projective quotient; dropping eps_1 leaves the
// subgroup {2..m+1} relevant when one point of the quotient is removed.
struct SubgroupSpec {
    std::set<int> generators;

    static SubgroupSpec full(int m);
    static SubgroupSpec punctured(int m);
};

// The four closed-form descriptions of invariant rings, split by the
// parity of n and by full vs punctured subgroup.  Each kind names a
// family of product monomials in derived classes:
//
//   odd_full / odd_punctured (same answer for both subgroups):
//     C+[i_1,j_1]*...*C+[i_q,j_q] with i_1 < ... < i_q, all j_l > 0.
//
//   even_full: products of I factors I[r,i,j] (j signed; j > 0 prints
//     I+[r,i,j], j < 0 prints I-[r,i,-j], j = 0 means I0[r,i]), each of
//     fiber degree 2, subject to the reduction conditions below.
//
//   even_punctured: an optional A[1,0] factor, then D0 factors with
//     strictly increasing levels, then I factors with j != 0; the D0
//     levels must avoid every I index.
//
// Reduction conditions on I factor lists (generic indices |j| < i < r):
//   (1) top indices r strictly increase;
//   (2) the index pairs {i,r} are pairwise disjoint;
//   (3) equal non-positive j's force interleaving: j_a = j_b <= 0 with
//       r_a < r_b requires r_a < i_b;
//   (4) a positive j_a equal to -j_b requires r_a < i_b.
// Lists violating a condition reduce into earlier ones, so the survivors
// are a basis.
enum class InvariantKind { odd_full, even_full, odd_punctured, even_punctured };

// "odd-full", "even-full", "odd-punctured", "even-punctured".
const char* invariant_kind_name(InvariantKind kind);

// The predicted basis monomials in one degree, as derived-class products
// (empty product = the unit), in lexicographic order of the flattened
// index tuples (A[1,0] -> (1,0), D0[s] -> (s,0), I factors -> (r,i,j)
// with j signed).
struct PredictedBasis {
    InvariantKind kind = InvariantKind::odd_full;
    int degree = 0;
    std::vector<std::vector<DerivedClass>> monomials;

    std::vector<std::string> strs() const;
};

// Basis of the subspace of degree-d elements fixed by every eps_l in the
// subgroup: kernel of the stacked matrices (M_l - 1).  Orbit rings only;
// 2 must be invertible (F2 coefficients are rejected, the fixed-point
// functor is not exact there and the closed forms fail).  The empty
// subgroup returns the full monomial slice.
std::vector<Element> invariant_basis(const Presentation& p,
                                     const SubgroupSpec& sub, int d);

// Basis of the subgroup invariants inside the span of the shifted
// monomials (the kernel of the even-sphere differential) in fiber
// degree q.  The even-n closed forms live here: the quotient cohomology
// only sees this kernel, and the whole slice can carry extra invariants
// (A[1,0]*D0[2] is one on two points).  The empty subgroup returns the
// expanded shifted monomials themselves.
std::vector<Element> kernel_invariant_basis(const Presentation& p,
                                            const SubgroupSpec& sub, int q);

// The closed-form basis in degree d for the given kind on m points in
// dimension n.  Throws if the parity of n does not match the kind; odd
// kinds need n odd, even kinds n even.  Degrees that are not multiples
// of n-1 (or exceed the top) return no monomials.
PredictedBasis predicted_invariant_basis(InvariantKind kind, int n, int m,
                                         int d);

// One degree slice of a computed-vs-predicted comparison.  match means
// equal dimension, every predicted element invariant (contained in the
// computed span), and the predicted elements independent.
struct DegreeComparison {
    int degree = 0;
    std::size_t computed_dim = 0;
    std::size_t predicted_dim = 0;
    bool match = true;
    std::vector<std::string> witnesses;  // predicted basis, token form
};

struct InvariantMatchReport {
    InvariantKind kind = InvariantKind::odd_full;
    bool ok = true;
    std::vector<DegreeComparison> degrees;

    // Computed dimensions by fiber degree 0..m (the Poincare polynomial
    // of the invariant ring in t^{n-1}).
    std::vector<unsigned long long> poincare() const;

    std::string str() const;
    // JSON array of degree records: {"degree", "computed_dim",
    // "predicted_dim", "match", "witnesses"}.
    std::string json_str() const;
};

// Sweeps every fiber degree 0..m and compares the computed invariants of
// the subgroup with the closed-form basis for the kind.  For even_full
// the computation is restricted to the kernel of the sphere-bundle
// differential (spanned by the shifted monomials): the closed forms
// describe invariants there, and the quotient cohomology only sees that
// kernel.  The other kinds use the whole degree slice.
InvariantMatchReport invariants_match_prediction(const Presentation& p,
                                                 const SubgroupSpec& sub,
                                                 InvariantKind kind);

// Certifies the generators-and-relations description of an invariant
// ring: every defining relation holds in the orbit ring, and the graded
// dimensions agree with the reference count.
//
//   odd kinds: relations (C+)^2 = 0 and
//       C+[r,i]*C+[r,j] = C+[i,j]*(C+[r,i] - C+[r,j]),
//     plus independence of the ordered C+ products; these are exactly
//     the defining relations of arnold_ring(n, m), whose graded
//     dimensions serve as the reference, so the invariant ring is the
//     pure braid ring in disguise.
//
//   even_full: the I multiplication table, reference = closed-form
//     basis counts on the differential kernel.
//
//   even_punctured: A[1,0]^2 = 0, D0[s]^2 = 0, the I table and the
//     I-times-D0 table, reference = closed-form basis counts.
//
// prime 0 means rational coefficients; odd primes probe for torsion.
struct PresentationCheckReport {
    InvariantKind kind = InvariantKind::odd_full;
    bool ok = true;
    std::vector<IdentityReport> relations;
    std::vector<unsigned long long> invariant_dims;  // fiber degrees 0..m
    std::vector<unsigned long long> reference_dims;
    bool dims_match = true;

    std::string str() const;
};

PresentationCheckReport invariant_presentation_check(InvariantKind kind, int n,
                                                     int m,
                                                     std::uint32_t prime = 0);

}  // namespace confring
