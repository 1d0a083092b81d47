#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "confring/matrix.hpp"
#include "confring/ring.hpp"

namespace confring {

// The group (Z_2)^{m+1} acting on the orbit ring on m points by ring
// homomorphisms.  The l-th generator eps_l (1 <= l <= m+1) is an
// involution; all generators commute, so an element is just the subset of
// generator indices it multiplies together.
struct GroupElement {
    std::set<int> bits;

    static GroupElement identity() { return {}; }
    static GroupElement single(int l) { return {{l}}; }

    bool operator==(const GroupElement&) const = default;
};

// Image of the generator A[i,j] under eps_l.  Closed eight-case formula;
// signs depend on the parity of n.  The interesting cases are l = 1
// (which mixes in A[i,0] and A[|j|,0] shifts) and l - 1 hitting one of
// the two indices (which swaps or reflects the j index).  Throws
// domain_error for an arnold-family presentation or indices out of range
// (needs 1 <= l <= m+1 and |j| < i <= m).
Element epsilon_on_generator(const Presentation& p, int l, int i, int j);

// Multiplicative extension of epsilon_on_generator to the whole ring,
// applied for every index in g.bits.  The generators commute, so the
// application order does not matter.  x must be in normal form.
Element epsilon_apply(const Presentation& p, const GroupElement& g,
                      const Element& x);

// Matrix of eps_l on basis_of_degree(p, d), columns indexed by the
// deterministic basis enumeration (column c holds the coordinates of the
// image of the c-th basis monomial).  Results are memoized per (ring
// parameters, l, d): the table entry is published only once fully built,
// so concurrent callers see either nothing or the finished matrix.
Matrix action_matrix(const Presentation& p, int l, int d);

// Coordinates of a homogeneous element against an ordered monomial basis,
// e.g. one produced by basis_of_degree.  Throws domain_error if x has a
// term outside the given basis.
std::vector<Scalar> coordinate_vector(const Presentation& p, const Element& x,
                                      const std::vector<Monomial>& basis);

struct ActionCheck {
    std::string name;
    bool applicable = true;  // parity-conditional checks switch off
    bool ok = true;
    unsigned long long cases = 0;
    std::string failure;  // first counterexample, empty on success
};

struct ActionReport {
    bool ok = true;  // every applicable check passed
    std::vector<ActionCheck> checks;

    std::string str() const;
};

// Structural consistency of the action, degree by degree up to m(n-1):
//
//   involution                          eps_l^2 = id for every l
//   commutativity                       eps_l eps_l' = eps_l' eps_l
//   multiplicativity                    eps_l(xy) = eps_l(x) eps_l(y) on
//                                       sampled homogeneous pairs
//   product-factorization-odd           n odd: eps_1 = eps_2 ... eps_{m+1}
//                                       on every basis class
//   signed-product-factorization-even   n even: eps_1 = (-1)^q eps_2 ...
//                                       eps_{m+1} on q-fold products of
//                                       shifted generators B[i,j]
//   shifted-class-action-even           n even: images of B/D classes
//                                       match their closed-form tables
//
// The last three are parity-conditional; the inapplicable ones report
// ok with zero cases.
ActionReport verify_action_properties(const Presentation& p,
                                      unsigned samples_per_degree = 100,
                                      std::uint64_t seed = 0);

}  // namespace confring
