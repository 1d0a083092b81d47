#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "confring/derived.hpp"
#include "confring/invariants.hpp"
#include "confring/matrix.hpp"
#include "confring/ring.hpp"

// Additive cohomology tables for the three quotient configuration
// spaces, assembled from the fiber ring and its invariant subspaces:
//
//   sphere-orbit   the free two-fold quotient of Conf(S^n, k) x S^n
//   rpn            Conf(RP^n, k)
//   rpn-punctured  Conf(RP^n - *, k)
//
// For n odd the bundle over the sphere-orbit space is trivial enough
// that one Poincare polynomial covers every coefficient choice.  For n
// even the extension is glued by a single differential whose matrix is
// diagonal with entries 2, so fields with 2 invertible see the kernel
// ("shifted monomial") classes twice, once bare and once multiplied by
// an exterior class of degree 2n-1, and the integers pick up Z/2
// summands one degree above the bare copies.  The projective spaces
// are the subgroup invariants of those fibers.

namespace confring {

// Coefficient choice for a table: the rationals, a prime field, or the
// integers.  The integral mode is additive bookkeeping only -- the
// symbolic rings always run over Q or F_p.
struct Coeff {
    enum class Mode { rationals, mod_p, integers };

    Mode mode = Mode::rationals;
    std::uint32_t p = 0;

    static Coeff rationals();
    static Coeff mod(std::uint32_t p);
    static Coeff integers();

    bool is_field() const { return mode != Mode::integers; }
    bool two_invertible() const;
    // Prime to hand the symbolic ring: 0 for Q, p for F_p.  Rejects the
    // integral mode, which never reaches a ring constructor.
    std::uint32_t ring_prime() const;
    std::string name() const;  // "Q", "F3", "Z", ...

    bool operator==(const Coeff&) const = default;
};

// The exterior classes glued onto the fiber invariants.  n odd gets a
// single generator iota of degree n; n even gets lambda of degree n
// (killed by 2, so it only surfaces as integral torsion) and omega of
// degree 2n-1.  All squares and the mixed product lambda*omega vanish,
// so each class contributes one degree shift and nothing else.
struct ExteriorAdjunct {
    enum class Name { iota, lambda, omega };

    Name name = Name::iota;
    int degree = 0;
    int torsion_order = 0;  // 0 = infinite order, 2 = killed by 2

    static ExteriorAdjunct iota(int n);    // n odd
    static ExteriorAdjunct lambda(int n);  // n even
    static ExteriorAdjunct omega(int n);   // n even

    std::string str() const;  // "iota[3]", "lambda[4]", "omega[7]"
    bool operator==(const ExteriorAdjunct&) const = default;
};

// The adjuncts appearing in the sphere-orbit table for this n.
std::vector<ExteriorAdjunct> sphere_adjuncts(int n);

// One graded piece: free rank plus torsion summand labels ("Z/2").
// Only the integral even-n sphere tables carry torsion.
struct GradedGroup {
    int degree = 0;
    unsigned long long rank = 0;
    std::vector<std::string> torsion;

    bool operator==(const GradedGroup&) const = default;
};

struct GradedGroupTable {
    std::string space;
    int n = 0;
    int k = 0;
    std::string coeff;
    std::vector<GradedGroup> groups;  // ascending degree, trivial pieces omitted

    unsigned long long rank_at(int degree) const;
    int top_degree() const;  // largest degree with a nontrivial group, -1 if none
    // Free ranks as a dense vector indexed 0..top (inclusive).
    std::vector<unsigned long long> ranks(int top) const;
    std::string str() const;
    std::string json_str() const;
};

// The kernel of the even-sphere differential, slice by slice: bases[j]
// lists the products of j shifted generators B[i,j] with strictly
// increasing levels 2..k-1, so dims()[j] is the elementary symmetric
// sum e_j(3, 5, ..., 2k-3).  The top slice j = k-1 is always empty:
// there are only k-2 levels to climb.
struct PermanentCycles {
    int k = 0;
    std::vector<std::vector<std::vector<DerivedClass>>> bases;  // j = 0..k-1

    std::vector<unsigned long long> dims() const;
};

PermanentCycles permanent_cycles(int k);

// Matrix of the glueing differential out of the fiber slice of degree
// q = t(n-1) on k points, n even, written in the modified basis: source
// columns are the K^t monomials followed by A[1,0] times the K^{t-1}
// monomials, target rows are K^{t-1} followed by A[1,0] times K^{t-2}
// (the target slice one fiber degree down, multiplied by the implicit
// degree-n class).  The differential kills the shifted generators and
// sends A[1,0] to twice the degree-n class, so the matrix is 2 on the
// matched K^{t-1} block and zero elsewhere; its kernel is exactly the
// K^t block.  Over a field of characteristic 2 the matrix vanishes.
Matrix d_n_matrix(int n, int k, int q, std::uint32_t prime = 0);

GradedGroupTable sphere_orbit_cohomology(int n, int k, const Coeff& coeff);

// A table together with the fiber ring its classes live in, the
// subgroup that carved them out, and the exterior degree shifts.
struct SpaceCohomology {
    GradedGroupTable table;
    Presentation ring;
    InvariantKind kind;
    SubgroupSpec subgroup;
    std::vector<ExteriorAdjunct> adjuncts;
};

// Conf(RP^n, k): full-group invariants of the orbit ring on k-1
// points, tensored with one exterior class -- degree n for n odd,
// degree 2n-1 for n even (where only the kernel invariants survive the
// glueing).  Needs 2 invertible: rejects F2 and the integral mode.
SpaceCohomology projective_cohomology(int n, int k, const Coeff& coeff);

// Conf(RP^n - *, k): invariants of the subgroup fixing the first
// coordinate, on the orbit ring on k points, with no exterior adjunct.
// Same coefficient restrictions.
SpaceCohomology punctured_projective_cohomology(int n, int k, const Coeff& coeff);

// Desk-scale cross-checks between the tables.
struct ComparisonCheck {
    std::string name;
    bool applicable = true;
    std::string skip_reason;
    bool ok = true;
    std::string detail;
};

struct ComparisonReport {
    int n = 0;
    int k = 0;
    bool ok = true;                  // all applicable checks passed
    ComparisonCheck sphere_match;    // n odd: projective table matches the
                                     // product formula (1+t^n) prod (1+i t^{n-1})
    ComparisonCheck degree_witness;  // rank H^{n-1} of Conf(RP^n,k) vs the
                                     // punctured space one dimension up
    ComparisonCheck mod_p_ranks;     // Q ranks match F3, F5, F7 on all tables

    std::string str() const;
};

ComparisonReport comparison_reports(int n, int k);

}  // namespace confring
