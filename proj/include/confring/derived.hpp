#pragma once

#include <string>
#include <utility>
#include <vector>

#include "confring/parse.hpp"
#include "confring/ring.hpp"

namespace confring {

// Alternative degree-(n-1) generating sets layered over the orbit ring:
//
//   C0[i]   = A[i,0]                                      (0 < i)
//   C+[i,j] = A[i,j] + A[i,-j] - A[i,0]                   (0 < j < i)
//   C-[i,j] = -A[i,j] + A[i,-j] - A[j,0]
//
//   B[i,j]  = A[i,j] - A[1,0]     (n even only; B[1,0] = 0 identically)
//
//   D0[i]   = B[i,0]              (D0[1] = 0)
//   D+[i,j] = B[i,j] + B[i,-j] - B[i,0] - B[j,0]          (0 < j < i)
//   D-[i,j] = B[i,j] - B[i,-j]
//
//   I+[r,i,j] = D+[i,j] * D-[r,i]                         (0 < j < i < r)
//   I-[r,i,j] = D-[i,j] * D-[r,j]
//   I0[i,j]   = D0[j] * D0[i]     (1 < j < i; j = 1 gives 0 via D0[1])
//
// A10 denotes the generator A[1,0] itself (it joins the D/I classes in the
// generating set used for punctured quotients when n is even).
enum class DerivedKind {
    Cplus,
    Cminus,
    Czero,
    B,
    Dplus,
    Dminus,
    Dzero,
    Iplus,
    Iminus,
    Izero,
    A10,
};

struct DerivedClass {
    DerivedKind kind = DerivedKind::A10;
    int r = 0;  // leading index, I+/I- only
    int i = 0;
    int j = 0;

    static DerivedClass cplus(int i, int j);
    static DerivedClass cminus(int i, int j);
    static DerivedClass czero(int i);
    static DerivedClass b(int i, int j);
    static DerivedClass dplus(int i, int j);
    static DerivedClass dminus(int i, int j);
    static DerivedClass dzero(int i);
    static DerivedClass iplus(int r, int i, int j);
    static DerivedClass iminus(int r, int i, int j);
    static DerivedClass izero(int i, int j);
    static DerivedClass a10();

    bool operator==(const DerivedClass&) const = default;

    // Token form: "C+[i,j]", "D0[i]", "I+[r,i,j]", ...; A10 prints "A[1,0]".
    std::string str() const;
};

enum class DerivedLayer { C, D };

enum class RelationTable { C, D, I, ID0 };

// One named identity, swept over every admissible index tuple.
struct IdentityReport {
    std::string name;
    unsigned long long cases = 0;
    bool ok = true;
    std::string failure;  // first failing tuple, empty while ok
};

struct TableReport {
    bool ok = true;
    unsigned long long cases = 0;
    std::vector<IdentityReport> identities;
    std::string str() const;
};

// Normal form of a derived class in the A-basis of p (orbit rings only).
// B/D/I kinds require even n; every kind is an integral combination, so any
// coefficient mode works here.  Degenerate indices with value zero (B[1,0],
// D0[1], I0[i,1]) are accepted so that relation right-hand sides stay total.
Element derived_class_element(const Presentation& p, const DerivedClass& c);

// A[i,j] written in the C or D layer; the D layer also needs the A10 shift.
// Halves appear, so 2 must be invertible: F2 is rejected.  Applying
// derived_class_element to the result recovers A[i,j] exactly.
std::vector<std::pair<Scalar, DerivedClass>> a_in_derived_basis(
    const Presentation& p, int i, int j, DerivedLayer layer);

// Expands both sides of every identity in the chosen multiplication table
// over all index tuples within p.points() and compares normal forms.
// C table needs odd n; D, I and ID0 tables need even n.
TableReport verify_relation_tables(const Presentation& p, RelationTable table);

// Products B[i_1,j_1]*...*B[i_q,j_q] with strictly increasing levels
// 2 <= i_1 < ... < i_q <= m and any |j_l| < i_l (level 1 drops out since
// B[1,0] = 0).  Expanding B[i,j] = A[i,j] - A[1,0] leaves the distinct
// leading monomials A[i_1,j_1]...A[i_q,j_q] in triangular position, so
// these products are independent; for n even they form a basis of the
// kernel of the sphere-bundle differential in fiber degree q.  There are
// e_q(3,5,...,2m-1) of them, in lexicographic order of the index tuples;
// q = 0 gives the single empty product and q > m-1 gives none.
std::vector<std::vector<DerivedClass>> shifted_monomial_basis(int m, int q);

// Resolver covering plain generators plus all derived-class tokens.
TokenResolver derived_resolver(const Presentation& p);

}  // namespace confring
