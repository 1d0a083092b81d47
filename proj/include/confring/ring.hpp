#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "confring/scalar.hpp"

namespace confring {

// Two presentations share the same normal-form machinery:
//   orbit : generators A[i,j] with 0 <= |j| < i <= m (j may be negative),
//   arnold: generators A'[i,j] with 1 <= j < i <= k.
enum class Family { orbit, arnold };

struct GeneratorId {
    int i = 0;  // first index, determines the "level"
    int j = 0;  // second index; sign distinguishes the two difference maps

    // Field-wise order, used for cache keys; the display/basis order of
    // second indices is jrank below.
    auto operator<=>(const GeneratorId&) const = default;
};

// Canonical order of second indices within a level: 0, 1, -1, 2, -2, ...
inline int jrank(int j) { return j == 0 ? 0 : (j > 0 ? 2 * j - 1 : -2 * j); }

inline bool gen_less(const GeneratorId& a, const GeneratorId& b) {
    if (a.i != b.i) return a.i < b.i;
    return jrank(a.j) < jrank(b.j);
}

// Product of generators with strictly increasing level; the empty monomial
// is the ring unit.
struct Monomial {
    std::vector<GeneratorId> factors;

    std::size_t size() const { return factors.size(); }
    bool operator==(const Monomial&) const = default;
    bool operator<(const Monomial& o) const;
};

// Sum of monomials with nonzero coefficients, all in one coefficient mode.
// The map order makes printing and equality canonical.
class Element {
  public:
    const std::map<Monomial, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    // Adds c * mono, merging and dropping zero coefficients.
    void add_term(const Monomial& mono, const Scalar& c);

    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator-() const;
    Element& scale(const Scalar& c);

    bool operator==(const Element& o) const { return terms_ == o.terms_; }
    bool operator!=(const Element& o) const { return !(*this == o); }

    // Homogeneous degree in factor count, or -1 for 0 / mixed elements.
    int homogeneous_factor_count() const;

    std::string str(Family fam) const;

  private:
    std::map<Monomial, Scalar> terms_;
};

struct ConsistencyReport {
    bool ok = true;
    unsigned long long checks = 0;
    std::string detail;  // first counterexample, empty on success
};

// A fixed ring: family, sphere dimension n, point count, coefficient mode
// (prime 0 = rationals).  All operations are const; internal caches are
// guarded, so concurrent use needs no external locking.
class Presentation {
  public:
    static Presentation orbit_ring(int n, int m, std::uint32_t prime = 0);
    static Presentation arnold_ring(int n, int k, std::uint32_t prime = 0);

    Family family() const { return fam_; }
    int n() const { return n_; }
    int points() const { return pts_; }
    std::uint32_t prime() const { return p_; }
    bool odd_n() const { return n_ % 2 == 1; }
    int generator_degree() const { return n_ - 1; }
    // Sign picked up when two generators swap places: (-1)^{(n-1)^2}.
    int swap_sign() const { return odd_n() ? 1 : -1; }
    // Largest number of factors a nonzero monomial can have.
    int top_factor_count() const {
        return fam_ == Family::orbit ? pts_ : pts_ - 1;
    }

    bool valid_generator(const GeneratorId& g) const;
    // All generators, level-major, jrank order within a level.
    std::vector<GeneratorId> generators() const;

    Element zero() const { return Element{}; }
    Element one() const;
    Element gen(int i, int j) const;
    Element from_scalar(const Scalar& c) const;
    Element from_int(long v) const;

    // Normal form of A[r,a] * A[r,b].  Total over all ordered pairs: inputs
    // that are not a tabulated left-hand side are first swapped with the
    // graded-commutativity sign; a == b gives 0.
    Element reduce_collision(int r, int a, int b) const;

    // Normal form of an arbitrary generator word times a coefficient.
    Element normalize_word(const std::vector<GeneratorId>& word,
                           const Scalar& coeff) const;

    Element multiply(const Element& x, const Element& y) const;

    // All normal-form monomials of total degree d, deterministic order
    // (levels ascending; within a level j runs 0, 1, -1, 2, -2, ...).
    std::vector<Monomial> basis_of_degree(int d) const;

    // Coefficient list [dim in degree 0, dim in degree n-1, ...] from the
    // closed-form product, independent of basis enumeration.
    std::vector<unsigned long long> poincare_polynomial() const;

    // Random (xy)z = x(yz) checks with small integer coefficients.
    ConsistencyReport verify_associativity(unsigned trials,
                                           std::uint64_t seed) const;

    // Random element: up to max_monomials basis monomials, coeffs in
    // [-3,3] \ {0} (before reduction mod p).
    Element random_element(std::mt19937_64& rng, int max_monomials = 2) const;

    std::string str(const Element& e) const { return e.str(fam_); }

    bool operator==(const Presentation& o) const {
        return fam_ == o.fam_ && n_ == o.n_ && pts_ == o.pts_ && p_ == o.p_;
    }

  private:
    Presentation(Family fam, int n, int pts, std::uint32_t prime);

    struct CollisionTerm {
        int sign;          // +1 or -1
        GeneratorId f, g;  // f.i < g.i == r
    };
    std::vector<CollisionTerm> collision_terms(int r, int a, int b) const;
    Element normalize_unit(const std::vector<GeneratorId>& word) const;
    void check_element(const Element& e) const;
    // j values of level i in canonical order.
    std::vector<int> level_js(int i) const;

    Family fam_;
    int n_, pts_;
    std::uint32_t p_;

    // Copies of a Presentation share one normal-form cache; the lock keeps
    // the public API safe to call from several threads at once.
    struct Cache {
        std::mutex mu;
        std::map<std::vector<GeneratorId>, Element> norm;
    };
    std::shared_ptr<Cache> cache_;
};

}  // namespace confring
