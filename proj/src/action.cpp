#include "confring/action.hpp"

#include <cstdlib>
#include <map>
#include <memory>
#include <random>
#include <shared_mutex>
#include <sstream>
#include <tuple>

#include "confring/derived.hpp"

namespace confring {

namespace {

void need(bool ok, const std::string& msg) {
    if (!ok) throw domain_error(msg);
}

void require_orbit(const Presentation& p) {
    need(p.family() == Family::orbit,
         "the reflection action is defined on the orbit ring");
}

void check_generator_index(const Presentation& p, int l) {
    need(l >= 1 && l <= p.points() + 1,
         "action generator index out of range: eps_" + std::to_string(l));
}

// eps_l image of A[i,j]; indices already validated.  Eight disjoint
// cases: l = 1 mixes in zero-column shifts, |j| = l-1 reflects j,
// i = l-1 reflects with extra shifts, everything else is fixed.
Element generator_image(const Presentation& p, int l, int i, int j) {
    const int s_n = p.odd_n() ? -1 : 1;  // (-1)^n
    const int s_n1 = -s_n;               // (-1)^{n-1}
    auto a = [&](int ii, int jj) { return p.gen(ii, jj); };
    auto sa = [&](int sign, int ii, int jj) {
        Element e = p.gen(ii, jj);
        e.scale(Scalar::from_int(sign, p.prime()));
        return e;
    };
    if (l == 1) {
        if (j > 0) return sa(s_n1, j, 0) - a(i, 0) + a(i, j);
        if (j < 0) return -a(-j, 0) - a(i, 0) + a(i, j);
        return -a(i, 0);
    }
    if (std::abs(j) == l - 1) return a(i, -j);
    if (i == l - 1 && j == 0) return sa(s_n, i, 0);
    if (l > 2 && i == l - 1 && j > 0)
        return sa(s_n, j, 0) + sa(s_n, i, 0) + sa(s_n1, i, -j);
    if (l > 2 && i == l - 1 && j < 0)
        return a(-j, 0) + sa(s_n, i, 0) + sa(s_n1, i, -j);
    return a(i, j);
}

// One eps_l over a whole element: each monomial maps to the product of
// its factor images (ring homomorphism), scaled by its coefficient.
Element apply_single(const Presentation& p, int l, const Element& x) {
    Element out = p.zero();
    for (const auto& [mono, coeff] : x.terms()) {
        Element part = p.from_scalar(coeff);
        for (const GeneratorId& g : mono.factors)
            part = p.multiply(part, generator_image(p, l, g.i, g.j));
        out += part;
    }
    return out;
}

Element monomial_element(const Presentation& p, const Monomial& mono) {
    Element e;
    e.add_term(mono, Scalar::one(p.prime()));
    return e;
}

struct MemoKey {
    int n, pts, l, d;
    std::uint32_t prime;

    bool operator<(const MemoKey& o) const {
        return std::tie(n, pts, l, d, prime) <
               std::tie(o.n, o.pts, o.l, o.d, o.prime);
    }
};

// Write-once matrix cache: entries are inserted fully built, so a reader
// sees either a miss or a finished matrix, never a partial one.
std::map<MemoKey, std::shared_ptr<const Matrix>> memo_tables;
std::shared_mutex memo_mu;

}  // namespace

Element epsilon_on_generator(const Presentation& p, int l, int i, int j) {
    require_orbit(p);
    check_generator_index(p, l);
    need(p.valid_generator({i, j}),
         "no generator A[" + std::to_string(i) + "," + std::to_string(j) +
             "] on " + std::to_string(p.points()) + " points");
    return generator_image(p, l, i, j);
}

Element epsilon_apply(const Presentation& p, const GroupElement& g,
                      const Element& x) {
    require_orbit(p);
    for (int l : g.bits) check_generator_index(p, l);
    Element out = x;
    for (int l : g.bits) out = apply_single(p, l, out);
    return out;
}

std::vector<Scalar> coordinate_vector(const Presentation& p, const Element& x,
                                      const std::vector<Monomial>& basis) {
    std::map<Monomial, std::size_t> slot;
    for (std::size_t c = 0; c < basis.size(); ++c) slot.emplace(basis[c], c);
    std::vector<Scalar> coords(basis.size(), Scalar::zero(p.prime()));
    for (const auto& [mono, coeff] : x.terms()) {
        auto it = slot.find(mono);
        need(it != slot.end(), "element has the term " +
                                   monomial_element(p, mono).str(p.family()) +
                                   " outside the given basis");
        coords[it->second] = coeff;
    }
    return coords;
}

Matrix action_matrix(const Presentation& p, int l, int d) {
    require_orbit(p);
    check_generator_index(p, l);
    MemoKey key{p.n(), p.points(), l, d, p.prime()};
    {
        std::shared_lock lk(memo_mu);
        auto it = memo_tables.find(key);
        if (it != memo_tables.end()) return *it->second;
    }
    auto basis = p.basis_of_degree(d);
    Matrix mat(basis.size(), basis.size(), p.prime());
    for (std::size_t c = 0; c < basis.size(); ++c) {
        Element image = apply_single(p, l, monomial_element(p, basis[c]));
        auto coords = coordinate_vector(p, image, basis);
        for (std::size_t r = 0; r < basis.size(); ++r)
            mat.set(r, c, coords[r]);
    }
    auto entry = std::make_shared<const Matrix>(std::move(mat));
    {
        std::unique_lock lk(memo_mu);
        memo_tables.emplace(key, entry);  // first writer wins
    }
    return *entry;
}

namespace {

// Random homogeneous element of the given degree: up to three basis
// monomials with small nonzero coefficients (same scheme as the ring's
// own random_element, restricted to one degree).
Element random_homogeneous(const Presentation& p, std::mt19937_64& rng,
                           int d) {
    auto basis = p.basis_of_degree(d);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    std::uniform_int_distribution<int> nterms(1, 3);
    std::uniform_int_distribution<int> coeff(1, 6);
    Element e;
    int terms = nterms(rng);
    for (int t = 0; t < terms; ++t) {
        int c = coeff(rng);
        e.add_term(basis[pick(rng)],
                   Scalar::from_int(c <= 3 ? c : 3 - c, p.prime()));
    }
    return e;
}

// q-fold products of shifted generators B[i,j] = A[i,j] - A[1,0] with
// strictly increasing levels; they span the kernel of the even-sphere
// differential in fiber degree q.
std::vector<Element> shifted_product_span(const Presentation& p, int q) {
    std::vector<Element> out;
    for (const auto& mono : shifted_monomial_basis(p.points(), q)) {
        Element e = p.one();
        for (const DerivedClass& c : mono)
            e = p.multiply(e, derived_class_element(p, c));
        out.push_back(e);
    }
    return out;
}

// Predicted eps_l image of B[i,j]: same five-case table as the generator
// action with every A replaced by B (the parity signs collapse for n
// even).  B[1,0] = 0 makes the i = 1 rows trivial.
Element shifted_image(const Presentation& p, int l, int i, int j) {
    auto b = [&](int ii, int jj) {
        return derived_class_element(p, DerivedClass::b(ii, jj));
    };
    if (l == 1 && j != 0) return -b(std::abs(j), 0) - b(i, 0) + b(i, j);
    if (l == 1) return i > 1 ? -b(i, 0) : p.zero();
    if (std::abs(j) == l - 1) return b(i, -j);
    if (l > 2 && i == l - 1 && j != 0)
        return b(std::abs(j), 0) + b(i, 0) - b(i, -j);
    return b(i, j);
}

}  // namespace

std::string ActionReport::str() const {
    std::ostringstream os;
    os << (ok ? "ok" : "FAIL") << " (" << checks.size() << " checks)\n";
    for (const ActionCheck& c : checks) {
        if (!c.applicable) {
            os << "  skip  " << c.name << "\n";
            continue;
        }
        os << (c.ok ? "  ok    " : "  FAIL  ") << c.name << "  [" << c.cases
           << "]";
        if (!c.ok) os << "  first failure: " << c.failure;
        os << "\n";
    }
    return os.str();
}

ActionReport verify_action_properties(const Presentation& p,
                                      unsigned samples_per_degree,
                                      std::uint64_t seed) {
    require_orbit(p);
    const int m = p.points();
    const int top = m + 1;  // generator indices run over 1..m+1
    const int gd = p.generator_degree();
    std::vector<int> degrees;
    for (int q = 0; q <= m; ++q) degrees.push_back(q * gd);

    ActionReport rep;
    auto single = [](int l) { return GroupElement::single(l); };
    auto fresh = [](const char* name, bool applicable = true) {
        ActionCheck c;
        c.name = name;
        c.applicable = applicable;
        return c;
    };

    // (i) every eps_l squares to the identity
    {
        ActionCheck c = fresh("involution");
        for (int d : degrees)
            for (int l = 1; l <= top; ++l) {
                Matrix mat = action_matrix(p, l, d);
                ++c.cases;
                if (c.ok && !(mat * mat ==
                              Matrix::identity(mat.rows(), p.prime()))) {
                    c.ok = false;
                    c.failure = "eps_" + std::to_string(l) +
                                " squared in degree " + std::to_string(d);
                }
            }
        rep.checks.push_back(std::move(c));
    }

    // (ii) the generators commute pairwise
    {
        ActionCheck c = fresh("commutativity");
        for (int d : degrees)
            for (int l = 1; l <= top; ++l)
                for (int l2 = l + 1; l2 <= top; ++l2) {
                    Matrix a = action_matrix(p, l, d);
                    Matrix b = action_matrix(p, l2, d);
                    ++c.cases;
                    if (c.ok && !(a * b == b * a)) {
                        c.ok = false;
                        c.failure = "eps_" + std::to_string(l) + " vs eps_" +
                                    std::to_string(l2) + " in degree " +
                                    std::to_string(d);
                    }
                }
        rep.checks.push_back(std::move(c));
    }

    // (iii) multiplicativity on sampled homogeneous pairs
    {
        ActionCheck c = fresh("multiplicativity");
        std::mt19937_64 rng(seed);
        for (int d1 : degrees)
            for (unsigned s = 0; s < samples_per_degree; ++s) {
                // partner degree keeps the product inside the ring
                std::uniform_int_distribution<int> rest(0, m - d1 / gd);
                int d2 = rest(rng) * gd;
                Element x = random_homogeneous(p, rng, d1);
                Element y = random_homogeneous(p, rng, d2);
                Element xy = p.multiply(x, y);
                for (int l = 1; l <= top; ++l) {
                    ++c.cases;
                    if (c.ok &&
                        epsilon_apply(p, single(l), xy) !=
                            p.multiply(epsilon_apply(p, single(l), x),
                                       epsilon_apply(p, single(l), y))) {
                        c.ok = false;
                        c.failure = "eps_" + std::to_string(l) + " on " +
                                    x.str(p.family()) + " times " +
                                    y.str(p.family());
                    }
                }
            }
        rep.checks.push_back(std::move(c));
    }

    // (iv) n odd: eps_1 equals the product of all the other generators
    {
        ActionCheck c = fresh("product-factorization-odd", p.odd_n());
        if (c.applicable)
            for (int d : degrees) {
                Matrix lhs = action_matrix(p, 1, d);
                Matrix rhs = Matrix::identity(lhs.rows(), p.prime());
                for (int l = 2; l <= top; ++l)
                    rhs = rhs * action_matrix(p, l, d);
                c.cases += lhs.cols();
                if (c.ok && !(lhs == rhs)) {
                    c.ok = false;
                    c.failure = "degree " + std::to_string(d);
                }
            }
        rep.checks.push_back(std::move(c));
    }

    // (v) n even: eps_1 equals (-1)^q times that product on q-fold
    // products of shifted generators (the sign is the conjugation map
    // the factorization picks up on even spheres)
    {
        ActionCheck c = fresh("signed-product-factorization-even", !p.odd_n());
        if (c.applicable)
            for (int q = 0; q <= m; ++q)
                for (const Element& x : shifted_product_span(p, q)) {
                    Element rhs = x;
                    for (int l = 2; l <= top; ++l)
                        rhs = epsilon_apply(p, single(l), rhs);
                    if (q % 2 == 1) rhs = -rhs;
                    ++c.cases;
                    if (c.ok && epsilon_apply(p, single(1), x) != rhs) {
                        c.ok = false;
                        c.failure = std::to_string(q) +
                                    "-fold product " + x.str(p.family());
                    }
                }
        rep.checks.push_back(std::move(c));
    }

    // (vi) n even: B images follow the five-case table, and the D classes
    // flip sign exactly under D+[i,j] with i = l-1, D-[i,j] with
    // j = l-1, and D0[i] with l = 1
    {
        ActionCheck c = fresh("shifted-class-action-even", !p.odd_n());
        if (c.applicable) {
            auto dc = [&](const DerivedClass& d) {
                return derived_class_element(p, d);
            };
            auto flip = [&](const Element& e, bool neg) {
                return neg ? -e : e;
            };
            for (int l = 1; l <= top; ++l) {
                for (int i = 1; i <= m; ++i)
                    for (int j = -(i - 1); j <= i - 1; ++j) {
                        Element lhs = epsilon_apply(
                            p, single(l), dc(DerivedClass::b(i, j)));
                        ++c.cases;
                        if (c.ok && lhs != shifted_image(p, l, i, j)) {
                            c.ok = false;
                            c.failure = "eps_" + std::to_string(l) + " B[" +
                                        std::to_string(i) + "," +
                                        std::to_string(j) + "]";
                        }
                    }
                for (int i = 1; i <= m; ++i) {
                    Element d0 = dc(DerivedClass::dzero(i));
                    ++c.cases;
                    if (c.ok && epsilon_apply(p, single(l), d0) !=
                                    flip(d0, l == 1)) {
                        c.ok = false;
                        c.failure = "eps_" + std::to_string(l) + " D0[" +
                                    std::to_string(i) + "]";
                    }
                }
                for (int i = 2; i <= m; ++i)
                    for (int j = 1; j < i; ++j) {
                        Element dp = dc(DerivedClass::dplus(i, j));
                        Element dm = dc(DerivedClass::dminus(i, j));
                        c.cases += 2;
                        if (c.ok && epsilon_apply(p, single(l), dp) !=
                                        flip(dp, i == l - 1)) {
                            c.ok = false;
                            c.failure = "eps_" + std::to_string(l) + " D+[" +
                                        std::to_string(i) + "," +
                                        std::to_string(j) + "]";
                        }
                        if (c.ok && epsilon_apply(p, single(l), dm) !=
                                        flip(dm, j == l - 1)) {
                            c.ok = false;
                            c.failure = "eps_" + std::to_string(l) + " D-[" +
                                        std::to_string(i) + "," +
                                        std::to_string(j) + "]";
                        }
                    }
            }
        }
        rep.checks.push_back(std::move(c));
    }

    for (const ActionCheck& c : rep.checks)
        if (c.applicable && !c.ok) rep.ok = false;
    return rep;
}

}  // namespace confring
