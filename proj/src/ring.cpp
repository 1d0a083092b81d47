#include "confring/ring.hpp"

#include <algorithm>
#include <sstream>

namespace confring {

bool Monomial::operator<(const Monomial& o) const {
    if (factors.size() != o.factors.size())
        return factors.size() < o.factors.size();
    for (std::size_t t = 0; t < factors.size(); ++t) {
        if (factors[t] == o.factors[t]) continue;
        return gen_less(factors[t], o.factors[t]);
    }
    return false;
}

void Element::add_term(const Monomial& mono, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(mono);
    if (it == terms_.end()) {
        terms_.emplace(mono, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

Element& Element::operator+=(const Element& o) {
    for (const auto& [mono, c] : o.terms_) add_term(mono, c);
    return *this;
}

Element& Element::operator-=(const Element& o) {
    for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
    return *this;
}

Element Element::operator+(const Element& o) const {
    Element r(*this);
    return r += o;
}

Element Element::operator-(const Element& o) const {
    Element r(*this);
    return r -= o;
}

Element Element::operator-() const {
    Element r;
    for (const auto& [mono, c] : terms_) r.terms_.emplace(mono, -c);
    return r;
}

Element& Element::scale(const Scalar& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [mono, v] : terms_) v *= c;
    return *this;
}

int Element::homogeneous_factor_count() const {
    int q = -1;
    for (const auto& [mono, c] : terms_) {
        int sz = static_cast<int>(mono.size());
        if (q == -1)
            q = sz;
        else if (q != sz)
            return -1;
    }
    return q;
}

std::string Element::str(Family fam) const {
    if (terms_.empty()) return "0";
    const char* name = fam == Family::orbit ? "A" : "A'";
    std::ostringstream out;
    bool first = true;
    for (const auto& [mono, c] : terms_) {
        Scalar a = c;
        bool neg = c.is_negative();
        if (neg) a = -c;
        if (first) {
            if (neg) out << "-";
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        if (mono.factors.empty()) {
            out << a.str();
            continue;
        }
        if (!a.is_one()) out << a.str() << "*";
        bool firstgen = true;
        for (const GeneratorId& g : mono.factors) {
            if (!firstgen) out << "*";
            firstgen = false;
            out << name << "[" << g.i << "," << g.j << "]";
        }
    }
    return out.str();
}

Presentation::Presentation(Family fam, int n, int pts, std::uint32_t prime)
    : fam_(fam), n_(n), pts_(pts), p_(prime),
      cache_(std::make_shared<Cache>()) {
    if (n < 2) throw domain_error("sphere dimension must be at least 2");
    if (fam == Family::orbit && pts < 1)
        throw domain_error("orbit presentation needs at least one point");
    if (fam == Family::arnold && pts < 1)
        throw domain_error("arnold presentation needs at least one point");
    if (prime != 0) {
        if (prime < 2) throw domain_error("coefficient prime must be >= 2");
        for (std::uint32_t d = 2; d * d <= prime; ++d)
            if (prime % d == 0)
                throw domain_error("coefficient modulus must be prime");
    }
}

Presentation Presentation::orbit_ring(int n, int m, std::uint32_t prime) {
    return Presentation(Family::orbit, n, m, prime);
}

Presentation Presentation::arnold_ring(int n, int k, std::uint32_t prime) {
    return Presentation(Family::arnold, n, k, prime);
}

bool Presentation::valid_generator(const GeneratorId& g) const {
    if (fam_ == Family::orbit)
        return 1 <= g.i && g.i <= pts_ && std::abs(g.j) < g.i;
    return 2 <= g.i && g.i <= pts_ && 1 <= g.j && g.j < g.i;
}

std::vector<int> Presentation::level_js(int i) const {
    std::vector<int> js;
    if (fam_ == Family::orbit) {
        js.push_back(0);
        for (int j = 1; j < i; ++j) {
            js.push_back(j);
            js.push_back(-j);
        }
    } else {
        for (int j = 1; j < i; ++j) js.push_back(j);
    }
    return js;
}

std::vector<GeneratorId> Presentation::generators() const {
    std::vector<GeneratorId> gens;
    int lo = fam_ == Family::orbit ? 1 : 2;
    for (int i = lo; i <= pts_; ++i)
        for (int j : level_js(i)) gens.push_back({i, j});
    return gens;
}

Element Presentation::one() const {
    Element e;
    e.add_term(Monomial{}, Scalar::one(p_));
    return e;
}

Element Presentation::gen(int i, int j) const {
    GeneratorId g{i, j};
    if (!valid_generator(g))
        throw domain_error("generator index out of range: (" +
                           std::to_string(i) + "," + std::to_string(j) + ")");
    Element e;
    e.add_term(Monomial{{g}}, Scalar::one(p_));
    return e;
}

Element Presentation::from_scalar(const Scalar& c) const {
    if (c.prime() != p_) throw domain_error("coefficient mode mismatch");
    Element e;
    e.add_term(Monomial{}, c);
    return e;
}

Element Presentation::from_int(long v) const {
    return from_scalar(Scalar::from_int(v, p_));
}

std::vector<Presentation::CollisionTerm>
Presentation::collision_terms(int r, int a, int b) const {
    auto bad = [&](int x) {
        return fam_ == Family::orbit ? std::abs(x) >= r : (x < 1 || x >= r);
    };
    if (r < 1 || r > pts_ || bad(a) || bad(b))
        throw domain_error("collision index out of range");
    if (a == b) return {};

    if (fam_ == Family::arnold) {
        if (a > b) {
            auto terms = collision_terms(r, b, a);
            if (!odd_n())
                for (auto& t : terms) t.sign = -t.sign;
            return terms;
        }
        // A'[r,a]*A'[r,b] = A'[b,a]*(A'[r,b] - A'[r,a]) for a < b
        return {{1, {b, a}, {r, b}}, {-1, {b, a}, {r, a}}};
    }

    // canonical order: 0 first, then positive, then negative (abs ascending)
    auto rank = [](int x) {
        return x == 0 ? std::pair{0, 0} : (x > 0 ? std::pair{1, x}
                                                 : std::pair{2, -x});
    };
    if (rank(a) > rank(b)) {
        auto terms = collision_terms(r, b, a);
        if (!odd_n())
            for (auto& t : terms) t.sign = -t.sign;
        return terms;
    }

    const int s = odd_n() ? -1 : 1;  // (-1)^n
    if (a == 0 && b > 0) {
        int i = b;  // A[i,0]*(A[r,i] - A[r,0])
        return {{1, {i, 0}, {r, i}}, {-1, {i, 0}, {r, 0}}};
    }
    if (a == 0 && b < 0) {
        int i = -b;  // s*A[i,0]*(A[r,-i] - A[r,0])
        return {{s, {i, 0}, {r, -i}}, {-s, {i, 0}, {r, 0}}};
    }
    if (a > 0 && b == -a) {
        int i = a;  // s*A[i,0]*(A[r,-i] - A[r,i])
        return {{s, {i, 0}, {r, -i}}, {-s, {i, 0}, {r, i}}};
    }
    if (a > 0 && b > 0) {
        int j = a, i = b;  // A[i,j]*(A[r,i] - A[r,j])
        return {{1, {i, j}, {r, i}}, {-1, {i, j}, {r, j}}};
    }
    if (a > 0 && b < 0 && a < -b) {
        int j = a, i = -b;  // s*(A[j,0] + A[i,0] - A[i,-j])*(A[r,-i] - A[r,j])
        return {{s, {j, 0}, {r, -i}},  {-s, {j, 0}, {r, j}},
                {s, {i, 0}, {r, -i}},  {-s, {i, 0}, {r, j}},
                {-s, {i, -j}, {r, -i}}, {s, {i, -j}, {r, j}}};
    }
    if (a > 0 && b < 0) {
        int i = a, j = -b;  // s*A[i,-j]*(A[r,-j] - A[r,i]), j < i
        return {{s, {i, -j}, {r, -j}}, {-s, {i, -j}, {r, i}}};
    }
    // a < 0 && b < 0 with -a < -b:
    int j = -a, i = -b;  // s*(A[i,0] - A[i,j] + s*A[j,0])*(A[r,-i] - A[r,-j])
    return {{s, {i, 0}, {r, -i}}, {-s, {i, 0}, {r, -j}},
            {-s, {i, j}, {r, -i}}, {s, {i, j}, {r, -j}},
            {1, {j, 0}, {r, -i}},  {-1, {j, 0}, {r, -j}}};
}

Element Presentation::reduce_collision(int r, int a, int b) const {
    Element e;
    for (const CollisionTerm& t : collision_terms(r, a, b)) {
        Monomial mono{{t.f, t.g}};
        e.add_term(mono, Scalar::from_int(t.sign, p_));
    }
    return e;
}

Element Presentation::normalize_unit(const std::vector<GeneratorId>& word) const {
    {
        std::lock_guard<std::mutex> lk(cache_->mu);
        auto it = cache_->norm.find(word);
        if (it != cache_->norm.end()) return it->second;
    }

    // stable insertion sort by level, counting transpositions
    std::vector<GeneratorId> w = word;
    long swaps = 0;
    for (std::size_t idx = 1; idx < w.size(); ++idx) {
        GeneratorId g = w[idx];
        std::size_t pos = idx;
        while (pos > 0 && w[pos - 1].i > g.i) {
            w[pos] = w[pos - 1];
            --pos;
            ++swaps;
        }
        w[pos] = g;
    }
    int sign = (!odd_n() && swaps % 2 != 0) ? -1 : 1;

    Element result;
    std::size_t t = 0;
    while (t + 1 < w.size() && w[t].i != w[t + 1].i) ++t;
    if (w.size() < 2 || t + 1 == w.size()) {
        result.add_term(Monomial{w}, Scalar::from_int(sign, p_));
    } else {
        // rewrite the leftmost collision and recurse on each summand
        for (const CollisionTerm& ct :
             collision_terms(w[t].i, w[t].j, w[t + 1].j)) {
            std::vector<GeneratorId> next(w.begin(), w.begin() + t);
            next.push_back(ct.f);
            next.push_back(ct.g);
            next.insert(next.end(), w.begin() + t + 2, w.end());
            Element part = normalize_unit(next);
            part.scale(Scalar::from_int(sign * ct.sign, p_));
            result += part;
        }
    }

    std::lock_guard<std::mutex> lk(cache_->mu);
    cache_->norm.emplace(word, result);
    return result;
}

Element Presentation::normalize_word(const std::vector<GeneratorId>& word,
                                     const Scalar& coeff) const {
    if (coeff.prime() != p_) throw domain_error("coefficient mode mismatch");
    for (const GeneratorId& g : word)
        if (!valid_generator(g))
            throw domain_error("generator index out of range: (" +
                               std::to_string(g.i) + "," +
                               std::to_string(g.j) + ")");
    if (coeff.is_zero()) return Element{};
    Element e = normalize_unit(word);
    e.scale(coeff);
    return e;
}

void Presentation::check_element(const Element& e) const {
    for (const auto& [mono, c] : e.terms()) {
        if (c.prime() != p_)
            throw domain_error("element coefficient mode mismatch");
        for (const GeneratorId& g : mono.factors)
            if (!valid_generator(g))
                throw domain_error("element uses foreign generators");
    }
}

Element Presentation::multiply(const Element& x, const Element& y) const {
    check_element(x);
    check_element(y);
    Element result;
    for (const auto& [mx, cx] : x.terms()) {
        for (const auto& [my, cy] : y.terms()) {
            if (mx.size() + my.size() >
                static_cast<std::size_t>(top_factor_count())) {
                continue;  // degree above the top class, normal form is 0
            }
            std::vector<GeneratorId> word = mx.factors;
            word.insert(word.end(), my.factors.begin(), my.factors.end());
            Element part = normalize_unit(word);
            part.scale(cx * cy);
            result += part;
        }
    }
    return result;
}

std::vector<Monomial> Presentation::basis_of_degree(int d) const {
    if (d < 0) throw domain_error("degree must be nonnegative");
    std::vector<Monomial> basis;
    int gd = generator_degree();
    if (d % gd != 0) return basis;
    int q = d / gd;
    if (q > top_factor_count()) return basis;

    int lo = fam_ == Family::orbit ? 1 : 2;
    std::vector<GeneratorId> current;
    // take-then-skip recursion keeps the enumeration lexicographic
    auto rec = [&](auto&& self, int level, int need) -> void {
        if (need == 0) {
            basis.push_back(Monomial{current});
            return;
        }
        if (level > pts_ || pts_ - level + 1 < need) return;
        for (int j : level_js(level)) {
            current.push_back({level, j});
            self(self, level + 1, need - 1);
            current.pop_back();
        }
        self(self, level + 1, need);
    };
    rec(rec, lo, q);
    return basis;
}

std::vector<unsigned long long> Presentation::poincare_polynomial() const {
    std::vector<unsigned long long> poly{1};
    auto mul1 = [&](unsigned long long a) {
        // multiply poly by (1 + a t)
        poly.push_back(0);
        for (std::size_t d = poly.size() - 1; d > 0; --d)
            poly[d] += a * poly[d - 1];
    };
    if (fam_ == Family::orbit) {
        for (int i = 1; i <= pts_; ++i) mul1(2ull * i - 1);
    } else {
        for (int i = 1; i < pts_; ++i) mul1(static_cast<unsigned>(i));
    }
    return poly;
}

Element Presentation::random_element(std::mt19937_64& rng,
                                     int max_monomials) const {
    // pool of all basis monomials across degrees (small for our sizes)
    std::vector<Monomial> pool;
    for (int q = 0; q <= top_factor_count(); ++q) {
        auto b = basis_of_degree(q * generator_degree());
        pool.insert(pool.end(), b.begin(), b.end());
    }
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> count(1, max_monomials);
    std::uniform_int_distribution<int> coeff(1, 6);
    Element e;
    int terms = count(rng);
    for (int t = 0; t < terms; ++t) {
        int c = coeff(rng);
        e.add_term(pool[pick(rng)],
                   Scalar::from_int(c <= 3 ? c : 3 - c, p_));
    }
    return e;
}

ConsistencyReport Presentation::verify_associativity(
    unsigned trials, std::uint64_t seed) const {
    if (trials < 1) throw domain_error("at least one trial required");
    std::mt19937_64 rng(seed);
    ConsistencyReport rep;
    for (unsigned t = 0; t < trials; ++t) {
        Element x = random_element(rng);
        Element y = random_element(rng);
        Element z = random_element(rng);
        Element lhs = multiply(multiply(x, y), z);
        Element rhs = multiply(x, multiply(y, z));
        ++rep.checks;
        if (lhs != rhs) {
            rep.ok = false;
            rep.detail = "associativity failed on (" + str(x) + ") * (" +
                         str(y) + ") * (" + str(z) + ")";
            return rep;
        }
    }
    return rep;
}

}  // namespace confring
