#include "confring/lscat.hpp"

#include "json.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include "confring/action.hpp"
#include "confring/matrix.hpp"

namespace confring {

namespace {

void need(bool ok, const std::string& msg) {
    if (!ok) throw domain_error(msg);
}

std::string space_label(const Presentation& p) {
    std::ostringstream os;
    if (p.family() == Family::orbit)
        os << "orbit n=" << p.n() << " m=" << p.points();
    else
        os << "arnold n=" << p.n() << " k=" << p.points();
    if (p.prime() != 0) os << " mod " << p.prime();
    return os.str();
}

// Row-echelon span that grows one vector at a time; add() reports
// whether the vector enlarged the span.
class IncrementalSpan {
  public:
    explicit IncrementalSpan(std::size_t cols) : cols_(cols) {}

    std::size_t dim() const { return rows_.size(); }

    bool add(std::vector<Scalar> v) {
        for (const Row& r : rows_) {
            if (v[r.pivot].is_zero()) continue;
            const Scalar f = v[r.pivot];
            for (std::size_t c = r.pivot; c < cols_; ++c)
                v[c] -= f * r.v[c];
        }
        std::size_t piv = cols_;
        for (std::size_t c = 0; c < cols_; ++c)
            if (!v[c].is_zero()) {
                piv = c;
                break;
            }
        if (piv == cols_) return false;
        const Scalar inv = v[piv].inverse();
        for (std::size_t c = piv; c < cols_; ++c) v[c] *= inv;
        rows_.push_back(Row{piv, std::move(v)});
        return true;
    }

  private:
    struct Row {
        std::size_t pivot;
        std::vector<Scalar> v;
    };
    std::size_t cols_;
    std::vector<Row> rows_;
};

// Keep a spanning, independent subset of the elements in the degree-d
// slice; order-stable, so deterministic.
std::vector<Element> independent_subset(const Presentation& p,
                                        const std::vector<Element>& els,
                                        int d) {
    const std::vector<Monomial> basis = p.basis_of_degree(d);
    IncrementalSpan span(basis.size());
    std::vector<Element> kept;
    for (const Element& e : els) {
        if (e.is_zero()) continue;
        if (span.add(coordinate_vector(p, e, basis))) kept.push_back(e);
    }
    return kept;
}

// ---- the s-fold graded tensor power -------------------------------
//
// A term is one normal-form monomial per slot; elements are sparse
// sums.  Products expand componentwise with the Koszul sign: moving
// the slot-i right factor past the left factors in slots > i costs
// (-1)^(|b_i| * sum_{j>i} |a_j|), which only matters when the
// generator degree n-1 is odd.

using TKey = std::vector<Monomial>;

struct TElem {
    std::map<TKey, Scalar> terms;

    bool is_zero() const { return terms.empty(); }

    void add(const TKey& k, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = terms.find(k);
        if (it == terms.end()) {
            terms.emplace(k, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
};

TElem tensor_one(const Presentation& p, int s) {
    TElem e;
    e.add(TKey(static_cast<std::size_t>(s)), Scalar::one(p.prime()));
    return e;
}

// x placed in slot t, units elsewhere.
TElem slot_element(const Element& x, int t, int s) {
    TElem out;
    TKey key(static_cast<std::size_t>(s));
    for (const auto& [mono, c] : x.terms()) {
        key[t] = mono;
        out.add(key, c);
    }
    return out;
}

void mul_terms(const Presentation& p, const TKey& ka, const Scalar& ca,
               const TKey& kb, const Scalar& cb, TElem& out) {
    const int s = static_cast<int>(ka.size());

    long swaps = 0;
    if (p.generator_degree() % 2 == 1) {
        long suffix = 0;  // total factor count of ka in slots > i
        for (int i = s - 1; i >= 0; --i) {
            swaps += static_cast<long>(kb[i].size()) * suffix;
            suffix += static_cast<long>(ka[i].size());
        }
    }
    Scalar coeff = ca * cb;
    if (swaps % 2 != 0) coeff = -coeff;

    std::vector<Element> comp(ka.size());
    for (int i = 0; i < s; ++i) {
        Element ai, bi;
        ai.add_term(ka[i], Scalar::one(p.prime()));
        bi.add_term(kb[i], Scalar::one(p.prime()));
        comp[i] = p.multiply(ai, bi);
        if (comp[i].is_zero()) return;
    }

    struct Path {
        TKey key;
        Scalar c;
    };
    std::vector<Path> acc{{TKey(static_cast<std::size_t>(s)), coeff}};
    for (int i = 0; i < s; ++i) {
        std::vector<Path> next;
        next.reserve(acc.size() * comp[i].term_count());
        for (const Path& pa : acc)
            for (const auto& [mono, c] : comp[i].terms()) {
                Path np = pa;
                np.key[i] = mono;
                np.c *= c;
                next.push_back(std::move(np));
            }
        acc = std::move(next);
    }
    for (const Path& pa : acc) out.add(pa.key, pa.c);
}

TElem tensor_mul(const Presentation& p, const TElem& a, const TElem& b) {
    TElem out;
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms) mul_terms(p, ka, ca, kb, cb, out);
    return out;
}

// The s-fold multiplication back down to the ring; its kernel is the
// zero-divisor ideal.
Element tensor_mu(const Presentation& p, const TElem& a) {
    Element out;
    for (const auto& [key, c] : a.terms) {
        Element prod = p.from_scalar(c);
        for (const Monomial& mono : key) {
            Element e;
            e.add_term(mono, Scalar::one(p.prime()));
            prod = p.multiply(prod, e);
        }
        out += prod;
    }
    return out;
}

// Slotwise monomial tuples with factor counts summing to T, in a fixed
// recursive order.
std::vector<TKey> tensor_basis(const Presentation& p, int s, int T) {
    std::vector<TKey> out;
    TKey key(static_cast<std::size_t>(s));
    const int top = p.top_factor_count();
    const int gd = p.generator_degree();
    const auto rec = [&](auto&& self, int slot, int left) -> void {
        if (slot == s) {
            if (left == 0) out.push_back(key);
            return;
        }
        if (left > (s - slot) * top) return;
        for (int t = 0; t <= std::min(left, top); ++t)
            for (const Monomial& mono : p.basis_of_degree(t * gd)) {
                key[slot] = mono;
                self(self, slot + 1, left - t);
            }
    };
    rec(rec, 0, T);
    return out;
}

std::vector<Scalar> tensor_coords(const TElem& e,
                                  const std::map<TKey, std::size_t>& index,
                                  std::size_t dim, std::uint32_t prime) {
    std::vector<Scalar> v(dim, Scalar::zero(prime));
    for (const auto& [k, c] : e.terms) {
        const auto it = index.find(k);
        need(it != index.end(), "tensor term outside its degree slice");
        v[it->second] = c;
    }
    return v;
}

struct Candidate {
    TElem value;
    std::string label;
};

// Adjacent-slot differences of the ring generators: g placed in slot t
// minus g placed in slot t+1.  These all multiply to zero under mu and
// span the lowest slice of its kernel.
std::vector<Candidate> basic_zero_divisors(const Presentation& p, int s) {
    std::vector<Candidate> out;
    for (int t = 0; t + 1 < s; ++t)
        for (const GeneratorId& g : p.generators()) {
            const Element ge = p.gen(g.i, g.j);
            TElem diff = slot_element(ge, t, s);
            const TElem right = slot_element(ge, t + 1, s);
            for (const auto& [k, c] : right.terms) diff.add(k, -c);
            std::ostringstream label;
            label << p.str(ge) << "(" << t << ") - " << p.str(ge) << "("
                  << t + 1 << ")";
            out.push_back(Candidate{std::move(diff), label.str()});
        }
    return out;
}

// Depth-first search over nondecreasing candidate sequences (products
// commute up to sign, so order never affects vanishing).  Stops early
// once the degree cap is witnessed.
struct WitnessSearch {
    const Presentation& p;
    const std::vector<Candidate>& cands;
    int cap;
    unsigned long long ops_left;
    bool exhausted = false;
    int best = 0;
    std::vector<int> best_path;
    std::vector<int> path;

    void dfs(const TElem& prod, int from, int depth) {
        if (depth > best) {
            best = depth;
            best_path = path;
        }
        if (best == cap || depth == cap || exhausted) return;
        for (int i = from; i < static_cast<int>(cands.size()); ++i) {
            if (ops_left == 0) {
                exhausted = true;
                return;
            }
            --ops_left;
            const TElem next = tensor_mul(p, prod, cands[i].value);
            if (next.is_zero()) continue;
            path.push_back(i);
            dfs(next, i, depth + 1);
            path.pop_back();
            if (best == cap || exhausted) return;
        }
    }
};

// Exact zcl by exhausting products of a degreewise spanning set of the
// zero-divisor ideal: P_1 = ker mu, P_{L+1} = span(ker mu * P_L); the
// answer is the last L with P_L nonzero.  Returns -1 if the operation
// budget ran out, with progress reported through reached.
int exhaust_zcl(const Presentation& p, int s, const SearchBudget& budget,
                int* reached) {
    const int top = p.top_factor_count();
    const int cap = s * top;
    const int gd = p.generator_degree();

    std::vector<std::vector<TKey>> bases(cap + 1);
    std::vector<std::map<TKey, std::size_t>> index(cap + 1);
    for (int T = 0; T <= cap; ++T) {
        bases[T] = tensor_basis(p, s, T);
        for (std::size_t i = 0; i < bases[T].size(); ++i)
            index[T].emplace(bases[T][i], i);
    }

    unsigned long long ops = budget.max_products;
    std::vector<std::vector<TElem>> zd(cap + 1);
    for (int T = 1; T <= cap; ++T) {
        const std::vector<Monomial> target = p.basis_of_degree(T * gd);
        Matrix mu_mat(target.size(), bases[T].size(), p.prime());
        for (std::size_t c = 0; c < bases[T].size(); ++c) {
            TElem e;
            e.add(bases[T][c], Scalar::one(p.prime()));
            const std::vector<Scalar> coords =
                coordinate_vector(p, tensor_mu(p, e), target);
            for (std::size_t r = 0; r < coords.size(); ++r)
                if (!coords[r].is_zero()) mu_mat.set(r, c, coords[r]);
        }
        for (const std::vector<Scalar>& v : kernel_basis(mu_mat)) {
            TElem z;
            for (std::size_t c = 0; c < v.size(); ++c)
                if (!v[c].is_zero()) z.add(bases[T][c], v[c]);
            zd[T].push_back(std::move(z));
        }
    }

    std::vector<std::vector<TElem>> cur = zd;
    int level = 0;
    while (true) {
        bool nonzero = false;
        for (int T = 1; T <= cap; ++T)
            if (!cur[T].empty()) {
                nonzero = true;
                break;
            }
        if (!nonzero) break;
        ++level;
        *reached = level;
        if (level == cap) break;  // nothing can outlive the degree cap

        std::vector<std::vector<TElem>> next(cap + 1);
        for (int T = 2; T <= cap; ++T) {
            IncrementalSpan span(bases[T].size());
            std::vector<TElem> kept;
            for (int T1 = 1; T1 < T; ++T1)
                for (const TElem& z : zd[T1])
                    for (const TElem& v : cur[T - T1]) {
                        if (ops == 0) return -1;
                        --ops;
                        TElem prod = tensor_mul(p, z, v);
                        if (prod.is_zero()) continue;
                        if (span.add(tensor_coords(prod, index[T],
                                                   bases[T].size(),
                                                   p.prime())))
                            kept.push_back(std::move(prod));
                    }
            next[T] = std::move(kept);
        }
        cur = std::move(next);
    }
    return level;
}

}  // namespace

CupLengthReport cup_length(const Presentation& p) {
    const std::vector<GeneratorId> gens = p.generators();
    CupLengthReport rep;
    if (gens.empty()) {
        rep.product = p.str(p.one());
        return rep;
    }

    const int top = p.top_factor_count();
    const int gd = p.generator_degree();

    // ideal^1: the whole positive-degree part, slice by slice.
    std::vector<std::vector<Element>> cur(top + 1);
    for (int t = 1; t <= top; ++t)
        for (const Monomial& mono : p.basis_of_degree(t * gd)) {
            Element e;
            e.add_term(mono, Scalar::one(p.prime()));
            cur[t].push_back(std::move(e));
        }

    int length = 0;
    for (int level = 1; level <= top; ++level) {
        bool nonzero = false;
        for (int t = 1; t <= top; ++t)
            if (!cur[t].empty()) {
                nonzero = true;
                break;
            }
        if (!nonzero) break;
        length = level;

        // ideal^(level+1) = generators * ideal^level, slice by slice.
        std::vector<std::vector<Element>> next(top + 1);
        for (int t = 1; t + 1 <= top; ++t) {
            if (cur[t].empty()) continue;
            std::vector<Element> prods;
            for (const GeneratorId& g : gens) {
                const Element ge = p.gen(g.i, g.j);
                for (const Element& v : cur[t])
                    prods.push_back(p.multiply(ge, v));
            }
            next[t + 1] = independent_subset(p, prods, (t + 1) * gd);
        }
        cur = std::move(next);
    }

    // One column of generators survives to the top: A[i,0] for the
    // orbit ring, A'[i,1] one level up for the one-puncture ring.
    Element prod = p.one();
    if (p.family() == Family::orbit)
        for (int i = 1; i <= p.points(); ++i) {
            rep.witness.push_back(p.str(p.gen(i, 0)));
            prod = p.multiply(prod, p.gen(i, 0));
        }
    else
        for (int i = 2; i <= p.points(); ++i) {
            rep.witness.push_back(p.str(p.gen(i, 1)));
            prod = p.multiply(prod, p.gen(i, 1));
        }
    need(!prod.is_zero() &&
             static_cast<int>(rep.witness.size()) == length,
         "cup-length witness unexpectedly vanished");
    rep.length = length;
    rep.product = p.str(prod);
    return rep;
}

std::string TcReport::str() const {
    std::ostringstream os;
    os << (s == 1 ? std::string("cat") : "TC_" + std::to_string(s)) << "("
       << space << ")";
    if (exact)
        os << " = " << *exact;
    else
        os << " in [" << lower << ", " << upper << "]";
    if (partial) os << "  (partial: search budget exhausted)";
    if (!witness.empty()) {
        os << "  witness:";
        for (const std::string& w : witness) os << " [" << w << "]";
    }
    return os.str();
}

std::string TcReport::json_str() const {
    nlohmann::ordered_json o;
    o["space"] = space;
    o["s"] = s;
    o["lower"] = lower;
    o["upper"] = upper;
    if (exact)
        o["exact"] = *exact;
    else
        o["exact"] = nullptr;
    o["witness"] = witness;
    if (partial) o["partial"] = true;
    return o.dump();
}

TcReport zcl(const Presentation& p, int s, ZclMode mode,
             const SearchBudget& budget) {
    need(s >= 2, "zcl needs at least two slots");
    if (s > budget.max_s) throw budget_error("slot count exceeds the budget");
    if (p.points() > budget.max_points)
        throw budget_error("point count exceeds the budget");
    unsigned long long total = 0;
    for (unsigned long long d : p.poincare_polynomial()) total += d;
    unsigned long long tensor_dim = 1;
    for (int i = 0; i < s; ++i) tensor_dim *= total;
    if (tensor_dim > budget.max_tensor_dim)
        throw budget_error("tensor power exceeds the dimension budget");

    const int cap = s * p.top_factor_count();
    TcReport rep;
    rep.space = space_label(p);
    rep.s = s;
    rep.upper = cap;

    const std::vector<Candidate> cands = basic_zero_divisors(p, s);
    WitnessSearch search{p, cands, cap, budget.max_products, false, 0, {}, {}};
    if (!cands.empty()) {
        search.dfs(tensor_one(p, s), 0, 0);
        // Factors of the best product, each double-checked to be a
        // zero-divisor.
        for (int idx : search.best_path) {
            need(tensor_mu(p, cands[idx].value).is_zero(),
                 "witness factor is not a zero-divisor");
            rep.witness.push_back(cands[idx].label);
        }
    }
    rep.lower = search.best;
    rep.partial = search.exhausted;

    if (rep.lower == rep.upper) {
        rep.exact = rep.lower;
        rep.partial = false;  // the degree cap certifies the value
    } else if (mode == ZclMode::exact_small && !rep.partial) {
        int reached = 0;
        const int exact = exhaust_zcl(p, s, budget, &reached);
        if (exact < 0) {
            rep.partial = true;
            rep.lower = std::max(rep.lower, reached);
        } else {
            rep.exact = exact;
            rep.lower = exact;
        }
    }
    return rep;
}

TcReport cat_tc_bounds(int n, int k, int s) {
    need(n >= 2, "dimension must be at least 2");
    need(k >= 1, "need at least one point");
    need(s >= 1, "sequential parameter must be at least 1");

    TcReport rep;
    std::ostringstream os;
    os << "orbit n=" << n << " m=" << k;
    rep.space = os.str();
    rep.s = s;
    rep.upper = s * k;
    rep.lower = s * k - 1 + (n % 2 == 1 ? 1 : 0);
    if (n % 2 == 1) rep.exact = s * k;
    return rep;
}

}  // namespace confring
