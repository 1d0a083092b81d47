#include "confring/invariants.hpp"

#include "json.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "confring/action.hpp"
#include "confring/matrix.hpp"

namespace confring {

namespace {

void need(bool ok, const std::string& msg) {
    if (!ok) throw domain_error(msg);
}

bool even_kind(InvariantKind k) {
    return k == InvariantKind::even_full || k == InvariantKind::even_punctured;
}

void check_setup(const Presentation& p, const SubgroupSpec& sub) {
    need(p.family() == Family::orbit,
         "invariants are computed in the orbit ring");
    need(p.prime() != 2, "invariants need 2 invertible in the coefficients");
    for (int l : sub.generators)
        need(1 <= l && l <= p.points() + 1,
             "subgroup generator index out of range");
}

Element product_element(const Presentation& p,
                        const std::vector<DerivedClass>& mono) {
    Element e = p.one();
    for (const DerivedClass& c : mono)
        e = p.multiply(e, derived_class_element(p, c));
    return e;
}

// Coordinate rows of the elements against the monomial slice basis.
Matrix element_rows(const Presentation& p, const std::vector<Element>& els,
                    const std::vector<Monomial>& basis) {
    Matrix rows(els.size(), basis.size(), p.prime());
    for (std::size_t r = 0; r < els.size(); ++r) {
        std::vector<Scalar> coords = coordinate_vector(p, els[r], basis);
        for (std::size_t c = 0; c < coords.size(); ++c)
            if (!coords[c].is_zero()) rows.set(r, c, coords[c]);
    }
    return rows;
}

// Flattened index tuple used for deterministic monomial order: A[1,0]
// contributes (1,0), D0[s] -> (s,0), C+[i,j] -> (i,j), and an I factor
// -> (r,i,j) with j signed (negative for I-, zero for I0).
std::vector<int> flat_key(const std::vector<DerivedClass>& mono) {
    std::vector<int> key;
    for (const DerivedClass& c : mono) {
        switch (c.kind) {
            case DerivedKind::A10:
                key.insert(key.end(), {1, 0});
                break;
            case DerivedKind::Dzero:
                key.insert(key.end(), {c.i, 0});
                break;
            case DerivedKind::Cplus:
                key.insert(key.end(), {c.i, c.j});
                break;
            case DerivedKind::Iplus:
                key.insert(key.end(), {c.r, c.i, c.j});
                break;
            case DerivedKind::Iminus:
                key.insert(key.end(), {c.r, c.i, -c.j});
                break;
            case DerivedKind::Izero:
                key.insert(key.end(), {c.i, c.j, 0});
                break;
            default:
                need(false, "unexpected factor kind in a predicted basis");
        }
    }
    return key;
}

// Ordered products of q classes C+[i,j], 0 < j < i, with strictly
// increasing i.  Emitted in lexicographic order of the index tuples.
void enum_cplus_products(int m, int q,
                         std::vector<std::vector<DerivedClass>>& out) {
    std::vector<DerivedClass> cur;
    auto rec = [&](auto&& self, int min_i, int more) -> void {
        if (more == 0) {
            out.push_back(cur);
            return;
        }
        for (int i = min_i; i <= m; ++i)
            for (int j = 1; j < i; ++j) {
                cur.push_back(DerivedClass::cplus(i, j));
                self(self, i + 1, more - 1);
                cur.pop_back();
            }
    };
    rec(rec, 2, q);
}

// One I factor in generic signed form: j > 0 is I+[r,i,j], j < 0 is
// I-[r,i,-j], j = 0 is I0[r,i] = D0[i]*D0[r].
struct IFactor {
    int r = 0, i = 0, j = 0;
};

DerivedClass i_factor_class(const IFactor& f) {
    if (f.j > 0) return DerivedClass::iplus(f.r, f.i, f.j);
    if (f.j < 0) return DerivedClass::iminus(f.r, f.i, -f.j);
    return DerivedClass::izero(f.r, f.i);
}

// Reduction conditions (2)-(4) between the new factor f and each factor
// already chosen; (1) holds because r is chosen in increasing order, so
// every g precedes f.  Condition (4) is checked in both roles: with f in
// the first role its conclusion r_f < i_g is unsatisfiable (r_f exceeds
// every earlier index), so such products always reduce away.
bool i_factor_compatible(const std::vector<IFactor>& chosen, const IFactor& f) {
    for (const IFactor& g : chosen) {
        if (g.i == f.i || g.i == f.r || g.r == f.i || g.r == f.r) return false;
        if (g.j == f.j && f.j <= 0 && g.r >= f.i) return false;
        if (g.j > 0 && g.i == -f.j && g.r >= f.i) return false;
        if (f.j > 0 && f.i == -g.j && f.r >= g.i) return false;
    }
    return true;
}

// All t-factor I products with |j| < i < r <= m, 1 < i, satisfying the
// reduction conditions; tuples emitted in lexicographic order.
template <typename Emit>
void for_each_i_tuple(int m, int t, bool allow_zero_j, Emit&& emit) {
    std::vector<IFactor> cur;
    auto rec = [&](auto&& self, int min_r, int more) -> void {
        if (more == 0) {
            emit(cur);
            return;
        }
        for (int r = min_r; r <= m; ++r)
            for (int i = 2; i < r; ++i)
                for (int j = -(i - 1); j <= i - 1; ++j) {
                    if (j == 0 && !allow_zero_j) continue;
                    IFactor f{r, i, j};
                    if (!i_factor_compatible(cur, f)) continue;
                    cur.push_back(f);
                    self(self, r + 1, more - 1);
                    cur.pop_back();
                }
    };
    rec(rec, 3, t);
}

void enum_i_products(int m, int t,
                     std::vector<std::vector<DerivedClass>>& out) {
    for_each_i_tuple(m, t, true, [&](const std::vector<IFactor>& tuple) {
        std::vector<DerivedClass> mono;
        for (const IFactor& f : tuple) mono.push_back(i_factor_class(f));
        out.push_back(std::move(mono));
    });
}

// Monomials of total fiber degree q for the punctured even quotient: an
// optional A[1,0], then D0 factors with strictly increasing levels
// avoiding every I index, then I factors with j != 0 under the usual
// reduction conditions.  Collected over all shapes, then sorted.
void enum_punctured_products(int m, int q,
                             std::vector<std::vector<DerivedClass>>& out) {
    std::vector<std::vector<DerivedClass>> all;
    for (int a = 0; a <= 1 && a <= q; ++a)
        for (int t = 0; a + 2 * t <= q; ++t) {
            const int d0_count = q - a - 2 * t;
            if (d0_count > m - 1) continue;  // levels 2..m, all distinct
            for_each_i_tuple(m, t, false, [&](const std::vector<IFactor>&
                                                  tuple) {
                std::vector<bool> used(m + 1, false);
                for (const IFactor& f : tuple) used[f.i] = used[f.r] = true;
                std::vector<int> levels;
                auto pick = [&](auto&& self, int min_s, int more) -> void {
                    if (more == 0) {
                        std::vector<DerivedClass> mono;
                        if (a) mono.push_back(DerivedClass::a10());
                        for (int s : levels)
                            mono.push_back(DerivedClass::dzero(s));
                        for (const IFactor& f : tuple)
                            mono.push_back(i_factor_class(f));
                        all.push_back(std::move(mono));
                        return;
                    }
                    for (int s = min_s; s <= m; ++s) {
                        if (used[s]) continue;
                        levels.push_back(s);
                        self(self, s + 1, more - 1);
                        levels.pop_back();
                    }
                };
                pick(pick, 2, d0_count);
            });
        }
    std::sort(all.begin(), all.end(),
              [](const std::vector<DerivedClass>& x,
                 const std::vector<DerivedClass>& y) {
                  return flat_key(x) < flat_key(y);
              });
    out = std::move(all);
}

SubgroupSpec canonical_subgroup(InvariantKind kind, int m) {
    const bool punctured = kind == InvariantKind::odd_punctured ||
                           kind == InvariantKind::even_punctured;
    return punctured ? SubgroupSpec::punctured(m) : SubgroupSpec::full(m);
}

}  // namespace

SubgroupSpec SubgroupSpec::full(int m) {
    SubgroupSpec s;
    for (int l = 1; l <= m + 1; ++l) s.generators.insert(l);
    return s;
}

SubgroupSpec SubgroupSpec::punctured(int m) {
    SubgroupSpec s;
    for (int l = 2; l <= m + 1; ++l) s.generators.insert(l);
    return s;
}

const char* invariant_kind_name(InvariantKind kind) {
    switch (kind) {
        case InvariantKind::odd_full:
            return "odd-full";
        case InvariantKind::even_full:
            return "even-full";
        case InvariantKind::odd_punctured:
            return "odd-punctured";
        case InvariantKind::even_punctured:
            return "even-punctured";
    }
    return "?";
}

std::vector<std::string> PredictedBasis::strs() const {
    std::vector<std::string> out;
    for (const std::vector<DerivedClass>& mono : monomials) {
        if (mono.empty()) {
            out.push_back("1");
            continue;
        }
        std::string s;
        for (const DerivedClass& c : mono) {
            if (!s.empty()) s += "*";
            s += c.str();
        }
        out.push_back(s);
    }
    return out;
}

std::vector<Element> invariant_basis(const Presentation& p,
                                     const SubgroupSpec& sub, int d) {
    check_setup(p, sub);
    const std::vector<Monomial> basis = p.basis_of_degree(d);
    if (basis.empty()) return {};

    std::vector<Element> monos;
    for (const Monomial& mono : basis) {
        Element e;
        e.add_term(mono, Scalar::one(p.prime()));
        monos.push_back(e);
    }
    if (sub.generators.empty()) return monos;

    const Matrix id = Matrix::identity(basis.size(), p.prime());
    Matrix stacked(0, basis.size(), p.prime());
    for (int l : sub.generators)
        stacked.append_rows(action_matrix(p, l, d) - id);

    std::vector<Element> out;
    for (const std::vector<Scalar>& v : kernel_basis(stacked)) {
        Element e;
        for (std::size_t c = 0; c < v.size(); ++c)
            if (!v[c].is_zero()) e.add_term(basis[c], v[c]);
        out.push_back(e);
    }
    return out;
}

std::vector<Element> kernel_invariant_basis(const Presentation& p,
                                            const SubgroupSpec& sub, int q) {
    check_setup(p, sub);
    const int d = q * p.generator_degree();
    const std::vector<std::vector<DerivedClass>> kmons =
        shifted_monomial_basis(p.points(), q);
    if (kmons.empty()) return {};

    std::vector<Element> kelems;
    for (const auto& mono : kmons) kelems.push_back(product_element(p, mono));
    if (sub.generators.empty()) return kelems;

    // Coordinates of the shifted monomials, then the usual stacked
    // fixed-point conditions restricted to their span.
    const std::vector<Monomial> basis = p.basis_of_degree(d);
    Matrix kmat(basis.size(), kmons.size(), p.prime());
    for (std::size_t c = 0; c < kelems.size(); ++c) {
        std::vector<Scalar> coords = coordinate_vector(p, kelems[c], basis);
        for (std::size_t r = 0; r < coords.size(); ++r)
            if (!coords[r].is_zero()) kmat.set(r, c, coords[r]);
    }

    const Matrix id = Matrix::identity(basis.size(), p.prime());
    Matrix stacked(0, kmons.size(), p.prime());
    for (int l : sub.generators)
        stacked.append_rows((action_matrix(p, l, d) - id) * kmat);

    std::vector<Element> out;
    for (const std::vector<Scalar>& v : kernel_basis(stacked)) {
        Element e;
        for (std::size_t c = 0; c < v.size(); ++c) {
            if (v[c].is_zero()) continue;
            Element term = kelems[c];
            term.scale(v[c]);
            e += term;
        }
        out.push_back(e);
    }
    return out;
}

PredictedBasis predicted_invariant_basis(InvariantKind kind, int n, int m,
                                         int d) {
    need(n >= 2, "the sphere dimension must be at least 2");
    need(m >= 1, "need at least one point");
    need((n % 2 == 0) == even_kind(kind),
         "kind parity does not match the dimension");

    PredictedBasis out;
    out.kind = kind;
    out.degree = d;
    const int gd = n - 1;
    if (d < 0 || d % gd != 0 || d / gd > m) return out;
    const int q = d / gd;

    switch (kind) {
        case InvariantKind::odd_full:
        case InvariantKind::odd_punctured:
            enum_cplus_products(m, q, out.monomials);
            break;
        case InvariantKind::even_full:
            if (q % 2 == 0) enum_i_products(m, q / 2, out.monomials);
            break;
        case InvariantKind::even_punctured:
            enum_punctured_products(m, q, out.monomials);
            break;
    }
    return out;
}

std::vector<unsigned long long> InvariantMatchReport::poincare() const {
    std::vector<unsigned long long> dims;
    for (const DegreeComparison& dc : degrees) dims.push_back(dc.computed_dim);
    return dims;
}

std::string InvariantMatchReport::str() const {
    std::ostringstream os;
    os << invariant_kind_name(kind) << "  " << (ok ? "ok" : "FAIL") << "\n";
    for (const DegreeComparison& dc : degrees) {
        os << "  degree " << dc.degree << "  computed " << dc.computed_dim
           << "  predicted " << dc.predicted_dim;
        if (!dc.match) os << "  MISMATCH";
        os << "\n";
    }
    return os.str();
}

std::string InvariantMatchReport::json_str() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const DegreeComparison& dc : degrees) {
        nlohmann::ordered_json rec;
        rec["degree"] = dc.degree;
        rec["computed_dim"] = dc.computed_dim;
        rec["predicted_dim"] = dc.predicted_dim;
        rec["match"] = dc.match;
        rec["witnesses"] = dc.witnesses;
        arr.push_back(std::move(rec));
    }
    return arr.dump();
}

InvariantMatchReport invariants_match_prediction(const Presentation& p,
                                                 const SubgroupSpec& sub,
                                                 InvariantKind kind) {
    check_setup(p, sub);
    need(p.odd_n() != even_kind(kind),
         "kind parity does not match the dimension");

    InvariantMatchReport rep;
    rep.kind = kind;
    const int m = p.points();
    const int gd = p.generator_degree();

    for (int q = 0; q <= m; ++q) {
        const int d = q * gd;
        const std::vector<Element> computed =
            kind == InvariantKind::even_full
                ? kernel_invariant_basis(p, sub, q)
                : invariant_basis(p, sub, d);
        const PredictedBasis pred =
            predicted_invariant_basis(kind, p.n(), m, d);

        std::vector<Element> predicted;
        for (const auto& mono : pred.monomials)
            predicted.push_back(product_element(p, mono));

        DegreeComparison dc;
        dc.degree = d;
        dc.computed_dim = computed.size();
        dc.predicted_dim = predicted.size();
        dc.witnesses = pred.strs();

        // equal dimension + predicted contained in the computed span +
        // predicted independent  =>  equal spans
        const std::vector<Monomial> basis = p.basis_of_degree(d);
        Matrix crows = element_rows(p, computed, basis);
        const Matrix prows = element_rows(p, predicted, basis);
        const std::size_t computed_rank = rank(crows);
        crows.append_rows(prows);
        const bool contained = rank(crows) == computed_rank;
        const bool independent = rank(prows) == predicted.size();
        dc.match = dc.computed_dim == dc.predicted_dim && contained &&
                   independent;

        rep.ok = rep.ok && dc.match;
        rep.degrees.push_back(std::move(dc));
    }
    return rep;
}

std::string PresentationCheckReport::str() const {
    std::ostringstream os;
    os << invariant_kind_name(kind) << "  " << (ok ? "ok" : "FAIL") << "\n";
    for (const IdentityReport& r : relations) {
        os << (r.ok ? "  ok    " : "  FAIL  ") << r.name << "  [" << r.cases
           << "]";
        if (!r.ok) os << "  first failure at " << r.failure;
        os << "\n";
    }
    auto dims_line = [&](const char* label,
                         const std::vector<unsigned long long>& dims) {
        os << "  " << label;
        for (unsigned long long v : dims) os << " " << v;
        os << "\n";
    };
    dims_line("invariant dims:", invariant_dims);
    dims_line("reference dims:", reference_dims);
    os << "  dims " << (dims_match ? "match" : "MISMATCH") << "\n";
    return os.str();
}

PresentationCheckReport invariant_presentation_check(InvariantKind kind, int n,
                                                     int m,
                                                     std::uint32_t prime) {
    need((n % 2 == 0) == even_kind(kind),
         "kind parity does not match the dimension");
    const Presentation p = Presentation::orbit_ring(n, m, prime);
    need(p.prime() != 2, "invariants need 2 invertible in the coefficients");
    const SubgroupSpec sub = canonical_subgroup(kind, m);
    const int gd = p.generator_degree();

    PresentationCheckReport rep;
    rep.kind = kind;

    if (!even_kind(kind)) {
        IdentityReport sq{"C+[i,j]^2 = 0", 0, true, ""};
        IdentityReport tri{"C+[r,i]*C+[r,j] = C+[i,j]*(C+[r,i] - C+[r,j])", 0,
                           true, ""};
        auto cp = [&](int i, int j) {
            return derived_class_element(p, DerivedClass::cplus(i, j));
        };
        for (int i = 2; i <= m; ++i)
            for (int j = 1; j < i; ++j) {
                ++sq.cases;
                if (!p.multiply(cp(i, j), cp(i, j)).is_zero() && sq.ok) {
                    sq.ok = false;
                    sq.failure = DerivedClass::cplus(i, j).str();
                }
            }
        for (int r = 3; r <= m; ++r)
            for (int i = 2; i < r; ++i)
                for (int j = 1; j < i; ++j) {
                    ++tri.cases;
                    const Element lhs = p.multiply(cp(r, i), cp(r, j));
                    const Element rhs =
                        p.multiply(cp(i, j), cp(r, i) - cp(r, j));
                    if (lhs != rhs && tri.ok) {
                        tri.ok = false;
                        std::ostringstream os;
                        os << "(" << r << "," << i << "," << j << ")";
                        tri.failure = os.str();
                    }
                }

        // the relations present the invariants as the pure braid ring;
        // the ordered products must therefore stay independent
        IdentityReport ind{"ordered C+ products are independent", 0, true, ""};
        for (int q = 0; q <= m; ++q) {
            const PredictedBasis pred =
                predicted_invariant_basis(kind, n, m, q * gd);
            std::vector<Element> els;
            for (const auto& mono : pred.monomials)
                els.push_back(product_element(p, mono));
            ind.cases += els.size();
            const Matrix rows =
                element_rows(p, els, p.basis_of_degree(q * gd));
            if (rank(rows) != els.size() && ind.ok) {
                ind.ok = false;
                std::ostringstream os;
                os << "degree " << q * gd;
                ind.failure = os.str();
            }
        }
        rep.relations = {sq, tri, ind};

        for (int q = 0; q <= m; ++q)
            rep.invariant_dims.push_back(
                invariant_basis(p, sub, q * gd).size());
        rep.reference_dims =
            Presentation::arnold_ring(n, m, prime).poincare_polynomial();
        rep.reference_dims.resize(m + 1, 0);
    } else {
        if (kind == InvariantKind::even_punctured) {
            IdentityReport a2{"A[1,0]^2 = 0", 1, true, ""};
            const Element a10 =
                derived_class_element(p, DerivedClass::a10());
            if (!p.multiply(a10, a10).is_zero()) {
                a2.ok = false;
                a2.failure = "A[1,0]";
            }
            IdentityReport d2{"D0[s]^2 = 0", 0, true, ""};
            for (int s = 2; s <= m; ++s) {
                ++d2.cases;
                const Element d0 =
                    derived_class_element(p, DerivedClass::dzero(s));
                if (!p.multiply(d0, d0).is_zero() && d2.ok) {
                    d2.ok = false;
                    d2.failure = DerivedClass::dzero(s).str();
                }
            }
            rep.relations = {a2, d2};
            const TableReport id0 = verify_relation_tables(p,
                                                           RelationTable::ID0);
            rep.relations.insert(rep.relations.end(), id0.identities.begin(),
                                 id0.identities.end());
        }
        const TableReport itab = verify_relation_tables(p, RelationTable::I);
        rep.relations.insert(rep.relations.end(), itab.identities.begin(),
                             itab.identities.end());

        for (int q = 0; q <= m; ++q) {
            if (kind == InvariantKind::even_full)
                rep.invariant_dims.push_back(
                    kernel_invariant_basis(p, sub, q).size());
            else
                rep.invariant_dims.push_back(
                    invariant_basis(p, sub, q * gd).size());
            rep.reference_dims.push_back(
                predicted_invariant_basis(kind, n, m, q * gd)
                    .monomials.size());
        }
    }

    rep.dims_match = rep.invariant_dims == rep.reference_dims;
    rep.ok = rep.dims_match;
    for (const IdentityReport& r : rep.relations) rep.ok = rep.ok && r.ok;
    return rep;
}

}  // namespace confring
