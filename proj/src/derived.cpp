#include "confring/derived.hpp"

#include <initializer_list>
#include <map>
#include <sstream>
#include <utility>

namespace confring {

namespace {

void need(bool ok, const std::string& msg) {
    if (!ok) throw domain_error(msg);
}

std::string bracket(std::initializer_list<int> idx) {
    std::ostringstream os;
    os << '[';
    bool first = true;
    for (int v : idx) {
        if (!first) os << ',';
        os << v;
        first = false;
    }
    os << ']';
    return os.str();
}

}  // namespace

DerivedClass DerivedClass::cplus(int i, int j) {
    return {DerivedKind::Cplus, 0, i, j};
}
DerivedClass DerivedClass::cminus(int i, int j) {
    return {DerivedKind::Cminus, 0, i, j};
}
DerivedClass DerivedClass::czero(int i) { return {DerivedKind::Czero, 0, i, 0}; }
DerivedClass DerivedClass::b(int i, int j) { return {DerivedKind::B, 0, i, j}; }
DerivedClass DerivedClass::dplus(int i, int j) {
    return {DerivedKind::Dplus, 0, i, j};
}
DerivedClass DerivedClass::dminus(int i, int j) {
    return {DerivedKind::Dminus, 0, i, j};
}
DerivedClass DerivedClass::dzero(int i) { return {DerivedKind::Dzero, 0, i, 0}; }
DerivedClass DerivedClass::iplus(int r, int i, int j) {
    return {DerivedKind::Iplus, r, i, j};
}
DerivedClass DerivedClass::iminus(int r, int i, int j) {
    return {DerivedKind::Iminus, r, i, j};
}
DerivedClass DerivedClass::izero(int i, int j) {
    return {DerivedKind::Izero, 0, i, j};
}
DerivedClass DerivedClass::a10() { return {DerivedKind::A10, 0, 1, 0}; }

std::string DerivedClass::str() const {
    switch (kind) {
        case DerivedKind::Cplus: return "C+" + bracket({i, j});
        case DerivedKind::Cminus: return "C-" + bracket({i, j});
        case DerivedKind::Czero: return "C0" + bracket({i});
        case DerivedKind::B: return "B" + bracket({i, j});
        case DerivedKind::Dplus: return "D+" + bracket({i, j});
        case DerivedKind::Dminus: return "D-" + bracket({i, j});
        case DerivedKind::Dzero: return "D0" + bracket({i});
        case DerivedKind::Iplus: return "I+" + bracket({r, i, j});
        case DerivedKind::Iminus: return "I-" + bracket({r, i, j});
        case DerivedKind::Izero: return "I0" + bracket({i, j});
        case DerivedKind::A10: return "A[1,0]";
    }
    return "?";
}

Element derived_class_element(const Presentation& p, const DerivedClass& c) {
    need(p.family() == Family::orbit,
         "derived classes are defined over the orbit ring");
    const int m = p.points();
    auto even_only = [&](const char* name) {
        need(!p.odd_n(), std::string(name) +
                             " classes are built on B[i,j] = A[i,j] - A[1,0] "
                             "and need even n");
    };
    auto bad = [&]() {
        return domain_error("indices out of range in " + c.str());
    };
    // B[1,0] = 0, hence also D0[1] = 0 and I0[i,1] = 0; these degenerate
    // spellings are legal inputs so relation right-hand sides stay total.
    auto b_shift = [&](int i, int j) -> Element {
        if (i == 1 && j == 0) return p.zero();
        return p.gen(i, j) - p.gen(1, 0);
    };
    auto d_zero = [&](int i) -> Element {
        if (i < 1 || i > m) throw bad();
        return b_shift(i, 0);
    };
    auto d_plus = [&](int i, int j) -> Element {
        if (!(0 < j && j < i && i <= m)) throw bad();
        return b_shift(i, j) + b_shift(i, -j) - b_shift(i, 0) - b_shift(j, 0);
    };
    auto d_minus = [&](int i, int j) -> Element {
        if (!(0 < j && j < i && i <= m)) throw bad();
        return b_shift(i, j) - b_shift(i, -j);
    };

    switch (c.kind) {
        case DerivedKind::Czero:
            if (!(0 < c.i && c.i <= m)) throw bad();
            return p.gen(c.i, 0);
        case DerivedKind::Cplus:
            if (!(0 < c.j && c.j < c.i && c.i <= m)) throw bad();
            return p.gen(c.i, c.j) + p.gen(c.i, -c.j) - p.gen(c.i, 0);
        case DerivedKind::Cminus:
            if (!(0 < c.j && c.j < c.i && c.i <= m)) throw bad();
            return p.gen(c.i, -c.j) - p.gen(c.i, c.j) - p.gen(c.j, 0);
        case DerivedKind::B:
            even_only("B");
            if (!(std::abs(c.j) < c.i && c.i <= m)) throw bad();
            return b_shift(c.i, c.j);
        case DerivedKind::Dplus:
            even_only("D+");
            return d_plus(c.i, c.j);
        case DerivedKind::Dminus:
            even_only("D-");
            return d_minus(c.i, c.j);
        case DerivedKind::Dzero:
            even_only("D0");
            return d_zero(c.i);
        case DerivedKind::Iplus:
            even_only("I+");
            if (!(0 < c.j && c.j < c.i && c.i < c.r && c.r <= m)) throw bad();
            return p.multiply(d_plus(c.i, c.j), d_minus(c.r, c.i));
        case DerivedKind::Iminus:
            even_only("I-");
            if (!(0 < c.j && c.j < c.i && c.i < c.r && c.r <= m)) throw bad();
            return p.multiply(d_minus(c.i, c.j), d_minus(c.r, c.j));
        case DerivedKind::Izero:
            even_only("I0");
            if (!(0 < c.j && c.j < c.i && c.i <= m)) throw bad();
            return p.multiply(d_zero(c.j), d_zero(c.i));
        case DerivedKind::A10:
            return p.gen(1, 0);
    }
    throw bad();
}

std::vector<std::pair<Scalar, DerivedClass>> a_in_derived_basis(
    const Presentation& p, int i, int j, DerivedLayer layer) {
    need(p.family() == Family::orbit,
         "derived classes are defined over the orbit ring");
    need(p.prime() != 2,
         "writing A[i,j] in a derived layer halves coefficients; 2 must be "
         "invertible");
    need(p.valid_generator({i, j}),
         "no orbit generator A" + bracket({i, j}));
    const Scalar one = Scalar::one(p.prime());
    const Scalar half = one / Scalar::from_int(2, p.prime());
    const int a = std::abs(j);

    if (layer == DerivedLayer::C) {
        if (j == 0) return {{one, DerivedClass::czero(i)}};
        if (j > 0)
            return {{half, DerivedClass::cplus(i, a)},
                    {-half, DerivedClass::cminus(i, a)},
                    {half, DerivedClass::czero(i)},
                    {-half, DerivedClass::czero(a)}};
        return {{half, DerivedClass::cplus(i, a)},
                {half, DerivedClass::cminus(i, a)},
                {half, DerivedClass::czero(i)},
                {half, DerivedClass::czero(a)}};
    }

    need(!p.odd_n(), "the D layer is built on B[i,j] and needs even n");
    // A[i,j] = B[i,j] + A[1,0], then B in the D basis.
    if (j == 0) {
        if (i == 1) return {{one, DerivedClass::a10()}};
        return {{one, DerivedClass::dzero(i)}, {one, DerivedClass::a10()}};
    }
    const Scalar dminus_half = j > 0 ? half : -half;
    return {{half, DerivedClass::dplus(i, a)},
            {dminus_half, DerivedClass::dminus(i, a)},
            {half, DerivedClass::dzero(i)},
            {half, DerivedClass::dzero(a)},
            {one, DerivedClass::a10()}};
}

namespace {

// Collects per-identity sweep results; element builders are thin wrappers
// over derived_class_element.
class TableSweep {
  public:
    explicit TableSweep(const Presentation& p) : p_(p) {}

    int m() const { return p_.points(); }
    Element z() const { return p_.zero(); }

    Element cp(int i, int j) { return cls(DerivedClass::cplus(i, j)); }
    Element cm(int i, int j) { return cls(DerivedClass::cminus(i, j)); }
    Element c0(int i) { return cls(DerivedClass::czero(i)); }
    Element dp(int i, int j) { return cls(DerivedClass::dplus(i, j)); }
    Element dm(int i, int j) { return cls(DerivedClass::dminus(i, j)); }
    Element d0(int i) { return cls(DerivedClass::dzero(i)); }
    Element ip(int r, int i, int j) { return cls(DerivedClass::iplus(r, i, j)); }
    Element im(int r, int i, int j) {
        return cls(DerivedClass::iminus(r, i, j));
    }
    Element i0(int i, int j) { return cls(DerivedClass::izero(i, j)); }
    // Signed last index: s > 0 is I+[x,y,s], s < 0 is I-[x,y,-s], s = 0 the
    // pair D0[y]*D0[x].
    Element ig(int x, int y, int s) {
        if (s > 0) return ip(x, y, s);
        if (s < 0) return im(x, y, -s);
        return i0(x, y);
    }

    Element mul(const Element& a, const Element& b) { return p_.multiply(a, b); }

    void eq(const std::string& name, const std::string& tuple,
            const Element& lhs, const Element& rhs) {
        IdentityReport& r = entry(name);
        ++r.cases;
        if (r.ok && !(lhs == rhs)) {
            r.ok = false;
            r.failure = tuple;
        }
    }

    TableReport take() {
        TableReport rep;
        rep.identities = std::move(reps_);
        for (const IdentityReport& r : rep.identities) {
            rep.cases += r.cases;
            rep.ok = rep.ok && r.ok;
        }
        return rep;
    }

  private:
    Element cls(const DerivedClass& c) { return derived_class_element(p_, c); }

    IdentityReport& entry(const std::string& name) {
        auto it = index_.find(name);
        if (it == index_.end()) {
            index_.emplace(name, reps_.size());
            reps_.push_back({name, 0, true, ""});
            return reps_.back();
        }
        return reps_[it->second];
    }

    const Presentation& p_;
    std::vector<IdentityReport> reps_;
    std::map<std::string, std::size_t> index_;
};

std::string tup(std::initializer_list<std::pair<const char*, int>> kv) {
    std::ostringstream names, values;
    bool first = true;
    for (const auto& [k, v] : kv) {
        if (!first) {
            names << ',';
            values << ',';
        }
        names << k;
        values << v;
        first = false;
    }
    return "(" + names.str() + ")=(" + values.str() + ")";
}

const char* sgn(int s) { return s > 0 ? "+" : "-"; }

void run_c_table(TableSweep& t) {
    const int m = t.m();
    for (int r = 1; r <= m; ++r)
        for (int i = 1; i < r; ++i) {
            for (int j = 1; j < i; ++j) {
                auto T = tup({{"r", r}, {"i", i}, {"j", j}});
                t.eq("C+[r,i]*C+[r,j]", T, t.mul(t.cp(r, i), t.cp(r, j)),
                     t.mul(t.cp(i, j), t.cp(r, i)) -
                         t.mul(t.cp(i, j), t.cp(r, j)));
                t.eq("C+[r,i]*C-[r,j]", T, t.mul(t.cp(r, i), t.cm(r, j)),
                     -t.mul(t.cm(i, j), t.cm(r, i)) -
                         t.mul(t.cp(i, j), t.cm(r, j)) -
                         t.mul(t.c0(j), t.c0(r)));
                t.eq("C-[r,i]*C+[r,j]", T, t.mul(t.cm(r, i), t.cp(r, j)),
                     t.mul(t.cm(i, j), t.cm(r, j)) +
                         t.mul(t.cp(i, j), t.cm(r, i)) -
                         t.mul(t.c0(i), t.c0(r)));
                t.eq("C-[r,i]*C-[r,j]", T, t.mul(t.cm(r, i), t.cm(r, j)),
                     t.mul(t.cm(i, j), t.cp(r, j)) -
                         t.mul(t.cm(i, j), t.cp(r, i)) +
                         t.mul(t.c0(j), t.c0(i)));
            }
            auto T = tup({{"r", r}, {"i", i}});
            t.eq("C+[r,i]*C0[r]", T, t.mul(t.cp(r, i), t.c0(r)),
                 -t.mul(t.c0(i), t.cm(r, i)));
            t.eq("C-[r,i]*C0[r]", T, t.mul(t.cm(r, i), t.c0(r)),
                 -t.mul(t.c0(i), t.cp(r, i)));
        }
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j < i; ++j) {
            auto T = tup({{"i", i}, {"j", j}});
            t.eq("C+[i,j]^2 = 0", T, t.mul(t.cp(i, j), t.cp(i, j)), t.z());
            t.eq("C-[i,j]^2 = 0", T, t.mul(t.cm(i, j), t.cm(i, j)), t.z());
            t.eq("C+[i,j]*C-[i,j]", T, t.mul(t.cp(i, j), t.cm(i, j)),
                 -t.mul(t.c0(j), t.c0(i)));
        }
        t.eq("C0[i]^2 = 0", tup({{"i", i}}), t.mul(t.c0(i), t.c0(i)), t.z());
    }
}

void run_d_table(TableSweep& t) {
    const int m = t.m();
    for (int r = 1; r <= m; ++r)
        for (int i = 1; i < r; ++i) {
            for (int j = 1; j < i; ++j) {
                auto T = tup({{"r", r}, {"i", i}, {"j", j}});
                t.eq("D+[r,i]*D+[r,j]", T, t.mul(t.dp(r, i), t.dp(r, j)),
                     t.mul(t.dm(i, j), t.dm(r, j)) -
                         t.mul(t.dp(i, j), t.dm(r, i)) -
                         t.mul(t.d0(j), t.d0(i)) + t.mul(t.d0(j), t.d0(r)) -
                         t.mul(t.d0(i), t.d0(r)));
                t.eq("D+[r,i]*D-[r,j]", T, t.mul(t.dp(r, i), t.dm(r, j)),
                     t.mul(t.dm(i, j), t.dp(r, j) - t.dp(r, i)));
                t.eq("D-[r,i]*D+[r,j]", T, t.mul(t.dm(r, i), t.dp(r, j)),
                     t.mul(t.dp(i, j), t.dp(r, j) - t.dp(r, i)));
                t.eq("D-[r,i]*D-[r,j]", T, t.mul(t.dm(r, i), t.dm(r, j)),
                     t.mul(t.dp(i, j), t.dm(r, j)) -
                         t.mul(t.dm(i, j), t.dm(r, i)));
            }
            auto T = tup({{"r", r}, {"i", i}});
            t.eq("D+[r,i]*D0[r]", T, t.mul(t.dp(r, i), t.d0(r)),
                 -t.mul(t.d0(i), t.dp(r, i)));
            t.eq("D-[r,i]*D0[r]", T, t.mul(t.dm(r, i), t.d0(r)),
                 -t.mul(t.d0(i), t.dm(r, i)));
        }
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j < i; ++j) {
            auto T = tup({{"i", i}, {"j", j}});
            t.eq("D+[i,j]^2 = 0", T, t.mul(t.dp(i, j), t.dp(i, j)), t.z());
            t.eq("D-[i,j]^2 = 0", T, t.mul(t.dm(i, j), t.dm(i, j)), t.z());
            t.eq("D+[i,j]*D-[i,j] = 0", T, t.mul(t.dp(i, j), t.dm(i, j)),
                 t.z());
        }
    for (int i = 2; i <= m; ++i)
        t.eq("D0[i]^2 = 0", tup({{"i", i}}), t.mul(t.d0(i), t.d0(i)), t.z());
}

void run_id0_table(TableSweep& t) {
    const int m = t.m();
    for (int r = 1; r <= m; ++r)
        for (int i = 1; i < r; ++i)
            for (int j = 1; j < i; ++j) {
                auto T = tup({{"r", r}, {"i", i}, {"j", j}});
                t.eq("I+[r,i,j]*D0[i]", T, t.mul(t.ip(r, i, j), t.d0(i)),
                     t.mul(t.ip(r, i, j), t.d0(j)));
                t.eq("I+[r,i,j]*D0[r]", T, t.mul(t.ip(r, i, j), t.d0(r)),
                     t.mul(t.ip(r, i, j), t.d0(j)));
                t.eq("I-[r,i,j]*D0[i]", T, t.mul(t.im(r, i, j), t.d0(i)),
                     t.mul(t.im(r, i, j), t.d0(j)));
                t.eq("I-[r,i,j]*D0[r]", T, t.mul(t.im(r, i, j), t.d0(r)),
                     t.mul(t.im(r, i, j), t.d0(j)));
            }
}

// Products I[r,i,j]*I[r,a,b] sharing the leading index.
void run_i_table_same_top(TableSweep& t) {
    const int m = t.m();
    const int signs[2] = {1, -1};
    for (int r = 1; r <= m; ++r) {
        // Four distinct inner indices; the cross pattern is fixed by the
        // position of a and b relative to j.
        for (int i = 1; i < r; ++i)
            for (int j = 1; j < i; ++j)
                for (int a = 1; a < i; ++a)
                    for (int b = 1; b < a; ++b) {
                        if (a == j || a == i || b == j || b == i) continue;
                        auto T = tup({{"r", r},
                                      {"i", i},
                                      {"j", j},
                                      {"a", a},
                                      {"b", b}});
                        if (a < j) {
                            t.eq("I+[r,i,j]*I+[r,a,b], b<a<j", T,
                                 t.mul(t.ip(r, i, j), t.ip(r, a, b)),
                                 t.mul(t.ip(j, a, b), t.im(r, i, a) -
                                                          t.ip(r, i, a) +
                                                          t.ip(r, i, j)) +
                                     t.mul(t.i0(i, b) - t.ip(i, j, a) -
                                               t.i0(i, j) - t.i0(j, b),
                                           t.ip(r, a, b)));
                            t.eq("I-[r,i,j]*I-[r,a,b], b<a<j", T,
                                 t.mul(t.im(r, i, j), t.im(r, a, b)),
                                 t.mul(t.im(j, a, b), t.im(r, i, j)) -
                                     t.mul(t.ip(i, j, b), t.im(r, a, b)));
                            t.eq("I+[r,i,j]*I-[r,a,b], b<a<j", T,
                                 t.mul(t.ip(r, i, j), t.im(r, a, b)),
                                 t.mul(t.im(j, a, b),
                                       t.ip(r, i, j) - t.ip(r, i, b)) +
                                     t.mul(t.im(i, j, b) - t.ip(i, j, b) -
                                               t.i0(j, b) + t.i0(i, b) -
                                               t.i0(i, j),
                                           t.im(r, a, b)));
                            t.eq("I-[r,i,j]*I+[r,a,b], b<a<j", T,
                                 t.mul(t.im(r, i, j), t.ip(r, a, b)),
                                 t.mul(t.ip(j, a, b), t.im(r, i, j)) -
                                     t.mul(t.ip(i, j, a), t.ip(r, a, b)));
                        } else if (b < j) {  // b < j < a
                            t.eq("I+[r,i,j]*I+[r,a,b], b<j<a", T,
                                 t.mul(t.ip(r, i, j), t.ip(r, a, b)),
                                 t.mul(t.im(a, j, b) - t.ip(a, j, b) +
                                           t.i0(a, b) - t.i0(a, j) -
                                           t.i0(j, b),
                                       t.ip(r, i, a) - t.im(r, i, a) -
                                           t.ip(r, i, j)) +
                                     t.mul(t.ip(i, j, b),
                                           t.ip(r, a, j) - t.ip(r, a, b)) +
                                     t.mul(t.i0(i, b) - t.i0(i, j) -
                                               t.i0(j, b),
                                           t.ip(r, a, b)));
                            t.eq("I-[r,i,j]*I-[r,a,b], b<j<a", T,
                                 t.mul(t.im(r, i, j), t.im(r, a, b)),
                                 -t.mul(t.im(a, j, b), t.im(r, i, j)) -
                                     t.mul(t.ip(i, j, b), t.im(r, a, b)));
                            t.eq("I+[r,i,j]*I-[r,a,b], b<j<a", T,
                                 t.mul(t.ip(r, i, j), t.im(r, a, b)),
                                 t.mul(t.im(a, j, b),
                                       t.ip(r, i, b) - t.ip(r, i, j) -
                                           t.im(r, i, b)) +
                                     t.mul(t.i0(i, b) - t.ip(i, j, b) -
                                               t.i0(j, b) - t.i0(i, j),
                                           t.im(r, a, b)));
                            t.eq("I-[r,i,j]*I+[r,a,b], b<j<a", T,
                                 t.mul(t.im(r, i, j), t.ip(r, a, b)),
                                 t.mul(t.ip(i, j, b),
                                       t.ip(r, a, j) - t.ip(r, a, b)) +
                                     t.mul(t.i0(j, b) - t.i0(a, b) +
                                               t.i0(a, j) - t.im(a, j, b) +
                                               t.ip(a, j, b),
                                           t.im(r, i, j)));
                        } else {  // j < b < a
                            t.eq("I+[r,i,j]*I+[r,a,b], j<b<a", T,
                                 t.mul(t.ip(r, i, j), t.ip(r, a, b)),
                                 t.mul(t.ip(a, b, j) - t.im(a, b, j) -
                                           t.i0(a, j) + t.i0(a, b) +
                                           t.i0(b, j),
                                       t.ip(r, i, a) - t.im(r, i, a) -
                                           t.ip(r, i, j)) +
                                     t.mul(t.im(i, b, j),
                                           t.ip(r, a, j) - t.ip(r, a, b)) +
                                     t.mul(t.i0(i, b) - t.i0(i, j) +
                                               t.i0(b, j),
                                           t.ip(r, a, b)));
                            t.eq("I-[r,i,j]*I-[r,a,b], j<b<a", T,
                                 t.mul(t.im(r, i, j), t.im(r, a, b)),
                                 -t.mul(t.im(i, b, j), t.im(r, a, b)) -
                                     t.mul(t.ip(a, b, j), t.im(r, i, j)));
                            t.eq("I+[r,i,j]*I-[r,a,b], j<b<a", T,
                                 t.mul(t.ip(r, i, j), t.im(r, a, b)),
                                 t.mul(t.ip(a, b, j),
                                       t.ip(r, i, b) - t.im(r, i, b) -
                                           t.ip(r, i, j)) +
                                     t.mul(t.i0(b, j) - t.i0(i, j) +
                                               t.i0(i, b) - t.im(i, b, j),
                                           t.im(r, a, b)));
                            t.eq("I-[r,i,j]*I+[r,a,b], j<b<a", T,
                                 t.mul(t.im(r, i, j), t.ip(r, a, b)),
                                 t.mul(t.im(i, b, j),
                                       t.ip(r, a, j) - t.ip(r, a, b)) +
                                     t.mul(t.im(a, b, j) - t.ip(a, b, j) -
                                               t.i0(b, j) + t.i0(a, j) -
                                               t.i0(a, b),
                                           t.im(r, i, j)));
                        }
                    }
        // Three distinct inner indices: every sign combination vanishes.
        for (int i = 1; i < r; ++i)
            for (int j = 1; j < i; ++j) {
                for (int b = 1; b < j; ++b)
                    for (int s1 : signs)
                        for (int s2 : signs) {
                            auto T = tup({{"r", r}, {"i", i}, {"j", j},
                                          {"b", b}});
                            t.eq(std::string("I") + sgn(s1) + "[r,i,j]*I" +
                                     sgn(s2) + "[r,i,b] = 0, b<j",
                                 T,
                                 t.mul(t.ig(r, i, s1 * j), t.ig(r, i, s2 * b)),
                                 t.z());
                            t.eq(std::string("I") + sgn(s1) + "[r,i,j]*I" +
                                     sgn(s2) + "[r,j,b] = 0",
                                 T,
                                 t.mul(t.ig(r, i, s1 * j), t.ig(r, j, s2 * b)),
                                 t.z());
                        }
                for (int a = j + 1; a < i; ++a)
                    for (int s1 : signs)
                        for (int s2 : signs)
                            t.eq(std::string("I") + sgn(s1) + "[r,i,j]*I" +
                                     sgn(s2) + "[r,a,j] = 0",
                                 tup({{"r", r}, {"i", i}, {"j", j}, {"a", a}}),
                                 t.mul(t.ig(r, i, s1 * j), t.ig(r, a, s2 * j)),
                                 t.z());
                for (int s1 : signs)
                    for (int s2 : signs)
                        t.eq(std::string("I") + sgn(s1) + "[r,i,j]*I" +
                                 sgn(s2) + "[r,i,j] = 0",
                             tup({{"r", r}, {"i", i}, {"j", j}}),
                             t.mul(t.ig(r, i, s1 * j), t.ig(r, i, s2 * j)),
                             t.z());
            }
        // First factor of the form D0[i]*D0[r].
        for (int i = 2; i < r; ++i) {
            for (int a = 2; a < r; ++a)
                for (int b = 1; b < a; ++b)
                    for (int s : signs) {
                        if (a == i && b < i) {
                            t.eq(std::string("I0[r,i]*I") + sgn(s) +
                                     "[r,i,b] = 0",
                                 tup({{"r", r}, {"i", i}, {"b", b}}),
                                 t.mul(t.i0(r, i), t.ig(r, i, s * b)), t.z());
                        } else if (b == i) {
                            t.eq(std::string("I0[r,i]*I") + sgn(s) +
                                     "[r,a,i] = 0",
                                 tup({{"r", r}, {"i", i}, {"a", a}}),
                                 t.mul(t.i0(r, i), t.ig(r, a, s * i)), t.z());
                        } else if (a != i) {
                            auto T = tup({{"r", r}, {"i", i}, {"a", a},
                                          {"b", b}});
                            if (i < b) {
                                t.eq(std::string("I0[r,i]*I") + sgn(s) +
                                         "[r,a,b], i<b<a",
                                     T, t.mul(t.i0(r, i), t.ig(r, a, s * b)),
                                     t.mul(t.i0(b, i), t.ig(r, a, s * b)));
                            } else if (i != b) {
                                t.eq(std::string("I0[r,i]*I") + sgn(s) +
                                         "[r,a,b], b<i",
                                     T, t.mul(t.i0(r, i), t.ig(r, a, s * b)),
                                     -t.mul(t.i0(i, b), t.ig(r, a, s * b)));
                            }
                        }
                    }
            for (int a = 2; a <= i; ++a)
                t.eq("I0[r,i]*I0[r,a] = 0",
                     tup({{"r", r}, {"i", i}, {"a", a}}),
                     t.mul(t.i0(r, i), t.i0(r, a)), t.z());
        }
    }
}

// Products I[r,i,j]*I[s,r,b]: the leading index of the first factor is the
// middle index of the second.
void run_i_table_chained_top(TableSweep& t) {
    const int m = t.m();
    const int signs[2] = {1, -1};
    for (int s = 1; s <= m; ++s)
        for (int r = 1; r < s; ++r) {
            for (int i = 1; i < r; ++i)
                for (int j = 1; j < i; ++j) {
                    for (int b = 1; b < r; ++b) {
                        auto T = tup({{"s", s}, {"r", r}, {"i", i}, {"j", j},
                                      {"b", b}});
                        if (i < b) {
                            t.eq("I+[r,i,j]*I+[s,r,b], j<i<b", T,
                                 t.mul(t.ip(r, i, j), t.ip(s, r, b)),
                                 t.mul(t.ip(b, i, j),
                                       t.ip(s, r, b) - t.ip(s, r, i)));
                            t.eq("I-[r,i,j]*I-[s,r,b], j<i<b", T,
                                 t.mul(t.im(r, i, j), t.im(s, r, b)),
                                 t.mul(t.im(b, i, j), t.im(s, r, b)) +
                                     t.mul(t.im(r, i, j), t.ip(s, b, j)));
                            t.eq("I+[r,i,j]*I-[s,r,b], j<i<b", T,
                                 t.mul(t.ip(r, i, j), t.im(s, r, b)),
                                 t.mul(t.ip(b, i, j), t.im(s, r, b)) +
                                     t.mul(t.ip(r, i, j), t.ip(s, b, i)));
                            t.eq("I-[r,i,j]*I+[s,r,b], j<i<b", T,
                                 t.mul(t.im(r, i, j), t.ip(s, r, b)),
                                 t.mul(t.im(b, i, j),
                                       t.ip(s, r, b) - t.ip(s, r, j)));
                        } else if (j < b && b < i) {
                            t.eq("I+[r,i,j]*I+[s,r,b], j<b<i", T,
                                 t.mul(t.ip(r, i, j), t.ip(s, r, b)),
                                 t.mul(t.im(i, b, j) - t.ip(i, b, j) -
                                           t.i0(b, j) + t.i0(i, j) -
                                           t.i0(i, b),
                                       t.ip(s, r, i) - t.ip(s, r, b)));
                            t.eq("I-[r,i,j]*I-[s,r,b], j<b<i", T,
                                 t.mul(t.im(r, i, j), t.im(s, r, b)),
                                 t.mul(t.im(r, i, j), t.ip(s, b, j)) -
                                     t.mul(t.im(i, b, j), t.im(s, r, b)));
                            t.eq("I+[r,i,j]*I-[s,r,b], j<b<i", T,
                                 t.mul(t.ip(r, i, j), t.im(s, r, b)),
                                 t.mul(t.ip(r, i, j) - t.ip(r, i, b),
                                       t.ip(s, b, j)) +
                                     t.mul(t.ip(i, b, j) - t.im(i, b, j) +
                                               t.i0(b, j) - t.i0(i, j) +
                                               t.i0(i, b),
                                           t.im(s, r, b)));
                            t.eq("I-[r,i,j]*I+[s,r,b], j<b<i", T,
                                 t.mul(t.im(r, i, j), t.ip(s, r, b)),
                                 t.mul(t.im(i, b, j),
                                       t.ip(s, r, j) - t.ip(s, r, b)));
                        } else if (b < j) {
                            t.eq("I+[r,i,j]*I+[s,r,b], b<j<i", T,
                                 t.mul(t.ip(r, i, j), t.ip(s, r, b)),
                                 t.mul(t.im(i, j, b) - t.ip(i, j, b) -
                                           t.i0(j, b) + t.i0(i, b) -
                                           t.i0(i, j),
                                       t.ip(s, r, b) - t.ip(s, r, i)));
                            t.eq("I-[r,i,j]*I-[s,r,b], b<j<i", T,
                                 t.mul(t.im(r, i, j), t.im(s, r, b)),
                                 t.mul(t.im(r, i, j), t.im(s, j, b)) -
                                     t.mul(t.ip(i, j, b), t.im(s, r, b)));
                            t.eq("I+[r,i,j]*I-[s,r,b], b<j<i", T,
                                 t.mul(t.ip(r, i, j), t.im(s, r, b)),
                                 t.mul(t.ip(r, i, j) - t.ip(r, i, b),
                                       t.im(s, j, b)) +
                                     t.mul(t.im(i, j, b) - t.ip(i, j, b) -
                                               t.i0(j, b) + t.i0(i, b) -
                                               t.i0(i, j),
                                           t.im(s, r, b)));
                            t.eq("I-[r,i,j]*I+[s,r,b], b<j<i", T,
                                 t.mul(t.im(r, i, j), t.ip(s, r, b)),
                                 t.mul(t.ip(i, j, b),
                                       t.ip(s, r, j) - t.ip(s, r, b)));
                        } else if (b == i) {
                            for (int s1 : signs)
                                for (int s2 : signs)
                                    t.eq(std::string("I") + sgn(s1) +
                                             "[r,i,j]*I" + sgn(s2) +
                                             "[s,r,i] = 0",
                                         T,
                                         t.mul(t.ig(r, i, s1 * j),
                                               t.ig(s, r, s2 * i)),
                                         t.z());
                        } else {  // b == j
                            for (int s1 : signs)
                                for (int s2 : signs)
                                    t.eq(std::string("I") + sgn(s1) +
                                             "[r,i,j]*I" + sgn(s2) +
                                             "[s,r,j] = 0",
                                         T,
                                         t.mul(t.ig(r, i, s1 * j),
                                               t.ig(s, r, s2 * j)),
                                         t.z());
                        }
                    }
                    // Second factor of the form D0[r]*D0[s].
                    t.eq("I+[r,i,j]*I0[s,r]", tup({{"s", s}, {"r", r},
                                                   {"i", i}, {"j", j}}),
                         t.mul(t.ip(r, i, j), t.i0(s, r)),
                         t.mul(t.ip(r, i, j), t.i0(s, j)));
                    t.eq("I-[r,i,j]*I0[s,r]", tup({{"s", s}, {"r", r},
                                                   {"i", i}, {"j", j}}),
                         t.mul(t.im(r, i, j), t.i0(s, r)),
                         t.mul(t.im(r, i, j), t.i0(s, j)));
                }
            // First factor of the form D0[i]*D0[r].
            for (int i = 2; i < r; ++i) {
                for (int b = 1; b < r; ++b)
                    for (int sg : signs) {
                        auto T = tup({{"s", s}, {"r", r}, {"i", i}, {"b", b}});
                        if (i < b) {
                            t.eq(std::string("I0[r,i]*I") + sgn(sg) +
                                     "[s,r,b], i<b",
                                 T, t.mul(t.i0(r, i), t.ig(s, r, sg * b)),
                                 t.mul(t.i0(b, i), t.ig(s, r, sg * b)));
                        } else if (b < i) {
                            t.eq(std::string("I0[r,i]*I") + sgn(sg) +
                                     "[s,r,b], b<i",
                                 T, t.mul(t.i0(r, i), t.ig(s, r, sg * b)),
                                 -t.mul(t.i0(i, b), t.ig(s, r, sg * b)));
                        } else {
                            t.eq(std::string("I0[r,i]*I") + sgn(sg) +
                                     "[s,r,i] = 0",
                                 T, t.mul(t.i0(r, i), t.ig(s, r, sg * i)),
                                 t.z());
                        }
                    }
                t.eq("I0[r,i]*I0[s,r] = 0",
                     tup({{"s", s}, {"r", r}, {"i", i}}),
                     t.mul(t.i0(r, i), t.i0(s, r)), t.z());
            }
        }
}

// Products I[r,i,j]*I[s,i,b]: both factors share the middle index.
void run_i_table_shared_middle(TableSweep& t) {
    const int m = t.m();
    const int signs[2] = {1, -1};
    for (int s = 1; s <= m; ++s)
        for (int r = 1; r < s; ++r)
            for (int i = 1; i < r; ++i) {
                for (int j = 1; j < i; ++j)
                    for (int b = 1; b < i; ++b) {
                        auto T = tup({{"s", s}, {"r", r}, {"i", i}, {"j", j},
                                      {"b", b}});
                        if (j < b) {
                            t.eq("I+[r,i,j]*I+[s,i,b], j<b", T,
                                 t.mul(t.ip(r, i, j), t.ip(s, i, b)),
                                 t.mul(t.im(i, b, j) - t.i0(b, j) +
                                           t.i0(i, j) - t.i0(i, b) -
                                           t.ip(i, b, j),
                                       t.im(s, r, i)));
                            t.eq("I-[r,i,j]*I-[s,i,b], j<b", T,
                                 t.mul(t.im(r, i, j), t.im(s, i, b)),
                                 t.mul(t.im(r, b, j), t.im(s, i, b)) +
                                     t.mul(t.im(r, i, j), t.ip(s, b, j)));
                            t.eq("I+[r,i,j]*I-[s,i,b], j<b", T,
                                 t.mul(t.ip(r, i, j), t.im(s, i, b)),
                                 t.mul(t.ip(r, i, j) - t.ip(r, i, b),
                                       t.ip(s, b, j)));
                            t.eq("I-[r,i,j]*I+[s,i,b], j<b", T,
                                 t.mul(t.im(r, i, j), t.ip(s, i, b)),
                                 t.mul(t.im(r, b, j),
                                       t.ip(s, i, b) - t.ip(s, i, j)));
                        } else if (b < j) {
                            t.eq("I+[r,i,j]*I+[s,i,b], b<j", T,
                                 t.mul(t.ip(r, i, j), t.ip(s, i, b)),
                                 t.mul(t.ip(i, j, b) - t.im(i, j, b) +
                                           t.i0(j, b) - t.i0(i, b) +
                                           t.i0(i, j),
                                       t.im(s, r, i)));
                            t.eq("I-[r,i,j]*I-[s,i,b], b<j", T,
                                 t.mul(t.im(r, i, j), t.im(s, i, b)),
                                 t.mul(t.im(r, i, j), t.im(s, j, b)) +
                                     t.mul(t.ip(r, j, b), t.im(s, i, b)));
                            t.eq("I+[r,i,j]*I-[s,i,b], b<j", T,
                                 t.mul(t.ip(r, i, j), t.im(s, i, b)),
                                 t.mul(t.ip(r, i, j) - t.ip(r, i, b),
                                       t.im(s, j, b)));
                            t.eq("I-[r,i,j]*I+[s,i,b], b<j", T,
                                 t.mul(t.im(r, i, j), t.ip(s, i, b)),
                                 t.mul(t.ip(r, j, b),
                                       t.ip(s, i, b) - t.ip(s, i, j)));
                        } else {  // b == j
                            for (int s1 : signs)
                                for (int s2 : signs)
                                    t.eq(std::string("I") + sgn(s1) +
                                             "[r,i,j]*I" + sgn(s2) +
                                             "[s,i,j] = 0",
                                         T,
                                         t.mul(t.ig(r, i, s1 * j),
                                               t.ig(s, i, s2 * j)),
                                         t.z());
                        }
                    }
                // One factor of the form D0*D0.
                if (i >= 2) {
                    for (int b = 1; b < i; ++b)
                        for (int sg : signs)
                            t.eq(std::string("I0[r,i]*I") + sgn(sg) +
                                     "[s,i,b]",
                                 tup({{"s", s}, {"r", r}, {"i", i}, {"b", b}}),
                                 t.mul(t.i0(r, i), t.ig(s, i, sg * b)),
                                 t.mul(t.i0(r, b), t.ig(s, i, sg * b)));
                    for (int j = 1; j < i; ++j)
                        for (int sg : signs)
                            t.eq(std::string("I") + sgn(sg) +
                                     "[r,i,j]*I0[s,i]",
                                 tup({{"s", s}, {"r", r}, {"i", i}, {"j", j}}),
                                 t.mul(t.ig(r, i, sg * j), t.i0(s, i)),
                                 t.mul(t.ig(r, i, sg * j), t.i0(s, j)));
                    t.eq("I0[r,i]*I0[s,i] = 0",
                         tup({{"s", s}, {"r", r}, {"i", i}}),
                         t.mul(t.i0(r, i), t.i0(s, i)), t.z());
                }
            }
}

// Products rebracketing the same four D factors two ways.
void run_i_table_rebracket(TableSweep& t) {
    const int m = t.m();
    for (int r = 1; r <= m; ++r)
        for (int i = 1; i < r; ++i)
            for (int s = 1; s < i; ++s)
                for (int tt = 1; tt < s; ++tt) {
                    for (int j = 0; j < tt; ++j) {
                        auto T = tup({{"r", r}, {"i", i}, {"s", s}, {"t", tt},
                                      {"j", j}});
                        t.eq("I-[i,s,j]*I-[r,t,j]", T,
                             t.mul(t.ig(i, s, -j), t.ig(r, tt, -j)),
                             t.mul(t.ig(s, tt, -j), t.ig(r, i, -j)));
                        t.eq("I-[i,t,j]*I-[r,s,j]", T,
                             t.mul(t.ig(i, tt, -j), t.ig(r, s, -j)),
                             -t.mul(t.ig(s, tt, -j), t.ig(r, i, -j)));
                    }
                    for (int j = 1; j < tt; ++j) {
                        // Here the middle indices chain as j < i' < t' < s'
                        // with I+ on the small pair.
                        auto T = tup({{"r", r}, {"s", i}, {"t", s}, {"i", tt},
                                      {"j", j}});
                        t.eq("I-[s,t,i]*I+[r,i,j]", T,
                             t.mul(t.im(i, s, tt), t.ip(r, tt, j)),
                             t.mul(t.ip(s, tt, j), t.im(r, i, tt)));
                        t.eq("I+[s,i,j]*I-[r,t,i]", T,
                             t.mul(t.ip(i, tt, j), t.im(r, s, tt)),
                             -t.mul(t.ip(s, tt, j), t.im(r, i, tt)));
                    }
                }
}

}  // namespace

std::string TableReport::str() const {
    std::ostringstream os;
    os << (ok ? "ok" : "FAIL") << " (" << cases << " cases, "
       << identities.size() << " identities)\n";
    for (const IdentityReport& r : identities) {
        os << (r.ok ? "  ok    " : "  FAIL  ") << r.name << "  [" << r.cases
           << "]";
        if (!r.ok) os << "  first failure at " << r.failure;
        os << "\n";
    }
    return os.str();
}

TableReport verify_relation_tables(const Presentation& p,
                                   RelationTable table) {
    need(p.family() == Family::orbit,
         "relation tables are stated for the orbit ring");
    if (table == RelationTable::C)
        need(p.odd_n(), "the C table holds for odd n");
    else
        need(!p.odd_n(), "the D, I and ID0 tables hold for even n");

    TableSweep t(p);
    switch (table) {
        case RelationTable::C:
            run_c_table(t);
            break;
        case RelationTable::D:
            run_d_table(t);
            break;
        case RelationTable::ID0:
            run_id0_table(t);
            break;
        case RelationTable::I:
            run_i_table_same_top(t);
            run_i_table_chained_top(t);
            run_i_table_shared_middle(t);
            run_i_table_rebracket(t);
            break;
    }
    return t.take();
}

std::vector<std::vector<DerivedClass>> shifted_monomial_basis(int m, int q) {
    need(m >= 1 && q >= 0, "need at least one point and a nonnegative count");
    std::vector<std::vector<DerivedClass>> out;
    std::vector<DerivedClass> current;
    auto rec = [&](auto&& self, int level, int more) -> void {
        if (more == 0) {
            out.push_back(current);
            return;
        }
        if (level > m || m - level + 1 < more) return;
        for (int j = -(level - 1); j <= level - 1; ++j) {
            current.push_back(DerivedClass::b(level, j));
            self(self, level + 1, more - 1);
            current.pop_back();
        }
        self(self, level + 1, more);
    };
    rec(rec, 2, q);
    return out;
}

TokenResolver derived_resolver(const Presentation& p) {
    TokenResolver plain = plain_resolver(p);
    return [p, plain](const GenToken& tok) -> Element {
        if (tok.kind == "A" || tok.kind == "A'") return plain(tok);
        auto want = [&](std::size_t count) {
            if (tok.idx.size() != count)
                throw domain_error(tok.kind + " takes " +
                                   std::to_string(count) +
                                   (count == 1 ? " index" : " indices"));
        };
        auto at = [&](std::size_t k) { return tok.idx[k]; };
        DerivedClass c;
        if (tok.kind == "C+") {
            want(2);
            c = DerivedClass::cplus(at(0), at(1));
        } else if (tok.kind == "C-") {
            want(2);
            c = DerivedClass::cminus(at(0), at(1));
        } else if (tok.kind == "C0") {
            want(1);
            c = DerivedClass::czero(at(0));
        } else if (tok.kind == "B") {
            want(2);
            c = DerivedClass::b(at(0), at(1));
        } else if (tok.kind == "D+") {
            want(2);
            c = DerivedClass::dplus(at(0), at(1));
        } else if (tok.kind == "D-") {
            want(2);
            c = DerivedClass::dminus(at(0), at(1));
        } else if (tok.kind == "D0") {
            want(1);
            c = DerivedClass::dzero(at(0));
        } else if (tok.kind == "I+") {
            want(3);
            c = DerivedClass::iplus(at(0), at(1), at(2));
        } else if (tok.kind == "I-") {
            want(3);
            c = DerivedClass::iminus(at(0), at(1), at(2));
        } else if (tok.kind == "I0") {
            want(2);
            c = DerivedClass::izero(at(0), at(1));
        } else {
            throw domain_error("unknown generator token " + tok.kind);
        }
        return derived_class_element(p, c);
    };
}

}  // namespace confring
