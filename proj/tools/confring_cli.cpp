// Command-line front end: one binary, subcommand per computation, table or
// JSON output on stdout, errors on stderr.
//
// Exit codes (stable contract):
//   0  success
//   1  a verification check failed
//   2  bad usage or parameters, including expression parse errors
//   3  a search ran out of its configured budget

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "confring/action.hpp"
#include "confring/assembly.hpp"
#include "confring/derived.hpp"
#include "confring/invariants.hpp"
#include "confring/lscat.hpp"
#include "confring/parse.hpp"
#include "confring/ring.hpp"

namespace {

using namespace confring;

// Options shared by several subcommands; defaults per the CLI contract.
struct Common {
    std::string coeff = "q";
    std::string format = "table";
    std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--coeff", c.coeff,
                    "coefficients: q, f2, f3, f5, f7 (any fp), or z")
        ->capture_default_str();
    cmd->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"table", "json"}))
        ->capture_default_str();
}

// Point-count option under both spellings; the table spaces say k, the
// fiber rings say m, and they mean the same number here.
CLI::Option* add_count(CLI::App* cmd, int& count, const char* what) {
    return cmd->add_option("--m,--k", count, what);
}

Coeff parse_coeff(const std::string& s) {
    if (s == "q") return Coeff::rationals();
    if (s == "z") return Coeff::integers();
    if (s.size() >= 2 && s[0] == 'f' &&
        s.find_first_not_of("0123456789", 1) == std::string::npos)
        return Coeff::mod(static_cast<std::uint32_t>(std::stoul(s.substr(1))));
    throw domain_error("unknown coefficient mode '" + s +
                       "' (expected q, f2, f3, f5, f7, or z)");
}

bool json_format(const Common& c) { return c.format == "json"; }

// "[1,4,3]"
std::string bracket_list(const std::vector<unsigned long long>& v) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------- betti --

// The fiber rings are free over every coefficient choice (the relations
// are integral with unit leading terms), so their table only depends on
// the closed-form Poincare polynomial.
GradedGroupTable ring_table(const std::string& space, int n, int count,
                            const Coeff& coeff) {
    std::uint32_t p = coeff.is_field() ? coeff.ring_prime() : 0;
    Presentation ring = space == "orbit" ? Presentation::orbit_ring(n, count, p)
                                         : Presentation::arnold_ring(n, count, p);
    std::vector<unsigned long long> dims = ring.poincare_polynomial();
    GradedGroupTable t;
    t.space = space;
    t.n = n;
    t.k = count;
    t.coeff = coeff.name();
    for (std::size_t j = 0; j < dims.size(); ++j)
        if (dims[j])
            t.groups.push_back(
                {static_cast<int>(j) * ring.generator_degree(), dims[j], {}});
    return t;
}

int run_betti(const std::string& space, int n, int count, const Common& c) {
    Coeff coeff = parse_coeff(c.coeff);
    GradedGroupTable t;
    std::vector<unsigned long long> poincare;  // fiber rings only
    if (space == "orbit" || space == "arnold") {
        t = ring_table(space, n, count, coeff);
        poincare.resize(t.groups.empty() ? 0 : t.groups.size());
        for (std::size_t j = 0; j < poincare.size(); ++j)
            poincare[j] = t.groups[j].rank;
    } else if (space == "sphere-orbit") {
        t = sphere_orbit_cohomology(n, count, coeff);
    } else if (space == "rpn") {
        t = projective_cohomology(n, count, coeff).table;
    } else {
        t = punctured_projective_cohomology(n, count, coeff).table;
    }
    if (json_format(c)) {
        std::cout << t.json_str() << "\n";
    } else {
        std::cout << t.str();
        if (!poincare.empty())
            std::cout << "poincare " << bracket_list(poincare) << "\n";
    }
    return 0;
}

// --------------------------------------------------------------- verify --

struct CheckRow {
    std::string suite;
    std::string name;
    std::string status;  // "ok", "FAIL", or "skip"
    unsigned long long cases = 0;
    std::string failure;
};

void relation_rows(const Presentation& ring, std::vector<CheckRow>& rows) {
    auto take = [&](const char* label, RelationTable table) {
        TableReport rep = verify_relation_tables(ring, table);
        for (const IdentityReport& r : rep.identities)
            rows.push_back({"relations", std::string(label) + ": " + r.name,
                            r.ok ? "ok" : "FAIL", r.cases, r.failure});
    };
    if (ring.odd_n()) {
        take("C", RelationTable::C);
    } else {
        take("D", RelationTable::D);
        take("I", RelationTable::I);
        take("ID0", RelationTable::ID0);
    }
}

void action_rows(const Presentation& ring, unsigned samples,
                 std::uint64_t seed, std::vector<CheckRow>& rows) {
    ActionReport rep = verify_action_properties(ring, samples, seed);
    for (const ActionCheck& ch : rep.checks)
        rows.push_back({"action", ch.name,
                        !ch.applicable ? "skip" : (ch.ok ? "ok" : "FAIL"),
                        ch.cases, ch.failure});
}

void invariant_rows(const Presentation& ring, std::vector<CheckRow>& rows) {
    int m = ring.points();
    auto take = [&](InvariantKind kind, const SubgroupSpec& sub) {
        InvariantMatchReport rep = invariants_match_prediction(ring, sub, kind);
        std::string failure;
        for (const DegreeComparison& dc : rep.degrees)
            if (!dc.match) {
                failure = "degree " + std::to_string(dc.degree) + ": computed " +
                          std::to_string(dc.computed_dim) + ", predicted " +
                          std::to_string(dc.predicted_dim);
                break;
            }
        rows.push_back({"invariants", invariant_kind_name(kind),
                        rep.ok ? "ok" : "FAIL", rep.degrees.size(), failure});
    };
    if (ring.odd_n()) {
        take(InvariantKind::odd_full, SubgroupSpec::full(m));
        take(InvariantKind::odd_punctured, SubgroupSpec::punctured(m));
    } else {
        take(InvariantKind::even_full, SubgroupSpec::full(m));
        take(InvariantKind::even_punctured, SubgroupSpec::punctured(m));
    }
}

int run_verify(const std::string& suite, int n, int m, unsigned samples,
               const Common& c) {
    Coeff coeff = parse_coeff(c.coeff);
    Presentation ring = Presentation::orbit_ring(n, m, coeff.ring_prime());
    std::vector<CheckRow> rows;
    if (suite == "relations" || suite == "all") relation_rows(ring, rows);
    if (suite == "action" || suite == "all")
        action_rows(ring, samples, c.seed, rows);
    if (suite == "invariants" || suite == "all") invariant_rows(ring, rows);

    std::size_t failed = 0;
    for (const CheckRow& r : rows) failed += r.status == "FAIL";
    if (json_format(c)) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const CheckRow& r : rows) {
            nlohmann::ordered_json rec;
            rec["suite"] = r.suite;
            rec["name"] = r.name;
            rec["status"] = r.status;
            rec["cases"] = r.cases;
            rec["failure"] = r.failure;
            arr.push_back(std::move(rec));
        }
        std::cout << arr.dump() << "\n";
    } else {
        for (const CheckRow& r : rows) {
            std::cout << "  " << r.status << (r.status.size() == 2 ? "    " : "  ")
                      << r.suite << "  " << r.name << "  [" << r.cases << "]";
            if (!r.failure.empty()) std::cout << "  " << r.failure;
            std::cout << "\n";
        }
        if (failed)
            std::cout << "FAIL (" << failed << " of " << rows.size()
                      << " checks failed)\n";
        else
            std::cout << "pass (" << rows.size() << " checks)\n";
    }
    return failed ? 1 : 0;
}

// ----------------------------------------------------------------- eval --

int run_eval(const std::string& expr, const std::string& space, int n,
             int count, const std::vector<std::string>& times,
             const std::vector<int>& acts, const Common& c) {
    Coeff coeff = parse_coeff(c.coeff);
    Presentation ring = space == "arnold"
                            ? Presentation::arnold_ring(n, count, coeff.ring_prime())
                            : Presentation::orbit_ring(n, count, coeff.ring_prime());
    // The orbit resolver also accepts the derived-class tokens (C/B/D/I).
    TokenResolver resolve = space == "arnold" ? plain_resolver(ring)
                                              : derived_resolver(ring);
    Element e = parse_element(expr, ring, resolve);
    for (const std::string& f : times)
        e = ring.multiply(e, parse_element(f, ring, resolve));
    for (int l : acts) e = epsilon_apply(ring, GroupElement::single(l), e);
    if (json_format(c)) {
        nlohmann::ordered_json o;
        o["result"] = ring.str(e);
        std::cout << o.dump() << "\n";
    } else {
        std::cout << ring.str(e) << "\n";
    }
    return 0;
}

// ----------------------------------------------------------- invariants --

int run_invariants(int n, int m, const std::string& sub_name,
                   bool presentation, const Common& c) {
    Coeff coeff = parse_coeff(c.coeff);
    bool full = sub_name == "full";
    InvariantKind kind =
        n % 2 == 1
            ? (full ? InvariantKind::odd_full : InvariantKind::odd_punctured)
            : (full ? InvariantKind::even_full : InvariantKind::even_punctured);
    if (presentation) {
        PresentationCheckReport rep =
            invariant_presentation_check(kind, n, m, coeff.ring_prime());
        if (json_format(c)) {
            nlohmann::ordered_json o;
            o["kind"] = invariant_kind_name(rep.kind);
            o["ok"] = rep.ok;
            nlohmann::ordered_json rels = nlohmann::ordered_json::array();
            for (const IdentityReport& r : rep.relations) {
                nlohmann::ordered_json rec;
                rec["name"] = r.name;
                rec["cases"] = r.cases;
                rec["ok"] = r.ok;
                rec["failure"] = r.failure;
                rels.push_back(std::move(rec));
            }
            o["relations"] = std::move(rels);
            o["invariant_dims"] = rep.invariant_dims;
            o["reference_dims"] = rep.reference_dims;
            o["dims_match"] = rep.dims_match;
            std::cout << o.dump() << "\n";
        } else {
            std::cout << rep.str();
        }
        return rep.ok ? 0 : 1;
    }
    Presentation ring = Presentation::orbit_ring(n, m, coeff.ring_prime());
    SubgroupSpec sub = full ? SubgroupSpec::full(m) : SubgroupSpec::punctured(m);
    InvariantMatchReport rep = invariants_match_prediction(ring, sub, kind);
    if (json_format(c))
        std::cout << rep.json_str() << "\n";
    else
        std::cout << rep.str();
    return rep.ok ? 0 : 1;
}

// ------------------------------------------------------------------- tc --

int run_tc(int n, int k, int s, const std::string& search,
           std::optional<unsigned long long> budget, const Common& c) {
    TcReport rep;
    if (search == "none") {
        rep = cat_tc_bounds(n, k, s);
    } else {
        Coeff coeff = parse_coeff(c.coeff);
        Presentation ring = Presentation::orbit_ring(n, k, coeff.ring_prime());
        SearchBudget b;
        if (budget) b.max_products = *budget;
        rep = zcl(ring, s,
                  search == "exact" ? ZclMode::exact_small
                                    : ZclMode::witness_search,
                  b);
    }
    if (json_format(c))
        std::cout << rep.json_str() << "\n";
    else
        std::cout << rep.str() << "\n";
    return rep.partial ? 3 : 0;
}

// ------------------------------------------------------------- spectral --

int run_spectral(int n, int k, const Common& c) {
    Coeff coeff = parse_coeff(c.coeff);
    if (!coeff.is_field())
        throw domain_error(
            "spectral sweeps need field coefficients (q, f2, f3, ...)");
    std::uint32_t p = coeff.ring_prime();
    struct Row {
        int q;
        std::size_t source, target, rank, kernel;
    };
    std::vector<Row> sweep;
    for (int t = 0; t < k; ++t) {
        int q = t * (n - 1);
        Matrix d = d_n_matrix(n, k, q, p);
        std::size_t r = rank(d);
        sweep.push_back({q, d.cols(), d.rows(), r, d.cols() - r});
    }
    if (json_format(c)) {
        nlohmann::ordered_json o;
        o["space"] = "sphere-orbit";
        o["n"] = n;
        o["k"] = k;
        o["coeff"] = coeff.name();
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const Row& r : sweep) {
            nlohmann::ordered_json rec;
            rec["fiber_degree"] = r.q;
            rec["source_dim"] = r.source;
            rec["target_dim"] = r.target;
            rec["rank"] = r.rank;
            rec["kernel_dim"] = r.kernel;
            arr.push_back(std::move(rec));
        }
        o["differentials"] = std::move(arr);
        std::cout << o.dump() << "\n";
    } else {
        std::cout << "glueing differential n=" << n << " k=" << k
                  << " coeff=" << coeff.name() << "\n";
        for (const Row& r : sweep)
            std::cout << "  fiber degree " << r.q << "  source " << r.source
                      << " -> target " << r.target << "  rank " << r.rank
                      << "  kernel " << r.kernel << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    // CONFRING_THREADS caps worker parallelism.  Every computation below
    // runs on the calling thread, so any positive cap is already honored;
    // the value is still validated so misconfigurations fail loudly.
    if (const char* env = std::getenv("CONFRING_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1) {
            std::cerr << "error: CONFRING_THREADS must be a positive integer\n";
            return 2;
        }
    }

    CLI::App app{
        "Exact cohomology tables, ring arithmetic, invariants, and cat/TC "
        "bounds for configuration spaces of spheres and real projective "
        "spaces",
        "confring"};
    app.require_subcommand(1);

    Common common;
    std::function<int()> run;

    // betti
    std::string b_space;
    int b_n = 0, b_count = 0;
    CLI::App* betti =
        app.add_subcommand("betti", "graded ranks of one cohomology table");
    betti->add_option("--space", b_space, "which space")
        ->required()
        ->check(CLI::IsMember(
            {"orbit", "arnold", "sphere-orbit", "rpn", "rpn-punctured"}));
    betti->add_option("--n", b_n, "sphere / projective-space dimension")
        ->required();
    add_count(betti, b_count, "number of configuration points")->required();
    add_common(betti, common);
    betti->callback(
        [&] { run = [&] { return run_betti(b_space, b_n, b_count, common); }; });

    // verify
    std::string v_suite;
    int v_n = 0, v_m = 0;
    unsigned v_samples = 100;
    CLI::App* verify = app.add_subcommand(
        "verify", "check the identity tables against the ring arithmetic");
    verify->add_option("--suite", v_suite, "which checks to run")
        ->required()
        ->check(CLI::IsMember({"relations", "action", "invariants", "all"}));
    verify->add_option("--n", v_n, "sphere dimension")->required();
    add_count(verify, v_m, "number of points")->required();
    verify->add_option("--samples", v_samples,
                       "sampled pairs per degree for the action suite")
        ->capture_default_str();
    verify->add_option("--seed", common.seed, "seed for sampled checks")
        ->capture_default_str();
    add_common(verify, common);
    verify->callback([&] {
        run = [&] { return run_verify(v_suite, v_n, v_m, v_samples, common); };
    });

    // eval
    std::string e_expr, e_space = "orbit";
    int e_n = 3, e_count = 2;
    std::vector<std::string> e_times;
    std::vector<int> e_acts;
    CLI::App* eval = app.add_subcommand(
        "eval", "normal form of an expression in one of the rings");
    eval->add_option("expr", e_expr, "element expression, e.g. \"A[2,0]*A[2,1]\"")
        ->required();
    eval->add_option("--space", e_space, "which ring")
        ->check(CLI::IsMember({"orbit", "arnold"}))
        ->capture_default_str();
    eval->add_option("--n", e_n, "sphere dimension")->capture_default_str();
    add_count(eval, e_count, "number of points")->capture_default_str();
    eval->add_option("--times", e_times,
                     "multiply by this expression (repeatable)");
    eval->add_option("--act", e_acts,
                     "apply the reflection generator with this index "
                     "(repeatable, orbit ring only)");
    add_common(eval, common);
    eval->callback([&] {
        run = [&] {
            return run_eval(e_expr, e_space, e_n, e_count, e_times, e_acts,
                            common);
        };
    });

    // invariants
    int i_n = 0, i_m = 0;
    std::string i_sub = "full";
    bool i_presentation = false;
    CLI::App* invariants = app.add_subcommand(
        "invariants",
        "compare computed invariant dimensions with the closed-form bases");
    invariants->add_option("--n", i_n, "sphere dimension")->required();
    add_count(invariants, i_m, "number of points")->required();
    invariants->add_option("--sub", i_sub, "reflection subgroup")
        ->check(CLI::IsMember({"full", "punctured"}))
        ->capture_default_str();
    invariants->add_flag("--presentation", i_presentation,
                         "check the generators-and-relations description "
                         "instead of the degreewise match");
    add_common(invariants, common);
    invariants->callback([&] {
        run = [&] {
            return run_invariants(i_n, i_m, i_sub, i_presentation, common);
        };
    });

    // tc
    int t_n = 0, t_k = 0, t_s = 1;
    std::string t_search = "none";
    std::optional<unsigned long long> t_budget;
    CLI::App* tc = app.add_subcommand(
        "tc", "category / topological-complexity bounds for the orbit space");
    tc->add_option("--n", t_n, "sphere dimension")->required();
    add_count(tc, t_k, "number of points")->required();
    tc->add_option("--s", t_s, "number of motion-planning stages (1 = cat)")
        ->capture_default_str();
    tc->add_option("--search", t_search,
                   "none: closed-form bounds; witness: zero-divisor product "
                   "search; exact: witness search plus exhaustive "
                   "certification")
        ->check(CLI::IsMember({"none", "witness", "exact"}))
        ->capture_default_str();
    tc->add_option("--budget", t_budget,
                   "operation budget for the searches (default 4000000)");
    add_common(tc, common);
    tc->callback([&] {
        run = [&] { return run_tc(t_n, t_k, t_s, t_search, t_budget, common); };
    });

    // spectral
    int s_n = 0, s_k = 0;
    CLI::App* spectral = app.add_subcommand(
        "spectral",
        "rank/kernel sweep of the even-sphere glueing differential");
    spectral->add_option("--n", s_n, "sphere dimension (even)")->required();
    add_count(spectral, s_k, "number of points")->required();
    add_common(spectral, common);
    spectral->callback(
        [&] { run = [&] { return run_spectral(s_n, s_k, common); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints help or the usage error
        return code == 0 ? 0 : 2;
    }

    try {
        return run();
    } catch (const budget_error& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
