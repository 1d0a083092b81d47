#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>

#include <sys/wait.h>

// End-to-end tests against the installed binary (path injected by the
// build).  Each case spawns the CLI through the shell, captures stdout
// and stderr merged, and checks bytes and exit codes.

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
    std::string cmd = env + (env.empty() ? "" : " ") + CONFRING_CLI_PATH + " " +
                      args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        out.append(buf.data(), got);
    int status = pclose(pipe);
    RunResult r;
    r.out = std::move(out);
    if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

std::size_t count_of(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t at = hay.find(needle); at != std::string::npos;
         at = hay.find(needle, at + needle.size()))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("betti prints graded ranks and Poincare coefficients") {
    RunResult r = run_cli("betti --space orbit --n 3 --m 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "orbit n=3 k=2 coeff=Q\n"
          "  degree 0  rank 1\n"
          "  degree 2  rank 4\n"
          "  degree 4  rank 3\n"
          "poincare [1,4,3]\n");

    // --k is the same option under the other spelling
    r = run_cli("betti --space arnold --n 3 --k 3");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "arnold n=3 k=3 coeff=Q"));
    CHECK(contains(r.out, "poincare [1,3,2]"));

    r = run_cli("betti --space rpn --n 3 --k 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "rpn n=3 k=3 coeff=Q\n"
          "  degree 0  rank 1\n"
          "  degree 2  rank 1\n"
          "  degree 3  rank 1\n"
          "  degree 5  rank 1\n");

    r = run_cli("betti --space rpn-punctured --n 2 --k 2");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "  degree 0  rank 1\n"
                          "  degree 1  rank 2\n"
                          "  degree 2  rank 1\n"));

    r = run_cli("betti --space sphere-orbit --n 3 --k 2");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "  degree 5  rank 1\n"));
}

TEST_CASE("coefficient guards and labels") {
    // projective tables need 2 invertible: F2 and Z are parameter errors
    RunResult r = run_cli("betti --space rpn --n 3 --k 3 --coeff f2");
    CHECK(r.exit_code == 2);
    CHECK(contains(r.out, "2 invertible"));
    CHECK(run_cli("betti --space rpn --n 3 --k 3 --coeff z").exit_code == 2);
    CHECK(run_cli("betti --space rpn-punctured --n 3 --k 2 --coeff z")
              .exit_code == 2);

    // even-sphere tables reject characteristic 2 only
    CHECK(run_cli("betti --space sphere-orbit --n 4 --k 3 --coeff f2")
              .exit_code == 2);
    r = run_cli("betti --space sphere-orbit --n 4 --k 3 --coeff z");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "  degree 7  rank 1  torsion Z/2 x3\n"));

    // the free fiber rings take any mode, and the label follows the flag
    r = run_cli("betti --space orbit --n 3 --m 2 --coeff f5");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "coeff=F5"));
    CHECK(contains(r.out, "poincare [1,4,3]"));
    CHECK(contains(run_cli("betti --space orbit --n 3 --m 2 --coeff z").out,
                   "coeff=Z"));

    // bad modes are usage errors, with the reason spelled out
    r = run_cli("betti --space orbit --n 3 --m 2 --coeff f9");
    CHECK(r.exit_code == 2);
    CHECK(contains(r.out, "prime"));
    r = run_cli("betti --space orbit --n 3 --m 2 --coeff w");
    CHECK(r.exit_code == 2);
    CHECK(contains(r.out, "unknown coefficient mode"));
}

TEST_CASE("verify suites pass on the published configurations") {
    RunResult r = run_cli("verify --suite relations --n 4 --m 6");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "  ok    relations  D: "));
    CHECK(contains(r.out, "  ok    relations  ID0: "));
    CHECK(contains(r.out, "\npass ("));
    CHECK(count_of(r.out, "FAIL") == 0);

    r = run_cli("verify --suite action --n 3 --m 3");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "  ok    action  involution"));
    // even-only checks sit out on odd n
    CHECK(contains(r.out, "  skip  action  shifted-class-action-even"));
    CHECK(contains(r.out, "\npass ("));

    r = run_cli("verify --suite all --n 2 --m 2");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "relations"));
    CHECK(contains(r.out, "action"));
    CHECK(contains(r.out, "invariants"));
    CHECK(contains(r.out, "\npass ("));

    // machine-readable form
    r = run_cli("verify --suite invariants --n 2 --m 2 --format json");
    CHECK(r.exit_code == 0);
    auto arr = nlohmann::json::parse(r.out);
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 2);
    CHECK(arr[0]["suite"] == "invariants");
    CHECK(arr[0]["name"] == "even-full");
    CHECK(arr[0]["status"] == "ok");
    CHECK(arr[1]["name"] == "even-punctured");
    for (const auto& rec : arr) CHECK(rec["failure"] == "");
}

TEST_CASE("eval prints normal forms") {
    RunResult r = run_cli("eval 'A[2,0]*A[2,1]' --n 3 --m 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "-A[1,0]*A[2,0] + A[1,0]*A[2,1]\n");

    r = run_cli("eval 'A[1,0]' --act 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "-A[1,0]\n");

    r = run_cli("eval '1'");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "1\n");

    // --times multiplies, --act applies a reflection afterwards
    r = run_cli("eval 'A[1,0]' --times 'A[2,1]'");
    CHECK(r.out == "A[1,0]*A[2,1]\n");
    r = run_cli("eval 'A[1,0]' --times 'A[2,1]' --act 2");
    CHECK(r.out == "-A[1,0]*A[2,-1]\n");

    // derived-class tokens resolve in the orbit ring
    r = run_cli("eval 'C+[2,1]' --n 3 --m 2");
    CHECK(r.out == "-A[2,0] + A[2,1] + A[2,-1]\n");

    // arnold ring under its own generators
    r = run_cli("eval \"A'[2,1]*A'[2,1]\" --space arnold --n 3 --k 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "0\n");

    r = run_cli("eval 'A[2,0]*A[2,1]' --n 3 --m 2 --format json");
    CHECK(r.out ==
          "{\"result\":\"-A[1,0]*A[2,0] + A[1,0]*A[2,1]\"}\n");

    // parse errors carry the 1-based position and exit 2
    r = run_cli("eval 'A[5'");
    CHECK(r.exit_code == 2);
    CHECK(contains(r.out, "position"));
    // out-of-range generator for the (default) two-point ring
    CHECK(run_cli("eval 'A[3,0]'").exit_code == 2);
    // reflections act on the orbit ring only
    CHECK(run_cli("eval \"A'[2,1]\" --space arnold --act 1").exit_code == 2);
}

TEST_CASE("tc bounds match the published values") {
    RunResult r = run_cli("tc --n 5 --k 3 --s 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "cat(orbit n=5 m=3) = 3\n");

    r = run_cli("tc --n 3 --k 2 --s 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "TC_2(orbit n=3 m=2) = 4\n");

    r = run_cli("tc --n 2 --k 2 --s 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "TC_2(orbit n=2 m=2) in [3, 4]\n");

    // the witness search certifies the same value at (3,2,2) by hitting
    // the degree cap
    r = run_cli("tc --n 3 --k 2 --s 2 --search witness");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "TC_2(orbit n=3 m=2) = 4"));
    CHECK(count_of(r.out, " [A") == 4);

    // exhaustive certification settles the even open case at 3
    r = run_cli("tc --n 2 --k 2 --s 2 --search exact");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "TC_2(orbit n=2 m=2) = 3"));

    r = run_cli("tc --n 3 --k 2 --s 2 --format json");
    CHECK(r.out ==
          "{\"space\":\"orbit n=3 m=2\",\"s\":2,\"lower\":4,\"upper\":4,"
          "\"exact\":4,\"witness\":[]}\n");
}

TEST_CASE("tc budget exhaustion exits 3") {
    // hard configuration budget: the tensor power is too large outright
    RunResult r = run_cli("tc --n 3 --k 3 --s 3 --search witness");
    CHECK(r.exit_code == 3);
    CHECK(contains(r.out, "budget exhausted"));

    // soft budget: the search starts but runs out mid-sweep and reports
    // the partial interval
    r = run_cli("tc --n 2 --k 2 --s 2 --search witness --budget 3");
    CHECK(r.exit_code == 3);
    CHECK(contains(r.out, "partial: search budget exhausted"));
    CHECK(contains(r.out, "in ["));
}

TEST_CASE("spectral sweeps the glueing differential") {
    RunResult r = run_cli("spectral --n 4 --k 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "glueing differential n=4 k=3 coeff=Q\n"
          "  fiber degree 0  source 1 -> target 0  rank 0  kernel 1\n"
          "  fiber degree 3  source 4 -> target 1  rank 1  kernel 3\n"
          "  fiber degree 6  source 3 -> target 4  rank 3  kernel 0\n");

    // characteristic 2 kills the differential
    r = run_cli("spectral --n 4 --k 3 --coeff f2");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "  fiber degree 3  source 4 -> target 1  rank 0  kernel 4\n"));

    r = run_cli("spectral --n 4 --k 3 --format json");
    CHECK(r.exit_code == 0);
    auto o = nlohmann::json::parse(r.out);
    CHECK(o["space"] == "sphere-orbit");
    REQUIRE(o["differentials"].size() == 3);
    CHECK(o["differentials"][1]["fiber_degree"] == 3);
    CHECK(o["differentials"][1]["rank"] == 1);
    CHECK(o["differentials"][1]["kernel_dim"] == 3);

    // odd n has no glueing differential; Z has no rank function here
    CHECK(run_cli("spectral --n 3 --k 3").exit_code == 2);
    CHECK(run_cli("spectral --n 4 --k 3 --coeff z").exit_code == 2);
}

TEST_CASE("invariants subcommand reports the degreewise match") {
    RunResult r = run_cli("invariants --n 3 --m 3");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "odd-full  ok"));
    CHECK(contains(r.out, "  degree 2  computed 3  predicted 3"));

    r = run_cli("invariants --n 4 --m 3 --sub punctured");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "even-punctured  ok"));

    r = run_cli("invariants --n 3 --m 3 --presentation");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "dims match"));

    r = run_cli("invariants --n 2 --m 2 --format json");
    CHECK(r.exit_code == 0);
    auto arr = nlohmann::json::parse(r.out);
    REQUIRE(arr.is_array());
    for (const auto& rec : arr) CHECK(rec["match"] == true);

    CHECK(run_cli("invariants --n 3 --m 2 --coeff f2").exit_code == 2);
}

TEST_CASE("identical configs produce byte-identical JSON") {
    const char* cmds[] = {
        "betti --space sphere-orbit --n 4 --k 3 --coeff z --format json",
        "betti --space rpn --n 3 --k 3 --format json",
        "verify --suite action --n 3 --m 2 --format json",
        "tc --n 2 --k 2 --s 2 --search exact --format json",
        "invariants --n 2 --m 2 --format json",
        "spectral --n 4 --k 3 --format json",
    };
    for (const char* cmd : cmds) {
        CAPTURE(cmd);
        RunResult a = run_cli(cmd);
        RunResult b = run_cli(cmd);
        CHECK(a.exit_code == 0);
        CHECK(a.out == b.out);
        CHECK(nlohmann::json::accept(a.out));
    }
}

TEST_CASE("usage and parameter errors exit 2") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("nosuch").exit_code == 2);
    CHECK(run_cli("betti --space orbit --n 3").exit_code == 2);
    CHECK(run_cli("betti --space nowhere --n 3 --m 2").exit_code == 2);
    // --m and --k are one option; giving both is an error
    CHECK(run_cli("betti --space orbit --n 3 --m 2 --k 2").exit_code == 2);
    CHECK(run_cli("betti --space orbit --n 3 --m 0").exit_code == 2);
    CHECK(run_cli("betti --space orbit --n 1 --m 2").exit_code == 2);
    CHECK(run_cli("betti --space orbit --n 3 --m 2 --format xml").exit_code ==
          2);
    CHECK(run_cli("tc --n 3 --k 2 --s 0").exit_code == 2);
    CHECK(run_cli("verify --suite nothing --n 3 --m 2").exit_code == 2);

    RunResult r = run_cli("--help");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "Subcommands"));
}

TEST_CASE("CONFRING_THREADS is validated") {
    CHECK(run_cli("eval '1'", "CONFRING_THREADS=4").exit_code == 0);
    RunResult r = run_cli("eval '1'", "CONFRING_THREADS=abc");
    CHECK(r.exit_code == 2);
    CHECK(contains(r.out, "CONFRING_THREADS"));
    CHECK(run_cli("eval '1'", "CONFRING_THREADS=0").exit_code == 2);
}
