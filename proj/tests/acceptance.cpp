// Acceptance run: one line per criterion, nonzero exit if any fails.

#include "lamdelta/cli.hpp"
#include "lamdelta/hereditary.hpp"
#include "lamdelta/propgen.hpp"
#include "lamdelta/reduction.hpp"
#include "lamdelta/syntax.hpp"
#include "lamdelta/typing.hpp"

#include "oracle.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace lamdelta;
using oracle::term;
using oracle::type;

namespace {

constexpr double kExampleBudgetMs = 1.0;
constexpr double kSuiteBudgetS = 60.0;
constexpr int kTimingRuns = 101;  // the median is compared against the budget
constexpr std::size_t kRoundTrip = 1000;

int failed = 0;

void report(int n, bool ok, const std::string& what) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << n << " " << what << "\n";
    if (!ok) ++failed;
}

double median_ms(const std::function<void()>& fn) {
    std::vector<double> t;
    for (int i = 0; i < kTimingRuns; ++i) {
        auto a = std::chrono::steady_clock::now();
        fn();
        t.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - a).count());
    }
    std::nth_element(t.begin(), t.begin() + t.size() / 2, t.end());
    return t[t.size() / 2];
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(3);
    s << v;
    return s.str();
}

struct Cli {
    int code;
    std::string out;
};

Cli cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run_cli(args, out, err);
    return {code, out.str()};
}

void example_one() {
    Term t = term("\\f:(b->b). f");
    Type cut = type("(b->b)->(b->b)");
    Term target = term("(x (\\y:b. y)) z");
    bool ok = true;
    Term r = hsubst(t, "x", cut, target);
    ok = ok && print_term(r) == "z";
    ok = ok && oracle::alpha(hsubst(t, "x", cut, term("x (\\y:b. y)")), term("\\y:b. y"));
    ok = ok && ctype(cut, "x", term("x")) == cut;
    double ms = median_ms([&] { hsubst(t, "x", cut, target); });
    report(1, ok && ms < kExampleBudgetMs,
           "first worked example prints '" + print_term(r) + "' (" + fmt(ms) + " ms)");
}

void example_two() {
    Term t = term("delta f:~(b->b). f (delta f':~(b->b). f' (\\z:b. z))");
    Type cut = type("b->b");
    Term target = term("x u");
    Term r = hsubst(t, "x", cut, target);
    bool ok = oracle::alpha(r, term("delta z1:~b. z1 (delta z2:~b. z2 u)"));
    Term first = shsubst({{"f", "z1", term("u")}}, type("b"), type("b"), term("f (delta f':~(b->b). f' (\\z:b. z))"));
    ok = ok && oracle::alpha(first, term("z1 (delta z2:~b. z2 u)"));
    Term second =
        shsubst({{"f", "z1", term("u")}, {"f'", "z2", term("u")}}, type("b"), type("b"), term("f' (\\z:b. z)"));
    ok = ok && oracle::alpha(second, term("z2 u"));
    double ms = median_ms([&] { hsubst(t, "x", cut, target); });
    report(2, ok && ms < kExampleBudgetMs,
           "second worked example gives '" + print_term(r, {.sugar = true}) + "' (" + fmt(ms) + " ms)");
}

void suite_criteria(const GenConfig& cfg) {
    auto a = std::chrono::steady_clock::now();
    SuiteReport rep = run_suite(cfg);
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - a).count();

    std::size_t failures = 0;
    std::string failing;
    const PropReport* confluence = nullptr;
    for (const auto& p : rep.properties) {
        if (p.name == "local-confluence") {
            confluence = &p;
            continue;
        }
        failures += p.failures;
        if (p.failures) failing += " " + p.name;
    }
    report(3, failures == 0 && s < kSuiteBudgetS,
           "lemma suite: " + std::to_string(failures) + " failures in " + fmt(s) + " s" + failing);

    bool conf = confluence && confluence->cases_run == cfg.confluence_cases && confluence->failures == 0;
    report(4, conf,
           "local confluence: " + std::to_string(confluence ? confluence->cases_run : 0) + " fans, " +
               std::to_string(confluence ? confluence->failures : 0) + " failures at depth " +
               std::to_string(cfg.confluence_depth));

    std::size_t hit = 0;
    for (auto c : rep.coverage.hsubst) hit += c > 0;
    for (auto c : rep.coverage.shsubst) hit += c > 0;
    report(5, rep.coverage.complete(),
           "clause coverage: " + std::to_string(hit) + " of " +
               std::to_string(rep.coverage.hsubst.size() + rep.coverage.shsubst.size()) + " clauses");
}

void determinism() {
    auto s1 = cli({"selftest"});
    auto s2 = cli({"selftest"});
    std::string expr = "(delta f:~(b->b). f (delta f':~(b->b). f' (\\z:b. z))) u";
    bool ok = s1.out == s2.out && !s1.out.empty();
    for (const char* cmd : {"norm", "trace"}) {
        auto x = cli({cmd, "--ctx", "u:b", "-e", expr});
        auto y = cli({cmd, "--ctx", "u:b", "-e", expr});
        ok = ok && x.code == 0 && x.out == y.out;
    }
    auto n1 = cli({"norm", "--method", "step", "--ctx", "u:b", "-e", expr});
    auto n2 = cli({"norm", "--method", "step", "--ctx", "u:b", "-e", expr});
    ok = ok && n1.out == n2.out;
    report(6, ok, "identical seeds give byte-identical selftest, norm and trace output");
}

void round_trip() {
    std::size_t good = 0;
    auto samples = oracle::samples(kRoundTrip, 0x7E1D);
    for (const auto& s : samples) {
        bool ok = true;
        for (bool sugar : {false, true}) {
            try {
                ok = ok && oracle::alpha(parse_term(print_term(s.term, {.sugar = sugar})), s.term);
            } catch (const ParseError&) {
                ok = false;
            }
        }
        good += ok;
    }
    struct Fixture {
        const char* what;
        std::vector<std::string> args;
        int code;
    };
    std::vector<Fixture> fixtures = {
        {"parse", {"check", "-e", "\\x:b x"}, 1},
        {"type", {"check", "-e", "delta x:b. x"}, 1},
        {"fuel", {"trace", "--fuel", "5", "-e", "(\\x:b. x x) (\\x:b. x x)"}, 2},
        {"eq-type-mismatch", {"eq", "--ctx", "u:b", "\\x:b. x", "u"}, 2},
        {"not-equal", {"eq", "--ctx", "u:b,v:b", "u", "v"}, 1},
    };
    std::string bad;
    for (const auto& f : fixtures)
        if (cli(f.args).code != f.code) bad += std::string(" ") + f.what;
    report(7, good == samples.size() && samples.size() == kRoundTrip && bad.empty(),
           "round trip " + std::to_string(good) + "/" + std::to_string(samples.size()) +
               (bad.empty() ? ", exit codes ok" : ", wrong exit code:" + bad));
}

}  // namespace

int main() {
    GenConfig cfg;
    example_one();
    example_two();
    suite_criteria(cfg);
    determinism();
    round_trip();
    return failed ? 1 : 0;
}
