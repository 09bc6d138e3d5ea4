#include "lamdelta/propgen.hpp"

#include "lamdelta/reduction.hpp"
#include "lamdelta/syntax.hpp"
#include "lamdelta/typing.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace lamdelta;
using oracle::term;
using oracle::type;

namespace {

bool has_delta(const Term& t) {
    if (t.is_delta()) return true;
    if (t.is_lam()) return has_delta(t.body());
    if (t.is_app()) return has_delta(t.fun()) || has_delta(t.arg());
    return false;
}

// Leftmost-outermost reduction with z and y exchanged in the structural
// contractum: delta z:~B. [\y:A -> B. y (z s) / x] t.
Term swapped_struct_nf(const Term& start) {
    Term cur = start;
    for (int fuel = 0; fuel < 20000; ++fuel) {
        auto step = step_once(cur);
        if (!step) return cur;
        if (step->rule == Rule::Beta) {
            cur = step->result;
            continue;
        }
        const Term& redex = subterm_at(cur, step->path);
        const Term& d = redex.fun();
        Type inner = d.annotation().domain();
        NameSupply names(all_names(cur));
        Name z = names.fresh("z");
        Name y = names.fresh("y");
        Term wrap = Term::lam(y, inner, Term::app(Term::var(y), Term::app(Term::var(z), redex.arg())));
        Term c = Term::delta(z, Type::neg(inner.codomain()), subst(wrap, d.binder(), d.body()));
        cur = replace_at(cur, step->path, c);
    }
    throw std::runtime_error("mutant reducer out of fuel");
}

GenConfig small_config(std::size_t cases) {
    GenConfig cfg;
    cfg.cases = cases;
    cfg.confluence_cases = cases;
    return cfg;
}

}  // namespace

TEST(GenType, DepthZeroIsAtomic) {
    GenConfig cfg;
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        Type t = gen_type(cfg, rng, 0);
        EXPECT_TRUE(t.is_base() || t.is_bottom());
    }
}

TEST(GenType, Deterministic) {
    GenConfig cfg;
    Rng a(99), c(99);
    for (int i = 0; i < 50; ++i) EXPECT_EQ(gen_type(cfg, a), gen_type(cfg, c));
}

TEST(GenType, DepthBoundAndArrowsOfArrows) {
    GenConfig cfg;
    Rng rng(2024);
    bool nested = false;
    for (int i = 0; i < 1000; ++i) {
        Type t = gen_type(cfg, rng);
        EXPECT_LE(t.depth(), cfg.max_type_depth);
        if (t.is_arrow() && t.domain().is_arrow() && t.codomain().is_arrow()) nested = true;
    }
    EXPECT_TRUE(nested);
}

TEST(GenTerm, Examples) {
    GenConfig cfg;
    Rng rng(5);
    Context u{{"u", type("b")}};
    EXPECT_EQ(gen_term(cfg, u, type("b"), 1, rng), term("u"));
    for (int i = 0; i < 20; ++i) EXPECT_EQ(gen_term(cfg, {}, Type::bottom(), 30, rng), std::nullopt);
}

TEST(GenTerm, ThousandTermsPassInference) {
    GenConfig cfg;
    std::size_t made = 0;
    std::size_t with_delta = 0;
    std::size_t max_size = 0;
    for (std::uint64_t i = 0; made < 1000; ++i) {
        Rng rng(derive_seed(cfg.seed, 7, i));
        Context ctx = gen_context(cfg, rng);
        Type goal = gen_type(cfg, rng);
        auto t = gen_term(cfg, ctx, goal, cfg.max_term_size, rng);
        if (!t) continue;
        ++made;
        EXPECT_EQ(infer(ctx, *t), goal);
        EXPECT_LE(t->size(), cfg.max_term_size);
        max_size = std::max(max_size, t->size());
        if (has_delta(*t)) ++with_delta;
    }
    EXPECT_GE(with_delta * 10, made);
    EXPECT_GT(max_size, 15u);
}

TEST(GenTerm, DeltaFractionGuard) {
    GenConfig cfg;
    EXPECT_GE(delta_fraction(cfg, 3), kMinDeltaFraction);
}

TEST(Shrink, Examples) {
    Context u{{"u", type("b")}};
    auto c = shrink(u, term("(\\x:b. x) u"));
    EXPECT_NE(std::find(c.begin(), c.end(), term("u")), c.end());
    EXPECT_TRUE(shrink(u, term("u")).empty());
}

TEST(Shrink, CandidatesAreSmallerAndTyped) {
    for (const auto& s : oracle::samples(200, 0x5A)) {
        for (const auto& c : shrink(s.ctx, s.term)) {
            EXPECT_LT(c.size(), s.term.size());
            EXPECT_TRUE(try_infer(s.ctx, c).has_value());
        }
    }
}

TEST(Suite, DefaultRegistryCoversEveryLemma) {
    std::vector<std::string> names;
    for (const auto& p : lemma_properties()) names.push_back(p.name);
    for (const char* want :
         {"weakening", "substitution-preserves-typing", "inversion", "preservation", "local-confluence",
          "strategy-irrelevance", "ctype-agrees-and-decreases", "hsubst-total-and-typed",
          "hsubst-preserves-normality", "hsubst-sound", "shsubst-total-and-typed", "shsubst-preserves-normality",
          "head-variable", "shsubst-sound", "norm-agrees-with-reduction"}) {
        EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
    }
}

TEST(Suite, SmallRunIsGreenAndDeterministic) {
    GenConfig cfg = small_config(60);
    SuiteReport a = run_suite(cfg);
    SuiteReport b = run_suite(cfg);
    EXPECT_EQ(a.render(), b.render());
    for (const auto& p : a.properties) {
        EXPECT_EQ(p.failures, 0u) << p.name;
        EXPECT_GT(p.cases_run, 0u) << p.name;
    }
    cfg.seed = 1;
    EXPECT_NE(run_suite(cfg).render(), a.render());
}

TEST(Suite, BrokenPropertyIsReportedWithShrunkCounterexample) {
    // Claims no generated term contains an application.
    Property p{"no-applications",
               [](const GenConfig& cfg, Rng& rng) -> std::optional<Instance> {
                   Instance inst;
                   inst.ctx = Context{{"f", type("b->b")}, {"u", type("b")}};
                   auto t = gen_term(cfg, inst.ctx, type("b"), 20, rng);
                   if (!t) return std::nullopt;
                   inst.terms = {*t};
                   return inst;
               },
               [](const Instance& inst, ClauseCoverage*) {
                   std::function<bool(const Term&)> apps = [&](const Term& t) {
                       return t.is_app() || (t.is_abstraction() && apps(t.body()));
                   };
                   return apps(inst.terms[0]) ? Outcome::fail("has an application") : Outcome::pass();
               },
               {}};
    PropReport r = run_property(p, small_config(100), 0);
    ASSERT_GT(r.failures, 0u);
    ASSERT_FALSE(r.counterexamples.empty());
    const auto& cx = r.counterexamples.front();
    EXPECT_NE(cx.instance.find("term0: f u"), std::string::npos) << cx.instance;

    // The replay seed regenerates the original failing case.
    Rng rng(cx.seed);
    auto again = p.generate(small_config(100), rng);
    ASSERT_TRUE(again.has_value());
    EXPECT_EQ(p.check(*again, nullptr).verdict, Verdict::Fail);
}

TEST(Suite, ShrunkCounterexamplesStillFail) {
    Property p{"small-terms-only",
               [](const GenConfig& cfg, Rng& rng) -> std::optional<Instance> {
                   Instance inst;
                   inst.ctx = Context{{"f", type("b->b")}, {"u", type("b")}};
                   auto t = gen_term(cfg, inst.ctx, type("b->b"), 25, rng);
                   if (!t) return std::nullopt;
                   inst.terms = {*t};
                   return inst;
               },
               [](const Instance& inst, ClauseCoverage*) {
                   return inst.terms[0].size() > 6 ? Outcome::fail("too big") : Outcome::pass();
               },
               {}};
    GenConfig cfg = small_config(50);
    for (std::uint64_t i = 0; i < 50; ++i) {
        Rng rng(derive_seed(cfg.seed, 0, i));
        auto inst = p.generate(cfg, rng);
        if (!inst || p.check(*inst, nullptr).verdict != Verdict::Fail) continue;
        std::size_t steps = 0;
        Instance small = shrink_instance(p, *inst, &steps);
        EXPECT_EQ(p.check(small, nullptr).verdict, Verdict::Fail);
        EXPECT_LE(small.terms[0].size(), inst->terms[0].size());
        // Locally minimal: no candidate still fails.
        for (const auto& c : shrink(small.ctx, small.terms[0])) {
            Instance next = small;
            next.terms[0] = c;
            EXPECT_NE(p.check(next, nullptr).verdict, Verdict::Fail);
        }
    }
}

TEST(Suite, MutatedStructuralContractumIsCaught) {
    GenConfig cfg = small_config(150);
    auto props = lemma_properties(cfg, swapped_struct_nf);
    std::size_t failures = 0;
    for (std::size_t i = 0; i < props.size(); ++i) {
        if (props[i].name != "hsubst-sound" && props[i].name != "shsubst-sound") continue;
        PropReport r = run_property(props[i], cfg, i);
        failures += r.failures;
        for (const auto& cx : r.counterexamples) EXPECT_FALSE(cx.instance.empty());
    }
    EXPECT_GT(failures, 0u);
}

TEST(Config, Validation) {
    GenConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.delta_bias = 1.5;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.base_type_pool.clear();
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.max_term_size = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Rng, SeedDerivationIsStable) {
    EXPECT_EQ(derive_seed(1, 2, 3), derive_seed(1, 2, 3));
    EXPECT_NE(derive_seed(1, 2, 3), derive_seed(1, 2, 4));
    EXPECT_NE(derive_seed(1, 2, 3), derive_seed(1, 3, 3));
    Rng r(42);
    for (int i = 0; i < 100; ++i) EXPECT_LT(r.below(7), 7u);
}
