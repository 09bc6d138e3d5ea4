#include "lamdelta/context.hpp"
#include "lamdelta/propgen.hpp"
#include "lamdelta/term.hpp"
#include "lamdelta/type.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <functional>

using namespace lamdelta;
using oracle::term;
using oracle::type;

namespace {

const Type b = Type::base("b");
const Type bb = Type::arrow(b, b);

Term V(const char* n) { return Term::var(n); }

}  // namespace

TEST(TypeTest, NegationIsArrowToBottom) {
    EXPECT_EQ(Type::neg(b), Type::arrow(b, Type::bottom()));
    EXPECT_TRUE(Type::neg(b).is_negation());
    EXPECT_FALSE(bb.is_negation());
    EXPECT_TRUE(Type::bottom().is_bottom());
}

TEST(TypeTest, AccessorsRejectWrongKind) {
    EXPECT_THROW(b.domain(), std::logic_error);
    EXPECT_THROW(bb.name(), std::logic_error);
    EXPECT_EQ(bb.domain(), b);
}

TEST(TypeTest, StrictSubexpression) {
    EXPECT_TRUE(is_strict_subexpr(b, bb));
    EXPECT_FALSE(is_strict_subexpr(bb, bb));
    EXPECT_TRUE(is_strict_subexpr(b, Type::arrow(bb, bb)));
    EXPECT_FALSE(is_strict_subexpr(Type::bottom(), bb));
    EXPECT_FALSE(is_strict_subexpr(b, b));
}

TEST(TypeTest, PrintArrowsBracketed) {
    EXPECT_EQ(print_type(Type::arrow(bb, bb)), "(b -> b) -> (b -> b)");
    EXPECT_EQ(print_type(Type::neg(bb)), "(b -> b) -> bot");
    EXPECT_EQ(print_type(Type::neg(bb), {.sugar = true}), "~(b -> b)");
    EXPECT_EQ(print_type(Type::neg(Type::neg(b)), {.sugar = true}), "~~b");
}

// Subtrees of t other than t itself, found by direct traversal.
void proper_subtrees(const Type& t, std::vector<Type>& out) {
    if (!t.is_arrow()) return;
    out.push_back(t.domain());
    out.push_back(t.codomain());
    proper_subtrees(t.domain(), out);
    proper_subtrees(t.codomain(), out);
}

std::size_t longest_chain(const Type& t) {
    std::vector<Type> subs;
    proper_subtrees(t, subs);
    std::size_t best = 0;
    for (const auto& s : subs) {
        EXPECT_TRUE(is_strict_subexpr(s, t));
        best = std::max(best, longest_chain(s));
    }
    return best + 1;
}

TEST(TypeProperty, SubexpressionOrderWellFoundedUpToDepthThree) {
    auto types = oracle::all_types(3);
    ASSERT_EQ(types.size(), 1446u);
    for (const auto& t : types) {
        EXPECT_FALSE(is_strict_subexpr(t, t));
        EXPECT_LE(longest_chain(t), t.node_count()) << print_type(t);
    }
}

TEST(TypeProperty, SubexpressionOrderTransitive) {
    auto types = oracle::all_types(2);
    for (const auto& a : types)
        for (const auto& b2 : types)
            for (const auto& c : types)
                if (is_strict_subexpr(a, b2) && is_strict_subexpr(b2, c)) EXPECT_TRUE(is_strict_subexpr(a, c));
}

TEST(TypeProperty, SubexpressionOrderOnDepthFourSamples) {
    GenConfig cfg;
    Rng rng(4);
    for (int i = 0; i < 500; ++i) {
        Type t = gen_type(cfg, rng, 4);
        EXPECT_LE(longest_chain(t), t.node_count());
    }
}

TEST(FreeVarsTest, Examples) {
    EXPECT_EQ(free_vars(V("x")), (NameSet{"x"}));
    EXPECT_EQ(free_vars(term("\\x:b. x")), NameSet{});
    EXPECT_EQ(free_vars(term("delta f:~(b->b). f u")), (NameSet{"u"}));
}

TEST(FreshTest, Examples) {
    EXPECT_EQ(fresh({"x", "y"}, "x"), "x1");
    EXPECT_EQ(fresh({}, "z"), "z");
    EXPECT_EQ(fresh({"z", "z1"}, "z"), "z2");
    EXPECT_EQ(fresh({"z", "z1"}, "z1"), "z2");
    EXPECT_EQ(fresh({"v"}, ""), "v1");
}

TEST(FreshTest, SupplyNeverRepeats) {
    NameSupply s({"y"});
    Name a = s.fresh("y");
    Name c = s.fresh("y");
    EXPECT_NE(a, "y");
    EXPECT_NE(a, c);
    EXPECT_TRUE(s.claimed(a));
}

TEST(SubstTest, Examples) {
    EXPECT_EQ(subst(V("u"), "x", V("x")), V("u"));
    EXPECT_EQ(subst(V("u"), "x", term("\\x:b. x")), term("\\x:b. x"));
    EXPECT_EQ(subst(V("n1"), "y", term("y n2")), term("n1 n2"));
}

TEST(SubstTest, AvoidsCapture) {
    // [y/x](\y:b. x) must not capture the free y.
    Term r = subst(V("y"), "x", term("\\y:b. x"));
    EXPECT_TRUE(oracle::alpha(r, term("\\w:b. y")));
    ASSERT_TRUE(r.is_lam());
    EXPECT_NE(r.binder(), "y");
}

TEST(SubstTest, AvoidsCaptureUnderDelta) {
    Term r = subst(term("k u"), "x", term("delta k:~b. k x"));
    EXPECT_TRUE(oracle::alpha(r, term("delta w:~b. w (k u)")));
}

TEST(AlphaTest, Examples) {
    EXPECT_TRUE(alpha_eq(term("\\x:b. x"), term("\\y:b. y")));
    EXPECT_FALSE(alpha_eq(term("\\x:b. x"), term("\\x:b. u")));
    EXPECT_TRUE(alpha_eq(term("delta z1:~b. z1 u"), term("delta w:~b. w u")));
}

TEST(AlphaTest, DistinguishesAnnotationsAndKinds) {
    EXPECT_FALSE(alpha_eq(term("\\x:b. x"), term("\\x:c. x")));
    EXPECT_FALSE(alpha_eq(term("\\x:~b. x"), term("delta x:~b. x")));
    EXPECT_FALSE(alpha_eq(term("\\x:b. \\y:b. x"), term("\\x:b. \\y:b. y")));
    EXPECT_FALSE(alpha_eq(term("\\x:b. y"), term("\\y:b. y")));
}

TEST(HeadTest, Examples) {
    EXPECT_EQ(head(V("x")), "x");
    EXPECT_EQ(head(term("(x (\\y:b. y)) z")), "x");
    EXPECT_EQ(head(term("\\x:b. x")), std::nullopt);
}

TEST(NormalTest, Examples) {
    EXPECT_FALSE(is_normal(term("(\\x:b. x) u")));
    EXPECT_TRUE(is_normal(term("delta z1:~b. z1 (delta z2:~b. z2 u)")));
    EXPECT_TRUE(is_normal(term("x (\\y:b. y)")));
    EXPECT_FALSE(is_normal(term("(delta k:~(b->b). k (\\y:b. y)) u")));
    EXPECT_FALSE(is_normal(term("x ((\\y:b. y) u)")));
}

TEST(ContextTest, LookupAndExtension) {
    Context c{{"x", b}, {"y", bb}};
    EXPECT_EQ(c.lookup("y"), bb);
    EXPECT_EQ(c.lookup("z"), std::nullopt);
    Context d = c.extended("x", bb);
    EXPECT_EQ(d.lookup("x"), bb);
    EXPECT_EQ(d.size(), 2u);
    EXPECT_FALSE(d.duplicate_name());
    EXPECT_EQ((Context{{"x", b}, {"x", b}}).duplicate_name(), "x");
}

TEST(ThetaTest, WellFormednessAndLookup) {
    Theta t{{"f", "z1", V("u")}, {"g", "z2", V("u")}};
    EXPECT_TRUE(t.well_formed());
    ASSERT_NE(t.find("g"), nullptr);
    EXPECT_EQ(t.find("g")->continuation, "z2");
    EXPECT_EQ(t.find("z1"), nullptr);
    EXPECT_FALSE((Theta{{"f", "z", V("u")}, {"z", "w", V("u")}}).well_formed());
    EXPECT_FALSE((Theta{{"f", "z", V("u")}, {"g", "z", V("u")}}).well_formed());
    Theta shadow = t.extended({"f", "z3", V("v")});
    EXPECT_EQ(shadow.find("f")->continuation, "z3");
}

// ---- properties over generated terms ----

class GeneratedTerms : public ::testing::Test {
protected:
    static void SetUpTestSuite() { samples_ = new std::vector<oracle::Sample>(oracle::samples(400, 0xA11CE)); }
    static void TearDownTestSuite() { delete samples_; }
    static std::vector<oracle::Sample>* samples_;
};
std::vector<oracle::Sample>* GeneratedTerms::samples_ = nullptr;

TEST_F(GeneratedTerms, AlphaAgreesWithNamelessOracle) {
    const auto& s = *samples_;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        EXPECT_TRUE(alpha_eq(s[i].term, s[i].term));
        EXPECT_EQ(alpha_eq(s[i].term, s[i + 1].term), oracle::alpha(s[i].term, s[i + 1].term));
    }
}

TEST_F(GeneratedTerms, AlphaIsEquivalence) {
    for (const auto& smp : *samples_) {
        // Rename every binder apart to get an alpha-variant, then chain three.
        std::function<Term(const Term&, int)> rename = [&](const Term& t, int k) -> Term {
            if (t.is_var()) return t;
            if (t.is_app()) return Term::app(rename(t.fun(), k), rename(t.arg(), k));
            Name fresh_name = "r" + std::to_string(k) + "_" + std::to_string(t.size());
            Term body = subst(Term::var(fresh_name), t.binder(), t.body());
            body = rename(body, k);
            return t.is_lam() ? Term::lam(fresh_name, t.annotation(), body)
                              : Term::delta(fresh_name, t.annotation(), body);
        };
        Term a = smp.term;
        Term b1 = rename(a, 1);
        Term c = rename(a, 2);
        EXPECT_TRUE(oracle::alpha(a, b1));
        EXPECT_TRUE(alpha_eq(a, b1));
        EXPECT_TRUE(alpha_eq(b1, a));
        EXPECT_TRUE(alpha_eq(b1, c));
        EXPECT_TRUE(alpha_eq(a, c));
    }
}

TEST_F(GeneratedTerms, RenamingRoundTrip) {
    for (const auto& smp : *samples_) {
        for (const auto& x : free_vars(smp.term)) {
            NameSet avoid = all_names(smp.term);
            Name y = fresh(avoid, "y");
            Term there = subst(Term::var(y), x, smp.term);
            Term back = subst(Term::var(x), y, there);
            EXPECT_TRUE(alpha_eq(back, smp.term)) << print_term(smp.term);
        }
    }
}

TEST_F(GeneratedTerms, VariableSubstitutionKeepsNormality) {
    for (const auto& smp : *samples_) {
        if (!is_normal(smp.term)) continue;
        for (const auto& x : free_vars(smp.term))
            EXPECT_TRUE(is_normal(subst(Term::var("q9"), x, smp.term))) << print_term(smp.term);
    }
}

TEST_F(GeneratedTerms, HeadDefinedOnNormalApplications) {
    std::function<bool(const Term&)> heads = [&](const Term& t) {
        return t.is_var() || (t.is_app() && heads(t.fun()));
    };
    for (const auto& smp : *samples_) {
        EXPECT_EQ(head(smp.term).has_value(), heads(smp.term));
        if (is_normal(smp.term) && smp.term.is_app()) EXPECT_TRUE(head(smp.term).has_value());
    }
}
