#include "lamdelta/propgen.hpp"

#include "lamdelta/reduction.hpp"
#include "lamdelta/syntax.hpp"
#include "lamdelta/typing.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <unordered_set>

namespace lamdelta {

void GenConfig::validate() const {
    if (base_type_pool.empty()) throw std::invalid_argument("base type pool is empty");
    if (max_term_size == 0) throw std::invalid_argument("max term size must be positive");
    if (delta_bias < 0.0 || delta_bias > 1.0) throw std::invalid_argument("delta bias must lie in [0, 1]");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

const std::vector<Name> kBinderPool{"x", "y", "z", "f", "g", "h", "k"};
const std::vector<Name> kContextPool{"u", "v", "w", "p", "q"};

// Work units per top-level generation request; bounds backtracking.
constexpr std::size_t kGenWork = 3000;

// Fuel for the reference normaliser inside properties. Cases that exceed it
// are discarded.
constexpr std::size_t kPropFuel = 20000;

class Generator {
public:
    Generator(const GenConfig& cfg, Rng& rng, const Name* focus) : cfg_(cfg), rng_(rng), focus_(focus) {}

    std::optional<Term> gen(const Context& ctx, const Type& goal, std::size_t budget) {
        if (budget == 0 || work_ == 0) return std::nullopt;
        --work_;

        enum Strategy { Var, Spine, Intro, Cut };
        std::vector<std::pair<Strategy, double>> options{
            {Var, budget <= 2 ? 6.0 : 2.0},
            {Spine, 3.0},
            {Intro, goal.is_arrow() ? 4.0 : goal.is_bottom() ? 0.5 : 1.5},
            {Cut, budget >= 4 ? 1.5 : 0.0},
        };
        while (!options.empty()) {
            double total = 0;
            for (const auto& o : options) total += o.second;
            if (total <= 0) break;
            double r = rng_.unit() * total;
            std::size_t i = 0;
            for (; i + 1 < options.size(); ++i) {
                if (r < options[i].second) break;
                r -= options[i].second;
            }
            Strategy s = options[i].first;
            options.erase(options.begin() + static_cast<std::ptrdiff_t>(i));

            std::optional<Term> out;
            switch (s) {
            case Var: out = by_var(ctx, goal); break;
            case Spine: out = by_spine(ctx, goal, budget); break;
            case Intro: out = by_intro(ctx, goal, budget); break;
            case Cut: out = by_cut(ctx, goal, budget); break;
            }
            if (out) return out;
        }
        return std::nullopt;
    }

private:
    template <typename T>
    const T& prefer_focus(const std::vector<T>& cands, auto name_of) {
        if (focus_ && rng_.chance(0.6)) {
            std::vector<std::size_t> hits;
            for (std::size_t i = 0; i < cands.size(); ++i)
                if (name_of(cands[i]) == *focus_) hits.push_back(i);
            if (!hits.empty()) return cands[rng_.pick(hits)];
        }
        return rng_.pick(cands);
    }

    std::optional<Term> by_var(const Context& ctx, const Type& goal) {
        std::vector<Name> cands;
        for (const auto& b : ctx.bindings())
            if (b.type == goal) cands.push_back(b.name);
        if (cands.empty()) return std::nullopt;
        return Term::var(prefer_focus(cands, [](const Name& n) { return n; }));
    }

    struct SpineHead {
        Name name;
        std::vector<Type> args;
    };

    std::optional<Term> by_spine(const Context& ctx, const Type& goal, std::size_t budget) {
        std::vector<SpineHead> cands;
        for (const auto& b : ctx.bindings()) {
            std::vector<Type> args;
            Type cur = b.type;
            while (cur.is_arrow()) {
                args.push_back(cur.domain());
                cur = cur.codomain();
                if (cur == goal && 1 + 2 * args.size() <= budget) cands.push_back({b.name, args});
            }
        }
        if (cands.empty()) return std::nullopt;
        const SpineHead& h = prefer_focus(cands, [](const SpineHead& s) { return s.name; });

        std::size_t k = h.args.size();
        std::vector<std::size_t> shares = split(budget - 1 - k, k);
        Term out = Term::var(h.name);
        for (std::size_t i = 0; i < k; ++i) {
            auto a = gen(ctx, h.args[i], shares[i]);
            if (!a) return std::nullopt;
            out = Term::app(std::move(out), std::move(*a));
        }
        return out;
    }

    std::optional<Term> by_intro(const Context& ctx, const Type& goal, std::size_t budget) {
        if (budget < 2) return std::nullopt;
        bool delta = !goal.is_arrow() || rng_.chance(cfg_.delta_bias);
        Name x = rng_.pick(kBinderPool);
        if (delta) {
            Type ann = Type::neg(goal);
            auto body = gen(ctx.extended(x, ann), Type::bottom(), budget - 1);
            if (!body) return std::nullopt;
            return Term::delta(x, ann, std::move(*body));
        }
        auto body = gen(ctx.extended(x, goal.domain()), goal.codomain(), budget - 1);
        if (!body) return std::nullopt;
        return Term::lam(x, goal.domain(), std::move(*body));
    }

    // An abstraction applied to an argument: a redex at the root.
    std::optional<Term> by_cut(const Context& ctx, const Type& goal, std::size_t budget) {
        Type a = cut_type(ctx);
        std::vector<std::size_t> shares = split(budget - 1, 2);
        auto f = by_intro(ctx, Type::arrow(a, goal), shares[0]);
        if (!f) return std::nullopt;
        auto arg = gen(ctx, a, shares[1]);
        if (!arg) return std::nullopt;
        return Term::app(std::move(*f), std::move(*arg));
    }

    Type cut_type(const Context& ctx) {
        if (!ctx.empty() && rng_.chance(0.5)) {
            Type t = rng_.pick(ctx.bindings()).type;
            while (t.is_arrow() && rng_.chance(0.4)) t = rng_.chance(0.5) ? t.domain() : t.codomain();
            if (t.depth() <= cfg_.max_type_depth) return t;
        }
        return gen_type(cfg_, rng_, std::min<std::size_t>(cfg_.max_type_depth, 2));
    }

    // Random composition of a total between `parts` and `avail` into `parts` positive shares.
    std::vector<std::size_t> split(std::size_t avail, std::size_t parts) {
        std::vector<std::size_t> out(parts, 1);
        if (parts == 0 || avail < parts) return out;
        std::size_t extra = rng_.below(avail - parts + 1);
        for (std::size_t i = 0; i < extra; ++i) ++out[rng_.below(parts)];
        return out;
    }

    const GenConfig& cfg_;
    Rng& rng_;
    const Name* focus_;
    std::size_t work_ = kGenWork;
};

bool contains_delta(const Term& t) {
    switch (t.kind()) {
    case Term::Kind::Var: return false;
    case Term::Kind::Lam: return contains_delta(t.body());
    case Term::Kind::Delta: return true;
    case Term::Kind::App: return contains_delta(t.fun()) || contains_delta(t.arg());
    }
    return false;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
}

Type gen_type(const GenConfig& cfg, Rng& rng) { return gen_type(cfg, rng, cfg.max_type_depth); }

Type gen_type(const GenConfig& cfg, Rng& rng, std::size_t max_depth) {
    if (max_depth == 0 || rng.chance(0.4)) {
        if (rng.chance(0.2)) return Type::bottom();
        return Type::base(rng.pick(cfg.base_type_pool));
    }
    Type d = gen_type(cfg, rng, max_depth - 1);
    Type c = gen_type(cfg, rng, max_depth - 1);
    return Type::arrow(std::move(d), std::move(c));
}

Context gen_context(const GenConfig& cfg, Rng& rng, std::size_t max_vars) {
    std::size_t n = rng.below(std::min(max_vars, kContextPool.size()) + 1);
    std::vector<Binding> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back({kContextPool[i], gen_type(cfg, rng, std::min<std::size_t>(cfg.max_type_depth, 2))});
    return Context(std::move(out));
}

std::optional<Term> gen_term(const GenConfig& cfg, const Context& ctx, const Type& goal, std::size_t max_size,
                             Rng& rng, const Name* focus) {
    Generator g(cfg, rng, focus);
    auto t = g.gen(ctx, goal, max_size);
    if (!t) return std::nullopt;
    auto ty = try_infer(ctx, *t);
    if (!ty || *ty != goal)
        throw std::logic_error("generator produced '" + print_term(*t) + "' not of type " + print_type(goal));
    return t;
}

std::vector<Term> shrink(const Context& ctx, const Term& t) {
    std::vector<Term> out;
    std::unordered_set<std::string> seen;
    auto offer = [&](const Term& c) {
        if (c.size() >= t.size()) return;
        if (!try_infer(ctx, c)) return;
        if (seen.insert(print_term(c)).second) out.push_back(c);
    };

    for (const auto& step : enumerate_steps(t)) offer(step.result);

    // Subterms and variable replacements, by path.
    std::vector<std::pair<Path, Term>> subs;
    Path path;
    auto walk = [&](auto&& self, const Term& u) -> void {
        subs.emplace_back(path, u);
        if (u.is_abstraction()) {
            path.push_back(0);
            self(self, u.body());
            path.pop_back();
        } else if (u.is_app()) {
            path.push_back(0);
            self(self, u.fun());
            path.back() = 1;
            self(self, u.arg());
            path.pop_back();
        }
    };
    walk(walk, t);

    for (const auto& [p, u] : subs) {
        if (p.empty()) continue;
        offer(u);
    }
    auto whole = try_infer(ctx, t);
    for (const auto& [p, u] : subs) {
        if (u.is_var()) continue;
        for (const auto& b : ctx.bindings()) {
            Term c = replace_at(t, p, Term::var(b.name));
            auto ty = try_infer(ctx, c);
            if (ty && whole && *ty == *whole) offer(c);
        }
    }

    std::stable_sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.size() < b.size(); });
    return out;
}

std::string describe(const Instance& inst) {
    std::string out = "ctx: " + print_context(inst.ctx);
    for (std::size_t i = 0; i < inst.types.size(); ++i)
        out += "; type" + std::to_string(i) + ": " + print_type(inst.types[i], {.sugar = true});
    for (std::size_t i = 0; i < inst.names.size(); ++i) out += "; name" + std::to_string(i) + ": " + inst.names[i];
    for (std::size_t i = 0; i < inst.terms.size(); ++i)
        out += "; term" + std::to_string(i) + ": " + print_term(inst.terms[i]);
    for (const auto& e : inst.theta.entries())
        out += "; theta: (" + e.source + ", " + e.continuation + ", " + print_term(e.argument) + ")";
    return out;
}

// ---- harness ----------------------------------------------------------------

namespace {

Outcome guarded_check(const Property& prop, const Instance& inst, ClauseCoverage* cov) {
    try {
        return prop.check(inst, cov);
    } catch (const FuelExhausted&) {
        return Outcome::discard("fuel");
    } catch (const std::exception& e) {
        return Outcome::fail(std::string("exception: ") + e.what());
    }
}

}  // namespace

Instance shrink_instance(const Property& prop, Instance inst, std::size_t* steps) {
    std::size_t taken = 0;
    bool progress = true;
    while (progress && taken < 200) {
        progress = false;
        for (std::size_t i = 0; i < inst.terms.size() && !progress; ++i) {
            // Terms may mention names bound by the instance beyond ctx; shrink
            // under the widest context that types them.
            Context scope = inst.ctx;
            if (!try_infer(scope, inst.terms[i])) {
                for (std::size_t j = 0; j < inst.names.size() && j < inst.types.size(); ++j)
                    scope = scope.extended(inst.names[j], inst.types[j]);
            }
            for (const Term& cand : shrink(scope, inst.terms[i])) {
                Instance next = inst;
                next.terms[i] = cand;
                if (guarded_check(prop, next, nullptr).verdict == Verdict::Fail) {
                    inst = std::move(next);
                    ++taken;
                    progress = true;
                    break;
                }
            }
        }
        const auto& entries = inst.theta.entries();
        for (std::size_t i = 0; i < entries.size() && !progress; ++i) {
            for (const Term& cand : shrink(inst.ctx, entries[i].argument)) {
                Theta theta;
                for (std::size_t j = 0; j < entries.size(); ++j) {
                    ThetaEntry e = entries[j];
                    if (j == i) e.argument = cand;
                    theta = theta.extended(std::move(e));
                }
                Instance next = inst;
                next.theta = std::move(theta);
                if (guarded_check(prop, next, nullptr).verdict == Verdict::Fail) {
                    inst = std::move(next);
                    ++taken;
                    progress = true;
                    break;
                }
            }
        }
    }
    if (steps) *steps = taken;
    return inst;
}

PropReport run_property(const Property& prop, const GenConfig& cfg, std::uint64_t stream,
                        ClauseCoverage* coverage) {
    PropReport rep;
    rep.name = prop.name;
    std::size_t want = prop.cases.value_or(cfg.cases);
    std::size_t max_attempts = want * 20 + 100;
    for (std::size_t i = 0; rep.cases_run < want && i < max_attempts; ++i) {
        std::uint64_t case_seed = derive_seed(cfg.seed, stream, i);
        Rng rng(case_seed);
        std::optional<Instance> inst = prop.generate(cfg, rng);
        if (!inst) {
            ++rep.discarded;
            continue;
        }
        Outcome o = guarded_check(prop, *inst, coverage);
        if (o.verdict == Verdict::Discard) {
            ++rep.discarded;
            continue;
        }
        ++rep.cases_run;
        if (o.verdict == Verdict::Fail) {
            ++rep.failures;
            if (rep.counterexamples.size() < 3) {
                Counterexample cx;
                cx.seed = case_seed;
                Instance small = shrink_instance(prop, *inst, &cx.shrink_steps);
                Outcome so = guarded_check(prop, small, nullptr);
                cx.instance = describe(small);
                cx.detail = so.verdict == Verdict::Fail ? so.detail : o.detail;
                rep.counterexamples.push_back(std::move(cx));
            }
        }
    }
    return rep;
}

bool SuiteReport::ok() const {
    for (const auto& p : properties)
        if (p.failures != 0 || p.cases_run == 0) return false;
    return coverage.complete() && delta_fraction >= kMinDeltaFraction;
}

std::string SuiteReport::render() const {
    std::string out;
    char line[160];
    std::snprintf(line, sizeof line, "%-34s %7s %9s %8s\n", "property", "cases", "discarded", "failures");
    out += line;
    for (const auto& p : properties) {
        std::snprintf(line, sizeof line, "%-34s %7zu %9zu %8zu\n", p.name.c_str(), p.cases_run, p.discarded,
                      p.failures);
        out += line;
        for (const auto& cx : p.counterexamples) {
            std::snprintf(line, sizeof line, "  counterexample (replay seed 0x%016llx, %zu shrink steps)\n",
                          static_cast<unsigned long long>(cx.seed), cx.shrink_steps);
            out += line;
            out += "    " + cx.instance + "\n";
            out += "    " + cx.detail + "\n";
        }
    }
    out += "clause coverage\n";
    for (std::size_t i = 0; i < kHsClauseCount; ++i) {
        std::snprintf(line, sizeof line, "  %-22s %10llu\n", to_string(static_cast<HsClause>(i)),
                      static_cast<unsigned long long>(coverage.hsubst[i]));
        out += line;
    }
    for (std::size_t i = 0; i < kShClauseCount; ++i) {
        std::snprintf(line, sizeof line, "  %-22s %10llu\n", to_string(static_cast<ShClause>(i)),
                      static_cast<unsigned long long>(coverage.shsubst[i]));
        out += line;
    }
    std::snprintf(line, sizeof line, "terms containing Delta: %.1f%% (minimum %.0f%%)\n", delta_fraction * 100.0,
                  kMinDeltaFraction * 100.0);
    out += line;
    out += ok() ? "result: PASS\n" : "result: FAIL\n";
    return out;
}

// ---- the lemma suite --------------------------------------------------------

namespace {

std::size_t pick_size(const GenConfig& cfg, Rng& rng, std::size_t cap) {
    cap = std::max<std::size_t>(1, std::min(cap, cfg.max_term_size));
    return 1 + rng.below(cap);
}

Type small_type(const GenConfig& cfg, Rng& rng) {
    return gen_type(cfg, rng, std::min<std::size_t>(cfg.max_type_depth, 2));
}

bool has_type(const Context& ctx, const Term& t, const Type& ty) {
    auto got = try_infer(ctx, t);
    return got && *got == ty;
}

std::string show(const Term& t) { return print_term(t); }
std::string show(const Type& t) { return print_type(t, {.sugar = true}); }

// ctx |- t : T
std::optional<Instance> gen_typed(const GenConfig& cfg, Rng& rng) {
    Instance inst;
    inst.ctx = gen_context(cfg, rng);
    Type ty = gen_type(cfg, rng);
    auto t = gen_term(cfg, inst.ctx, ty, pick_size(cfg, rng, cfg.max_term_size), rng);
    if (!t) return std::nullopt;
    inst.types = {ty};
    inst.terms = {*t};
    return inst;
}

// ctx |- t : A,  ctx, x:A |- t' : B.  terms {t, t'}, types {A, B}, names {x}.
std::optional<Instance> gen_subst_pair(const GenConfig& cfg, Rng& rng, bool normal) {
    Instance inst;
    inst.ctx = gen_context(cfg, rng);
    Type a = gen_type(cfg, rng);
    auto t = gen_term(cfg, inst.ctx, a, pick_size(cfg, rng, cfg.max_term_size / 2), rng);
    if (!t) return std::nullopt;
    NameSet avoid = inst.ctx.names();
    collect_names(*t, avoid);
    Name x = fresh(avoid, "x");
    Type b = rng.chance(0.3) ? Type::bottom() : gen_type(cfg, rng);
    auto body = gen_term(cfg, inst.ctx.extended(x, a), b, pick_size(cfg, rng, cfg.max_term_size), rng, &x);
    if (!body) return std::nullopt;
    Term s = *t;
    Term u = *body;
    if (normal) {
        try {
            s = reduce_to_nf(s, kPropFuel);
            u = reduce_to_nf(u, kPropFuel);
        } catch (const FuelExhausted&) {
            return std::nullopt;
        }
    }
    inst.terms = {s, u};
    inst.types = {a, b};
    inst.names = {x};
    return inst;
}

// Theta with sources of type ~(A1 -> A2), arguments of type A1 under ctx,
// and a target t' : B under ctx plus the sources.
// types {A1, A2, B}, terms {t'}.
std::optional<Instance> gen_struct(const GenConfig& cfg, Rng& rng, bool normal) {
    Instance inst;
    inst.ctx = gen_context(cfg, rng, 2);
    Type dom = small_type(cfg, rng);
    Type cod = small_type(cfg, rng);
    Type hole = Type::arrow(dom, cod);
    if (rng.chance(0.5)) inst.ctx = inst.ctx.extended(fresh(inst.ctx.names(), "g"), hole);

    NameSet avoid = inst.ctx.names();
    std::size_t k = 1 + rng.below(2);
    Context target_ctx = inst.ctx;
    Theta theta;
    std::vector<ThetaEntry> entries;
    for (std::size_t i = 0; i < k; ++i) {
        auto arg = gen_term(cfg, inst.ctx, dom, pick_size(cfg, rng, cfg.max_term_size / 3), rng);
        if (!arg) return std::nullopt;
        Term a = *arg;
        if (normal) {
            try {
                a = reduce_to_nf(a, kPropFuel);
            } catch (const FuelExhausted&) {
                return std::nullopt;
            }
        }
        collect_names(a, avoid);
        entries.push_back({"", "", a});
    }
    for (auto& e : entries) {
        e.source = fresh(avoid, "s");
        avoid.insert(e.source);
        e.continuation = fresh(avoid, "c");
        avoid.insert(e.continuation);
        target_ctx = target_ctx.extended(e.source, Type::neg(hole));
        theta = theta.extended(e);
    }

    Type b = rng.chance(0.5) ? Type::bottom() : gen_type(cfg, rng);
    const Name& focus = entries[rng.below(entries.size())].source;
    auto target = gen_term(cfg, target_ctx, b, pick_size(cfg, rng, cfg.max_term_size), rng, &focus);
    if (!target) return std::nullopt;
    Term t = *target;
    if (normal) {
        try {
            t = reduce_to_nf(t, kPropFuel);
        } catch (const FuelExhausted&) {
            return std::nullopt;
        }
    }
    inst.theta = theta;
    inst.terms = {t};
    inst.types = {dom, cod, b};
    for (const auto& e : theta.entries()) inst.names.push_back(e.source);
    return inst;
}

Context source_ctx(const Instance& inst) {
    Type hole = Type::arrow(inst.types[0], inst.types[1]);
    Context c = inst.ctx;
    for (const auto& e : inst.theta.entries()) c = c.extended(e.source, Type::neg(hole));
    return c;
}

Context continuation_ctx(const Instance& inst) {
    Context c = inst.ctx;
    for (const auto& e : inst.theta.entries()) c = c.extended(e.continuation, Type::neg(inst.types[1]));
    return c;
}

// Preconditions of a structural instance; false means discard.
bool struct_ok(const Instance& inst) {
    if (inst.types.size() != 3 || inst.terms.size() != 1 || !inst.theta.well_formed()) return false;
    for (const auto& e : inst.theta.entries())
        if (!has_type(inst.ctx, e.argument, inst.types[0])) return false;
    return has_type(source_ctx(inst), inst.terms[0], inst.types[2]);
}

bool subst_ok(const Instance& inst) {
    return inst.terms.size() == 2 && has_type(inst.ctx, inst.terms[0], inst.types[0]) &&
           has_type(inst.ctx.extended(inst.names[0], inst.types[0]), inst.terms[1], inst.types[1]);
}

HsOptions with(ClauseCoverage* cov) {
    HsOptions o;
    o.coverage = cov;
    return o;
}

// Visits each subterm with its local context.
template <typename F>
void each_subterm(const Context& ctx, const Term& t, F&& f) {
    f(ctx, t);
    if (t.is_abstraction()) {
        each_subterm(ctx.extended(t.binder(), t.annotation()), t.body(), f);
    } else if (t.is_app()) {
        each_subterm(ctx, t.fun(), f);
        each_subterm(ctx, t.arg(), f);
    }
}

Property weakening() {
    return {"weakening",
            [](const GenConfig& cfg, Rng& rng) -> std::optional<Instance> {
                auto inst = gen_typed(cfg, rng);
                if (!inst) return std::nullopt;
                NameSet avoid = inst->ctx.names();
                collect_names(inst->terms[0], avoid);
                inst->names = {fresh(avoid, "w")};
                inst->types.push_back(gen_type(cfg, rng));
                return inst;
            },
            [](const Instance& inst, ClauseCoverage*) {
                if (!has_type(inst.ctx, inst.terms[0], inst.types[0])) return Outcome::discard();
                if (occurs_free(inst.names[0], inst.terms[0]) || inst.ctx.contains(inst.names[0]))
                    return Outcome::discard();
                if (!weaken_holds(inst.ctx, inst.terms[0], {inst.names[0], inst.types[1]}))
                    return Outcome::fail("type changed after adding " + inst.names[0]);
                return Outcome::pass();
            },
            {}};
}

Property substitution_typing() {
    return {"substitution-preserves-typing",
            [](const GenConfig& cfg, Rng& rng) { return gen_subst_pair(cfg, rng, false); },
            [](const Instance& inst, ClauseCoverage*) {
                if (!subst_ok(inst)) return Outcome::discard();
                Term s = subst(inst.terms[0], inst.names[0], inst.terms[1]);
                auto ty = try_infer(inst.ctx, s);
                if (!ty || *ty != inst.types[1])
                    return Outcome::fail("substitution result " + show(s) + " does not have type " +
                                         show(inst.types[1]));
                return Outcome::pass();
            },
            {}};
}

Property inversion() {
    return {"inversion",
            gen_typed,
            [](const Instance& inst, ClauseCoverage*) {
                if (!has_type(inst.ctx, inst.terms[0], inst.types[0])) return Outcome::discard();
                std::string bad;
                each_subterm(inst.ctx, inst.terms[0], [&](const Context& c, const Term& u) {
                    if (!bad.empty()) return;
                    auto ty = try_infer(c, u);
                    if (!ty) {
                        bad = "subterm " + show(u) + " is untyped";
                        return;
                    }
                    switch (u.kind()) {
                    case Term::Kind::Var:
                        if (c.lookup(u.name()) != ty) bad = "variable " + u.name();
                        break;
                    case Term::Kind::Lam: {
                        auto b = try_infer(c.extended(u.binder(), u.annotation()), u.body());
                        if (!b || *ty != Type::arrow(u.annotation(), *b)) bad = "lambda " + show(u);
                        break;
                    }
                    case Term::Kind::Delta: {
                        auto b = try_infer(c.extended(u.binder(), u.annotation()), u.body());
                        if (!u.annotation().is_negation() || !b || !b->is_bottom() ||
                            *ty != u.annotation().domain())
                            bad = "Delta " + show(u);
                        break;
                    }
                    case Term::Kind::App: {
                        auto f = try_infer(c, u.fun());
                        auto a = try_infer(c, u.arg());
                        if (!f || !a || !f->is_arrow() || f->domain() != *a || f->codomain() != *ty)
                            bad = "application " + show(u);
                        break;
                    }
                    }
                });
                return bad.empty() ? Outcome::pass() : Outcome::fail("inversion fails at " + bad);
            },
            {}};
}

Property preservation() {
    return {"preservation",
            gen_typed,
            [](const Instance& inst, ClauseCoverage*) {
                if (!has_type(inst.ctx, inst.terms[0], inst.types[0])) return Outcome::discard();
                for (const auto& step : enumerate_steps(inst.terms[0])) {
                    auto ty = try_infer(inst.ctx, step.result);
                    if (!ty || *ty != inst.types[0])
                        return Outcome::fail(std::string(to_string(step.rule)) + " at " + print_path(step.path) +
                                             " gives " + show(step.result));
                }
                return Outcome::pass();
            },
            {}};
}

Property progress_normal() {
    return {"no-step-iff-normal",
            gen_typed,
            [](const Instance& inst, ClauseCoverage*) {
                if (!has_type(inst.ctx, inst.terms[0], inst.types[0])) return Outcome::discard();
                Term t = inst.terms[0];
                for (int round = 0; round < 2; ++round) {
                    bool stuck = enumerate_steps(t).empty();
                    if (stuck != is_normal(t))
                        return Outcome::fail(show(t) + (stuck ? " has no step but is not normal"
                                                              : " has a step but is normal"));
                    t = reduce_to_nf(t, kPropFuel);
                }
                return Outcome::pass();
            },
            {}};
}

Property strategy_irrelevance() {
    return {"strategy-irrelevance",
            gen_typed,
            [](const Instance& inst, ClauseCoverage*) {
                if (!has_type(inst.ctx, inst.terms[0], inst.types[0])) return Outcome::discard();
                Term lo = reduce_to_nf(inst.terms[0], kPropFuel, Strategy::LeftmostOutermost);
                Term ri = reduce_to_nf(inst.terms[0], kPropFuel, Strategy::RightmostInnermost);
                if (!alpha_eq(lo, ri)) return Outcome::fail("normal forms differ: " + show(lo) + " vs " + show(ri));
                return Outcome::pass();
            },
            {}};
}

Property local_confluence(std::size_t depth, std::size_t cases) {
    return {"local-confluence",
            [](const GenConfig& cfg, Rng& rng) -> std::optional<Instance> {
                // Only terms with two distinct one-step reducts are of interest.
                for (int attempt = 0; attempt < 40; ++attempt) {
                    auto inst = gen_typed(cfg, rng);
                    if (!inst) continue;
                    auto steps = enumerate_steps(inst->terms[0]);
                    for (std::size_t i = 1; i < steps.size(); ++i)
                        if (!alpha_eq(steps[0].result, steps[i].result)) return inst;
                }
                return std::nullopt;
            },
            [depth](const Instance& inst, ClauseCoverage*) {
                if (!has_type(inst.ctx, inst.terms[0], inst.types[0])) return Outcome::discard();
                auto steps = enumerate_steps(inst.terms[0]);
                std::vector<Term> reducts;
                for (auto& s : steps) {
                    bool dup = std::any_of(reducts.begin(), reducts.end(),
                                           [&](const Term& r) { return alpha_eq(r, s.result); });
                    if (!dup) reducts.push_back(s.result);
                }
                if (reducts.size() < 2) return Outcome::discard();
                for (std::size_t i = 0; i < reducts.size(); ++i)
                    for (std::size_t j = i + 1; j < reducts.size(); ++j)
                        if (!joinable(reducts[i], reducts[j], depth))
                            return Outcome::fail("reducts not joinable: " + show(reducts[i]) + " and " +
                                                 show(reducts[j]));
                return Outcome::pass();
            },
            cases};
}

Property ctype_lemma() {
    return {"ctype-agrees-and-decreases",
            [](const GenConfig& cfg, Rng& rng) { return gen_subst_pair(cfg, rng, false); },
            [](const Instance& inst, ClauseCoverage*) {
                if (!subst_ok(inst)) return Outcome::discard();
                const Name& x = inst.names[0];
                const Type& cut = inst.types[0];
                std::string bad;
                auto visit = [&](auto&& self, const Context& c, const Term& u) -> void {
                    if (!bad.empty()) return;
                    if (auto ct = ctype(cut, x, u)) {
                        auto ty = try_infer(c, u);
                        if (!ty || *ty != *ct) bad = "ctype of " + show(u) + " disagrees with its type";
                        else if (*ct != cut && !is_strict_subexpr(*ct, cut))
                            bad = "ctype of " + show(u) + " is not a subexpression of " + show(cut);
                    }
                    if (u.is_abstraction()) {
                        if (u.binder() == x) return;
                        self(self, c.extended(u.binder(), u.annotation()), u.body());
                    } else if (u.is_app()) {
                        self(self, c, u.fun());
                        self(self, c, u.arg());
                    }
                };
                visit(visit, inst.ctx.extended(x, cut), inst.terms[1]);
                return bad.empty() ? Outcome::pass() : Outcome::fail(bad);
            },
            {}};
}

Property hsubst_typing() {
    return {"hsubst-total-and-typed",
            [](const GenConfig& cfg, Rng& rng) { return gen_subst_pair(cfg, rng, rng.chance(0.5)); },
            [](const Instance& inst, ClauseCoverage* cov) {
                if (!subst_ok(inst)) return Outcome::discard();
                Term s = hsubst(inst.terms[0], inst.names[0], inst.types[0], inst.terms[1], with(cov));
                auto ty = try_infer(inst.ctx, s);
                if (!ty || *ty != inst.types[1])
                    return Outcome::fail("result " + show(s) + " does not have type " + show(inst.types[1]));
                return Outcome::pass();
            },
            {}};
}

Property hsubst_normal() {
    return {"hsubst-preserves-normality",
            [](const GenConfig& cfg, Rng& rng) { return gen_subst_pair(cfg, rng, true); },
            [](const Instance& inst, ClauseCoverage* cov) {
                if (!subst_ok(inst) || !is_normal(inst.terms[0]) || !is_normal(inst.terms[1]))
                    return Outcome::discard();
                Term s = hsubst(inst.terms[0], inst.names[0], inst.types[0], inst.terms[1], with(cov));
                if (!is_normal(s)) return Outcome::fail("result " + show(s) + " is not normal");
                return Outcome::pass();
            },
            {}};
}

Property hsubst_sound(const Normaliser& nf) {
    return {"hsubst-sound",
            [](const GenConfig& cfg, Rng& rng) { return gen_subst_pair(cfg, rng, rng.chance(0.5)); },
            [nf](const Instance& inst, ClauseCoverage* cov) {
                if (!subst_ok(inst)) return Outcome::discard();
                Term h = hsubst(inst.terms[0], inst.names[0], inst.types[0], inst.terms[1], with(cov));
                Term plain = subst(inst.terms[0], inst.names[0], inst.terms[1]);
                Term nh = nf(h);
                Term np = nf(plain);
                if (!alpha_eq(nh, np))
                    return Outcome::fail("normal forms differ: " + show(nh) + " vs " + show(np));
                return Outcome::pass();
            },
            {}};
}

Property shsubst_typing() {
    return {"shsubst-total-and-typed",
            [](const GenConfig& cfg, Rng& rng) { return gen_struct(cfg, rng, rng.chance(0.5)); },
            [](const Instance& inst, ClauseCoverage* cov) {
                if (!struct_ok(inst)) return Outcome::discard();
                Term s = shsubst(inst.theta, inst.types[0], inst.types[1], inst.terms[0], with(cov));
                auto ty = try_infer(continuation_ctx(inst), s);
                if (!ty || *ty != inst.types[2])
                    return Outcome::fail("result " + show(s) + " does not have type " + show(inst.types[2]));
                return Outcome::pass();
            },
            {}};
}

Property shsubst_normal() {
    return {"shsubst-preserves-normality",
            [](const GenConfig& cfg, Rng& rng) { return gen_struct(cfg, rng, true); },
            [](const Instance& inst, ClauseCoverage* cov) {
                if (!struct_ok(inst) || !is_normal(inst.terms[0])) return Outcome::discard();
                for (const auto& e : inst.theta.entries())
                    if (!is_normal(e.argument)) return Outcome::discard();
                Term s = shsubst(inst.theta, inst.types[0], inst.types[1], inst.terms[0], with(cov));
                if (!is_normal(s)) return Outcome::fail("result " + show(s) + " is not normal");
                return Outcome::pass();
            },
            {}};
}

Property head_variable() {
    return {"head-variable",
            [](const GenConfig& cfg, Rng& rng) { return gen_struct(cfg, rng, true); },
            [](const Instance& inst, ClauseCoverage* cov) {
                if (!struct_ok(inst) || !is_normal(inst.terms[0])) return Outcome::discard();
                for (const auto& e : inst.theta.entries())
                    if (!is_normal(e.argument)) return Outcome::discard();
                // Application subterms not under a binder that shadows a source.
                std::vector<Term> apps;
                auto collect = [&](auto&& self, const Term& u) -> void {
                    if (u.is_app()) {
                        apps.push_back(u);
                        self(self, u.fun());
                        self(self, u.arg());
                    } else if (u.is_abstraction() && !inst.theta.find(u.binder())) {
                        self(self, u.body());
                    }
                };
                collect(collect, inst.terms[0]);
                if (apps.empty()) return Outcome::discard();
                for (const auto& u : apps) {
                    Term s = shsubst(inst.theta, inst.types[0], inst.types[1], u, with(cov));
                    if (!head(s)) return Outcome::fail("no head variable in " + show(s) + " from " + show(u));
                }
                return Outcome::pass();
            },
            {}};
}

Property shsubst_sound(const Normaliser& nf) {
    return {"shsubst-sound",
            [](const GenConfig& cfg, Rng& rng) { return gen_struct(cfg, rng, rng.chance(0.5)); },
            [nf](const Instance& inst, ClauseCoverage* cov) {
                if (!struct_ok(inst)) return Outcome::discard();
                Term s = shsubst(inst.theta, inst.types[0], inst.types[1], inst.terms[0], with(cov));
                Term u = uplift_subst(inst.theta, inst.types[0], inst.types[1], inst.terms[0]);
                Term ns = nf(s);
                Term nu = nf(u);
                if (!alpha_eq(ns, nu)) return Outcome::fail("normal forms differ: " + show(ns) + " vs " + show(nu));
                return Outcome::pass();
            },
            {}};
}

Property norm_agrees(const Normaliser& nf) {
    return {"norm-agrees-with-reduction",
            gen_typed,
            [nf](const Instance& inst, ClauseCoverage* cov) {
                if (!has_type(inst.ctx, inst.terms[0], inst.types[0])) return Outcome::discard();
                Term n = norm(inst.ctx, inst.terms[0], with(cov));
                if (!is_normal(n)) return Outcome::fail("norm result " + show(n) + " is not normal");
                if (!has_type(inst.ctx, n, inst.types[0])) return Outcome::fail("norm result changes type");
                Term r = nf(inst.terms[0]);
                if (!alpha_eq(n, r)) return Outcome::fail("norm " + show(n) + " vs reduction " + show(r));
                return Outcome::pass();
            },
            {}};
}

}  // namespace

std::vector<Property> lemma_properties(const GenConfig& cfg, Normaliser oracle) {
    if (!oracle) oracle = [](const Term& t) { return reduce_to_nf(t, kPropFuel); };
    return {
        weakening(),
        substitution_typing(),
        inversion(),
        preservation(),
        progress_normal(),
        strategy_irrelevance(),
        local_confluence(cfg.confluence_depth, cfg.confluence_cases),
        ctype_lemma(),
        hsubst_typing(),
        hsubst_normal(),
        hsubst_sound(oracle),
        shsubst_typing(),
        shsubst_normal(),
        head_variable(),
        shsubst_sound(oracle),
        norm_agrees(oracle),
    };
}

double delta_fraction(const GenConfig& cfg, std::uint64_t stream) {
    std::size_t total = 0;
    std::size_t with_delta = 0;
    for (std::size_t i = 0; i < kDeltaSample; ++i) {
        Rng rng(derive_seed(cfg.seed, stream, i));
        auto inst = gen_typed(cfg, rng);
        if (!inst) continue;
        ++total;
        if (contains_delta(inst->terms[0])) ++with_delta;
    }
    return total == 0 ? 0.0 : static_cast<double>(with_delta) / static_cast<double>(total);
}

SuiteReport run_suite(const GenConfig& cfg) { return run_suite(cfg, lemma_properties(cfg)); }

SuiteReport run_suite(const GenConfig& cfg, const std::vector<Property>& props) {
    cfg.validate();
    SuiteReport rep;
    for (std::size_t i = 0; i < props.size(); ++i)
        rep.properties.push_back(run_property(props[i], cfg, i, &rep.coverage));
    rep.delta_fraction = delta_fraction(cfg, props.size());
    return rep;
}

}  // namespace lamdelta
