#include "lamdelta/hereditary.hpp"

#include "lamdelta/syntax.hpp"
#include "lamdelta/typing.hpp"

#include <algorithm>
#include <utility>

namespace lamdelta {

std::optional<Type> ctype(const Type& cut, const Name& x, const Term& t) {
    if (t.is_var()) {
        if (t.name() == x) return cut;
        return std::nullopt;
    }
    if (!t.is_app()) return std::nullopt;
    auto fun = ctype(cut, x, t.fun());
    if (!fun || !fun->is_arrow()) return std::nullopt;
    return fun->codomain();
}

HsError::HsError(Kind kind, Term at, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + " at '" + print_term(at) + "'" +
                         (detail.empty() ? std::string{} : ": " + detail)),
      kind_(kind),
      at_(std::move(at)) {}

const char* to_string(HsError::Kind kind) {
    switch (kind) {
    case HsError::Kind::CtypeUndefined: return "CtypeUndefined";
    case HsError::Kind::CtypeNotArrow: return "CtypeNotArrow";
    case HsError::Kind::AnnotationMismatch: return "AnnotationMismatch";
    case HsError::Kind::MetricViolation: return "MetricViolation";
    case HsError::Kind::TypingRequired: return "TypingRequired";
    case HsError::Kind::TypeMismatch: return "TypeMismatch";
    }
    return "HsError";
}

const char* to_string(HsClause c) {
    switch (c) {
    case HsClause::VarHit: return "hs.var-hit";
    case HsClause::VarMiss: return "hs.var-miss";
    case HsClause::Lam: return "hs.lam";
    case HsClause::Delta: return "hs.delta";
    case HsClause::App: return "hs.app";
    case HsClause::AppBeta: return "hs.app-beta";
    case HsClause::AppStruct: return "hs.app-struct";
    }
    return "hs.?";
}

const char* to_string(ShClause c) {
    switch (c) {
    case ShClause::VarHit: return "sh.var-hit";
    case ShClause::VarMiss: return "sh.var-miss";
    case ShClause::Lam: return "sh.lam";
    case ShClause::Delta: return "sh.delta";
    case ShClause::HitLamArg: return "sh.hit-lam-arg";
    case ShClause::HitDeltaArg: return "sh.hit-delta-arg";
    case ShClause::HitOtherArg: return "sh.hit-other-arg";
    case ShClause::App: return "sh.app";
    }
    return "sh.?";
}

void ClauseCoverage::merge(const ClauseCoverage& other) {
    for (std::size_t i = 0; i < kHsClauseCount; ++i) hsubst[i] += other.hsubst[i];
    for (std::size_t i = 0; i < kShClauseCount; ++i) shsubst[i] += other.shsubst[i];
}

bool ClauseCoverage::complete() const {
    auto nonzero = [](std::uint64_t n) { return n != 0; };
    return std::all_of(hsubst.begin(), hsubst.end(), nonzero) && std::all_of(shsubst.begin(), shsubst.end(), nonzero);
}

namespace {

struct Metric {
    Type cut;
    int tag;
    std::size_t size;
};

bool metric_less(const Metric& a, const Metric& b) {
    if (is_strict_subexpr(a.cut, b.cut)) return true;
    if (a.cut != b.cut) return false;
    if (a.tag != b.tag) return a.tag < b.tag;
    return a.size < b.size;
}

Term rebuild_abs(const Term& abs, Name binder, Term body) {
    return abs.is_lam() ? Term::lam(std::move(binder), abs.annotation(), std::move(body))
                        : Term::delta(std::move(binder), abs.annotation(), std::move(body));
}

// Both substitution functions share one fresh-name supply seeded with every
// name of the top-level inputs.
class Engine {
public:
    Engine(NameSupply names, HsOptions opts) : names_(std::move(names)), opts_(opts) {}

    Term hs(const Term& t, const NameSet& t_fv, const Name& x, const Type& cut, const Term& target,
            const Metric* parent) {
        Metric me{cut, 0, target.size()};
        enter(me, parent, target);

        switch (target.kind()) {
        case Term::Kind::Var:
            if (target.name() == x) {
                hit(HsClause::VarHit);
                return t;
            }
            hit(HsClause::VarMiss);
            return target;

        case Term::Kind::Lam:
        case Term::Kind::Delta: {
            hit(target.is_lam() ? HsClause::Lam : HsClause::Delta);
            if (target.binder() == x) return target;
            auto [binder, body] = unclash(target, t_fv);
            return rebuild_abs(target, std::move(binder), hs(t, t_fv, x, cut, body, &me));
        }

        case Term::Kind::App: {
            const Term& t1 = target.fun();
            Term s1 = hs(t, t_fv, x, cut, t1, &me);

            if (s1.is_lam() && !t1.is_lam()) {
                hit(HsClause::AppBeta);
                Type ct = redex_ctype(cut, x, t1, target);
                if (s1.annotation() != ct.domain())
                    throw HsError(HsError::Kind::AnnotationMismatch, target,
                                  "lambda annotation differs from ctype domain " + print_type(ct.domain()));
                Term s2 = hs(t, t_fv, x, cut, target.arg(), &me);
                NameSet s2_fv = free_vars(s2);
                return hs(s2, s2_fv, s1.binder(), ct.domain(), s1.body(), &me);
            }

            if (s1.is_delta() && !t1.is_delta()) {
                hit(HsClause::AppStruct);
                Type ct = redex_ctype(cut, x, t1, target);
                if (s1.annotation() != Type::neg(ct))
                    throw HsError(HsError::Kind::AnnotationMismatch, target,
                                  "Delta annotation differs from negated ctype " + print_type(ct));
                Term s2 = hs(t, t_fv, x, cut, target.arg(), &me);
                Name z = names_.fresh("z");
                Theta theta{ThetaEntry{s1.binder(), z, s2}};
                Term body = sh(theta, theta_avoid(theta), ct.domain(), ct.codomain(), s1.body(), &me);
                return Term::delta(z, Type::neg(ct.codomain()), std::move(body));
            }

            if ((s1.is_lam() && t1.is_delta()) || (s1.is_delta() && t1.is_lam()))
                throw std::logic_error("hsubst changed the kind of an abstraction");

            hit(HsClause::App);
            Term s2 = hs(t, t_fv, x, cut, target.arg(), &me);
            return Term::app(std::move(s1), std::move(s2));
        }
        }
        throw std::logic_error("hsubst: unknown term kind");
    }

    Term sh(const Theta& theta, const NameSet& avoid, const Type& dom, const Type& cod, const Term& target,
            const Metric* parent) {
        Metric me{dom, 1, target.size()};
        enter(me, parent, target);
        Type hole = Type::arrow(dom, cod);

        switch (target.kind()) {
        case Term::Kind::Var: {
            const ThetaEntry* e = theta.find(target.name());
            if (!e) {
                hit(ShClause::VarMiss);
                return target;
            }
            hit(ShClause::VarHit);
            return wrapper(*e, hole);
        }

        case Term::Kind::Lam:
        case Term::Kind::Delta: {
            hit(target.is_lam() ? ShClause::Lam : ShClause::Delta);
            auto [binder, body] = unclash(target, avoid);
            return rebuild_abs(target, std::move(binder), sh(theta, avoid, dom, cod, body, &me));
        }

        case Term::Kind::App: {
            const Term& t1 = target.fun();
            const ThetaEntry* e = t1.is_var() ? theta.find(t1.name()) : nullptr;
            if (!e) {
                hit(ShClause::App);
                Term s1 = sh(theta, avoid, dom, cod, t1, &me);
                Term s2 = sh(theta, avoid, dom, cod, target.arg(), &me);
                return Term::app(std::move(s1), std::move(s2));
            }

            const Term& arg = target.arg();
            Term z = Term::var(e->continuation);

            if (arg.is_lam()) {
                hit(ShClause::HitLamArg);
                if (arg.annotation() != dom)
                    throw HsError(HsError::Kind::AnnotationMismatch, target,
                                  "lambda argument annotation is not " + print_type(dom));
                auto [y, body] = unclash(arg, avoid);
                Term s = sh(theta, avoid, dom, cod, body, &me);
                NameSet t_fv = free_vars(e->argument);
                return Term::app(std::move(z), hs(e->argument, t_fv, y, dom, s, &me));
            }

            if (arg.is_delta()) {
                hit(ShClause::HitDeltaArg);
                if (arg.annotation() != Type::neg(hole))
                    throw HsError(HsError::Kind::AnnotationMismatch, target,
                                  "Delta argument annotation is not " + print_type(Type::neg(hole), {.sugar = true}));
                auto [y, body] = unclash(arg, avoid);
                Name z2 = names_.fresh("z");
                Theta inner = theta.extended(ThetaEntry{y, z2, e->argument});
                NameSet inner_avoid = avoid;
                inner_avoid.insert(y);
                inner_avoid.insert(z2);
                Term s = sh(inner, inner_avoid, dom, cod, body, &me);
                return Term::app(std::move(z), Term::delta(z2, Type::neg(cod), std::move(s)));
            }

            // The argument has type dom -> cod, so the continuation receives
            // its application to the stored argument.
            hit(ShClause::HitOtherArg);
            Term s = sh(theta, avoid, dom, cod, arg, &me);
            return Term::app(std::move(z), Term::app(std::move(s), e->argument));
        }
        }
        throw std::logic_error("shsubst: unknown term kind");
    }

    static NameSet theta_avoid(const Theta& theta) {
        NameSet out;
        for (const auto& e : theta.entries()) {
            out.insert(e.source);
            out.insert(e.continuation);
            for (const auto& n : free_vars(e.argument)) out.insert(n);
        }
        return out;
    }

    Term wrapper(const ThetaEntry& e, const Type& hole) {
        Name y = names_.fresh("y");
        return Term::lam(y, hole, Term::app(Term::var(e.continuation), Term::app(Term::var(y), e.argument)));
    }

private:
    void enter(const Metric& me, const Metric* parent, const Term& target) {
        if (opts_.check_metric && parent && !metric_less(me, *parent))
            throw HsError(HsError::Kind::MetricViolation, target,
                          "cut " + print_type(me.cut) + " does not decrease from " + print_type(parent->cut));
    }

    void hit(HsClause c) {
        if (opts_.coverage) ++opts_.coverage->hsubst[static_cast<std::size_t>(c)];
    }
    void hit(ShClause c) {
        if (opts_.coverage) ++opts_.coverage->shsubst[static_cast<std::size_t>(c)];
    }

    Type redex_ctype(const Type& cut, const Name& x, const Term& t1, const Term& at) {
        auto ct = ctype(cut, x, t1);
        if (!ct) throw HsError(HsError::Kind::CtypeUndefined, at);
        if (!ct->is_arrow()) throw HsError(HsError::Kind::CtypeNotArrow, at);
        return *ct;
    }

    // Renames the binder of `abs` when it would capture or shadow a name in `avoid`.
    std::pair<Name, Term> unclash(const Term& abs, const NameSet& avoid) {
        const Name& y = abs.binder();
        if (!avoid.count(y)) return {y, abs.body()};
        Name fresh_y = names_.fresh(y);
        return {fresh_y, subst(Term::var(fresh_y), y, abs.body())};
    }

    NameSupply names_;
    HsOptions opts_;
};

NameSupply supply_for(std::initializer_list<const Term*> terms, std::initializer_list<const Name*> names) {
    NameSupply supply;
    for (const Term* t : terms) supply.claim(*t);
    for (const Name* n : names) supply.claim(*n);
    return supply;
}

NameSupply supply_for(const Theta& theta, const Term& target) {
    NameSupply supply;
    supply.claim(target);
    for (const auto& e : theta.entries()) {
        supply.claim(e.source);
        supply.claim(e.continuation);
        supply.claim(e.argument);
    }
    return supply;
}

}  // namespace

Term hsubst(const Term& t, const Name& x, const Type& cut, const Term& target, HsOptions opts) {
    Engine engine(supply_for({&t, &target}, {&x}), opts);
    NameSet t_fv = free_vars(t);
    t_fv.insert(x);
    return engine.hs(t, t_fv, x, cut, target, nullptr);
}

Term shsubst(const Theta& theta, const Type& dom, const Type& cod, const Term& target, HsOptions opts) {
    Engine engine(supply_for(theta, target), opts);
    return engine.sh(theta, Engine::theta_avoid(theta), dom, cod, target, nullptr);
}

Term uplift_subst(const Theta& theta, const Type& dom, const Type& cod, const Term& target) {
    NameSupply names = supply_for(theta, target);
    Type hole = Type::arrow(dom, cod);
    Term out = target;
    for (const auto& e : theta.entries()) {
        Name y = names.fresh("y");
        Term w = Term::lam(y, hole, Term::app(Term::var(e.continuation), Term::app(Term::var(y), e.argument)));
        out = subst(w, e.source, out);
    }
    return out;
}

namespace {

Term norm_rec(const Context& ctx, const Term& t, NameSupply& names, const HsOptions& opts) {
    switch (t.kind()) {
    case Term::Kind::Var: return t;
    case Term::Kind::Lam:
    case Term::Kind::Delta:
        return rebuild_abs(t, t.binder(), norm_rec(ctx.extended(t.binder(), t.annotation()), t.body(), names, opts));
    case Term::Kind::App: {
        Term n1 = norm_rec(ctx, t.fun(), names, opts);
        Term n2 = norm_rec(ctx, t.arg(), names, opts);
        auto fun_type = try_infer(ctx, t.fun());
        if (!fun_type) throw HsError(HsError::Kind::TypingRequired, t.fun());
        names.claim(n1);
        names.claim(n2);
        Name r = names.fresh("r");
        return hsubst(n1, r, *fun_type, Term::app(Term::var(r), n2), opts);
    }
    }
    throw std::logic_error("norm: unknown term kind");
}

}  // namespace

Term norm(const Context& ctx, const Term& t, HsOptions opts) {
    if (!try_infer(ctx, t)) throw HsError(HsError::Kind::TypingRequired, t);
    NameSupply names(ctx.names());
    names.claim(t);
    return norm_rec(ctx, t, names, opts);
}

bool decide_eq(const Context& ctx, const Term& a, const Term& b, HsOptions opts) {
    auto ta = try_infer(ctx, a);
    if (!ta) throw HsError(HsError::Kind::TypingRequired, a);
    auto tb = try_infer(ctx, b);
    if (!tb) throw HsError(HsError::Kind::TypingRequired, b);
    if (*ta != *tb)
        throw HsError(HsError::Kind::TypeMismatch, b,
                      print_type(*ta, {.sugar = true}) + " vs " + print_type(*tb, {.sugar = true}));
    return alpha_eq(norm(ctx, a, opts), norm(ctx, b, opts));
}

}  // namespace lamdelta
