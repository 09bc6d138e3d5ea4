#include "lamdelta/typing.hpp"

#include "lamdelta/syntax.hpp"

#include <utility>

namespace lamdelta {

namespace {

std::string describe_error(TypeError::Kind kind, const Term& subject, const std::optional<Type>& expected,
                           const std::optional<Type>& actual) {
    std::string msg = std::string(to_string(kind)) + " in '" + print_term(subject) + "'";
    if (expected) msg += "; expected " + print_type(*expected, {.sugar = true});
    if (actual) msg += (expected ? ", got " : "; got ") + print_type(*actual, {.sugar = true});
    return msg;
}

}  // namespace

TypeError::TypeError(Kind kind, Term subject, std::optional<Type> expected, std::optional<Type> actual)
    : std::runtime_error(describe_error(kind, subject, expected, actual)),
      kind_(kind),
      subject_(std::move(subject)),
      expected_(std::move(expected)),
      actual_(std::move(actual)) {}

const char* to_string(TypeError::Kind kind) {
    switch (kind) {
    case TypeError::Kind::UnboundVariable: return "UnboundVariable";
    case TypeError::Kind::NotAnArrow: return "NotAnArrow";
    case TypeError::Kind::ArgumentMismatch: return "ArgumentMismatch";
    case TypeError::Kind::DeltaAnnotationNotNegation: return "DeltaAnnotationNotNegation";
    case TypeError::Kind::DeltaBodyNotBottom: return "DeltaBodyNotBottom";
    case TypeError::Kind::DuplicateContextName: return "DuplicateContextName";
    case TypeError::Kind::AscriptionMismatch: return "AscriptionMismatch";
    }
    return "TypeError";
}

Type infer(const Context& ctx, const Term& t) {
    switch (t.kind()) {
    case Term::Kind::Var: {
        auto ty = ctx.lookup(t.name());
        if (!ty) throw TypeError(TypeError::Kind::UnboundVariable, t);
        return *ty;
    }
    case Term::Kind::Lam: {
        Type body = infer(ctx.extended(t.binder(), t.annotation()), t.body());
        return Type::arrow(t.annotation(), std::move(body));
    }
    case Term::Kind::Delta: {
        const Type& ann = t.annotation();
        if (!ann.is_negation()) throw TypeError(TypeError::Kind::DeltaAnnotationNotNegation, t, std::nullopt, ann);
        Type body = infer(ctx.extended(t.binder(), ann), t.body());
        if (!body.is_bottom()) throw TypeError(TypeError::Kind::DeltaBodyNotBottom, t, Type::bottom(), body);
        return ann.domain();
    }
    case Term::Kind::App: {
        Type fun = infer(ctx, t.fun());
        if (!fun.is_arrow()) throw TypeError(TypeError::Kind::NotAnArrow, t.fun(), std::nullopt, fun);
        Type arg = infer(ctx, t.arg());
        if (arg != fun.domain()) throw TypeError(TypeError::Kind::ArgumentMismatch, t.arg(), fun.domain(), arg);
        return fun.codomain();
    }
    }
    throw std::logic_error("infer: unknown term kind");
}

std::optional<Type> try_infer(const Context& ctx, const Term& t) {
    try {
        return infer(ctx, t);
    } catch (const TypeError&) {
        return std::nullopt;
    }
}

void check_context(const Context& ctx) {
    if (auto dup = ctx.duplicate_name()) throw TypeError(TypeError::Kind::DuplicateContextName, Term::var(*dup));
}

bool weaken_holds(const Context& ctx, const Term& t, const Binding& extra) {
    auto before = try_infer(ctx, t);
    if (!before) return true;
    auto after = try_infer(ctx.extended(extra.name, extra.type), t);
    return after && *after == *before;
}

}  // namespace lamdelta
