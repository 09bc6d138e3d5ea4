#pragma once

#include "lamdelta/context.hpp"
#include "lamdelta/term.hpp"
#include "lamdelta/type.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace lamdelta {

class TypeError : public std::runtime_error {
public:
    enum class Kind {
        UnboundVariable,
        NotAnArrow,
        ArgumentMismatch,
        DeltaAnnotationNotNegation,
        DeltaBodyNotBottom,
        DuplicateContextName,
        AscriptionMismatch,
    };

    TypeError(Kind kind, Term subject, std::optional<Type> expected = std::nullopt,
              std::optional<Type> actual = std::nullopt);

    Kind kind() const { return kind_; }
    const Term& subject() const { return subject_; }
    const std::optional<Type>& expected() const { return expected_; }
    const std::optional<Type>& actual() const { return actual_; }

private:
    Kind kind_;
    Term subject_;
    std::optional<Type> expected_;
    std::optional<Type> actual_;
};

const char* to_string(TypeError::Kind kind);

/// Syntax-directed inference for the four typing rules (Ax, Lam, App, Delta).
/// A Delta abstraction `delta x:T -> bot. t` checks `t : bot` under `x:T -> bot`
/// and has type `T`. Throws TypeError.
Type infer(const Context& ctx, const Term& t);

/// Non-throwing variant.
std::optional<Type> try_infer(const Context& ctx, const Term& t);

/// Throws TypeError(DuplicateContextName) if a name is bound twice.
void check_context(const Context& ctx);

/// Weakening as a predicate: if t types under ctx, it types identically
/// under ctx extended with `extra`. Requires extra.name fresh for ctx and t.
bool weaken_holds(const Context& ctx, const Term& t, const Binding& extra);

}  // namespace lamdelta
