#pragma once

#include "lamdelta/type.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>

namespace lamdelta {

using Name = std::string;
using NameSet = std::set<Name>;

/// Terms of the calculus: variables, annotated lambda and Delta
/// abstractions, and application. Immutable handle; copies share structure.
///
/// A Delta abstraction `delta x:~T. t` binds `x` at the negated type and has
/// type `T`; its annotation is stored as given (the full `T -> bot`).
class Term {
public:
    enum class Kind { Var, Lam, Delta, App };

    static Term var(Name name);
    static Term lam(Name binder, Type annotation, Term body);
    static Term delta(Name binder, Type annotation, Term body);
    static Term app(Term fun, Term arg);

    Kind kind() const;
    bool is_var() const { return kind() == Kind::Var; }
    bool is_lam() const { return kind() == Kind::Lam; }
    bool is_delta() const { return kind() == Kind::Delta; }
    bool is_app() const { return kind() == Kind::App; }
    bool is_abstraction() const { return is_lam() || is_delta(); }

    /// Variable name for Var, bound name for Lam/Delta.
    const Name& name() const;
    const Name& binder() const { return name(); }
    const Type& annotation() const;
    const Term& body() const;
    const Term& fun() const;
    const Term& arg() const;

    /// Number of syntax nodes (type annotations not counted).
    std::size_t size() const;

    /// Exact syntactic equality, bound names included. See alpha_eq.
    friend bool operator==(const Term& a, const Term& b);
    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

NameSet free_vars(const Term& t);
bool occurs_free(const Name& x, const Term& t);

/// Every name mentioned in t, free or bound.
NameSet all_names(const Term& t);
void collect_names(const Term& t, NameSet& out);

/// Deterministic fresh name: `hint` itself when unclaimed, otherwise the
/// hint's stem (trailing digits stripped) with the least numeric suffix
/// not in `avoid`.
Name fresh(const NameSet& avoid, const Name& hint);

/// Explicit fresh-name supply. Every name it hands out is added to its
/// claimed set, so successive calls never repeat.
class NameSupply {
public:
    NameSupply() = default;
    explicit NameSupply(NameSet claimed) : claimed_(std::move(claimed)) {}

    Name fresh(const Name& hint);
    void claim(const Name& n) { claimed_.insert(n); }
    void claim(const Term& t) { collect_names(t, claimed_); }
    bool claimed(const Name& n) const { return claimed_.count(n) != 0; }
    const NameSet& names() const { return claimed_; }

private:
    NameSet claimed_;
};

/// Capture-avoiding substitution [replacement/x]target. Performs no reduction.
Term subst(const Term& replacement, const Name& x, const Term& target);

/// Equality up to consistent renaming of bound variables. Annotations are
/// compared structurally.
bool alpha_eq(const Term& a, const Term& b);

/// Head variable of an application spine; nullopt for abstractions.
std::optional<Name> head(const Term& t);

/// Membership in the normal-form grammar: n ::= x | \x:T.n | delta x:T.n | h n,
/// h ::= x | h n.
bool is_normal(const Term& t);

}  // namespace lamdelta
