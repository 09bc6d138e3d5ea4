#pragma once

#include "lamdelta/term.hpp"
#include "lamdelta/type.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lamdelta {

struct Binding {
    Name name;
    Type type;
};

/// Typing context. Keeps insertion order for printing; lookup is by name.
class Context {
public:
    Context() = default;
    Context(std::initializer_list<Binding> bindings) : bindings_(bindings) {}
    explicit Context(std::vector<Binding> bindings) : bindings_(std::move(bindings)) {}

    std::optional<Type> lookup(const Name& x) const;
    bool contains(const Name& x) const { return lookup(x).has_value(); }

    /// Context with x:T, replacing any existing binding for x.
    Context extended(const Name& x, const Type& t) const;

    /// First name bound more than once, if any.
    std::optional<Name> duplicate_name() const;

    const std::vector<Binding>& bindings() const { return bindings_; }
    bool empty() const { return bindings_.empty(); }
    std::size_t size() const { return bindings_.size(); }
    NameSet names() const;

private:
    std::vector<Binding> bindings_;
};

/// `x:T, y:U` (sugar on for negations).
std::string print_context(const Context& ctx);

/// One entry (source, continuation, argument) of a multi-substitution.
struct ThetaEntry {
    Name source;
    Name continuation;
    Term argument;
};

/// Multi-substitution driving hereditary structural substitution. Entries
/// are appended at the tail; lookup scans from the tail.
class Theta {
public:
    Theta() = default;
    Theta(std::initializer_list<ThetaEntry> entries) : entries_(entries) {}

    const ThetaEntry* find(const Name& source) const;
    Theta extended(ThetaEntry entry) const;

    const std::vector<ThetaEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    /// Sources pairwise distinct, continuations pairwise distinct and
    /// disjoint from the sources.
    bool well_formed() const;

private:
    std::vector<ThetaEntry> entries_;
};

}  // namespace lamdelta
