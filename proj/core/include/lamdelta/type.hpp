#pragma once

#include <cstddef>
#include <memory>
#include <string>

namespace lamdelta {

/// Simple types: bottom, named base types and arrows. Negation is the
/// derived form `A -> bot`; there is no separate constructor for it.
///
/// A Type is a cheap immutable handle. Copies share the underlying tree.
class Type {
public:
    enum class Kind { Bottom, Base, Arrow };

    static Type bottom();
    static Type base(std::string name);
    static Type arrow(Type domain, Type codomain);
    static Type neg(Type inner) { return arrow(std::move(inner), bottom()); }

    Kind kind() const;
    bool is_bottom() const { return kind() == Kind::Bottom; }
    bool is_base() const { return kind() == Kind::Base; }
    bool is_arrow() const { return kind() == Kind::Arrow; }

    /// True for `A -> bot`.
    bool is_negation() const;

    // Base only.
    const std::string& name() const;
    // Arrow only.
    const Type& domain() const;
    const Type& codomain() const;

    std::size_t node_count() const;
    std::size_t depth() const;

    friend bool operator==(const Type& a, const Type& b);
    friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }

private:
    struct Node;
    explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// The ordering on types: `a` is a proper subexpression of `b`.
/// Irreflexive, transitive and well-founded; bottom and base types are minimal.
bool is_strict_subexpr(const Type& a, const Type& b);

struct TypePrintOptions {
    /// Render `A -> bot` as `~A`.
    bool sugar = false;
};

std::string print_type(const Type& t, TypePrintOptions opts = {});

}  // namespace lamdelta
