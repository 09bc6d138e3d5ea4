#include "lamdelta/type.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace lamdelta {

struct Type::Node {
    Kind kind;
    std::string name;
    Type dom{nullptr};
    Type cod{nullptr};
    std::size_t count = 1;
    std::size_t depth = 0;
};

Type Type::bottom() {
    static const Type bot{std::make_shared<const Node>(Node{Kind::Bottom, {}, Type{nullptr}, Type{nullptr}, 1, 0})};
    return bot;
}

Type Type::base(std::string name) {
    return Type{std::make_shared<const Node>(Node{Kind::Base, std::move(name), Type{nullptr}, Type{nullptr}, 1, 0})};
}

Type Type::arrow(Type domain, Type codomain) {
    std::size_t count = 1 + domain.node_count() + codomain.node_count();
    std::size_t depth = 1 + std::max(domain.depth(), codomain.depth());
    return Type{std::make_shared<const Node>(Node{Kind::Arrow, {}, std::move(domain), std::move(codomain), count, depth})};
}

Type::Kind Type::kind() const {
    assert(node_);
    return node_->kind;
}

bool Type::is_negation() const {
    return is_arrow() && node_->cod.is_bottom();
}

const std::string& Type::name() const {
    if (kind() != Kind::Base) throw std::logic_error("Type::name on non-base type");
    return node_->name;
}

const Type& Type::domain() const {
    if (kind() != Kind::Arrow) throw std::logic_error("Type::domain on non-arrow type");
    return node_->dom;
}

const Type& Type::codomain() const {
    if (kind() != Kind::Arrow) throw std::logic_error("Type::codomain on non-arrow type");
    return node_->cod;
}

std::size_t Type::node_count() const { return node_->count; }
std::size_t Type::depth() const { return node_->depth; }

bool operator==(const Type& a, const Type& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.node_count() != b.node_count()) return false;
    switch (a.kind()) {
    case Type::Kind::Bottom: return true;
    case Type::Kind::Base: return a.name() == b.name();
    case Type::Kind::Arrow: return a.domain() == b.domain() && a.codomain() == b.codomain();
    }
    return false;
}

bool is_strict_subexpr(const Type& a, const Type& b) {
    if (!b.is_arrow() || a.node_count() >= b.node_count()) return false;
    const Type& d = b.domain();
    const Type& c = b.codomain();
    return a == d || a == c || is_strict_subexpr(a, d) || is_strict_subexpr(a, c);
}

namespace {

void print_into(std::string& out, const Type& t, bool sugar, bool atomic);

// Operand of `~`: anything that is not an atom or another negation needs parens.
void print_neg_operand(std::string& out, const Type& t, bool sugar) {
    bool bare = !t.is_arrow() || (sugar && t.is_negation());
    if (bare) {
        print_into(out, t, sugar, true);
    } else {
        out += '(';
        print_into(out, t, sugar, false);
        out += ')';
    }
}

void print_into(std::string& out, const Type& t, bool sugar, bool atomic) {
    switch (t.kind()) {
    case Type::Kind::Bottom: out += "bot"; return;
    case Type::Kind::Base: out += t.name(); return;
    case Type::Kind::Arrow:
        if (sugar && t.is_negation()) {
            out += '~';
            print_neg_operand(out, t.domain(), sugar);
            return;
        }
        if (atomic) out += '(';
        {
            // Arrow operands are always bracketed: (b -> b) -> (b -> b).
            const Type& d = t.domain();
            const Type& c = t.codomain();
            print_into(out, d, sugar, d.is_arrow() && !(sugar && d.is_negation()));
            out += " -> ";
            print_into(out, c, sugar, c.is_arrow() && !(sugar && c.is_negation()));
        }
        if (atomic) out += ')';
        return;
    }
}

}  // namespace

std::string print_type(const Type& t, TypePrintOptions opts) {
    std::string out;
    print_into(out, t, opts.sugar, false);
    return out;
}

}  // namespace lamdelta
