#include "lamdelta/context.hpp"

#include <algorithm>

namespace lamdelta {

std::optional<Type> Context::lookup(const Name& x) const {
    for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it)
        if (it->name == x) return it->type;
    return std::nullopt;
}

Context Context::extended(const Name& x, const Type& t) const {
    Context out;
    out.bindings_.reserve(bindings_.size() + 1);
    for (const auto& b : bindings_)
        if (b.name != x) out.bindings_.push_back(b);
    out.bindings_.push_back(Binding{x, t});
    return out;
}

std::optional<Name> Context::duplicate_name() const {
    NameSet seen;
    for (const auto& b : bindings_)
        if (!seen.insert(b.name).second) return b.name;
    return std::nullopt;
}

NameSet Context::names() const {
    NameSet out;
    for (const auto& b : bindings_) out.insert(b.name);
    return out;
}

std::string print_context(const Context& ctx) {
    std::string out;
    for (const auto& b : ctx.bindings()) {
        if (!out.empty()) out += ", ";
        out += b.name + ":" + print_type(b.type, {.sugar = true});
    }
    return out;
}

const ThetaEntry* Theta::find(const Name& source) const {
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
        if (it->source == source) return &*it;
    return nullptr;
}

Theta Theta::extended(ThetaEntry entry) const {
    Theta out = *this;
    out.entries_.push_back(std::move(entry));
    return out;
}

bool Theta::well_formed() const {
    NameSet sources, conts;
    for (const auto& e : entries_) {
        if (!sources.insert(e.source).second) return false;
        if (!conts.insert(e.continuation).second) return false;
    }
    return std::none_of(conts.begin(), conts.end(), [&](const Name& z) { return sources.count(z) != 0; });
}

}  // namespace lamdelta
