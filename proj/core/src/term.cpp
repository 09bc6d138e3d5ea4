#include "lamdelta/term.hpp"

#include <cassert>
#include <cctype>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lamdelta {

struct Term::Node {
    Kind kind;
    Name name;
    Type ann;
    Term left{nullptr};
    Term right{nullptr};
    std::size_t size = 1;
};

namespace {
// Placeholder annotation for nodes that carry none.
const Type& no_type() {
    static const Type t = Type::bottom();
    return t;
}
}  // namespace

Term Term::var(Name name) {
    return Term{std::make_shared<const Node>(Node{Kind::Var, std::move(name), no_type(), Term{nullptr}, Term{nullptr}, 1})};
}

Term Term::lam(Name binder, Type annotation, Term body) {
    std::size_t sz = 1 + body.size();
    return Term{std::make_shared<const Node>(Node{Kind::Lam, std::move(binder), std::move(annotation), std::move(body), Term{nullptr}, sz})};
}

Term Term::delta(Name binder, Type annotation, Term body) {
    std::size_t sz = 1 + body.size();
    return Term{std::make_shared<const Node>(Node{Kind::Delta, std::move(binder), std::move(annotation), std::move(body), Term{nullptr}, sz})};
}

Term Term::app(Term fun, Term arg) {
    std::size_t sz = 1 + fun.size() + arg.size();
    return Term{std::make_shared<const Node>(Node{Kind::App, {}, no_type(), std::move(fun), std::move(arg), sz})};
}

Term::Kind Term::kind() const {
    assert(node_);
    return node_->kind;
}

const Name& Term::name() const {
    if (is_app()) throw std::logic_error("Term::name on application");
    return node_->name;
}

const Type& Term::annotation() const {
    if (!is_abstraction()) throw std::logic_error("Term::annotation on non-abstraction");
    return node_->ann;
}

const Term& Term::body() const {
    if (!is_abstraction()) throw std::logic_error("Term::body on non-abstraction");
    return node_->left;
}

const Term& Term::fun() const {
    if (!is_app()) throw std::logic_error("Term::fun on non-application");
    return node_->left;
}

const Term& Term::arg() const {
    if (!is_app()) throw std::logic_error("Term::arg on non-application");
    return node_->right;
}

std::size_t Term::size() const { return node_->size; }

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.size() != b.size()) return false;
    switch (a.kind()) {
    case Term::Kind::Var: return a.name() == b.name();
    case Term::Kind::Lam:
    case Term::Kind::Delta:
        return a.binder() == b.binder() && a.annotation() == b.annotation() && a.body() == b.body();
    case Term::Kind::App: return a.fun() == b.fun() && a.arg() == b.arg();
    }
    return false;
}

namespace {

void free_vars_into(const Term& t, NameSet& bound, NameSet& out) {
    switch (t.kind()) {
    case Term::Kind::Var:
        if (!bound.count(t.name())) out.insert(t.name());
        return;
    case Term::Kind::Lam:
    case Term::Kind::Delta: {
        bool inserted = bound.insert(t.binder()).second;
        free_vars_into(t.body(), bound, out);
        if (inserted) bound.erase(t.binder());
        return;
    }
    case Term::Kind::App:
        free_vars_into(t.fun(), bound, out);
        free_vars_into(t.arg(), bound, out);
        return;
    }
}

}  // namespace

NameSet free_vars(const Term& t) {
    NameSet bound, out;
    free_vars_into(t, bound, out);
    return out;
}

bool occurs_free(const Name& x, const Term& t) {
    switch (t.kind()) {
    case Term::Kind::Var: return t.name() == x;
    case Term::Kind::Lam:
    case Term::Kind::Delta: return t.binder() != x && occurs_free(x, t.body());
    case Term::Kind::App: return occurs_free(x, t.fun()) || occurs_free(x, t.arg());
    }
    return false;
}

void collect_names(const Term& t, NameSet& out) {
    switch (t.kind()) {
    case Term::Kind::Var: out.insert(t.name()); return;
    case Term::Kind::Lam:
    case Term::Kind::Delta:
        out.insert(t.binder());
        collect_names(t.body(), out);
        return;
    case Term::Kind::App:
        collect_names(t.fun(), out);
        collect_names(t.arg(), out);
        return;
    }
}

NameSet all_names(const Term& t) {
    NameSet out;
    collect_names(t, out);
    return out;
}

Name fresh(const NameSet& avoid, const Name& hint_in) {
    const Name hint = hint_in.empty() ? Name("v") : hint_in;
    if (!avoid.count(hint)) return hint;
    std::size_t stem_len = hint.size();
    while (stem_len > 0 && std::isdigit(static_cast<unsigned char>(hint[stem_len - 1]))) --stem_len;
    Name stem = hint.substr(0, stem_len);
    if (stem.empty()) stem = "v";
    for (std::size_t k = 1;; ++k) {
        Name candidate = stem + std::to_string(k);
        if (!avoid.count(candidate)) return candidate;
    }
}

Name NameSupply::fresh(const Name& hint) {
    Name n = lamdelta::fresh(claimed_, hint);
    claimed_.insert(n);
    return n;
}

namespace {

Term subst_rec(const Term& repl, const NameSet& repl_fv, const Name& x, const Term& target) {
    switch (target.kind()) {
    case Term::Kind::Var:
        return target.name() == x ? repl : target;
    case Term::Kind::App: {
        Term f = subst_rec(repl, repl_fv, x, target.fun());
        Term a = subst_rec(repl, repl_fv, x, target.arg());
        if (f == target.fun() && a == target.arg()) return target;
        return Term::app(std::move(f), std::move(a));
    }
    case Term::Kind::Lam:
    case Term::Kind::Delta: {
        const Name& y = target.binder();
        if (y == x || !occurs_free(x, target.body())) return target;
        Name binder = y;
        Term body = target.body();
        if (repl_fv.count(y)) {
            NameSet avoid = repl_fv;
            collect_names(body, avoid);
            avoid.insert(x);
            binder = fresh(avoid, y);
            body = subst_rec(Term::var(binder), NameSet{binder}, y, body);
        }
        body = subst_rec(repl, repl_fv, x, body);
        return target.is_lam() ? Term::lam(binder, target.annotation(), std::move(body))
                               : Term::delta(binder, target.annotation(), std::move(body));
    }
    }
    return target;
}

using Binding = std::pair<const Name*, const Name*>;

// Innermost binding position of `n` on one side, or -1 when free.
long lookup(const std::vector<Binding>& env, const Name& n, bool left) {
    for (std::size_t i = env.size(); i-- > 0;) {
        const Name& bound = left ? *env[i].first : *env[i].second;
        if (bound == n) return static_cast<long>(i);
    }
    return -1;
}

bool alpha_rec(const Term& a, const Term& b, std::vector<Binding>& env) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case Term::Kind::Var: {
        long ia = lookup(env, a.name(), true);
        long ib = lookup(env, b.name(), false);
        if (ia < 0 && ib < 0) return a.name() == b.name();
        return ia == ib;
    }
    case Term::Kind::Lam:
    case Term::Kind::Delta: {
        if (a.annotation() != b.annotation()) return false;
        env.emplace_back(&a.binder(), &b.binder());
        bool eq = alpha_rec(a.body(), b.body(), env);
        env.pop_back();
        return eq;
    }
    case Term::Kind::App:
        return alpha_rec(a.fun(), b.fun(), env) && alpha_rec(a.arg(), b.arg(), env);
    }
    return false;
}

bool is_head_form(const Term& t) {
    if (t.is_var()) return true;
    return t.is_app() && is_head_form(t.fun()) && is_normal(t.arg());
}

}  // namespace

Term subst(const Term& replacement, const Name& x, const Term& target) {
    return subst_rec(replacement, free_vars(replacement), x, target);
}

bool alpha_eq(const Term& a, const Term& b) {
    if (a.size() != b.size()) return false;
    std::vector<Binding> env;
    return alpha_rec(a, b, env);
}

std::optional<Name> head(const Term& t) {
    const Term* cur = &t;
    while (cur->is_app()) cur = &cur->fun();
    if (cur->is_var()) return cur->name();
    return std::nullopt;
}

bool is_normal(const Term& t) {
    switch (t.kind()) {
    case Term::Kind::Var: return true;
    case Term::Kind::Lam:
    case Term::Kind::Delta: return is_normal(t.body());
    case Term::Kind::App: return is_head_form(t.fun()) && is_normal(t.arg());
    }
    return false;
}

}  // namespace lamdelta
