#include "lamdelta/reduction.hpp"

#include "lamdelta/syntax.hpp"

#include <unordered_set>
#include <utility>

namespace lamdelta {

const char* to_string(Rule rule) {
    return rule == Rule::Beta ? "Beta" : "StructRed";
}

std::string print_path(const Path& path) {
    if (path.empty()) return ".";
    std::string out;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(path[i]);
    }
    return out;
}

MalformedDelta::MalformedDelta(const Term& redex)
    : std::runtime_error("malformed Delta annotation in redex '" + print_term(redex) + "'") {}

FuelExhausted::FuelExhausted(Trace partial)
    : std::runtime_error("fuel exhausted after " + std::to_string(partial.steps.size()) + " steps"),
      partial_(std::move(partial)) {}

std::optional<Term> contract_beta(const Term& redex) {
    if (!redex.is_app() || !redex.fun().is_lam()) return std::nullopt;
    const Term& lam = redex.fun();
    return subst(redex.arg(), lam.binder(), lam.body());
}

std::optional<Term> contract_struct(const Term& redex, const NameSet& ambient) {
    if (!redex.is_app() || !redex.fun().is_delta()) return std::nullopt;
    const Term& delta = redex.fun();
    const Type& ann = delta.annotation();
    if (!ann.is_negation()) return std::nullopt;
    const Type& inner = ann.domain();
    if (!inner.is_arrow()) throw MalformedDelta(redex);

    NameSet avoid = ambient;
    for (const auto& n : free_vars(redex)) avoid.insert(n);
    avoid.insert(delta.binder());
    NameSupply names(std::move(avoid));
    Name z = names.fresh("z");
    Name y = names.fresh("y");

    const Term& s = redex.arg();
    Term wrapper = Term::lam(y, inner, Term::app(Term::var(z), Term::app(Term::var(y), s)));
    Term body = subst(wrapper, delta.binder(), delta.body());
    return Term::delta(z, Type::neg(inner.codomain()), std::move(body));
}

const Term& subterm_at(const Term& t, const Path& path) {
    const Term* cur = &t;
    for (std::size_t idx : path) {
        if (cur->is_abstraction() && idx == 0) {
            cur = &cur->body();
        } else if (cur->is_app() && idx <= 1) {
            cur = idx == 0 ? &cur->fun() : &cur->arg();
        } else {
            throw std::out_of_range("invalid path " + print_path(path));
        }
    }
    return *cur;
}

namespace {

Term replace_rec(const Term& t, const Path& path, std::size_t i, const Term& replacement) {
    if (i == path.size()) return replacement;
    std::size_t idx = path[i];
    if (t.is_abstraction() && idx == 0) {
        Term body = replace_rec(t.body(), path, i + 1, replacement);
        return t.is_lam() ? Term::lam(t.binder(), t.annotation(), std::move(body))
                          : Term::delta(t.binder(), t.annotation(), std::move(body));
    }
    if (t.is_app() && idx == 0) return Term::app(replace_rec(t.fun(), path, i + 1, replacement), t.arg());
    if (t.is_app() && idx == 1) return Term::app(t.fun(), replace_rec(t.arg(), path, i + 1, replacement));
    throw std::out_of_range("invalid path " + print_path(path));
}

struct Contraction {
    Rule rule;
    Term contractum;
};

std::optional<Contraction> contract_any(const Term& t, const NameSet& ambient) {
    if (auto r = contract_beta(t)) return Contraction{Rule::Beta, std::move(*r)};
    if (auto r = contract_struct(t, ambient)) return Contraction{Rule::StructRed, std::move(*r)};
    return std::nullopt;
}

void enumerate_rec(const Term& root, const Term& t, Path& path, const NameSet& ambient, std::vector<Step>& out) {
    if (auto c = contract_any(t, ambient)) out.push_back(Step{c->rule, path, replace_at(root, path, c->contractum)});
    switch (t.kind()) {
    case Term::Kind::Var: return;
    case Term::Kind::Lam:
    case Term::Kind::Delta:
        path.push_back(0);
        enumerate_rec(root, t.body(), path, ambient, out);
        path.pop_back();
        return;
    case Term::Kind::App:
        path.push_back(0);
        enumerate_rec(root, t.fun(), path, ambient, out);
        path.back() = 1;
        enumerate_rec(root, t.arg(), path, ambient, out);
        path.pop_back();
        return;
    }
}

// Finds the first redex under the strategy; returns its contraction and fills `path`.
std::optional<Contraction> find_redex(const Term& t, Strategy strategy, Path& path, const NameSet& ambient) {
    bool outer_first = strategy == Strategy::LeftmostOutermost;
    if (outer_first) {
        if (auto c = contract_any(t, ambient)) return c;
    }
    switch (t.kind()) {
    case Term::Kind::Var: break;
    case Term::Kind::Lam:
    case Term::Kind::Delta:
        path.push_back(0);
        if (auto c = find_redex(t.body(), strategy, path, ambient)) return c;
        path.pop_back();
        break;
    case Term::Kind::App: {
        std::size_t first = outer_first ? 0 : 1;
        for (std::size_t k = 0; k < 2; ++k) {
            std::size_t idx = k == 0 ? first : 1 - first;
            path.push_back(idx);
            if (auto c = find_redex(idx == 0 ? t.fun() : t.arg(), strategy, path, ambient)) return c;
            path.pop_back();
        }
        break;
    }
    }
    if (!outer_first) return contract_any(t, ambient);
    return std::nullopt;
}

// Hash key invariant under renaming of bound variables.
void alpha_key(const Term& t, std::vector<const Name*>& bound, std::string& out) {
    switch (t.kind()) {
    case Term::Kind::Var: {
        for (std::size_t i = bound.size(); i-- > 0;) {
            if (*bound[i] == t.name()) {
                out += '#';
                out += std::to_string(bound.size() - 1 - i);
                out += ' ';
                return;
            }
        }
        out += t.name();
        out += ' ';
        return;
    }
    case Term::Kind::Lam:
    case Term::Kind::Delta:
        out += t.is_lam() ? "(L " : "(D ";
        out += print_type(t.annotation());
        out += ' ';
        bound.push_back(&t.binder());
        alpha_key(t.body(), bound, out);
        bound.pop_back();
        out += ')';
        return;
    case Term::Kind::App:
        out += "(@ ";
        alpha_key(t.fun(), bound, out);
        alpha_key(t.arg(), bound, out);
        out += ')';
        return;
    }
}

std::string alpha_key(const Term& t) {
    std::vector<const Name*> bound;
    std::string out;
    alpha_key(t, bound, out);
    return out;
}

struct Frontier {
    std::vector<Term> terms;
    std::unordered_set<std::string> seen;
};

// Expands one level; returns true if a new reduct is already known to `other`.
bool expand(Frontier& mine, const Frontier& other) {
    std::vector<Term> next;
    for (const auto& t : mine.terms) {
        for (auto& step : enumerate_steps(t)) {
            std::string key = alpha_key(step.result);
            if (!mine.seen.insert(key).second) continue;
            if (other.seen.count(key)) return true;
            next.push_back(std::move(step.result));
        }
    }
    mine.terms = std::move(next);
    return false;
}

}  // namespace

Term replace_at(const Term& t, const Path& path, const Term& replacement) {
    return replace_rec(t, path, 0, replacement);
}

std::vector<Step> enumerate_steps(const Term& t) {
    std::vector<Step> out;
    Path path;
    NameSet ambient = all_names(t);
    enumerate_rec(t, t, path, ambient, out);
    return out;
}

std::optional<Step> step_once(const Term& t, Strategy strategy) {
    Path path;
    NameSet ambient = all_names(t);
    auto c = find_redex(t, strategy, path, ambient);
    if (!c) return std::nullopt;
    return Step{c->rule, path, replace_at(t, path, c->contractum)};
}

Trace reduce_trace(const Term& t, std::size_t fuel, Strategy strategy) {
    Trace trace{t, {}, t};
    while (auto step = step_once(trace.final_term, strategy)) {
        if (trace.steps.size() == fuel) throw FuelExhausted(std::move(trace));
        trace.final_term = step->result;
        trace.steps.push_back(std::move(*step));
    }
    return trace;
}

Term reduce_to_nf(const Term& t, std::size_t fuel, Strategy strategy) {
    Term cur = t;
    std::size_t used = 0;
    while (auto step = step_once(cur, strategy)) {
        if (used == fuel) throw FuelExhausted(Trace{t, {}, cur});
        cur = std::move(step->result);
        ++used;
    }
    return cur;
}

bool joinable(const Term& a, const Term& b, std::size_t depth) {
    Frontier fa{{a}, {alpha_key(a)}};
    Frontier fb{{b}, {alpha_key(b)}};
    if (fb.seen.count(*fa.seen.begin())) return true;
    for (std::size_t d = 0; d < depth; ++d) {
        if (fa.terms.empty() && fb.terms.empty()) break;
        if (expand(fa, fb)) return true;
        if (expand(fb, fa)) return true;
    }
    return false;
}

std::string render_trace(const Trace& trace) {
    std::string out;
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const Step& s = trace.steps[i];
        out += std::to_string(i + 1) + " " + to_string(s.rule) + " " + print_path(s.path) + " -> " +
               print_term(s.result) + "\n";
    }
    return out;
}

}  // namespace lamdelta
