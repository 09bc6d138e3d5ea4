#pragma once

#include "lamdelta/term.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lamdelta {

enum class Rule { Beta, StructRed };

const char* to_string(Rule rule);

/// Child indices from the root to a redex: abstraction body = 0,
/// application function = 0, application argument = 1.
using Path = std::vector<std::size_t>;

/// Dot separated indices; the root is ".".
std::string print_path(const Path& path);

struct Step {
    Rule rule;
    Path path;
    Term result;  // the whole term after contraction
};

struct Trace {
    Term start;
    std::vector<Step> steps;
    Term final_term;
};

/// A Delta whose annotation is `C -> bot` with C not an arrow was applied.
/// Only ill-typed terms reach this.
class MalformedDelta : public std::runtime_error {
public:
    explicit MalformedDelta(const Term& redex);
};

class FuelExhausted : public std::runtime_error {
public:
    explicit FuelExhausted(Trace partial);
    const Trace& partial() const { return partial_; }
    const Term& last() const { return partial_.final_term; }

private:
    Trace partial_;
};

/// `(\x:A. t) s` to `[s/x]t`; nullopt when `redex` is not a beta-redex.
std::optional<Term> contract_beta(const Term& redex);

/// `(delta x:~(A -> B). t) s` to `delta z:~B. [\y:A -> B. z (y s) / x] t`
/// with z and y fresh for the redex and for `ambient`. nullopt when `redex`
/// is not an application of a Delta to an argument; throws MalformedDelta
/// when the annotation negates a non-arrow.
std::optional<Term> contract_struct(const Term& redex, const NameSet& ambient = {});

/// Subterm at `path`; throws std::out_of_range for an invalid path.
const Term& subterm_at(const Term& t, const Path& path);
Term replace_at(const Term& t, const Path& path, const Term& replacement);

/// Every one-step reduct in leftmost-outermost order.
std::vector<Step> enumerate_steps(const Term& t);

enum class Strategy { LeftmostOutermost, RightmostInnermost };

inline constexpr std::size_t kDefaultFuel = 100000;

/// First redex under the strategy, contracted; nullopt for normal forms.
std::optional<Step> step_once(const Term& t, Strategy strategy = Strategy::LeftmostOutermost);

/// Reduces until normal. Throws FuelExhausted after `fuel` steps.
Trace reduce_trace(const Term& t, std::size_t fuel = kDefaultFuel,
                   Strategy strategy = Strategy::LeftmostOutermost);
Term reduce_to_nf(const Term& t, std::size_t fuel = kDefaultFuel,
                  Strategy strategy = Strategy::LeftmostOutermost);

/// Breadth-first search of the reducts of both terms up to `depth` steps;
/// true iff some pair is alpha-equal.
bool joinable(const Term& a, const Term& b, std::size_t depth);

/// One line per step: `<index> <rule> <path> -> <term>`.
std::string render_trace(const Trace& trace);

}  // namespace lamdelta
