#pragma once

#include "lamdelta/context.hpp"
#include "lamdelta/hereditary.hpp"
#include "lamdelta/term.hpp"
#include "lamdelta/type.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace lamdelta {

struct GenConfig {
    std::uint64_t seed = 0xC0FFEE;
    std::size_t max_type_depth = 3;
    std::size_t max_term_size = 30;
    std::vector<Name> base_type_pool{"b"};
    /// Probability that an abstraction is a Delta rather than a lambda when
    /// the goal type admits both.
    double delta_bias = 0.35;
    /// Cases per property.
    std::size_t cases = 500;
    std::size_t confluence_cases = 300;
    std::size_t confluence_depth = 8;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

/// Deterministic random source. The mapping from engine output to draws is
/// fixed here so replays do not depend on the standard library's
/// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(next() % n); }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    bool chance(double p) { return unit() < p; }

    template <typename T>
    const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

private:
    std::mt19937_64 engine_;
};

/// Seed for case `index` of stream `stream`; used to give every case an
/// independent, replayable random state.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

Type gen_type(const GenConfig& cfg, Rng& rng);
Type gen_type(const GenConfig& cfg, Rng& rng, std::size_t max_depth);

/// Small context of up to `max_vars` bindings with distinct names.
Context gen_context(const GenConfig& cfg, Rng& rng, std::size_t max_vars = 3);

/// Goal-directed generation of a term of type `goal` under `ctx` with at
/// most `max_size` nodes. nullopt means the generator gave up (for
/// example: bot in an empty context). When `focus` names a context
/// variable it is preferred as an application head.
std::optional<Term> gen_term(const GenConfig& cfg, const Context& ctx, const Type& goal, std::size_t max_size,
                             Rng& rng, const Name* focus = nullptr);

/// Smaller well-typed candidates for counterexample minimisation, smallest
/// first: one-step reducts, closed subterms, subterms replaced by context
/// variables. Every candidate types under ctx.
std::vector<Term> shrink(const Context& ctx, const Term& t);

// ---- property harness -------------------------------------------------------

/// Generated input to a property. Which fields are used depends on the property.
struct Instance {
    Context ctx;
    std::vector<Term> terms;
    std::vector<Type> types;
    std::vector<Name> names;
    Theta theta;
};

std::string describe(const Instance& inst);

enum class Verdict { Pass, Fail, Discard };

struct Outcome {
    Verdict verdict = Verdict::Pass;
    std::string detail;

    static Outcome pass() { return {}; }
    static Outcome fail(std::string why) { return {Verdict::Fail, std::move(why)}; }
    static Outcome discard(std::string why = {}) { return {Verdict::Discard, std::move(why)}; }
};

struct Property {
    std::string name;
    std::function<std::optional<Instance>(const GenConfig&, Rng&)> generate;
    std::function<Outcome(const Instance&, ClauseCoverage*)> check;
    /// Overrides GenConfig::cases when set.
    std::optional<std::size_t> cases;
};

struct Counterexample {
    std::uint64_t seed = 0;  // replay seed of the failing case
    std::string instance;    // shrunk instance, printed
    std::string detail;
    std::size_t shrink_steps = 0;
};

struct PropReport {
    std::string name;
    std::size_t cases_run = 0;
    std::size_t discarded = 0;
    std::size_t failures = 0;
    std::vector<Counterexample> counterexamples;  // at most a few, shrunk
};

inline constexpr double kMinDeltaFraction = 0.10;
inline constexpr std::size_t kDeltaSample = 1000;

struct SuiteReport {
    std::vector<PropReport> properties;
    ClauseCoverage coverage;
    /// Share of generated typed terms that contain a Delta abstraction.
    double delta_fraction = 0.0;

    bool ok() const;
    std::string render() const;
};

/// Shrinks the instance's terms while the property keeps failing.
Instance shrink_instance(const Property& prop, Instance inst, std::size_t* steps = nullptr);

PropReport run_property(const Property& prop, const GenConfig& cfg, std::uint64_t stream,
                        ClauseCoverage* coverage = nullptr);

/// Reference normaliser used by the soundness properties.
using Normaliser = std::function<Term(const Term&)>;

/// The lemma suite: typing, reduction and hereditary-substitution properties.
/// An empty oracle means leftmost-outermost reduction.
std::vector<Property> lemma_properties(const GenConfig& cfg = {}, Normaliser oracle = {});

/// Share of kDeltaSample terms from the standard generator that contain a Delta.
double delta_fraction(const GenConfig& cfg, std::uint64_t stream);

SuiteReport run_suite(const GenConfig& cfg);
SuiteReport run_suite(const GenConfig& cfg, const std::vector<Property>& props);

}  // namespace lamdelta
