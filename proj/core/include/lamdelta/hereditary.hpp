#pragma once

#include "lamdelta/context.hpp"
#include "lamdelta/term.hpp"
#include "lamdelta/type.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace lamdelta {

/// Type of an application spine headed by `x`, where `x` has type `cut`:
///   ctype(T, x, x)       = T
///   ctype(T, x, t1 t2)   = B   when ctype(T, x, t1) = A -> B
/// Undefined (nullopt) everywhere else.
std::optional<Type> ctype(const Type& cut, const Name& x, const Term& t);

/// Cut type plus the function tag of the termination metric
/// (0 for hereditary substitution, 1 for the structural variant).
struct CutInfo {
    Type cut_type;
    int metric_tag = 0;
};

class HsError : public std::runtime_error {
public:
    enum class Kind {
        CtypeUndefined,
        CtypeNotArrow,
        AnnotationMismatch,
        MetricViolation,
        TypingRequired,
        TypeMismatch,
    };

    HsError(Kind kind, Term at, const std::string& detail = {});

    Kind kind() const { return kind_; }
    const Term& at() const { return at_; }

private:
    Kind kind_;
    Term at_;
};

const char* to_string(HsError::Kind kind);

/// Clauses of [t/x]^A, in definition order.
enum class HsClause : std::size_t {
    VarHit,      // [t/x]x = t
    VarMiss,     // [t/x]y = y
    Lam,         // under lambda
    Delta,       // under Delta
    App,         // application, no new redex
    AppBeta,     // new beta-redex: recurse at the smaller cut type
    AppStruct,   // new structural redex: hand over to <(y,z,s2)>
};
inline constexpr std::size_t kHsClauseCount = 7;

/// Clauses of <Theta>^{A1}_{A2}, in definition order.
enum class ShClause : std::size_t {
    VarHit,       // x in Theta: \y:A1 -> A2. z (y t)
    VarMiss,
    Lam,
    Delta,
    HitLamArg,    // x (\y:A1. t'')  =  z [t/y]^{A1} <Theta>t''
    HitDeltaArg,  // x (delta y:~(A1 -> A2). t'')  =  z (delta z2:~A2. <Theta,(y,z2,t)>t'')
    HitOtherArg,  // x t', t' not an abstraction
    App,          // any other application
};
inline constexpr std::size_t kShClauseCount = 8;

const char* to_string(HsClause c);
const char* to_string(ShClause c);

struct ClauseCoverage {
    std::array<std::uint64_t, kHsClauseCount> hsubst{};
    std::array<std::uint64_t, kShClauseCount> shsubst{};

    void merge(const ClauseCoverage& other);
    bool complete() const;
};

struct HsOptions {
    /// Check that every recursive call strictly decreases (cut, tag, size).
    bool check_metric = true;
    /// Clause counters; may be null.
    ClauseCoverage* coverage = nullptr;
};

/// Hereditary substitution [t/x]^cut target. Newly created beta- and
/// structural redexes are reduced on the spot; redexes already present in
/// the inputs are left alone. Fresh names avoid every name in the inputs.
Term hsubst(const Term& t, const Name& x, const Type& cut, const Term& target, HsOptions opts = {});

/// Hereditary structural substitution <theta>^{dom}_{cod} target.
/// Sources have type ~(dom -> cod), continuations ~cod, arguments dom.
Term shsubst(const Theta& theta, const Type& dom, const Type& cod, const Term& target, HsOptions opts = {});

/// Plain capture-avoiding substitution of `\y:dom -> cod. z_i (y t_i)` for
/// each source x_i, first entry first. No reduction.
Term uplift_subst(const Theta& theta, const Type& dom, const Type& cod, const Term& target);

/// Normal form via hereditary substitution. Throws HsError(TypingRequired)
/// when ctx does not type t.
Term norm(const Context& ctx, const Term& t, HsOptions opts = {});

/// Beta/structural equality: alpha-equality of normal forms. Throws
/// HsError(TypeMismatch) when the two terms have different types.
bool decide_eq(const Context& ctx, const Term& a, const Term& b, HsOptions opts = {});

}  // namespace lamdelta
