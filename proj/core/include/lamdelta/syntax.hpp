#pragma once

#include "lamdelta/context.hpp"
#include "lamdelta/term.hpp"
#include "lamdelta/type.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lamdelta {

struct SourceSpan {
    std::size_t start = 0;  // byte offsets, end exclusive
    std::size_t end = 0;
    std::size_t line = 1;   // 1-based
    std::size_t column = 1;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, SourceSpan span, std::vector<std::string> expected = {});

    const SourceSpan& span() const { return span_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    SourceSpan span_;
    std::vector<std::string> expected_;
};

/// Raised by parse_deffile when a name is declared twice.
class DuplicateName : public ParseError {
public:
    DuplicateName(const std::string& name, SourceSpan span);
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

// Types:  bot | ⊥ | ident | A -> B | ~A | ¬A | ( A )     (-> and → are right associative)
// Terms:  ident | \x:T. t | λx:T. t | delta x:T. t | Δx:T. t | t t | ( t )
// Application is left associative; abstraction bodies extend as far right as possible.
Type parse_type(std::string_view text);
Term parse_term(std::string_view text);

/// `x:T, y:U` (empty text gives the empty context).
Context parse_context(std::string_view text);

struct PrintOptions {
    /// Render `A -> bot` as `~A` in lambda annotations and standalone types.
    /// Delta annotations are always negations and always print as `~T`.
    bool sugar = false;
};

std::string print_term(const Term& t, PrintOptions opts = {});

struct Definition {
    Name name;
    std::optional<Type> ascription;
    Term body;
    SourceSpan span;
};

struct DefFile {
    std::vector<Name> base_types;
    std::vector<Definition> definitions;

    /// Definition bodies with earlier definitions substituted in, in
    /// declaration order.
    std::vector<Definition> expanded() const;
};

// Line oriented:
//   base <name>
//   def <name> [: <Type>] = <Term>
//   # comment
DefFile parse_deffile(std::string_view text);

}  // namespace lamdelta
