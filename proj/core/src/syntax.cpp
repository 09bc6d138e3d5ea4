#include "lamdelta/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace lamdelta {

namespace {

std::string join_expected(const std::vector<std::string>& expected) {
    std::string out;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) out += (i + 1 == expected.size()) ? " or " : ", ";
        out += expected[i];
    }
    return out;
}

}  // namespace

ParseError::ParseError(const std::string& message, SourceSpan span, std::vector<std::string> expected)
    : std::runtime_error(std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message +
                         (expected.empty() ? std::string{} : " (expected " + join_expected(expected) + ")")),
      span_(span),
      expected_(std::move(expected)) {}

DuplicateName::DuplicateName(const std::string& name, SourceSpan span)
    : ParseError("duplicate name '" + name + "'", span), name_(name) {}

namespace {

enum class Tok { Ident, Lambda, Delta, Bot, Tilde, Arrow, Colon, Dot, LParen, RParen, Comma, Equals, End };

const char* describe(Tok t) {
    switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Lambda: return "'\\'";
    case Tok::Delta: return "'delta'";
    case Tok::Bot: return "'bot'";
    case Tok::Tilde: return "'~'";
    case Tok::Arrow: return "'->'";
    case Tok::Colon: return "':'";
    case Tok::Dot: return "'.'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Equals: return "'='";
    case Tok::End: return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind;
    std::size_t start;
    std::size_t end;
    std::string text;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

// Recursive-descent parser over text[begin, end). Spans refer to `text`.
class Parser {
public:
    Parser(std::string_view text, std::size_t begin, std::size_t end) : text_(text), pos_(begin), end_(end) {
        advance();
    }

    Type type() {
        Type lhs = unary_type();
        if (cur_.kind == Tok::Arrow) {
            advance();
            return Type::arrow(std::move(lhs), type());
        }
        return lhs;
    }

    Term term() {
        if (cur_.kind == Tok::Lambda || cur_.kind == Tok::Delta) return abstraction();
        if (!starts_atom()) fail("expected a term", {"identifier", "'('", "'\\'", "'delta'"});
        Term acc = atom();
        while (true) {
            if (starts_atom()) {
                acc = Term::app(std::move(acc), atom());
            } else if (cur_.kind == Tok::Lambda || cur_.kind == Tok::Delta) {
                acc = Term::app(std::move(acc), abstraction());
                break;
            } else {
                break;
            }
        }
        return acc;
    }

    Context context() {
        std::vector<Binding> bindings;
        if (cur_.kind == Tok::End) return Context{};
        while (true) {
            Token name = expect(Tok::Ident);
            expect(Tok::Colon);
            bindings.push_back(Binding{name.text, type()});
            if (cur_.kind != Tok::Comma) break;
            advance();
        }
        return Context{std::move(bindings)};
    }

    const Token& current() const { return cur_; }
    Token expect(Tok kind) {
        if (cur_.kind != kind) fail(std::string("unexpected ") + token_desc(), {describe(kind)});
        Token t = cur_;
        advance();
        return t;
    }
    void expect_end() {
        if (cur_.kind != Tok::End) fail(std::string("unexpected ") + token_desc(), {"end of input"});
    }

    [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) const {
        throw ParseError(msg, span_of(text_, cur_.start, cur_.end), std::move(expected));
    }

    static SourceSpan span_of(std::string_view text, std::size_t start, std::size_t end) {
        SourceSpan s;
        s.start = std::min(start, text.size());
        s.end = std::min(std::max(end, s.start), text.size());
        for (std::size_t i = 0; i < s.start; ++i) {
            if (text[i] == '\n') {
                ++s.line;
                s.column = 1;
            } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
                ++s.column;
            }
        }
        return s;
    }

private:
    std::string token_desc() const {
        if (cur_.kind == Tok::End) return "end of input";
        return "'" + cur_.text + "'";
    }

    bool starts_atom() const { return cur_.kind == Tok::Ident || cur_.kind == Tok::LParen; }

    Type unary_type() {
        switch (cur_.kind) {
        case Tok::Tilde:
            advance();
            return Type::neg(unary_type());
        case Tok::Bot:
            advance();
            return Type::bottom();
        case Tok::Ident: {
            Token t = cur_;
            advance();
            return Type::base(t.text);
        }
        case Tok::LParen: {
            advance();
            Type inner = type();
            expect(Tok::RParen);
            return inner;
        }
        default:
            fail(std::string("unexpected ") + token_desc(), {"identifier", "'bot'", "'~'", "'('"});
        }
    }

    Term abstraction() {
        bool is_delta = cur_.kind == Tok::Delta;
        advance();
        Token name = expect(Tok::Ident);
        expect(Tok::Colon);
        Type ann = type();
        expect(Tok::Dot);
        Term body = term();
        return is_delta ? Term::delta(name.text, std::move(ann), std::move(body))
                        : Term::lam(name.text, std::move(ann), std::move(body));
    }

    Term atom() {
        if (cur_.kind == Tok::Ident) {
            Token t = cur_;
            advance();
            return Term::var(t.text);
        }
        expect(Tok::LParen);
        Term inner = term();
        expect(Tok::RParen);
        return inner;
    }

    bool match_bytes(std::string_view s) const {
        return pos_ + s.size() <= end_ && text_.substr(pos_, s.size()) == s;
    }

    void advance() {
        while (pos_ < end_ && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::size_t start = pos_;
        auto emit = [&](Tok k, std::size_t len) {
            pos_ += len;
            cur_ = Token{k, start, pos_, std::string(text_.substr(start, len))};
        };
        if (pos_ >= end_) {
            cur_ = Token{Tok::End, end_, end_, {}};
            return;
        }
        char c = text_[pos_];
        if (ident_start(c)) {
            std::size_t e = pos_;
            while (e < end_ && ident_char(text_[e])) ++e;
            std::string_view word = text_.substr(pos_, e - pos_);
            Tok k = word == "delta" ? Tok::Delta : word == "bot" ? Tok::Bot : Tok::Ident;
            return emit(k, e - pos_);
        }
        switch (c) {
        case '\\': return emit(Tok::Lambda, 1);
        case '~': return emit(Tok::Tilde, 1);
        case ':': return emit(Tok::Colon, 1);
        case '.': return emit(Tok::Dot, 1);
        case '(': return emit(Tok::LParen, 1);
        case ')': return emit(Tok::RParen, 1);
        case ',': return emit(Tok::Comma, 1);
        case '=': return emit(Tok::Equals, 1);
        default: break;
        }
        if (match_bytes("->")) return emit(Tok::Arrow, 2);
        if (match_bytes("\xCE\xBB")) return emit(Tok::Lambda, 2);      // λ
        if (match_bytes("\xCE\x94")) return emit(Tok::Delta, 2);       // Δ
        if (match_bytes("\xE2\x8A\xA5")) return emit(Tok::Bot, 3);    // ⊥
        if (match_bytes("\xC2\xAC")) return emit(Tok::Tilde, 2);       // ¬
        if (match_bytes("\xE2\x86\x92")) return emit(Tok::Arrow, 3);   // →
        std::size_t len = 1;
        unsigned char lead = static_cast<unsigned char>(c);
        if (lead >= 0xC0) {
            while (pos_ + len < end_ && (static_cast<unsigned char>(text_[pos_ + len]) & 0xC0) == 0x80) ++len;
        }
        throw ParseError("unexpected character '" + std::string(text_.substr(pos_, len)) + "'",
                         span_of(text_, pos_, pos_ + len));
    }

    std::string_view text_;
    std::size_t pos_;
    std::size_t end_;
    Token cur_{Tok::End, 0, 0, {}};
};

}  // namespace

Type parse_type(std::string_view text) {
    Parser p(text, 0, text.size());
    Type t = p.type();
    p.expect_end();
    return t;
}

Term parse_term(std::string_view text) {
    Parser p(text, 0, text.size());
    Term t = p.term();
    p.expect_end();
    return t;
}

Context parse_context(std::string_view text) {
    Parser p(text, 0, text.size());
    Context ctx = p.context();
    p.expect_end();
    if (auto dup = ctx.duplicate_name()) {
        auto pos = text.find(*dup);
        throw ParseError("duplicate context name '" + *dup + "'",
                         Parser::span_of(text, pos == std::string_view::npos ? 0 : pos,
                                         pos == std::string_view::npos ? 0 : pos + dup->size()));
    }
    return ctx;
}

namespace {

enum class Prec { Top, AppFun, Atom };

void print_rec(std::string& out, const Term& t, Prec prec, const PrintOptions& opts) {
    switch (t.kind()) {
    case Term::Kind::Var:
        out += t.name();
        return;
    case Term::Kind::Lam:
    case Term::Kind::Delta: {
        bool paren = prec != Prec::Top;
        if (paren) out += '(';
        if (t.is_lam()) {
            out += '\\';
            out += t.binder();
            out += ':';
            out += print_type(t.annotation(), {.sugar = opts.sugar});
        } else {
            out += "delta ";
            out += t.binder();
            out += ':';
            out += print_type(t.annotation(), {.sugar = true});
        }
        out += ". ";
        print_rec(out, t.body(), Prec::Top, opts);
        if (paren) out += ')';
        return;
    }
    case Term::Kind::App: {
        bool paren = prec == Prec::Atom;
        if (paren) out += '(';
        print_rec(out, t.fun(), Prec::AppFun, opts);
        out += ' ';
        print_rec(out, t.arg(), Prec::Atom, opts);
        if (paren) out += ')';
        return;
    }
    }
}

}  // namespace

std::string print_term(const Term& t, PrintOptions opts) {
    std::string out;
    print_rec(out, t, Prec::Top, opts);
    return out;
}

std::vector<Definition> DefFile::expanded() const {
    std::vector<Definition> out;
    out.reserve(definitions.size());
    for (const auto& def : definitions) {
        Definition e = def;
        for (auto it = out.rbegin(); it != out.rend(); ++it)
            if (occurs_free(it->name, e.body)) e.body = subst(it->body, it->name, e.body);
        out.push_back(std::move(e));
    }
    return out;
}

DefFile parse_deffile(std::string_view text) {
    DefFile file;
    NameSet declared;
    std::size_t line_start = 0;
    while (line_start <= text.size()) {
        std::size_t nl = text.find('\n', line_start);
        std::size_t line_end = nl == std::string_view::npos ? text.size() : nl;
        std::size_t content_end = line_end;
        if (content_end > line_start && text[content_end - 1] == '\r') --content_end;
        std::size_t hash = text.substr(line_start, content_end - line_start).find('#');
        if (hash != std::string_view::npos) content_end = line_start + hash;

        Parser p(text, line_start, content_end);
        if (p.current().kind != Tok::End) {
            Token kw = p.expect(Tok::Ident);
            if (kw.text == "base") {
                Token name = p.expect(Tok::Ident);
                p.expect_end();
                if (!declared.insert(name.text).second)
                    throw DuplicateName(name.text, Parser::span_of(text, name.start, name.end));
                file.base_types.push_back(name.text);
            } else if (kw.text == "def") {
                Token name = p.expect(Tok::Ident);
                std::optional<Type> ascription;
                if (p.current().kind == Tok::Colon) {
                    p.expect(Tok::Colon);
                    ascription = p.type();
                }
                p.expect(Tok::Equals);
                Term body = p.term();
                p.expect_end();
                if (!declared.insert(name.text).second)
                    throw DuplicateName(name.text, Parser::span_of(text, name.start, name.end));
                file.definitions.push_back(
                    Definition{name.text, std::move(ascription), std::move(body), Parser::span_of(text, kw.start, content_end)});
            } else {
                throw ParseError("unknown declaration '" + kw.text + "'", Parser::span_of(text, kw.start, kw.end),
                                 {"'base'", "'def'"});
            }
        }
        if (nl == std::string_view::npos) break;
        line_start = nl + 1;
    }
    return file;
}

}  // namespace lamdelta
