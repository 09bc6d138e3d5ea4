#include "lamdelta/cli.hpp"

#include "lamdelta/hereditary.hpp"
#include "lamdelta/propgen.hpp"
#include "lamdelta/reduction.hpp"
#include "lamdelta/syntax.hpp"
#include "lamdelta/typing.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace lamdelta::cli {

namespace {

struct Options {
    bool sugar = false;
    std::vector<std::string> exprs;
    std::string file;
    std::string ctx;
    std::size_t fuel = kDefaultFuel;
    std::string method = "hs";
    std::vector<std::string> positionals;
    std::string seed = "0xC0FFEE";
    std::size_t cases = 500;
    std::size_t max_size = 30;
    std::size_t max_depth = 3;
    std::size_t count = 10;
    std::string goal;
};

// A usage problem detected after CLI11 accepted the command line.
struct UsageError {
    std::string message;
};

struct Named {
    std::string name;  // "-" for an inline expression
    std::optional<Type> ascription;
    Term body;
    std::size_t line = 0;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError{"cannot open '" + path + "'"};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<Named> load_inputs(const Options& o) {
    bool has_expr = !o.exprs.empty();
    bool has_file = !o.file.empty();
    if (has_expr == has_file) throw UsageError{"give exactly one input: a file or -e EXPR"};
    std::vector<Named> out;
    if (has_expr) {
        if (o.exprs.size() != 1) throw UsageError{"give -e exactly once"};
        out.push_back({"-", std::nullopt, parse_term(o.exprs[0]), 0});
        return out;
    }
    DefFile df = parse_deffile(read_file(o.file));
    for (auto& d : df.expanded()) out.push_back({d.name, d.ascription, d.body, d.span.line});
    return out;
}

std::uint64_t parse_seed(const std::string& text) {
    try {
        std::size_t used = 0;
        std::uint64_t v = std::stoull(text, &used, 0);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw UsageError{"invalid seed '" + text + "'"};
    }
}

Context load_context(const Options& o) {
    Context ctx = parse_context(o.ctx);
    check_context(ctx);
    return ctx;
}

std::string where(const Named& n) {
    if (n.name == "-") return "";
    return n.name + " (line " + std::to_string(n.line) + "): ";
}

std::string show_type(const Type& t, const Options& o) { return print_type(t, {.sugar = o.sugar}); }
std::string show_term(const Term& t, const Options& o) { return print_term(t, {.sugar = o.sugar}); }

std::string type_error_text(const TypeError& e, const Options& o) {
    std::string msg = std::string("type error: ") + to_string(e.kind()) + " at '" + show_term(e.subject(), o) + "'";
    if (e.expected()) msg += ", expected " + show_type(*e.expected(), o);
    if (e.actual()) msg += ", got " + show_type(*e.actual(), o);
    return msg;
}

Type infer_checked(const Context& ctx, const Named& n) {
    Type t = infer(ctx, n.body);
    if (n.ascription && *n.ascription != t)
        throw TypeError(TypeError::Kind::AscriptionMismatch, n.body, n.ascription, t);
    return t;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
    Context ctx = load_context(o);
    int status = kOk;
    for (const auto& n : load_inputs(o)) {
        try {
            Type t = infer_checked(ctx, n);
            if (n.name == "-") out << show_type(t, o) << "\n";
            else out << n.name << " : " << show_type(t, o) << "\n";
        } catch (const TypeError& e) {
            err << where(n) << type_error_text(e, o) << "\n";
            status = kUserError;
        }
    }
    return status;
}

int cmd_norm(const Options& o, std::ostream& out, std::ostream& err) {
    Context ctx = load_context(o);
    int status = kOk;
    for (const auto& n : load_inputs(o)) {
        try {
            infer_checked(ctx, n);
            Term nf = o.method == "step" ? reduce_to_nf(n.body, o.fuel) : norm(ctx, n.body);
            if (n.name == "-") out << show_term(nf, o) << "\n";
            else out << n.name << " = " << show_term(nf, o) << "\n";
        } catch (const TypeError& e) {
            err << where(n) << type_error_text(e, o) << "\n";
            status = std::max<int>(status, kUserError);
        } catch (const FuelExhausted& e) {
            err << where(n) << e.what() << "\n";
            status = kResource;
        }
    }
    return status;
}

int cmd_trace(const Options& o, std::ostream& out, std::ostream& err) {
    load_context(o);
    auto inputs = load_inputs(o);
    int status = kOk;
    for (const auto& n : inputs) {
        if (n.name != "-") out << "== " << n.name << "\n";
        try {
            Trace tr = reduce_trace(n.body, o.fuel);
            if (tr.steps.empty()) out << "already normal\n";
            PrintOptions po{.sugar = o.sugar};
            for (std::size_t i = 0; i < tr.steps.size(); ++i) {
                const Step& s = tr.steps[i];
                out << i + 1 << " " << to_string(s.rule) << " " << print_path(s.path) << " -> "
                    << print_term(s.result, po) << "\n";
            }
        } catch (const FuelExhausted& e) {
            PrintOptions po{.sugar = o.sugar};
            const auto& steps = e.partial().steps;
            for (std::size_t i = 0; i < steps.size(); ++i)
                out << i + 1 << " " << to_string(steps[i].rule) << " " << print_path(steps[i].path) << " -> "
                    << print_term(steps[i].result, po) << "\n";
            err << where(n) << e.what() << "\n";
            status = kResource;
        } catch (const MalformedDelta& e) {
            err << where(n) << e.what() << "\n";
            status = std::max<int>(status, kUserError);
        }
    }
    return status;
}

int cmd_eq(const Options& o, std::ostream& out, std::ostream& err) {
    std::vector<std::string> texts = o.exprs;
    texts.insert(texts.end(), o.positionals.begin(), o.positionals.end());
    if (texts.size() != 2) throw UsageError{"eq needs exactly two expressions"};
    Context ctx = load_context(o);
    Term a = parse_term(texts[0]);
    Term b = parse_term(texts[1]);
    infer(ctx, a);
    infer(ctx, b);
    try {
        if (decide_eq(ctx, a, b)) {
            out << "equal\n";
            return kOk;
        }
        out << "not equal\n";
        return kUserError;
    } catch (const HsError& e) {
        if (e.kind() != HsError::Kind::TypeMismatch) throw;
        err << "type mismatch: " << e.what() << "\n";
        return kResource;
    }
}

int cmd_ctype(const Options& o, std::ostream& out) {
    std::vector<std::string> args = o.positionals;
    if (!o.exprs.empty()) args.insert(args.end(), o.exprs.begin(), o.exprs.end());
    if (args.size() != 3) throw UsageError{"ctype needs CUT-TYPE VAR EXPR"};
    Type cut = parse_type(args[0]);
    Term x = parse_term(args[1]);
    if (!x.is_var()) throw UsageError{"'" + args[1] + "' is not a variable"};
    Term t = parse_term(args[2]);
    auto ct = ctype(cut, x.name(), t);
    out << (ct ? show_type(*ct, o) : std::string("undefined")) << "\n";
    return kOk;
}

GenConfig gen_config(const Options& o) {
    GenConfig cfg;
    cfg.seed = parse_seed(o.seed);
    cfg.cases = o.cases;
    cfg.max_term_size = o.max_size;
    cfg.max_type_depth = o.max_depth;
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError{e.what()};
    }
    return cfg;
}

int cmd_selftest(const Options& o, std::ostream& out) {
    GenConfig cfg = gen_config(o);
    char head[128];
    std::snprintf(head, sizeof head, "seed 0x%llx, %zu cases, max size %zu, max type depth %zu\n",
                  static_cast<unsigned long long>(cfg.seed), cfg.cases, cfg.max_term_size, cfg.max_type_depth);
    out << head;
    SuiteReport rep = run_suite(cfg);
    out << rep.render();
    return rep.ok() ? kOk : kResource;
}

int cmd_gen(const Options& o, std::ostream& out, std::ostream& err) {
    GenConfig cfg = gen_config(o);
    Context ctx = load_context(o);
    std::optional<Type> goal;
    if (!o.goal.empty()) goal = parse_type(o.goal);
    std::size_t made = 0;
    for (std::size_t i = 0; made < o.count && i < o.count * 20 + 20; ++i) {
        Rng rng(derive_seed(cfg.seed, 0, i));
        Type ty = goal ? *goal : gen_type(cfg, rng);
        auto t = gen_term(cfg, ctx, ty, cfg.max_term_size, rng);
        if (!t) continue;
        out << show_term(*t, o) << "\n";
        ++made;
    }
    if (made < o.count) {
        err << "generated " << made << " of " << o.count << " terms\n";
        return kResource;
    }
    return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Typed lambda-Delta calculus: checker, reducer and hereditary normaliser", "lamdelta"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    Options o;
    app.add_flag("--sugar", o.sugar, "Print A -> bot as ~A");

    auto input = [&](CLI::App* sub) {
        sub->add_option("-e,--expr", o.exprs, "Inline expression");
        sub->add_option("--ctx", o.ctx, "Context, e.g. \"x:b, f:b -> b\"");
    };

    auto* check = app.add_subcommand("check", "Type-check an expression or every definition in a file");
    input(check);
    check->add_option("file", o.file, "Definition file");

    auto* norm_cmd = app.add_subcommand("norm", "Print the normal form");
    input(norm_cmd);
    norm_cmd->add_option("file", o.file, "Definition file");
    norm_cmd->add_option("--method", o.method, "hs (hereditary substitution) or step (reduction)")
        ->check(CLI::IsMember({"hs", "step"}));
    norm_cmd->add_option("--fuel", o.fuel, "Step limit for --method step");

    auto* trace = app.add_subcommand("trace", "Print every reduction step");
    input(trace);
    trace->add_option("file", o.file, "Definition file");
    trace->add_option("--fuel", o.fuel, "Step limit");

    auto* eq = app.add_subcommand("eq", "Decide beta/structural equality of two expressions");
    input(eq);
    eq->add_option("exprs", o.positionals, "Two expressions");

    auto* ct = app.add_subcommand("ctype", "Type of an application spine headed by VAR");
    ct->add_option("args", o.positionals, "CUT-TYPE VAR EXPR");
    ct->add_option("-e,--expr", o.exprs, "Expression");

    auto gen_flags = [&](CLI::App* sub) {
        sub->add_option("--seed", o.seed, "Random seed (decimal or 0x hex)");
        sub->add_option("--max-size", o.max_size, "Maximum term size");
        sub->add_option("--max-depth", o.max_depth, "Maximum type depth");
    };

    auto* selftest = app.add_subcommand("selftest", "Run the property suite");
    gen_flags(selftest);
    selftest->add_option("--cases", o.cases, "Cases per property");

    auto* gen = app.add_subcommand("gen", "Print random well-typed terms");
    gen_flags(gen);
    gen->add_option("--count", o.count, "Number of terms");
    gen->add_option("--type", o.goal, "Goal type (random when absent)");
    gen->add_option("--ctx", o.ctx, "Context");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUserError;
    }

    try {
        if (check->parsed()) return cmd_check(o, out, err);
        if (norm_cmd->parsed()) return cmd_norm(o, out, err);
        if (trace->parsed()) return cmd_trace(o, out, err);
        if (eq->parsed()) return cmd_eq(o, out, err);
        if (ct->parsed()) return cmd_ctype(o, out);
        if (selftest->parsed()) return cmd_selftest(o, out);
        if (gen->parsed()) return cmd_gen(o, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.message << "\n";
        return kUserError;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kUserError;
    } catch (const TypeError& e) {
        err << type_error_text(e, o) << "\n";
        return kUserError;
    } catch (const HsError& e) {
        err << "hereditary substitution failed: " << e.what() << "\n";
        return kResource;
    }
    return kUserError;
}

}  // namespace lamdelta::cli
