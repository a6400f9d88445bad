#include "cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "vsp/context.hpp"
#include "vsp/error.hpp"
#include "vsp/finitefield.hpp"
#include "vsp/formula.hpp"
#include "vsp/invariant.hpp"
#include "vsp/iso.hpp"
#include "vsp/qe.hpp"

namespace vsp {

namespace {

struct Options {
    std::optional<std::string> field;
    std::string model_path;
    std::string model2_path;
    std::string formula;
    std::string tuple;
    std::string tuple2;
    std::vector<std::string> lets;
    std::uint64_t p = 0;
};

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ParseError:
        case ErrorKind::MalformedScalar:
        case ErrorKind::ContextFormat:
        case ErrorKind::Usage:
            return 2;
        default:
            return 1;
    }
}

Model load_model(const Options& o, const std::string& path) {
    std::optional<FieldCtx> field;
    if (o.field) field = FieldCtx::parse(*o.field);
    if (path.empty()) return Model::rich(field.value_or(FieldCtx::rationals()));
    Model m = load_context(path);
    if (field && !(*field == m.field())) {
        fail(ErrorKind::Usage, "--field " + *o.field + " contradicts the context field " + m.field().name());
    }
    return m;
}

std::string read_formula(const std::string& arg) {
    if (arg.empty()) fail(ErrorKind::Usage, "--formula is required");
    if (arg.front() != '@') return arg;
    std::ifstream in(arg.substr(1));
    if (!in) fail(ErrorKind::Usage, "cannot read formula file '" + arg.substr(1) + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

std::set<std::string> constant_names(const Model& m) {
    std::set<std::string> names;
    for (const auto& [name, value] : m.constants()) names.insert(name);
    return names;
}

Env constant_env(const Model& m) {
    Env env;
    env.consts = m.constants();
    return env;
}

ModelElement resolve_element(const Model& m, std::string text) {
    auto first = text.find_first_not_of(" \t");
    auto last = text.find_last_not_of(" \t");
    text = first == std::string::npos ? std::string() : text.substr(first, last - first + 1);
    if (!text.empty() && text.front() == '$') text.erase(0, 1);
    if (m.constants().count(text)) return m.constant(text);
    auto e = parse_element(text, m.field());
    if (!m.contains(e)) fail(ErrorKind::InvalidElement, text + " is not an element of the model");
    return e;
}

std::vector<ModelElement> resolve_tuple(const Model& m, const std::string& text, const char* flag) {
    if (text.empty()) fail(ErrorKind::Usage, std::string(flag) + " is required");
    std::vector<ModelElement> tuple;
    std::stringstream items(text);
    std::string item;
    while (std::getline(items, item, ';')) tuple.push_back(resolve_element(m, item));
    return tuple;
}

void require_theory_model(const Model& m) {
    if (m.descriptor().is_fragment()) {
        fail(ErrorKind::InvalidDescriptor, "quantified formulas need a model with infinitely many axes");
    }
}

void cmd_eval(const Options& o, std::ostream& out) {
    Model m = load_model(o, o.model_path);
    auto names = constant_names(m);
    auto phi = parse_formula(read_formula(o.formula), m.field(), &names);
    Env env = constant_env(m);
    for (const auto& binding : o.lets) {
        auto eq = binding.find('=');
        if (eq == std::string::npos || eq == 0) fail(ErrorKind::Usage, "--let expects var=element, got '" + binding + "'");
        env.vars[binding.substr(0, eq)] = resolve_element(m, binding.substr(eq + 1));
    }
    if (!phi->is_quantifier_free()) {
        require_theory_model(m);
        phi = eliminate_all(phi, m.field());
    }
    out << (eval_qf(phi, env, m.field()) ? "true" : "false") << "\n";
}

void cmd_qe(const Options& o, std::ostream& out) {
    Model m = load_model(o, o.model_path);
    auto names = constant_names(m);
    auto phi = parse_formula(read_formula(o.formula), m.field(), &names);
    out << eliminate_all(phi, m.field())->to_string() << "\n";
}

void cmd_decide(const Options& o, std::ostream& out) {
    Model m = load_model(o, o.model_path);
    auto phi = parse_formula(read_formula(o.formula), m.field());
    out << (decide_sentence(phi, m.field()) ? "true" : "false") << "\n";
}

void cmd_qftp(const Options& o, std::ostream& out) {
    Model m = load_model(o, o.model_path);
    out << qf_invariant(m.field(), resolve_tuple(m, o.tuple, "--tuple")).to_string() << "\n";
}

void cmd_qfequiv(const Options& o, std::ostream& out) {
    Model m = load_model(o, o.model_path);
    auto a = resolve_tuple(m, o.tuple, "--tuple");
    auto b = resolve_tuple(m, o.tuple2, "--tuple2");
    if (a.size() != b.size()) fail(ErrorKind::ArityMismatch, "tuples have different lengths");
    out << (qf_equiv(m.field(), a, b) ? "true" : "false") << "\n";
}

void cmd_iso(const Options& o, std::ostream& out) {
    Model m = load_model(o, o.model_path);
    auto a = resolve_tuple(m, o.tuple, "--tuple");
    auto b = resolve_tuple(m, o.tuple2, "--tuple2");
    out << extend_to_hat(m.field(), a, b).to_string();
}

void cmd_ff(const Options& o, std::ostream& out) {
    if (o.p == 0) fail(ErrorKind::Usage, "--p is required");
    out << describe_counterexample(construct_counterexample(o.p));
}

void cmd_model_iso(const Options& o, std::ostream& out) {
    if (o.model_path.empty() || o.model2_path.empty()) fail(ErrorKind::Usage, "--model and --model2 are required");
    Model a = load_model(o, o.model_path);
    Model b = load_model(o, o.model2_path);
    bool iso = a.field() == b.field() && descriptor_iso(a.descriptor(), b.descriptor());
    out << (iso ? "true" : "false") << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decision procedures for vector spaces with a union of independent subspaces", "vsp"};
    app.require_subcommand(1);
    Options o;

    auto add_field = [&](CLI::App* sub) { sub->add_option("--field", o.field, "q or zp:<p>"); };
    auto add_model = [&](CLI::App* sub) { sub->add_option("--model", o.model_path, "model-context file"); };
    auto add_formula = [&](CLI::App* sub) {
        sub->add_option("--formula", o.formula, "formula text, or @file")->required();
    };
    auto add_tuples = [&](CLI::App* sub, bool two) {
        sub->add_option("--tuple", o.tuple, "elements or constant names separated by ';'")->required();
        if (two) sub->add_option("--tuple2", o.tuple2, "second tuple")->required();
    };

    std::vector<std::pair<CLI::App*, void (*)(const Options&, std::ostream&)>> commands;
    auto command = [&](const char* name, const char* help, void (*fn)(const Options&, std::ostream&)) {
        auto* sub = app.add_subcommand(name, help);
        commands.emplace_back(sub, fn);
        return sub;
    };

    auto* eval = command("eval", "evaluate a formula in a model context", cmd_eval);
    add_field(eval);
    add_model(eval);
    add_formula(eval);
    eval->add_option("--let", o.lets, "variable binding var=element");
    for (auto* sub : {command("qe", "print a quantifier-free equivalent", cmd_qe),
                      command("decide", "decide a sentence", cmd_decide)}) {
        add_field(sub);
        add_model(sub);
        add_formula(sub);
    }
    auto* qftp = command("qftp", "print the quantifier-free type invariant of a tuple", cmd_qftp);
    add_field(qftp);
    add_model(qftp);
    add_tuples(qftp, false);
    for (auto* sub : {command("qfequiv", "compare the quantifier-free types of two tuples", cmd_qfequiv),
                      command("iso", "print the hull isomorphism extending a to b", cmd_iso)}) {
        add_field(sub);
        add_model(sub);
        add_tuples(sub, true);
    }
    auto* ff = command("ff-counterexample", "print the finite-field counterexample", cmd_ff);
    ff->add_option("--p", o.p, "prime")->required();
    auto* miso = command("model-iso", "compare two model descriptors", cmd_model_iso);
    add_field(miso);
    miso->add_option("--model", o.model_path, "first model-context file")->required();
    miso->add_option("--model2", o.model2_path, "second model-context file")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "ERROR:" << kind_name(ErrorKind::Usage) << ": " << e.what() << "\n";
        return 2;
    }

    for (const auto& [sub, fn] : commands) {
        if (!sub->parsed()) continue;
        try {
            fn(o, out);
            return 0;
        } catch (const Error& e) {
            err << "ERROR:" << kind_name(e.kind()) << ": " << e.what() << "\n";
            return exit_code(e.kind());
        }
    }
    return 2;
}

}  // namespace vsp
