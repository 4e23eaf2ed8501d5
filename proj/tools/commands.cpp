#include "commands.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "psys/dsl.hpp"
#include "psys/engine.hpp"
#include "psys/explore.hpp"
#include "psys/measures.hpp"
#include "psys/rm.hpp"

namespace psys::cli {

namespace {

using Json = nlohmann::ordered_json;

std::optional<std::string> slurp(const std::string& path, std::ostream& err) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err << path << ": cannot open file\n";
        return std::nullopt;
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void report(const std::string& path, const std::vector<SourceDiagnostic>& diags, std::ostream& err) {
    for (const auto& d : diags) err << path << ':' << to_string(d) << '\n';
}

std::optional<AnySystem> load_system(const std::string& path, std::ostream& err) {
    auto text = slurp(path, err);
    if (!text) return std::nullopt;
    auto parsed = parse_system(*text);
    if (!parsed.ok()) {
        report(path, parsed.diagnostics, err);
        return std::nullopt;
    }
    return std::move(*parsed.value);
}

std::optional<RegisterMachine> load_machine(const std::string& path, std::ostream& err) {
    auto text = slurp(path, err);
    if (!text) return std::nullopt;
    auto parsed = parse_machine(*text);
    if (!parsed.ok()) {
        report(path, parsed.diagnostics, err);
        return std::nullopt;
    }
    return std::move(*parsed.value);
}

Json violation_json(const Violation& v) {
    Json j;
    j["code"] = v.code;
    j["name"] = v.name;
    j["location"] = v.location;
    j["message"] = v.message;
    j["severity"] = v.severity == Severity::Error ? "error" : "warning";
    return j;
}

/// Prints violations to stderr; true when the system may be executed.
bool check_valid(const std::string& path, const AnySystem& sys, std::ostream& err) {
    const auto rep = validate(sys);
    for (const auto& v : rep.violations)
        err << path << ": " << (v.severity == Severity::Error ? "error" : "warning") << ' '
            << v.code << " (" << v.name << ") at " << v.location << ": " << v.message << '\n';
    return rep.ok();
}

std::string values_text(const std::set<Count>& s) {
    std::string out = "{";
    for (Count v : s) out += (out.size() > 1 ? ", " : "") + std::to_string(v);
    return out + "}";
}

void print_step_pretty(const TransitionSystem& ts, const Trace& trace, std::ostream& out) {
    auto config = [](const Configuration& c) {
        std::string s;
        for (std::size_t l = 0; l < c.regions.size(); ++l)
            s += "  [" + std::to_string(l + 1) + "] " + to_string(c.regions[l]);
        return s + "  env+ " + to_string(c.env.finite_part());
    };
    const auto configs = trace.configurations();
    out << "step 0:" << config(configs.front()) << '\n';
    for (std::size_t t = 0; t < trace.steps.size(); ++t) {
        out << "step " << t + 1 << ":";
        for (const auto& [rule, n] : trace.steps[t].choice.applications)
            out << ' ' << ts.rules()[rule].id << (n > 1 ? "x" + std::to_string(n) : "");
        out << " ->" << config(configs[t + 1]) << '\n';
    }
    if (trace.halted)
        out << "halted after " << trace.steps_taken << " steps, result "
            << trace.final_config.region(ts.output()).size() << '\n';
    else
        out << "not halted after " << trace.steps_taken << " steps\n";
    for (const auto& n : trace.notes) out << "note: " << n << '\n';
}

}  // namespace

int cmd_validate(const std::string& path, Streams io) {
    auto sys = load_system(path, io.err);
    if (!sys) return kUsage;
    const auto rep = validate(*sys);
    if (io.pretty) {
        for (const auto& v : rep.violations)
            io.out << (v.severity == Severity::Error ? "error   " : "warning ") << v.code << "  "
                   << std::left << std::setw(18) << v.name << v.location << ": " << v.message << '\n';
        io.out << (rep.ok() ? "valid" : "invalid") << '\n';
    } else {
        Json j;
        j["ok"] = rep.ok();
        j["violations"] = Json::array();
        for (const auto& v : rep.violations) j["violations"].push_back(violation_json(v));
        io.out << j.dump() << '\n';
    }
    for (const auto& v : rep.violations)
        if (v.severity == Severity::Error) io.err << path << ": " << v.code << ": " << v.message << '\n';
    return rep.ok() ? kOk : kInvalid;
}

int cmd_run(const std::string& path, const RunArgs& args, Streams io) {
    const auto policy = parse_policy(args.policy);
    if (!policy) {
        io.err << "unknown policy '" << args.policy << "'\n";
        return kUsage;
    }
    auto sys = load_system(path, io.err);
    if (!sys) return kUsage;
    if (!check_valid(path, *sys, io.err)) return kInvalid;

    const auto ts = TransitionSystem::from(*sys);
    RunOptions ro;
    ro.seed = args.seed;
    ro.max_steps = args.max_steps;
    ro.policy = *policy;

    Trace trace;
    if (args.accept) {
        auto [input, perr] = parse_multiset(*args.accept);
        if (!input) {
            io.err << "--accept: " << perr->message << " at offset " << perr->offset << '\n';
            return kUsage;
        }
        const Label region = args.region.value_or(ts.output());
        if (region < 1 || region > ts.degree()) {
            io.err << "--region " << region << " is not a region of this system\n";
            return kUsage;
        }
        for (const auto& [a, n] : *input)
            if (!std::visit([&](const auto& s) { return s.alphabet.count(a) != 0; }, *sys)) {
                io.err << "--accept: object '" << a << "' is not in the alphabet\n";
                return kUsage;
            }
        trace = run_accepting(ts, *input, region, ro).trace;
    } else {
        trace = run(ts, ro);
    }
    if (io.pretty) print_step_pretty(ts, trace, io.out);
    else write_trace_jsonl(ts, trace, io.out);
    return trace.halted ? kOk : kBudget;
}

int cmd_explore(const std::string& path, const ExploreArgs& args, Streams io) {
    auto sys = load_system(path, io.err);
    if (!sys) return kUsage;
    if (!check_valid(path, *sys, io.err)) return kInvalid;
    const auto ts = TransitionSystem::from(*sys);
    ExploreBudget b;
    b.max_depth = args.max_depth;
    b.max_total_objects = args.max_objects;
    b.max_branches = args.max_branches;
    b.max_configs = args.max_configs;
    ExploreOptions opts;
    opts.jobs = std::max(1u, args.jobs);
    const auto o = explore(ts, b, opts);
    if (io.pretty) {
        io.out << "results         " << values_text(o.results) << '\n'
               << "exhausted       " << (o.exhausted ? "yes" : "no") << '\n'
               << "halting leaves  " << o.halting_leaves << '\n'
               << "cut branches    " << o.cut_branches << '\n'
               << "visited         " << o.visited_configs << '\n';
    } else {
        io.out << outcome_json(o) << '\n';
    }
    return o.exhausted ? kOk : kBudget;
}

int cmd_profile(const std::string& path, Streams io) {
    auto sys = load_system(path, io.err);
    if (!sys) return kUsage;
    if (!check_valid(path, *sys, io.err)) return kInvalid;
    ComplexityProfile p;
    if (const auto* c = std::get_if<CellPSystem>(&*sys)) p = profile(*c);
    else if (const auto* t = std::get_if<TissuePSystem>(&*sys)) p = profile(*t);
    else {
        io.err << path << ": profile needs a cell or tissue system; use classify for interaction rules\n";
        return kUsage;
    }
    if (io.pretty) {
        io.out << "degree             " << p.degree << '\n'
               << "max symport size   " << p.max_symport_size << '\n'
               << "max antiport size  " << p.max_antiport_size << " (" << to_string(p.measure) << ")\n"
               << "objects            " << p.num_objects << '\n'
               << "rules              " << p.num_rules << '\n';
    } else {
        Json j;
        j["degree"] = p.degree;
        j["max_symport_size"] = p.max_symport_size;
        j["max_antiport_size"] = p.max_antiport_size;
        j["num_objects"] = p.num_objects;
        j["num_rules"] = p.num_rules;
        j["measure"] = to_string(p.measure);
        io.out << j.dump() << '\n';
    }
    return kOk;
}

int cmd_classify(const std::string& path, Streams io) {
    auto text = slurp(path, io.err);
    if (!text) return kUsage;
    auto parsed = parse_interactions(*text);
    if (!parsed.ok()) {
        report(path, parsed.diagnostics, io.err);
        return kUsage;
    }
    for (const auto& rule : *parsed.value) {
        std::string name = "uniport";
        if (const auto* r = std::get_if<InteractionRule>(&rule)) name = std::string(to_string(classify(*r)));
        if (io.pretty) io.out << std::left << std::setw(28) << to_string(rule) << name << '\n';
        else io.out << name << '\n';
    }
    return kOk;
}

int cmd_compile_rm(const std::string& path, const std::string& out_path, Streams io) {
    auto m = load_machine(path, io.err);
    if (!m) return kUsage;
    CompiledSystem compiled;
    try {
        compiled = compile(*m);
    } catch (const std::invalid_argument& e) {
        io.err << path << ": " << e.what() << '\n';
        return kUsage;
    }
    if (!check_valid(path, compiled.system, io.err)) return kInvalid;
    const std::string text = print_system(compiled.system);
    if (out_path.empty()) {
        io.out << text;
        return kOk;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!(f << text)) {
        io.err << out_path << ": cannot write file\n";
        return kUsage;
    }
    return kOk;
}

int cmd_rm_verify(const std::string& path, std::uint64_t bound, Streams io) {
    auto m = load_machine(path, io.err);
    if (!m) return kUsage;
    VerifyBudget b;
    b.value_bound = bound;
    VerifyReport rep;
    try {
        rep = verify_compilation(*m, b);
    } catch (const std::invalid_argument& e) {
        io.err << path << ": " << e.what() << '\n';
        return kUsage;
    }
    if (io.pretty) {
        io.out << "machine  " << values_text(rep.machine_values) << '\n'
               << "system   " << values_text(rep.system_values) << '\n'
               << (rep.ok ? "agree" : "FAILED") << " up to " << bound << '\n';
    } else {
        Json j;
        j["ok"] = rep.ok;
        j["bound"] = bound;
        j["machine_values"] = rep.machine_values;
        j["system_values"] = rep.system_values;
        j["machine_exhausted"] = rep.machine_exhausted_below_bound;
        j["system_exhausted"] = rep.system_exhausted_below_bound;
        j["normal_form"] = rep.normal_form_ok;
        j["size_certificate"] = rep.size_certificate_ok;
        j["program_symbol_violations"] = rep.program_symbol_violations;
        if (rep.first_mismatch) j["first_mismatch"] = *rep.first_mismatch;
        io.out << j.dump() << '\n';
    }
    for (const auto& msg : rep.messages) io.err << path << ": " << msg << '\n';
    if (rep.ok) return kOk;
    const bool only_budget = !rep.first_mismatch && rep.normal_form_ok && rep.size_certificate_ok &&
                             rep.program_symbol_violations == 0;
    return only_budget ? kBudget : kFailed;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Simulator and analysis tools for symport/antiport P systems", "psys"};
    app.require_subcommand(1);
    bool pretty = false;
    app.add_flag("--pretty", pretty, "Human-readable output instead of JSON");

    std::string file;
    auto add_file = [&](CLI::App* sub) {
        sub->add_option("file", file, "Input file")->required();
        // Allow --pretty after the subcommand as well.
        sub->add_flag("--pretty", pretty, "Human-readable output instead of JSON");
    };

    auto* validate_cmd = app.add_subcommand("validate", "Parse and validate a .psys file");
    add_file(validate_cmd);

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "Run one computation and print its trace");
    add_file(run_cmd);
    run_cmd->add_option("--seed", run_args.seed, "Random seed")->capture_default_str();
    run_cmd->add_option("--max-steps", run_args.max_steps, "Step budget")->capture_default_str();
    run_cmd->add_option("--policy", run_args.policy, "enumerate-uniform or greedy-random")
        ->capture_default_str();
    run_cmd->add_option("--accept", run_args.accept, "Input multiset, e.g. \"a^2 b\"");
    run_cmd->add_option("--region", run_args.region, "Input region (default: output region)");

    ExploreArgs ex;
    auto* explore_cmd = app.add_subcommand("explore", "Enumerate the results of all halting computations");
    add_file(explore_cmd);
    explore_cmd->add_option("--max-depth", ex.max_depth)->capture_default_str();
    explore_cmd->add_option("--max-objects", ex.max_objects)->capture_default_str();
    explore_cmd->add_option("--max-branches", ex.max_branches)->capture_default_str();
    explore_cmd->add_option("--max-configs", ex.max_configs)->capture_default_str();
    explore_cmd->add_option("--jobs", ex.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);

    auto* profile_cmd = app.add_subcommand("profile", "Descriptional complexity of a system");
    add_file(profile_cmd);

    auto* classify_cmd = app.add_subcommand("classify", "Classify the rules of an .irules file");
    add_file(classify_cmd);

    std::string out_path;
    auto* compile_cmd = app.add_subcommand("compile-rm", "Compile a register machine to a one-membrane system");
    add_file(compile_cmd);
    compile_cmd->add_option("-o,--output", out_path, "Output .psys file (default: standard output)");

    std::uint64_t bound = 8;
    auto* verify_cmd = app.add_subcommand("rm-verify", "Check a compiled machine against the machine itself");
    add_file(verify_cmd);
    verify_cmd->add_option("--bound", bound, "Largest output value compared")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    Streams io{out, err, pretty};
    try {
        if (*validate_cmd) return cmd_validate(file, io);
        if (*run_cmd) return cmd_run(file, run_args, io);
        if (*explore_cmd) return cmd_explore(file, ex, io);
        if (*profile_cmd) return cmd_profile(file, io);
        if (*classify_cmd) return cmd_classify(file, io);
        if (*compile_cmd) return cmd_compile_rm(file, out_path, io);
        if (*verify_cmd) return cmd_rm_verify(file, bound, io);
    } catch (const std::overflow_error& e) {
        err << "arithmetic overflow: " << e.what() << '\n';
        return kBudget;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kFailed;
    }
    return kUsage;
}

}  // namespace psys::cli
