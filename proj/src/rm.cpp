#include "psys/rm.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "psys/measures.hpp"

namespace psys {

std::vector<std::string> machine_defects(const RegisterMachine& m) {
    std::vector<std::string> out;
    if (m.num_registers < 1) out.push_back("at least one register is required");
    if (m.output_register < 1 || m.output_register > m.num_registers)
        out.push_back("output register r" + std::to_string(m.output_register) + " out of range");
    if (!m.program.count(m.start)) out.push_back("start label '" + m.start + "' is not defined");
    auto check_target = [&](const std::string& from, const std::string& to) {
        if (!m.program.count(to))
            out.push_back("label '" + from + "' jumps to undefined label '" + to + "'");
    };
    auto check_reg = [&](const std::string& from, int reg) {
        if (reg < 1 || reg > m.num_registers)
            out.push_back("label '" + from + "' uses register r" + std::to_string(reg) +
                          " out of range");
    };
    for (const auto& [label, ins] : m.program) {
        if (!is_object_name(label)) out.push_back("label '" + label + "' is not an identifier");
        if (const auto* a = std::get_if<AddInstr>(&ins)) {
            check_reg(label, a->reg);
            check_target(label, a->next_a);
            check_target(label, a->next_b);
        } else if (const auto* s = std::get_if<SubInstr>(&ins)) {
            check_reg(label, s->reg);
            check_target(label, s->nonzero);
            check_target(label, s->zero);
        }
    }
    return out;
}

namespace {

struct Token {
    std::string text;
    int column;
};

bool ident_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

/// Identifiers, ':', '->' and '|'. Returns false at the first stray byte.
bool lex_line(std::string_view line, std::vector<Token>& toks, int& bad_column) {
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
        } else if (ident_char(c)) {
            std::size_t j = i;
            while (j < line.size() && ident_char(line[j])) ++j;
            toks.push_back({std::string(line.substr(i, j - i)), static_cast<int>(i) + 1});
            i = j;
        } else if (c == ':' || c == '|') {
            toks.push_back({std::string(1, c), static_cast<int>(i) + 1});
            ++i;
        } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
            toks.push_back({"->", static_cast<int>(i) + 1});
            i += 2;
        } else {
            bad_column = static_cast<int>(i) + 1;
            return false;
        }
    }
    return true;
}

std::optional<int> parse_register(std::string_view tok) {
    if (tok.size() < 2 || tok[0] != 'r') return std::nullopt;
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
    return v;
}

std::optional<int> parse_positive(std::string_view tok) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || v < 1) return std::nullopt;
    return v;
}

}  // namespace

Parsed<RegisterMachine> parse_machine(std::string_view text) {
    Parsed<RegisterMachine> res;
    RegisterMachine m;
    bool have_regs = false, have_out = false, have_start = false;
    std::map<std::string, int> label_lines;
    std::vector<std::pair<int, int>> reg_uses;  // (line, register) checked once the count is known
    auto diag = [&](int line, int col, std::string msg, std::string code) {
        res.diagnostics.push_back({line, col, std::move(msg), std::move(code)});
    };

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        std::vector<Token> t;
        int bad = 0;
        if (!lex_line(line, t, bad)) {
            diag(line_no, bad, "unexpected character", "R001");
            continue;
        }
        if (t.empty()) continue;

        auto expect = [&](std::size_t idx, std::string_view what) {
            if (idx < t.size() && t[idx].text == what) return true;
            diag(line_no, idx < t.size() ? t[idx].column : static_cast<int>(line.size()) + 1,
                 "expected '" + std::string(what) + "'", "R001");
            return false;
        };

        if (t[0].text == "registers" || t[0].text == "output" || t[0].text == "start") {
            if (t.size() != 2) {
                diag(line_no, t[0].column, "'" + t[0].text + "' takes one argument", "R001");
                continue;
            }
            if (t[0].text == "registers") {
                auto n = parse_positive(t[1].text);
                if (!n) diag(line_no, t[1].column, "expected a positive register count", "R001");
                else if (have_regs) diag(line_no, t[0].column, "duplicate 'registers'", "R002");
                else { m.num_registers = *n; have_regs = true; }
            } else if (t[0].text == "output") {
                auto r = parse_register(t[1].text);
                if (!r) diag(line_no, t[1].column, "expected a register like r1", "R001");
                else if (have_out) diag(line_no, t[0].column, "duplicate 'output'", "R002");
                else { m.output_register = *r; have_out = true; reg_uses.emplace_back(line_no, *r); }
            } else {
                if (have_start) diag(line_no, t[0].column, "duplicate 'start'", "R002");
                else { m.start = t[1].text; have_start = true; }
            }
            continue;
        }

        // LABEL ':' (ADD r -> a | b | SUB r -> nz | z | HALT)
        if (!expect(1, ":")) continue;
        const std::string label = t[0].text;
        if (t.size() < 3) {
            diag(line_no, t[1].column + 1, "expected ADD, SUB or HALT", "R001");
            continue;
        }
        Instruction ins;
        const std::string& op = t[2].text;
        if (op == "HALT") {
            if (t.size() != 3) {
                diag(line_no, t[3].column, "unexpected tokens after HALT", "R001");
                continue;
            }
            ins = HaltInstr{};
        } else if (op == "ADD" || op == "SUB") {
            if (t.size() != 8) {
                diag(line_no, t[2].column, op + " expects: " + op + " rK -> LABEL | LABEL", "R001");
                continue;
            }
            auto r = parse_register(t[3].text);
            if (!r) {
                diag(line_no, t[3].column, "expected a register like r1", "R001");
                continue;
            }
            if (!expect(4, "->") || !expect(6, "|")) continue;
            reg_uses.emplace_back(line_no, *r);
            if (op == "ADD") ins = AddInstr{*r, t[5].text, t[7].text};
            else ins = SubInstr{*r, t[5].text, t[7].text};
        } else {
            diag(line_no, t[2].column, "unknown instruction '" + op + "'", "R001");
            continue;
        }
        if (label_lines.count(label)) {
            diag(line_no, t[0].column,
                 "label '" + label + "' already defined on line " +
                     std::to_string(label_lines[label]),
                 "R002");
            continue;
        }
        label_lines[label] = line_no;
        m.program.emplace(label, std::move(ins));
    }

    if (!have_regs) diag(1, 1, "missing 'registers N'", "R005");
    if (!have_out) diag(1, 1, "missing 'output rK'", "R005");
    if (!have_start) diag(1, 1, "missing 'start LABEL'", "R005");
    if (have_regs)
        for (const auto& [ln, r] : reg_uses)
            if (r < 1 || r > m.num_registers)
                diag(ln, 1, "register r" + std::to_string(r) + " out of range", "R004");
    if (res.diagnostics.empty()) {
        for (const auto& defect : machine_defects(m)) diag(1, 1, defect, "R003");
    }
    if (res.diagnostics.empty()) res.value = std::move(m);
    return res;
}

std::string print_machine(const RegisterMachine& m) {
    std::ostringstream os;
    os << "registers " << m.num_registers << '\n'
       << "output r" << m.output_register << '\n'
       << "start " << m.start << '\n';
    for (const auto& [label, ins] : m.program) {
        os << label << ": ";
        if (const auto* a = std::get_if<AddInstr>(&ins))
            os << "ADD r" << a->reg << " -> " << a->next_a << " | " << a->next_b;
        else if (const auto* s = std::get_if<SubInstr>(&ins))
            os << "SUB r" << s->reg << " -> " << s->nonzero << " | " << s->zero;
        else
            os << "HALT";
        os << '\n';
    }
    return os.str();
}

std::optional<RmState> rm_step_first(const RegisterMachine& m, const RmState& s) {
    const auto& ins = m.program.at(s.label);
    if (const auto* a = std::get_if<AddInstr>(&ins)) {
        RmState next{a->next_a, s.regs};
        next.regs[static_cast<std::size_t>(a->reg - 1)] += 1;
        return next;
    }
    if (const auto* sub = std::get_if<SubInstr>(&ins)) {
        RmState next = s;
        auto& v = next.regs[static_cast<std::size_t>(sub->reg - 1)];
        if (v > 0) {
            --v;
            next.label = sub->nonzero;
        } else {
            next.label = sub->zero;
        }
        return next;
    }
    return std::nullopt;
}

RmResults rm_results(const RegisterMachine& m, Count value_bound, std::uint64_t step_bound) {
    if (auto defects = machine_defects(m); !defects.empty())
        throw std::invalid_argument("malformed register machine: " + defects.front());
    struct Info {
        std::uint64_t depth;
        const RmState* parent;
    };
    RmResults out;
    std::map<RmState, Info> seen;
    std::deque<const RmState*> queue;
    const RmState start{m.start, std::vector<Count>(static_cast<std::size_t>(m.num_registers), 0)};
    queue.push_back(&seen.emplace(start, Info{0, nullptr}).first->first);

    auto label_path = [&](const RmState* s) {
        std::vector<std::string> path;
        for (; s; s = seen.at(*s).parent) path.push_back(s->label);
        std::reverse(path.begin(), path.end());
        return path;
    };

    while (!queue.empty()) {
        const RmState* cur = queue.front();
        queue.pop_front();
        const auto depth = seen.at(*cur).depth;
        const auto& ins = m.program.at(cur->label);

        if (std::holds_alternative<HaltInstr>(ins)) {
            const Count value = cur->regs[static_cast<std::size_t>(m.output_register - 1)];
            if (out.results.insert(value).second) out.witnesses[value] = label_path(cur);
            for (int r = 1; r <= m.num_registers; ++r)
                if (r != m.output_register && cur->regs[static_cast<std::size_t>(r - 1)] != 0 &&
                    out.normal_form_ok) {
                    out.normal_form_ok = false;
                    out.normal_form_witness = *cur;
                }
            continue;
        }

        std::vector<RmState> succ;
        if (const auto* a = std::get_if<AddInstr>(&ins)) {
            for (const auto& target : {a->next_a, a->next_b}) {
                RmState n{target, cur->regs};
                n.regs[static_cast<std::size_t>(a->reg - 1)] += 1;
                succ.push_back(std::move(n));
            }
            if (a->next_a == a->next_b) succ.pop_back();
        } else {
            succ.push_back(*rm_step_first(m, *cur));
        }
        for (auto& n : succ) {
            if (seen.count(n)) continue;
            if (std::any_of(n.regs.begin(), n.regs.end(), [&](Count v) { return v > value_bound; })) {
                ++out.pruned_by_value;
                continue;
            }
            if (depth + 1 > step_bound) {
                ++out.pruned_by_steps;
                continue;
            }
            queue.push_back(&seen.emplace(std::move(n), Info{depth + 1, cur}).first->first);
        }
    }
    out.states = seen.size();
    out.exhausted = out.pruned_by_value == 0 && out.pruned_by_steps == 0;
    return out;
}

CompiledSystem compile(const RegisterMachine& m) {
    if (auto defects = machine_defects(m); !defects.empty())
        throw std::invalid_argument("malformed register machine: " + defects.front());

    CompiledSystem out;
    CellPSystem& sys = out.system;
    sys.structure = MembraneStructure::skin_only();
    sys.output = 1;

    std::map<ObjectId, std::string> owner;  // symbol -> what introduced it
    auto claim = [&](const ObjectId& sym, const std::string& what) {
        if (!is_object_name(sym))
            throw std::invalid_argument("symbol '" + sym + "' is not a valid object name");
        auto [it, fresh] = owner.emplace(sym, what);
        if (!fresh && it->second != what)
            throw std::invalid_argument("symbol '" + sym + "' is used by both " + it->second +
                                        " and " + what);
    };

    for (int r = 1; r <= m.num_registers; ++r) {
        const ObjectId sym = "a" + std::to_string(r);
        out.register_objects[r] = sym;
        claim(sym, "register r" + std::to_string(r));
    }
    for (const auto& [label, ins] : m.program) {
        claim(label, "label " + label);
        out.label_objects[label].push_back(label);
        out.program_objects.insert(label);
        if (std::holds_alternative<SubInstr>(ins)) {
            for (const char* suffix : {"_1", "_2", "_c", "_cb"}) {
                const ObjectId sym = label + suffix;
                claim(sym, "label " + label);
                out.label_objects[label].push_back(sym);
            }
            out.program_objects.insert(label + "_1");
            out.program_objects.insert(label + "_2");
        }
    }
    for (const auto& [sym, what] : owner) {
        sys.alphabet.insert(sym);
        sys.env.insert(sym);
    }
    sys.init = {Multiset::of(m.start)};

    auto add_rule = [&](CellRule r) {
        if (std::find(sys.rules.begin(), sys.rules.end(), r) == sys.rules.end())
            sys.rules.push_back(std::move(r));
    };
    auto ms = [](std::initializer_list<ObjectId> objs) {
        Multiset x;
        for (const auto& o : objs) x.add(o);
        return x;
    };

    for (const auto& [p, ins] : m.program) {
        if (const auto* a = std::get_if<AddInstr>(&ins)) {
            const auto& reg = out.register_objects.at(a->reg);
            add_rule(CellRule::antiport(1, ms({p}), ms({a->next_a, reg})));
            add_rule(CellRule::antiport(1, ms({p}), ms({a->next_b, reg})));
        } else if (const auto* s = std::get_if<SubInstr>(&ins)) {
            const auto& reg = out.register_objects.at(s->reg);
            const ObjectId p1 = p + "_1", p2 = p + "_2", c = p + "_c", cb = p + "_cb";
            add_rule(CellRule::antiport(1, ms({p}), ms({p1, c})));
            add_rule(CellRule::antiport(1, ms({c, reg}), ms({cb})));
            add_rule(CellRule::antiport(1, ms({p1}), ms({p2})));
            add_rule(CellRule::antiport(1, ms({p2, cb}), ms({s->nonzero})));
            add_rule(CellRule::antiport(1, ms({p2, c}), ms({s->zero})));
        } else {
            add_rule(CellRule::symport_out(1, ms({p})));
        }
    }
    out.certified_max_antiport = 2;
    return out;
}

namespace {

std::string render_path(const TransitionSystem& ts, const std::vector<StepChoice>& path) {
    std::string s;
    for (const auto& step : path) {
        if (!s.empty()) s += " ; ";
        bool first = true;
        for (const auto& [rule, n] : step.applications) {
            if (!first) s += ", ";
            first = false;
            s += ts.rules()[rule].text;
            if (n != 1) s += " x" + std::to_string(n);
        }
    }
    return s;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string s;
    for (const auto& p : parts) {
        if (!s.empty()) s += sep;
        s += p;
    }
    return s;
}

}  // namespace

VerifyReport verify_compiled(const RegisterMachine& m, const CompiledSystem& compiled,
                             const VerifyBudget& budget) {
    VerifyReport rep;
    const Count bound = budget.value_bound;

    const RmResults machine = rm_results(m, bound, budget.step_bound);
    for (Count v : machine.results)
        if (v <= bound) rep.machine_values.insert(v);
    rep.machine_exhausted_below_bound = machine.pruned_by_steps == 0;
    rep.normal_form_ok = machine.normal_form_ok;
    if (!machine.normal_form_ok)
        rep.messages.push_back("machine is not in normal form: halts at label '" +
                               machine.normal_form_witness->label +
                               "' with a non-output register above zero");

    const auto prof = profile(compiled.system);
    rep.size_certificate_ok = prof.max_antiport_size <= 3 &&
                              prof.max_antiport_size <= compiled.certified_max_antiport &&
                              prof.degree == 1;
    if (!rep.size_certificate_ok)
        rep.messages.push_back("size certificate violated: max antiport size " +
                               std::to_string(prof.max_antiport_size));

    const auto ts = TransitionSystem::from(compiled.system);
    std::uint64_t value_prunes = 0;
    ExploreOptions opts;
    opts.record_witnesses = true;
    opts.prune = [&](const Configuration& c) {
        const auto& inside = c.region(1);
        for (const auto& [r, sym] : compiled.register_objects)
            if (inside.count(sym) > bound) {
                ++value_prunes;
                return true;
            }
        return false;
    };
    opts.on_config = [&](const Configuration& c) {
        Count program = 0;
        for (const auto& sym : compiled.program_objects) program += c.region(1).count(sym);
        if (program == 1) return;
        if (program == 0 && is_halted(ts, c)) return;
        ++rep.program_symbol_violations;
    };
    ExploreBudget eb;
    eb.max_depth = budget.step_bound > (std::uint64_t{1} << 60) ? budget.step_bound
                                                                 : 3 * budget.step_bound + 1;
    eb.max_total_objects = static_cast<Count>(m.num_registers) * (bound + 1) + 8;
    eb.max_branches = 10'000;
    eb.max_configs = budget.max_configs;
    const ExploreOutcome sysout = explore(ts, eb, opts);
    for (Count v : sysout.results)
        if (v <= bound) rep.system_values.insert(v);
    rep.system_exhausted_below_bound = sysout.cut_branches == value_prunes;
    if (rep.program_symbol_violations)
        rep.messages.push_back("program-symbol uniqueness violated in " +
                               std::to_string(rep.program_symbol_violations) + " configurations");

    std::set<Count> all;
    all.insert(rep.machine_values.begin(), rep.machine_values.end());
    all.insert(rep.system_values.begin(), rep.system_values.end());
    for (Count v : all) {
        const bool in_m = rep.machine_values.count(v) != 0;
        const bool in_s = rep.system_values.count(v) != 0;
        if (in_m == in_s) continue;
        rep.first_mismatch = v;
        if (in_s)
            rep.messages.push_back("value " + std::to_string(v) +
                                   " is produced by the P system but not by the machine; trace: " +
                                   render_path(ts, sysout.witnesses.at(v)));
        else
            rep.messages.push_back("value " + std::to_string(v) +
                                   " is produced by the machine but not by the P system; labels: " +
                                   join(machine.witnesses.at(v), " "));
        break;
    }
    if (!rep.machine_exhausted_below_bound)
        rep.messages.push_back("machine search hit the step bound");
    if (!rep.system_exhausted_below_bound)
        rep.messages.push_back("P system exploration hit a budget other than the value bound");

    rep.ok = !rep.first_mismatch && rep.normal_form_ok && rep.size_certificate_ok &&
             rep.program_symbol_violations == 0 && rep.machine_exhausted_below_bound &&
             rep.system_exhausted_below_bound;
    return rep;
}

VerifyReport verify_compilation(const RegisterMachine& m, const VerifyBudget& budget) {
    return verify_compiled(m, compile(m), budget);
}

}  // namespace psys
