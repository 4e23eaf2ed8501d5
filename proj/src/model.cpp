#include "psys/model.hpp"

#include <algorithm>
#include <stdexcept>
#include <type_traits>

namespace psys {

namespace {

void add_violation(ValidationReport& rep, std::string code, std::string name,
                   std::string location, std::string message,
                   Severity sev = Severity::Error) {
    rep.violations.push_back(
        {std::move(code), std::move(name), std::move(location), std::move(message), sev});
}

bool subset_of(const Multiset& x, const std::set<ObjectId>& s) {
    for (const auto& [a, n] : x)
        if (!s.count(a)) return false;
    return true;
}

void check_objects(ValidationReport& rep, const std::set<ObjectId>& alphabet,
                   const Multiset& m, const std::string& where) {
    for (const auto& [a, n] : m)
        if (!alphabet.count(a))
            add_violation(rep, "V003", "unknown-object", where,
                          "object '" + a + "' is not in the alphabet");
}

void check_common(ValidationReport& rep, const std::set<ObjectId>& alphabet,
                  const std::set<ObjectId>& env, const std::vector<Multiset>& init,
                  int degree) {
    for (const auto& a : alphabet)
        if (!is_object_name(a))
            add_violation(rep, "V012", "bad-object-name", "alphabet",
                          "'" + a + "' is not a valid object name");
    for (const auto& e : env)
        if (!alphabet.count(e))
            add_violation(rep, "V010", "env-not-in-alphabet", "env",
                          "environment object '" + e + "' is not in the alphabet");
    if (static_cast<int>(init.size()) != degree)
        add_violation(rep, "V005", "region-out-of-range", "init",
                      "initial contents given for " + std::to_string(init.size()) +
                          " regions, expected " + std::to_string(degree));
    for (std::size_t l = 0; l < init.size(); ++l)
        check_objects(rep, alphabet, init[l], "init " + std::to_string(l + 1));
}

template <typename Rules>
void check_duplicates(ValidationReport& rep, const Rules& rules) {
    for (std::size_t i = 0; i < rules.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (rules[i] == rules[j]) {
                add_violation(rep, "V011", "duplicate-rule", "rule " + std::to_string(i + 1),
                              "duplicate of rule " + std::to_string(j + 1));
                break;
            }
}

std::string rule_loc(std::size_t idx) { return "rule " + std::to_string(idx + 1); }

}  // namespace

Label MembraneStructure::skin() const {
    for (std::size_t i = 0; i < parent_.size(); ++i)
        if (parent_[i] == 0) return static_cast<Label>(i + 1);
    return 0;
}

std::vector<Label> MembraneStructure::children(Label l) const {
    std::vector<Label> out;
    for (std::size_t i = 0; i < parent_.size(); ++i)
        if (parent_[i] == l) out.push_back(static_cast<Label>(i + 1));
    return out;
}

std::string MembraneStructure::tree_defect() const {
    const int n = degree();
    if (n == 0) return "no membranes";
    int roots = 0;
    for (Label p : parent_) {
        if (p == 0) ++roots;
        else if (p < 1 || p > n) return "parent label " + std::to_string(p) + " out of range";
    }
    if (roots != 1) return "expected exactly one skin membrane, found " + std::to_string(roots);
    // Every membrane must reach the skin without revisiting a label.
    for (Label l = 1; l <= n; ++l) {
        Label cur = l;
        for (int steps = 0; cur != 0; ++steps) {
            if (steps > n) return "membrane " + std::to_string(l) + " lies on a cycle";
            cur = parent(cur);
        }
    }
    return {};
}

std::string to_string(const MembraneStructure& mu) {
    std::string out;
    auto emit = [&](auto&& self, Label l) -> void {
        out += std::to_string(l);
        auto kids = mu.children(l);
        if (kids.empty()) return;
        out += '(';
        for (std::size_t i = 0; i < kids.size(); ++i) {
            if (i) out += ' ';
            self(self, kids[i]);
        }
        out += ')';
    };
    if (mu.tree_defect().empty()) emit(emit, mu.skin());
    return out;
}

InteractionRule swap_roles(const InteractionRule& r) { return {r.b, r.j, r.a, r.i, r.l, r.k}; }

bool ValidationReport::ok() const { return error_count() == 0; }

bool ValidationReport::has(const std::string& code) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.code == code; });
}

std::size_t ValidationReport::error_count() const {
    return static_cast<std::size_t>(
        std::count_if(violations.begin(), violations.end(),
                      [](const Violation& v) { return v.severity == Severity::Error; }));
}

ValidationReport validate_cell(const CellPSystem& sys) {
    ValidationReport rep;
    const auto defect = sys.structure.tree_defect();
    if (!defect.empty()) {
        add_violation(rep, "V006", "bad-structure", "membranes", defect);
        return rep;
    }
    check_common(rep, sys.alphabet, sys.env, sys.init, sys.degree());
    if (!sys.structure.contains(sys.output))
        add_violation(rep, "V009", "output-out-of-range", "output",
                      "output membrane " + std::to_string(sys.output) + " does not exist");
    else if (!sys.structure.is_elementary(sys.output))
        add_violation(rep, "V002", "output-not-elementary", "output",
                      "output membrane " + std::to_string(sys.output) + " contains other membranes");

    const Label skin = sys.structure.skin();
    for (std::size_t idx = 0; idx < sys.rules.size(); ++idx) {
        const auto& r = sys.rules[idx];
        const auto loc = rule_loc(idx);
        if (!sys.structure.contains(r.region)) {
            add_violation(rep, "V005", "region-out-of-range", loc,
                          "region " + std::to_string(r.region) + " does not exist");
            continue;
        }
        const bool needs_out = r.kind != CellRuleKind::SymportIn;
        const bool needs_in = r.kind != CellRuleKind::SymportOut;
        if ((needs_out && r.out.empty()) || (needs_in && r.in.empty()))
            add_violation(rep, "V004", "empty-rule-side", loc, "rule sides must be non-empty");
        if ((!needs_out && !r.out.empty()) || (!needs_in && !r.in.empty()))
            add_violation(rep, "V004", "empty-rule-side", loc,
                          "symport rule carries objects in the unused direction");
        check_objects(rep, sys.alphabet, r.out, loc);
        check_objects(rep, sys.alphabet, r.in, loc);
        if (r.kind == CellRuleKind::SymportIn && r.region == skin && !r.in.empty() &&
            subset_of(r.in, sys.env))
            add_violation(rep, "V001", "skin-E-symport", loc,
                          "E-only symport-in at skin: (" + to_string(r.in) + ", in)");
    }
    check_duplicates(rep, sys.rules);
    return rep;
}

ValidationReport validate_tissue(const TissuePSystem& sys) {
    ValidationReport rep;
    if (sys.n_cells < 1) {
        add_violation(rep, "V006", "bad-structure", "cells", "at least one cell is required");
        return rep;
    }
    check_common(rep, sys.alphabet, sys.env, sys.init, sys.n_cells);
    if (sys.output < 1 || sys.output > sys.n_cells)
        add_violation(rep, "V009", "output-out-of-range", "output",
                      "output cell " + std::to_string(sys.output) + " not in 1.." +
                          std::to_string(sys.n_cells));
    auto node_ok = [&](Label v) { return v >= 0 && v <= sys.n_cells; };
    for (std::size_t idx = 0; idx < sys.rules.size(); ++idx) {
        const auto& r = sys.rules[idx];
        const auto loc = rule_loc(idx);
        if (!node_ok(r.from) || !node_ok(r.to))
            add_violation(rep, "V005", "region-out-of-range", loc, "node index out of range");
        if (r.from == r.to)
            add_violation(rep, "V007", "self-loop", loc, "i != j required");
        const bool anti = r.kind == TissueRuleKind::Antiport;
        if (r.x.empty() || (anti && r.y.empty()))
            add_violation(rep, "V004", "empty-rule-side", loc, "rule sides must be non-empty");
        if (!anti && !r.y.empty())
            add_violation(rep, "V004", "empty-rule-side", loc, "symport rule carries a y side");
        check_objects(rep, sys.alphabet, r.x, loc);
        check_objects(rep, sys.alphabet, r.y, loc);
        if (!anti && r.from == kEnvironment && !r.x.empty() && subset_of(r.x, sys.env))
            add_violation(rep, "V008", "env-E-symport", loc,
                          "symport from the environment moving only E objects");
    }
    check_duplicates(rep, sys.rules);
    return rep;
}

ValidationReport validate_interaction(const InteractionSystem& sys) {
    ValidationReport rep;
    if (sys.n_cells < 1) {
        add_violation(rep, "V006", "bad-structure", "cells", "at least one cell is required");
        return rep;
    }
    check_common(rep, sys.alphabet, sys.env, sys.init, sys.n_cells);
    if (sys.output < 1 || sys.output > sys.n_cells)
        add_violation(rep, "V009", "output-out-of-range", "output",
                      "output cell " + std::to_string(sys.output) + " not in 1.." +
                          std::to_string(sys.n_cells));
    auto node_ok = [&](Label v) { return v >= 0 && v <= sys.n_cells; };
    auto infinite_at = [&](const ObjectId& a, Label node) {
        return node == kEnvironment && sys.env.count(a) != 0;
    };
    for (std::size_t idx = 0; idx < sys.rules.size(); ++idx) {
        const auto loc = rule_loc(idx);
        if (const auto* r = std::get_if<InteractionRule>(&sys.rules[idx])) {
            if (!node_ok(r->i) || !node_ok(r->j) || !node_ok(r->k) || !node_ok(r->l))
                add_violation(rep, "V005", "region-out-of-range", loc, "node index out of range");
            for (const auto* obj : {&r->a, &r->b})
                if (!sys.alphabet.count(*obj))
                    add_violation(rep, "V003", "unknown-object", loc,
                                  "object '" + *obj + "' is not in the alphabet");
            if (infinite_at(r->a, r->i) && infinite_at(r->b, r->j))
                add_violation(rep, "V013", "unbounded-rule", loc,
                              "rule consumes only infinitely available objects");
            if (r->i == r->k && r->j == r->l)
                add_violation(rep, "W001", "no-op-rule", loc, "no object moves",
                              Severity::Warning);
        } else {
            const auto& u = std::get<UniportRule>(sys.rules[idx]);
            if (!node_ok(u.i) || !node_ok(u.k))
                add_violation(rep, "V005", "region-out-of-range", loc, "node index out of range");
            if (u.i == u.k) add_violation(rep, "V014", "uniport-self-move", loc, "i != k required");
            if (!sys.alphabet.count(u.a))
                add_violation(rep, "V003", "unknown-object", loc,
                              "object '" + u.a + "' is not in the alphabet");
            if (infinite_at(u.a, u.i))
                add_violation(rep, "V013", "unbounded-rule", loc,
                              "rule consumes only infinitely available objects");
        }
    }
    check_duplicates(rep, sys.rules);
    return rep;
}

ValidationReport validate(const AnySystem& sys) {
    return std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CellPSystem>) return validate_cell(s);
            else if constexpr (std::is_same_v<T, TissuePSystem>) return validate_tissue(s);
            else return validate_interaction(s);
        },
        sys);
}

std::set<std::pair<Label, Label>> derive_graph(const TissuePSystem& sys) {
    std::set<std::pair<Label, Label>> edges;
    for (const auto& r : sys.rules) {
        edges.emplace(r.from, r.to);
        if (r.kind == TissueRuleKind::Antiport) edges.emplace(r.to, r.from);
    }
    return edges;
}

TissuePSystem encode_cell_as_tissue(const CellPSystem& sys) {
    if (!validate_cell(sys).ok())
        throw std::invalid_argument("encode_cell_as_tissue: system does not validate");
    TissuePSystem t;
    t.alphabet = sys.alphabet;
    t.n_cells = sys.degree();
    t.init = sys.init;
    t.env = sys.env;
    t.output = sys.output;
    for (const auto& r : sys.rules) {
        const Label outer = sys.structure.outer(r.region);
        switch (r.kind) {
            case CellRuleKind::SymportIn:
                t.rules.push_back(TissueRule::symport(outer, r.in, r.region));
                break;
            case CellRuleKind::SymportOut:
                t.rules.push_back(TissueRule::symport(r.region, r.out, outer));
                break;
            case CellRuleKind::Antiport:
                t.rules.push_back(TissueRule::antiport(r.region, r.out, r.in, outer));
                break;
        }
    }
    return t;
}

namespace {
template <typename Rules>
void sort_unique(Rules& rules) {
    std::sort(rules.begin(), rules.end());
    rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
}
}  // namespace

CellPSystem canonical(CellPSystem sys) {
    sort_unique(sys.rules);
    return sys;
}

TissuePSystem canonical(TissuePSystem sys) {
    sort_unique(sys.rules);
    return sys;
}

InteractionSystem canonical(InteractionSystem sys) {
    sort_unique(sys.rules);
    return sys;
}

bool structurally_equal(const AnySystem& a, const AnySystem& b) {
    if (a.index() != b.index()) return false;
    return std::visit(
        [&](const auto& lhs) {
            using T = std::decay_t<decltype(lhs)>;
            return canonical(lhs) == canonical(std::get<T>(b));
        },
        a);
}

int degree_of(const AnySystem& sys) {
    return std::visit([](const auto& s) { return s.degree(); }, sys);
}

std::string to_string(const CellRule& r) {
    switch (r.kind) {
        case CellRuleKind::SymportIn: return "(" + to_string(r.in) + ", in)";
        case CellRuleKind::SymportOut: return "(" + to_string(r.out) + ", out)";
        case CellRuleKind::Antiport:
            return "(" + to_string(r.out) + ", out; " + to_string(r.in) + ", in)";
    }
    return {};
}

std::string to_string(const TissueRule& r) {
    std::string mid = to_string(r.x);
    if (r.kind == TissueRuleKind::Antiport) mid += " / " + to_string(r.y);
    return "(" + std::to_string(r.from) + ", " + mid + ", " + std::to_string(r.to) + ")";
}

std::string to_string(const InteractionRule& r) {
    return "(" + r.a + "," + std::to_string(r.i) + ")(" + r.b + "," + std::to_string(r.j) +
           ") -> (" + r.a + "," + std::to_string(r.k) + ")(" + r.b + "," + std::to_string(r.l) +
           ")";
}

std::string to_string(const UniportRule& r) {
    return "(" + r.a + "," + std::to_string(r.i) + ") -> (" + r.a + "," + std::to_string(r.k) +
           ")";
}

std::string to_string(const MinimalRule& r) {
    return std::visit([](const auto& x) { return to_string(x); }, r);
}

}  // namespace psys
