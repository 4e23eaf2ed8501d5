#include "psys/random_systems.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace psys {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

std::vector<ObjectId> make_alphabet(int n) {
    static const char* names[] = {"a", "b", "c", "d", "e", "f", "g", "h"};
    std::vector<ObjectId> out;
    for (int i = 0; i < n; ++i)
        out.push_back(i < 8 ? names[i] : "o" + std::to_string(i));
    return out;
}

Multiset random_side(std::mt19937_64& rng, const std::vector<ObjectId>& objs, Count max_size) {
    Multiset m;
    const int size = uniform(rng, 1, static_cast<int>(max_size));
    for (int i = 0; i < size; ++i)
        m.add(objs[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(objs.size()) - 1))]);
    return m;
}

std::set<ObjectId> random_env(std::mt19937_64& rng, const std::vector<ObjectId>& objs) {
    std::set<ObjectId> env;
    for (const auto& a : objs)
        if (uniform(rng, 0, 1)) env.insert(a);
    return env;
}

std::vector<Multiset> random_init(std::mt19937_64& rng, const std::vector<ObjectId>& objs,
                                  int regions, Count max_count) {
    std::vector<Multiset> init(static_cast<std::size_t>(regions));
    for (auto& m : init)
        for (const auto& a : objs)
            if (uniform(rng, 0, 1)) m.add(a, static_cast<Count>(uniform(rng, 0, static_cast<int>(max_count))));
    return init;
}

bool only_env(const Multiset& x, const std::set<ObjectId>& env) {
    return std::all_of(x.begin(), x.end(), [&](const auto& kv) { return env.count(kv.first) != 0; });
}

constexpr int kRetries = 32;

}  // namespace

CellPSystem random_cell_system(std::mt19937_64& rng, const RandomCellParams& p) {
    CellPSystem sys;
    const int n = uniform(rng, 1, p.max_regions);
    std::vector<Label> parents{0};
    for (int l = 2; l <= n; ++l) parents.push_back(uniform(rng, 1, l - 1));
    sys.structure = MembraneStructure(parents);
    const auto objs = make_alphabet(uniform(rng, 1, p.max_objects));
    sys.alphabet = {objs.begin(), objs.end()};
    sys.env = random_env(rng, objs);
    sys.init = random_init(rng, objs, n, p.max_initial_count);

    std::vector<Label> leaves;
    for (Label l = 1; l <= n; ++l)
        if (sys.structure.is_elementary(l)) leaves.push_back(l);
    sys.output = leaves[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(leaves.size()) - 1))];

    const int rule_count = uniform(rng, 0, p.max_rules);
    const Label skin = sys.structure.skin();
    for (int r = 0; r < rule_count; ++r) {
        for (int attempt = 0; attempt < kRetries; ++attempt) {
            const Label region = uniform(rng, 1, n);
            CellRule rule;
            switch (uniform(rng, 0, 2)) {
                case 0: rule = CellRule::symport_in(region, random_side(rng, objs, p.max_rule_side)); break;
                case 1: rule = CellRule::symport_out(region, random_side(rng, objs, p.max_rule_side)); break;
                default:
                    rule = CellRule::antiport(region, random_side(rng, objs, p.max_rule_side),
                                              random_side(rng, objs, p.max_rule_side));
            }
            if (rule.kind == CellRuleKind::SymportIn && region == skin && only_env(rule.in, sys.env))
                continue;
            if (std::find(sys.rules.begin(), sys.rules.end(), rule) != sys.rules.end()) continue;
            sys.rules.push_back(std::move(rule));
            break;
        }
    }
    return sys;
}

TissuePSystem random_tissue_system(std::mt19937_64& rng, const RandomTissueParams& p) {
    TissuePSystem sys;
    sys.n_cells = uniform(rng, 1, p.max_cells);
    const auto objs = make_alphabet(uniform(rng, 1, p.max_objects));
    sys.alphabet = {objs.begin(), objs.end()};
    sys.env = random_env(rng, objs);
    sys.init = random_init(rng, objs, sys.n_cells, p.max_initial_count);
    sys.output = uniform(rng, 1, sys.n_cells);

    const int rule_count = uniform(rng, 0, p.max_rules);
    for (int r = 0; r < rule_count; ++r) {
        for (int attempt = 0; attempt < kRetries; ++attempt) {
            const Label i = uniform(rng, 0, sys.n_cells);
            Label j = uniform(rng, 0, sys.n_cells - 1);
            if (j >= i) ++j;
            TissueRule rule = uniform(rng, 0, 1)
                                  ? TissueRule::symport(i, random_side(rng, objs, p.max_rule_side), j)
                                  : TissueRule::antiport(i, random_side(rng, objs, p.max_rule_side),
                                                         random_side(rng, objs, p.max_rule_side), j);
            if (rule.kind == TissueRuleKind::Symport && i == kEnvironment && only_env(rule.x, sys.env))
                continue;
            if (std::find(sys.rules.begin(), sys.rules.end(), rule) != sys.rules.end()) continue;
            sys.rules.push_back(std::move(rule));
            break;
        }
    }
    return sys;
}

CellPSystem random_minimal_one_region(std::mt19937_64& rng) {
    CellPSystem sys;
    sys.structure = MembraneStructure::skin_only();
    sys.output = 1;
    const auto objs = make_alphabet(uniform(rng, 1, 4));
    sys.alphabet = {objs.begin(), objs.end()};
    sys.env = random_env(rng, objs);
    Multiset w;
    const int size = uniform(rng, 0, 4);
    for (int i = 0; i < size; ++i)
        w.add(objs[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(objs.size()) - 1))]);
    sys.init = {w};

    auto pick = [&]() {
        return Multiset::of(objs[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(objs.size()) - 1))]);
    };
    const int rule_count = uniform(rng, 0, 5);
    for (int r = 0; r < rule_count; ++r) {
        for (int attempt = 0; attempt < kRetries; ++attempt) {
            CellRule rule;
            switch (uniform(rng, 0, 2)) {
                case 0: rule = CellRule::symport_in(1, random_side(rng, objs, 2)); break;
                case 1: rule = CellRule::symport_out(1, random_side(rng, objs, 2)); break;
                default: rule = CellRule::antiport(1, pick(), pick());
            }
            if (rule.kind == CellRuleKind::SymportIn && only_env(rule.in, sys.env)) continue;
            if (std::find(sys.rules.begin(), sys.rules.end(), rule) != sys.rules.end()) continue;
            sys.rules.push_back(std::move(rule));
            break;
        }
    }
    return sys;
}

}  // namespace psys
