// Shared fixtures and independent oracles for the test binaries.
#ifndef PSYS_TESTS_SUPPORT_HPP
#define PSYS_TESTS_SUPPORT_HPP

#include <algorithm>
#include <array>
#include <fstream>
#include <functional>
#include <sstream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "psys/engine.hpp"
#include "psys/measures.hpp"
#include "psys/model.hpp"
#include "psys/multiset.hpp"

namespace testing {

using namespace psys;

#ifndef PSYS_TEST_DATA
#define PSYS_TEST_DATA "tests/data"
#endif

inline std::string data_path(const std::string& rel) { return std::string(PSYS_TEST_DATA) + "/" + rel; }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline Multiset ms(std::string_view text) {
    auto [m, err] = parse_multiset(text);
    if (!m) throw std::invalid_argument("bad multiset literal in test: " + std::string(text));
    return *m;
}

/// One-membrane cell system over `objects` with E = `env`.
inline CellPSystem one_membrane(std::set<ObjectId> objects, std::string_view w1,
                                std::set<ObjectId> env, std::vector<CellRule> rules) {
    CellPSystem s;
    s.alphabet = std::move(objects);
    s.structure = MembraneStructure::skin_only();
    s.init = {ms(w1)};
    s.env = std::move(env);
    s.rules = std::move(rules);
    s.output = 1;
    return s;
}

/// The "two-branch" system: w1 = ab, rules (ab,out) and (a,out), E empty.
inline CellPSystem two_branch() {
    return one_membrane({"a", "b"}, "a b", {},
                        {CellRule::symport_out(1, ms("a b")), CellRule::symport_out(1, ms("a"))});
}

/// w1 = ab, rules (ab,out) and (a,in), E empty: halts after 2 steps with w1 = a.
inline CellPSystem out_then_in() {
    return one_membrane({"a", "b"}, "a b", {},
                        {CellRule::symport_out(1, ms("a b")), CellRule::symport_in(1, ms("a"))});
}

/// Single rule (a,out;a,in) with a in E; w1 = a never halts.
inline CellPSystem perpetual() {
    return one_membrane({"a", "b"}, "a", {"a"}, {CellRule::antiport(1, ms("a"), ms("a"))});
}

// ---------------------------------------------------------------------------
// Brute-force maximal-step oracle, computed from the cell rules directly
// (no use of the engine's lowering or enumerator).

struct CellDemand {
    std::map<Label, Multiset> take;  // node -> objects consumed
};

inline CellDemand cell_demand(const CellPSystem& s, const CellRule& r) {
    CellDemand d;
    const Label outer = s.structure.outer(r.region);
    if (!r.out.empty()) d.take[r.region] += r.out;
    if (!r.in.empty()) d.take[outer] += r.in;
    return d;
}

/// Resources the oracle tracks: region contents by label, env finite part at 0.
using Pool = std::map<Label, Multiset>;

inline Pool pool_of(const Configuration& c) {
    Pool p;
    for (std::size_t l = 0; l < c.regions.size(); ++l) p[static_cast<Label>(l + 1)] = c.regions[l];
    p[0] = c.env.finite_part();
    return p;
}

inline bool fits(const Pool& pool, const CellDemand& d, const std::set<ObjectId>& env) {
    for (const auto& [node, need] : d.take) {
        const Multiset& have = pool.at(node);
        for (const auto& [a, n] : need) {
            if (node == 0 && env.count(a)) continue;
            if (have.count(a) < n) return false;
        }
    }
    return true;
}

inline void take(Pool& pool, const CellDemand& d, const std::set<ObjectId>& env) {
    for (const auto& [node, need] : d.take)
        for (const auto& [a, n] : need) {
            if (node == 0 && env.count(a)) continue;
            pool[node].remove(a, n);
        }
}

/// Every ⊆-maximal non-empty multiplicity vector, as sorted StepChoices.
inline std::vector<StepChoice> oracle_maximal_steps(const CellPSystem& s, const Configuration& c) {
    std::vector<CellDemand> demands;
    for (const auto& r : s.rules) demands.push_back(cell_demand(s, r));
    std::vector<StepChoice> out;
    std::vector<Count> mult(demands.size(), 0);

    std::function<void(std::size_t, const Pool&)> go = [&](std::size_t idx, const Pool& pool) {
        if (idx == demands.size()) {
            bool any = std::any_of(mult.begin(), mult.end(), [](Count m) { return m > 0; });
            if (!any) return;
            for (const auto& d : demands)
                if (fits(pool, d, s.env)) return;  // extendable
            StepChoice sc;
            for (std::size_t i = 0; i < mult.size(); ++i)
                if (mult[i]) sc.applications.emplace_back(i, mult[i]);
            out.push_back(sc);
            return;
        }
        Pool p = pool;
        mult[idx] = 0;
        go(idx + 1, p);
        while (fits(p, demands[idx], s.env)) {
            take(p, demands[idx], s.env);
            ++mult[idx];
            go(idx + 1, p);
        }
        mult[idx] = 0;
    };
    go(0, pool_of(c));
    std::sort(out.begin(), out.end());
    return out;
}

/// Naive tree walk without memoisation. Returns halting results reachable
/// within `depth` steps; `complete` is false if some path was cut at depth.
struct NaiveResult {
    std::set<Count> results;
    bool complete = true;
};

inline void naive_explore(const TransitionSystem& ts, const CellPSystem& s,
                          const Configuration& c, int depth, NaiveResult& out) {
    const auto steps = oracle_maximal_steps(s, c);
    if (steps.empty()) {
        out.results.insert(c.region(s.output).size());
        return;
    }
    if (depth == 0) {
        out.complete = false;
        return;
    }
    for (const auto& st : steps) naive_explore(ts, s, apply_step(ts, c, st), depth - 1, out);
}

/// Objects outside E, counted in every region and in the environment.
inline Count non_e_total(const Configuration& c, const std::set<ObjectId>& env) {
    Count k = c.env.finite_part().size();
    for (const auto& r : c.regions)
        for (const auto& [a, m] : r)
            if (!env.count(a)) k += m;
    return k;
}

/// Random interaction system; rules are not filtered, so it may fail validation.
inline InteractionSystem random_interaction(std::mt19937_64& rng) {
    static const char* names[] = {"a", "b", "c", "d"};
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    InteractionSystem s;
    s.n_cells = pick(1, 3);
    const int k = pick(1, 4);
    for (int i = 0; i < k; ++i) s.alphabet.insert(names[i]);
    for (int c = 0; c < s.n_cells; ++c) {
        Multiset w;
        for (int i = 0; i < k; ++i) w.add(names[i], static_cast<Count>(pick(0, 2)));
        s.init.push_back(w);
    }
    if (pick(0, 1)) s.env.insert(names[pick(0, k - 1)]);
    s.output = pick(1, s.n_cells);
    const int rules = pick(0, 4);
    for (int r = 0; r < rules; ++r) {
        const ObjectId a = names[pick(0, k - 1)], b = names[pick(0, k - 1)];
        if (pick(0, 2) == 0) {
            int i = pick(0, s.n_cells), j = pick(0, s.n_cells);
            if (i == j) continue;
            s.rules.push_back(UniportRule{a, i, j});
        } else {
            s.rules.push_back(InteractionRule{a, pick(1, s.n_cells), b, pick(0, s.n_cells),
                                              pick(0, s.n_cells), pick(0, s.n_cells)});
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Interaction-rule classes by equality pattern, written out by hand. The key
// is the restricted growth string of (i,j,k,l): "0012" means i = j and k, l
// distinct from them and from each other.

inline RuleClass expected_class(const std::string& key) {
    static const std::map<std::string, RuleClass> table = {
        {"0000", RuleClass::NoOp},
        {"0001", RuleClass::ConditionalUniportOut},
        {"0010", RuleClass::ConditionalUniportOut},
        {"0100", RuleClass::ConditionalUniportIn},
        {"0111", RuleClass::ConditionalUniportIn},
        {"0011", RuleClass::Symport2},
        {"0110", RuleClass::Antiport1},
        {"0101", RuleClass::NoOp},
        {"0012", RuleClass::Separation},
        {"0122", RuleClass::Joining},
        {"0102", RuleClass::PresenceMove},
        {"0121", RuleClass::PresenceMove},
        {"0120", RuleClass::Chain},
        {"0112", RuleClass::Chain},
        {"0123", RuleClass::ParallelShift},
    };
    return table.at(key);
}

inline std::string rgs(const std::array<int, 4>& v) {
    std::map<int, char> seen;
    std::string out;
    for (int x : v) {
        auto it = seen.find(x);
        if (it == seen.end()) it = seen.emplace(x, static_cast<char>('0' + seen.size())).first;
        out += it->second;
    }
    return out;
}

}  // namespace testing

#endif  // PSYS_TESTS_SUPPORT_HPP
