#include "psys/explore.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "psys/random_systems.hpp"

namespace psys {

namespace {

struct NodeInfo {
    std::uint64_t depth = 0;
    const Configuration* parent = nullptr;
    StepChoice via;
};

using NodeMap = std::map<Configuration, NodeInfo>;

std::vector<StepChoice> path_to(const NodeMap& nodes, const Configuration& target) {
    std::vector<StepChoice> path;
    const Configuration* cur = &target;
    while (true) {
        const auto& info = nodes.at(*cur);
        if (!info.parent) break;
        path.push_back(info.via);
        cur = info.parent;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

/// Returns true to stop the search.
using ExpandHook = std::function<bool(const Configuration&, const StepSet&)>;

ExploreOutcome bfs(const TransitionSystem& sys, const Configuration& start,
                   const ExploreBudget& budget, const ExploreOptions& opts,
                   const ExpandHook& on_expand) {
    ExploreOutcome out;
    auto cut = [&] {
        ++out.cut_branches;
        out.exhausted = false;
    };
    auto admissible = [&](const Configuration& c) {
        if (opts.prune && opts.prune(c)) return false;
        if (c.total() > budget.max_total_objects) return false;
        return true;
    };

    NodeMap nodes;
    std::deque<NodeMap::const_iterator> queue;
    if (!admissible(start)) {
        cut();
        return out;
    }
    queue.push_back(nodes.emplace(start, NodeInfo{}).first);

    while (!queue.empty()) {
        const auto it = queue.front();
        queue.pop_front();
        const Configuration& cfg = it->first;
        const std::uint64_t depth = it->second.depth;
        if (opts.on_config) opts.on_config(cfg);

        const StepSet steps = maximal_steps(sys, cfg, budget.max_branches);
        if (on_expand && on_expand(cfg, steps)) break;
        if (steps.choices.empty()) {
            const Count value = cfg.region(sys.output()).size();
            ++out.halting_leaves;
            const bool fresh = out.results.insert(value).second;
            if (fresh && opts.record_witnesses) out.witnesses[value] = path_to(nodes, cfg);
            if (opts.stop_at_first_halt) break;
            continue;
        }
        if (!steps.complete) cut();
        if (depth >= budget.max_depth) {
            cut();
            continue;
        }
        for (const auto& step : steps.choices) {
            Configuration next = apply_step(sys, cfg, step);
            if (opts.on_edge) opts.on_edge(cfg, step, next);
            if (nodes.count(next)) continue;
            if (!admissible(next)) {
                cut();
                continue;
            }
            if (nodes.size() >= budget.max_configs) {
                cut();
                continue;
            }
            auto [child, inserted] = nodes.emplace(std::move(next), NodeInfo{depth + 1, &cfg, step});
            queue.push_back(child);
        }
    }
    out.visited_configs = nodes.size();
    return out;
}

ExploreOutcome explore_parallel(const TransitionSystem& sys, const Configuration& start,
                                const ExploreBudget& budget, const ExploreOptions& opts) {
    ExploreOptions serial = opts;
    serial.jobs = 1;
    if (start.total() > budget.max_total_objects || (opts.prune && opts.prune(start)) ||
        budget.max_depth == 0)
        return bfs(sys, start, budget, serial, {});
    const StepSet first = maximal_steps(sys, start, budget.max_branches);
    if (first.choices.empty()) return bfs(sys, start, budget, serial, {});

    ExploreBudget child_budget = budget;
    child_budget.max_depth = budget.max_depth - 1;
    std::vector<ExploreOutcome> partial(first.choices.size());
    const unsigned workers =
        std::min<unsigned>(opts.jobs, static_cast<unsigned>(first.choices.size()));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < first.choices.size(); i += workers) {
                const Configuration next = apply_step(sys, start, first.choices[i]);
                if (next == start) continue;  // one-node cycle, contributes nothing
                partial[i] = bfs(sys, next, child_budget, serial, {});
            }
        });
    }
    for (auto& t : pool) t.join();

    ExploreOutcome out;
    out.visited_configs = 1;
    if (!first.complete) {
        out.exhausted = false;
        ++out.cut_branches;
    }
    for (std::size_t i = 0; i < partial.size(); ++i) {
        auto& p = partial[i];
        out.results.insert(p.results.begin(), p.results.end());
        out.exhausted = out.exhausted && p.exhausted;
        out.halting_leaves += p.halting_leaves;
        out.cut_branches += p.cut_branches;
        out.visited_configs += p.visited_configs;
        for (auto& [value, path] : p.witnesses) {
            if (out.witnesses.count(value)) continue;
            path.insert(path.begin(), first.choices[i]);
            out.witnesses.emplace(value, std::move(path));
        }
    }
    return out;
}

std::string describe(const CellPSystem& sys) {
    std::ostringstream os;
    os << "objects {";
    for (const auto& a : sys.alphabet) os << ' ' << a;
    os << " } E {";
    for (const auto& a : sys.env) os << ' ' << a;
    os << " } w1 = " << to_string(sys.init.at(0)) << " rules:";
    for (const auto& r : sys.rules) os << ' ' << to_string(r);
    return os.str();
}

}  // namespace

ExploreOutcome explore_from(const TransitionSystem& sys, const Configuration& start,
                            const ExploreBudget& budget, const ExploreOptions& opts) {
    if (opts.jobs > 1) return explore_parallel(sys, start, budget, opts);
    return bfs(sys, start, budget, opts, {});
}

ExploreOutcome explore(const TransitionSystem& sys, const ExploreBudget& budget,
                       const ExploreOptions& opts) {
    return explore_from(sys, sys.initial(), budget, opts);
}

std::string outcome_json(const ExploreOutcome& o) {
    nlohmann::ordered_json j;
    j["results"] = o.results;
    j["exhausted"] = o.exhausted;
    j["halting_leaves"] = o.halting_leaves;
    j["cut_branches"] = o.cut_branches;
    j["visited"] = o.visited_configs;
    return j.dump();
}

std::string_view to_string(AcceptDecision d) {
    switch (d) {
        case AcceptDecision::Accepted: return "accepted";
        case AcceptDecision::RejectedExhaustive: return "rejected_exhaustive";
        case AcceptDecision::Unknown: return "unknown";
    }
    return "?";
}

AcceptDecision decide_accept(const TransitionSystem& sys, const Multiset& input, Label region,
                             const ExploreBudget& budget) {
    ExploreOptions opts;
    opts.stop_at_first_halt = true;
    const auto out = explore_from(sys, sys.initial_with(input, region), budget, opts);
    if (out.halting_leaves > 0) return AcceptDecision::Accepted;
    return out.exhausted ? AcceptDecision::RejectedExhaustive : AcceptDecision::Unknown;
}

std::string_view to_string(Determinism d) {
    switch (d) {
        case Determinism::DeterministicUpToBudget: return "deterministic_up_to_budget";
        case Determinism::Nondeterministic: return "nondeterministic";
        case Determinism::Unknown: return "unknown";
    }
    return "?";
}

DeterminismReport check_deterministic(const TransitionSystem& sys, const ExploreBudget& budget) {
    DeterminismReport rep;
    ExploreBudget b = budget;
    b.max_branches = std::max<std::uint64_t>(b.max_branches, 2);
    const auto out = bfs(sys, sys.initial(), b, {}, [&](const Configuration& c, const StepSet& s) {
        if (s.choices.size() < 2) return false;
        rep.witness = c;
        return true;
    });
    if (rep.witness) rep.verdict = Determinism::Nondeterministic;
    else rep.verdict = out.exhausted ? Determinism::DeterministicUpToBudget : Determinism::Unknown;
    return rep;
}

bool is_minimal_rule(const CellRule& r) {
    switch (r.kind) {
        case CellRuleKind::SymportIn: return r.in.size() >= 1 && r.in.size() <= 2;
        case CellRuleKind::SymportOut: return r.out.size() >= 1 && r.out.size() <= 2;
        case CellRuleKind::Antiport: return r.in.size() == 1 && r.out.size() == 1;
    }
    return false;
}

bool is_minimal_rule(const TissueRule& r) {
    if (r.kind == TissueRuleKind::Symport) return r.x.size() >= 1 && r.x.size() <= 2;
    return r.x.size() == 1 && r.y.size() == 1;
}

bool is_minimal_system(const CellPSystem& sys) {
    return std::all_of(sys.rules.begin(), sys.rules.end(),
                       [](const CellRule& r) { return is_minimal_rule(r); });
}

void check_monotone_instance(const CellPSystem& sys, MonotoneReport& report) {
    const Count initial = sys.init.at(0).size();
    ExploreBudget budget;
    budget.max_depth = 1'000'000;
    budget.max_total_objects = initial;
    budget.max_configs = 100'000;

    bool increased = false, exhaust_fail = false, bound_fail = false, defect = false;
    auto check = [&](const TransitionSystem& ts) {
        ExploreOptions opts;
        opts.on_edge = [&](const Configuration& from, const StepChoice& step, const Configuration& to) {
            ++report.edges_checked;
            if (to.inside_total() > from.inside_total()) increased = true;
            if (!is_maximal(ts, from, step)) defect = true;
        };
        const auto out = explore(ts, budget, opts);
        if (!out.exhausted) exhaust_fail = true;
        if (!out.results.empty() && *out.results.rbegin() > initial) bound_fail = true;
    };
    check(TransitionSystem::from(sys));
    check(TransitionSystem::from(encode_cell_as_tissue(sys)));

    ++report.samples;
    report.increase_violations += increased;
    report.exhaustion_failures += exhaust_fail;
    report.result_bound_violations += bound_fail;
    report.engine_defects += defect;
    if ((increased || exhaust_fail || bound_fail || defect) && report.counterexamples.size() < 5)
        report.counterexamples.push_back(describe(sys));
}

MonotoneReport harness_monotone_minimal(std::uint64_t sample_count, std::uint64_t seed) {
    MonotoneReport report;
    std::mt19937_64 rng(seed);
    for (std::uint64_t i = 0; i < sample_count; ++i) check_monotone_instance(random_minimal_one_region(rng), report);
    return report;
}

DeterministicHarnessReport harness_deterministic_minimal(const std::vector<CellPSystem>& corpus,
                                                         const ExploreBudget& budget,
                                                         std::uint64_t max_steps) {
    DeterministicHarnessReport rep;
    for (std::size_t idx = 0; idx < corpus.size(); ++idx) {
        const auto& sys = corpus[idx];
        const std::string tag = "system " + std::to_string(idx + 1);
        ++rep.systems;
        if (!validate_cell(sys).ok() || !is_minimal_system(sys)) {
            ++rep.precondition_failures;
            rep.messages.push_back(tag + ": invalid or not minimal");
            continue;
        }
        const auto ts = TransitionSystem::from(sys);
        const auto det = check_deterministic(ts, budget);
        if (det.verdict != Determinism::DeterministicUpToBudget) {
            ++rep.precondition_failures;
            rep.messages.push_back(tag + ": " + std::string(to_string(det.verdict)));
            continue;
        }
        ++rep.certified;
        RunOptions ro;
        ro.max_steps = max_steps;
        const Trace trace = run(ts, ro);
        if (!trace.halted) {
            rep.messages.push_back(tag + ": no halt within " + std::to_string(max_steps) + " steps");
            continue;
        }
        ++rep.halting_runs;
        const auto configs = trace.configurations();
        const Count start = configs.front().inside_total();
        for (std::size_t t = 1; t + 1 < configs.size(); ++t)
            if (configs[t].inside_total() > start) {
                ++rep.step_violations;
                rep.messages.push_back(tag + ": inside total exceeds initial at step " +
                                       std::to_string(t));
                break;
            }
        if (configs.back().inside_total() > start) {
            ++rep.final_violations;
            rep.messages.push_back(tag + ": halting configuration holds more objects than initially");
        }
    }
    return rep;
}

}  // namespace psys
