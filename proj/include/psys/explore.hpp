#ifndef PSYS_EXPLORE_HPP
#define PSYS_EXPLORE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "psys/engine.hpp"

namespace psys {

struct ExploreBudget {
    std::uint64_t max_depth = 64;
    std::uint64_t max_total_objects = 64;  // regions plus finite environment part
    std::uint64_t max_branches = 10'000;   // maximal steps enumerated per configuration
    std::uint64_t max_configs = 1'000'000;
};

struct ExploreOutcome {
    std::set<Count> results;
    bool exhausted = true;  // no budget was hit anywhere
    std::uint64_t halting_leaves = 0;
    std::uint64_t cut_branches = 0;
    std::uint64_t visited_configs = 0;
    /// One step sequence from the start to a halting configuration per result
    /// (filled only when ExploreOptions::record_witnesses is set).
    std::map<Count, std::vector<StepChoice>> witnesses;
};

using EdgeObserver =
    std::function<void(const Configuration& from, const StepChoice& step, const Configuration& to)>;

struct ExploreOptions {
    /// Configurations for which this returns true are not expanded and count as cuts.
    std::function<bool(const Configuration&)> prune;
    /// Called for every edge taken, including edges into already-seen configurations.
    EdgeObserver on_edge;
    std::function<void(const Configuration&)> on_config;
    bool stop_at_first_halt = false;
    bool record_witnesses = false;
    /// Worker threads over the first level of the tree; 1 is exact and reproducible.
    unsigned jobs = 1;
};

/// Breadth-first enumeration of the computation tree from `start`, visiting
/// each configuration once. Revisits (including cycles) add no results and
/// are not budget hits. `exhausted` is true iff the whole reachable space
/// was enumerated, in which case `results` is exactly N(Π).
ExploreOutcome explore_from(const TransitionSystem& sys, const Configuration& start,
                            const ExploreBudget& budget, const ExploreOptions& opts = {});
ExploreOutcome explore(const TransitionSystem& sys, const ExploreBudget& budget,
                       const ExploreOptions& opts = {});

std::string outcome_json(const ExploreOutcome& o);

enum class AcceptDecision { Accepted, RejectedExhaustive, Unknown };
std::string_view to_string(AcceptDecision d);

AcceptDecision decide_accept(const TransitionSystem& sys, const Multiset& input, Label region,
                             const ExploreBudget& budget);

enum class Determinism { DeterministicUpToBudget, Nondeterministic, Unknown };
std::string_view to_string(Determinism d);

struct DeterminismReport {
    Determinism verdict = Determinism::Unknown;
    std::optional<Configuration> witness;  // first configuration with >= 2 maximal steps
};

DeterminismReport check_deterministic(const TransitionSystem& sys, const ExploreBudget& budget);

/// Symport moving at most two objects, or antiport exchanging one for one.
bool is_minimal_rule(const CellRule& r);
bool is_minimal_rule(const TissueRule& r);
bool is_minimal_system(const CellPSystem& sys);

struct MonotoneReport {
    std::uint64_t samples = 0;
    std::uint64_t edges_checked = 0;
    std::uint64_t increase_violations = 0;   // inside count grew along an edge
    std::uint64_t exhaustion_failures = 0;   // explore with max_total_objects = s not exhausted
    std::uint64_t result_bound_violations = 0;  // a result exceeded s
    std::uint64_t engine_defects = 0;  // maximal step sets failing their own invariants
    std::vector<std::string> counterexamples;  // first few, as system text

    bool passed() const {
        return increase_violations == 0 && exhaustion_failures == 0 &&
               result_bound_violations == 0 && engine_defects == 0;
    }
};

/// Random one-region systems with minimal rules; every explored edge must
/// not increase the inside count, exploration with max_total_objects set to
/// the initial inside size must exhaust, and results must not exceed it.
/// Each sample is checked both as a cell system and as its tissue encoding.
MonotoneReport harness_monotone_minimal(std::uint64_t sample_count, std::uint64_t seed);

/// Same checks for one given system (used by the harness and by tests).
void check_monotone_instance(const CellPSystem& sys, MonotoneReport& report);

struct DeterministicHarnessReport {
    std::uint64_t systems = 0;
    std::uint64_t certified = 0;         // deterministic_up_to_budget
    std::uint64_t halting_runs = 0;
    std::uint64_t precondition_failures = 0;  // non-minimal rules or not certified
    std::uint64_t step_violations = 0;   // inside total above initial at an intermediate step
    std::uint64_t final_violations = 0;  // inside total above initial at the halting configuration
    std::vector<std::string> messages;

    bool passed() const {
        return precondition_failures == 0 && step_violations == 0 && final_violations == 0;
    }
};

/// For each deterministic minimal cell system: run it, and on halting runs
/// require the inside total never to exceed the initial total.
DeterministicHarnessReport harness_deterministic_minimal(const std::vector<CellPSystem>& corpus,
                                                         const ExploreBudget& budget = {},
                                                         std::uint64_t max_steps = 10'000);

}  // namespace psys

#endif  // PSYS_EXPLORE_HPP
