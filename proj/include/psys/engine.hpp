#ifndef PSYS_ENGINE_HPP
#define PSYS_ENGINE_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "psys/model.hpp"
#include "psys/multiset.hpp"

namespace psys {

/// Region contents 1..n plus the finite environment remainder.
struct Configuration {
    std::vector<Multiset> regions;  // regions[l - 1]
    EnvContent env;

    const Multiset& region(Label l) const { return regions.at(static_cast<std::size_t>(l - 1)); }
    Multiset& region(Label l) { return regions.at(static_cast<std::size_t>(l - 1)); }

    /// Objects in all regions.
    Count inside_total() const;
    /// Objects in all regions plus the finite environment part.
    Count total() const;

    friend bool operator==(const Configuration&, const Configuration&) = default;
    friend std::strong_ordering operator<=>(const Configuration& a, const Configuration& b) {
        if (auto c = a.regions <=> b.regions; c != 0) return c;
        return a.env <=> b.env;
    }
};

/// `objects` travel from node `from` to node `to` (0 = environment).
struct Move {
    Label from = 0;
    Label to = 0;
    Multiset objects;
};

/// Any rule of any variant, lowered to simultaneous moves.
struct FlatRule {
    std::string id;    // "r1", "r2", ... in system order
    std::string text;  // rule in its source notation
    std::vector<Move> moves;
    std::map<Label, Multiset> consumes;
    std::map<Label, Multiset> produces;
};

/**
 * Executable view of a system. Cell membranes and tissue cells become
 * regions 1..n; the region outside the skin, or tissue node 0, is the
 * environment. Every engine and explorer operation runs against this form.
 */
class TransitionSystem {
public:
    static TransitionSystem from(const CellPSystem& sys);
    static TransitionSystem from(const TissuePSystem& sys);
    static TransitionSystem from(const InteractionSystem& sys);
    static TransitionSystem from(const AnySystem& sys);

    int degree() const { return degree_; }
    Label output() const { return output_; }
    const std::set<ObjectId>& env_support() const { return env_; }
    const std::vector<FlatRule>& rules() const { return rules_; }
    const Configuration& initial() const { return initial_; }
    /// Initial configuration with `input` added to region `region`.
    Configuration initial_with(const Multiset& input, Label region) const;

    /// True when rules a and b draw on a common finitely-available object.
    bool competes(std::size_t a, std::size_t b) const { return competes_[a][b]; }
    /// True when some rule after `idx` competes with it.
    bool competes_later(std::size_t idx) const { return competes_later_[idx]; }

    bool consistent(const Configuration& c) const;

private:
    void finish();

    int degree_ = 0;
    Label output_ = 1;
    std::set<ObjectId> env_;
    std::vector<FlatRule> rules_;
    Configuration initial_;
    std::vector<std::vector<bool>> competes_;
    std::vector<bool> competes_later_;
};

struct EnabledInstance {
    std::size_t rule = 0;
    Count max_multiplicity = 0;

    friend bool operator==(const EnabledInstance&, const EnabledInstance&) = default;
};

/// Rule index -> multiplicity, sorted by index, multiplicities positive.
struct StepChoice {
    std::vector<std::pair<std::size_t, Count>> applications;

    bool empty() const { return applications.empty(); }
    Count multiplicity(std::size_t rule) const;

    friend bool operator==(const StepChoice&, const StepChoice&) = default;
    friend auto operator<=>(const StepChoice&, const StepChoice&) = default;
};

struct StepSet {
    std::vector<StepChoice> choices;
    bool complete = true;
};

/// Largest m such that m copies of rule `rule` alone fit in `c`.
Count max_multiplicity(const TransitionSystem& sys, const Configuration& c, std::size_t rule);

std::vector<EnabledInstance> enabled_instances(const TransitionSystem& sys, const Configuration& c);

bool jointly_applicable(const TransitionSystem& sys, const Configuration& c, const StepChoice& s);
/// Jointly applicable and no single extra application fits.
bool is_maximal(const TransitionSystem& sys, const Configuration& c, const StepChoice& s);

/// Distinct maximal steps in canonical order; at most `cap` of them.
/// `complete` is false when more than `cap` exist or when the search needed
/// more than a fixed multiple of `cap` partial assignments to decide.
StepSet maximal_steps(const TransitionSystem& sys, const Configuration& c, std::size_t cap);

/// Two-phase application: consume everything from c, then deliver.
/// Throws std::logic_error if s is not applicable, or if s is empty while
/// some rule is enabled.
Configuration apply_step(const TransitionSystem& sys, const Configuration& c, const StepChoice& s);

bool is_halted(const TransitionSystem& sys, const Configuration& c);

/// Size of the output region. Throws std::logic_error on a non-halted c.
Count result(const TransitionSystem& sys, const Configuration& c);

/// One maximal step built by repeatedly picking an enabled rule uniformly and
/// adding a uniform share of the copies that still fit, until none fits.
/// Cheap, but not uniform over maximal steps.
StepChoice greedy_random_step(const TransitionSystem& sys, const Configuration& c,
                              std::mt19937_64& rng);

enum class Policy { EnumerateUniform, GreedyRandom };

std::string_view to_string(Policy p);
std::optional<Policy> parse_policy(std::string_view text);

struct RunOptions {
    std::uint64_t seed = 0;
    std::uint64_t max_steps = 10'000;
    Policy policy = Policy::EnumerateUniform;
    std::size_t enumerate_cap = 10'000;
};

struct TraceStep {
    Configuration before;
    StepChoice choice;
};

struct Trace {
    std::vector<TraceStep> steps;
    Configuration final_config;
    bool halted = false;
    std::uint64_t steps_taken = 0;
    std::vector<std::string> notes;  // e.g. enumeration fallbacks

    /// Configurations c0, c1, ..., final.
    std::vector<Configuration> configurations() const;
};

Trace run(const TransitionSystem& sys, const RunOptions& opts);
Trace run_from(const TransitionSystem& sys, Configuration start, const RunOptions& opts);

enum class AcceptVerdict { Accepted, BudgetExhausted };

struct AcceptRun {
    AcceptVerdict verdict = AcceptVerdict::BudgetExhausted;
    Trace trace;
};

AcceptRun run_accepting(const TransitionSystem& sys, const Multiset& input, Label input_region,
                        const RunOptions& opts);

/// One JSON object per step, then a final record with "halted" (and
/// "result" when halted).
void write_trace_jsonl(const TransitionSystem& sys, const Trace& trace, std::ostream& out);

}  // namespace psys

#endif  // PSYS_ENGINE_HPP
