#include "psys/engine.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace psys {

namespace {

using Resource = std::pair<Label, ObjectId>;

void consume_into(Configuration& c, Label node, const Multiset& m) {
    if (node == kEnvironment) c.env.withdraw(m);
    else c.region(node) -= m;
}

void deliver_into(Configuration& c, Label node, const Multiset& m) {
    if (node == kEnvironment) c.env.deposit(m);
    else c.region(node) += m;
}

void consume_rule(Configuration& c, const FlatRule& r, Count times) {
    for (const auto& [node, m] : r.consumes) consume_into(c, node, m.scaled(times));
}

void restore_rule(Configuration& c, const FlatRule& r, Count times) {
    for (const auto& [node, m] : r.consumes) deliver_into(c, node, m.scaled(times));
}

std::set<Resource> finite_resources(const FlatRule& r, const std::set<ObjectId>& env) {
    std::set<Resource> out;
    for (const auto& [node, m] : r.consumes)
        for (const auto& [a, n] : m)
            if (node != kEnvironment || !env.count(a)) out.emplace(node, a);
    return out;
}

Configuration make_initial(const std::vector<Multiset>& init, const std::set<ObjectId>& env) {
    Configuration c;
    c.regions = init;
    c.env = EnvContent(env);
    return c;
}

FlatRule flat(std::string text, std::vector<Move> moves) {
    FlatRule r;
    r.text = std::move(text);
    r.moves = std::move(moves);
    return r;
}

}  // namespace

Count Configuration::inside_total() const {
    Count total = 0;
    for (const auto& m : regions) total = checked_add(total, m.size());
    return total;
}

Count Configuration::total() const { return checked_add(inside_total(), env.finite_part().size()); }

TransitionSystem TransitionSystem::from(const CellPSystem& sys) {
    TransitionSystem ts;
    ts.degree_ = sys.degree();
    ts.output_ = sys.output;
    ts.env_ = sys.env;
    ts.initial_ = make_initial(sys.init, sys.env);
    for (const auto& r : sys.rules) {
        const Label outer = sys.structure.outer(r.region);
        std::vector<Move> moves;
        if (!r.out.empty()) moves.push_back({r.region, outer, r.out});
        if (!r.in.empty()) moves.push_back({outer, r.region, r.in});
        ts.rules_.push_back(flat(std::to_string(r.region) + ": " + to_string(r), std::move(moves)));
    }
    ts.finish();
    return ts;
}

TransitionSystem TransitionSystem::from(const TissuePSystem& sys) {
    TransitionSystem ts;
    ts.degree_ = sys.n_cells;
    ts.output_ = sys.output;
    ts.env_ = sys.env;
    ts.initial_ = make_initial(sys.init, sys.env);
    for (const auto& r : sys.rules) {
        std::vector<Move> moves{{r.from, r.to, r.x}};
        if (r.kind == TissueRuleKind::Antiport) moves.push_back({r.to, r.from, r.y});
        ts.rules_.push_back(flat(to_string(r), std::move(moves)));
    }
    ts.finish();
    return ts;
}

TransitionSystem TransitionSystem::from(const InteractionSystem& sys) {
    TransitionSystem ts;
    ts.degree_ = sys.n_cells;
    ts.output_ = sys.output;
    ts.env_ = sys.env;
    ts.initial_ = make_initial(sys.init, sys.env);
    for (const auto& rule : sys.rules) {
        std::vector<Move> moves;
        if (const auto* r = std::get_if<InteractionRule>(&rule)) {
            moves.push_back({r->i, r->k, Multiset::of(r->a)});
            moves.push_back({r->j, r->l, Multiset::of(r->b)});
        } else {
            const auto& u = std::get<UniportRule>(rule);
            moves.push_back({u.i, u.k, Multiset::of(u.a)});
        }
        ts.rules_.push_back(flat(to_string(rule), std::move(moves)));
    }
    ts.finish();
    return ts;
}

TransitionSystem TransitionSystem::from(const AnySystem& sys) {
    return std::visit([](const auto& s) { return TransitionSystem::from(s); }, sys);
}

void TransitionSystem::finish() {
    std::vector<std::set<Resource>> res;
    for (std::size_t idx = 0; idx < rules_.size(); ++idx) {
        auto& r = rules_[idx];
        r.id = "r" + std::to_string(idx + 1);
        for (const auto& mv : r.moves) {
            r.consumes[mv.from] += mv.objects;
            r.produces[mv.to] += mv.objects;
        }
        res.push_back(finite_resources(r, env_));
    }
    const std::size_t k = rules_.size();
    competes_.assign(k, std::vector<bool>(k, false));
    competes_later_.assign(k, false);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            competes_[a][b] = std::any_of(res[a].begin(), res[a].end(),
                                          [&](const Resource& x) { return res[b].count(x) != 0; });
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            if (competes_[a][b]) competes_later_[a] = true;
}

Configuration TransitionSystem::initial_with(const Multiset& input, Label region) const {
    if (region < 1 || region > degree_)
        throw std::invalid_argument("input region " + std::to_string(region) + " does not exist");
    Configuration c = initial_;
    c.region(region) += input;
    return c;
}

bool TransitionSystem::consistent(const Configuration& c) const {
    if (static_cast<int>(c.regions.size()) != degree_) return false;
    if (c.env.infinite_support() != env_) return false;
    for (const auto& [a, n] : c.env.finite_part())
        if (env_.count(a)) return false;
    return true;
}

Count StepChoice::multiplicity(std::size_t rule) const {
    for (const auto& [r, m] : applications)
        if (r == rule) return m;
    return 0;
}

Count max_multiplicity(const TransitionSystem& sys, const Configuration& c, std::size_t rule) {
    const auto& r = sys.rules().at(rule);
    std::optional<Count> best;
    for (const auto& [node, m] : r.consumes) {
        for (const auto& [a, n] : m) {
            Count avail;
            if (node == kEnvironment) {
                if (c.env.is_infinite(a)) continue;
                avail = c.env.finite_part().count(a);
            } else {
                avail = c.region(node).count(a);
            }
            const Count k = avail / n;
            if (!best || k < *best) best = k;
        }
    }
    if (!best)
        throw std::logic_error("rule " + r.id + " consumes only infinitely available objects");
    return *best;
}

std::vector<EnabledInstance> enabled_instances(const TransitionSystem& sys,
                                               const Configuration& c) {
    std::vector<EnabledInstance> out;
    for (std::size_t i = 0; i < sys.rules().size(); ++i)
        if (Count m = max_multiplicity(sys, c, i); m > 0) out.push_back({i, m});
    return out;
}

bool jointly_applicable(const TransitionSystem& sys, const Configuration& c, const StepChoice& s) {
    Configuration rem = c;
    try {
        for (const auto& [rule, m] : s.applications) consume_rule(rem, sys.rules().at(rule), m);
    } catch (const std::logic_error&) {
        return false;
    }
    return true;
}

bool is_maximal(const TransitionSystem& sys, const Configuration& c, const StepChoice& s) {
    Configuration rem = c;
    try {
        for (const auto& [rule, m] : s.applications) consume_rule(rem, sys.rules().at(rule), m);
    } catch (const std::logic_error&) {
        return false;
    }
    for (std::size_t i = 0; i < sys.rules().size(); ++i)
        if (max_multiplicity(sys, rem, i) > 0) return false;
    return true;
}

namespace {

/**
 * Depth-first assignment of a multiplicity to each rule in index order,
 * consuming from a scratch configuration. A rule left below its maximum must
 * eventually be blocked by a later competing rule; branches where that can
 * no longer happen are cut early, and leaves are kept only if maximal.
 */
class StepEnumerator {
public:
    StepEnumerator(const TransitionSystem& sys, const Configuration& c, std::size_t cap)
        : sys_(sys), rem_(c), cap_(cap), work_left_(kWorkPerStep * (cap + 1)),
          mult_(sys.rules().size(), 0) {
        const std::size_t k = sys.rules().size();
        last_competitor_.assign(k, -1);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b)
                if (sys.competes(a, b))
                    last_competitor_[a] = std::max(last_competitor_[a], static_cast<long>(b));
    }

    StepSet run() {
        visit(0);
        StepSet out;
        out.complete = found_.size() <= cap_ && work_left_ > 0;
        if (found_.size() > cap_) found_.resize(cap_);
        std::sort(found_.begin(), found_.end());
        out.choices = std::move(found_);
        return out;
    }

private:
    static constexpr std::uint64_t kWorkPerStep = 256;

    bool done() const { return found_.size() > cap_ || work_left_ == 0; }

    // Some earlier rule is still applicable and nothing from idx on can block it.
    bool hopeless(std::size_t idx) const {
        for (std::size_t j = 0; j < idx; ++j)
            if (last_competitor_[j] < static_cast<long>(idx) && max_multiplicity(sys_, rem_, j) > 0)
                return true;
        return false;
    }

    void visit(std::size_t idx) {
        if (done()) return;
        --work_left_;
        if (hopeless(idx)) return;
        const std::size_t k = sys_.rules().size();
        if (idx == k) {
            // hopeless(k) already proved nothing more fits.
            StepChoice s;
            for (std::size_t i = 0; i < k; ++i)
                if (mult_[i] > 0) s.applications.emplace_back(i, mult_[i]);
            if (!s.empty()) found_.push_back(std::move(s));
            return;
        }
        const auto& rule = sys_.rules()[idx];
        const Count top = max_multiplicity(sys_, rem_, idx);
        const Count bottom = sys_.competes_later(idx) ? 0 : top;
        for (Count m = top + 1; m-- > bottom;) {
            consume_rule(rem_, rule, m);
            mult_[idx] = m;
            visit(idx + 1);
            restore_rule(rem_, rule, m);
            mult_[idx] = 0;
            if (done()) return;
        }
    }

    const TransitionSystem& sys_;
    Configuration rem_;
    std::size_t cap_;
    std::uint64_t work_left_;  // partial assignments we may still visit
    std::vector<Count> mult_;
    std::vector<long> last_competitor_;
    std::vector<StepChoice> found_;
};

}  // namespace

StepSet maximal_steps(const TransitionSystem& sys, const Configuration& c, std::size_t cap) {
    return StepEnumerator(sys, c, cap).run();
}

Configuration apply_step(const TransitionSystem& sys, const Configuration& c, const StepChoice& s) {
    if (s.empty()) {
        if (!is_halted(sys, c))
            throw std::logic_error("empty step chosen while rules are applicable");
        return c;
    }
    Configuration next = c;
    try {
        for (const auto& [rule, m] : s.applications) consume_rule(next, sys.rules().at(rule), m);
    } catch (const std::logic_error& e) {
        throw std::logic_error(std::string("step is not applicable: ") + e.what());
    }
    for (const auto& [rule, m] : s.applications)
        for (const auto& [node, ms] : sys.rules()[rule].produces)
            deliver_into(next, node, ms.scaled(m));
    return next;
}

bool is_halted(const TransitionSystem& sys, const Configuration& c) {
    for (std::size_t i = 0; i < sys.rules().size(); ++i)
        if (max_multiplicity(sys, c, i) > 0) return false;
    return true;
}

Count result(const TransitionSystem& sys, const Configuration& c) {
    if (!is_halted(sys, c)) throw std::logic_error("result requested for a non-halted configuration");
    return c.region(sys.output()).size();
}

StepChoice greedy_random_step(const TransitionSystem& sys, const Configuration& c,
                              std::mt19937_64& rng) {
    Configuration rem = c;
    std::vector<Count> mult(sys.rules().size(), 0);
    std::vector<EnabledInstance> candidates;
    while (true) {
        candidates = enabled_instances(sys, rem);
        if (candidates.empty()) break;
        std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
        const auto [r, top] = candidates[pick(rng)];
        // A random share of what still fits, so huge counts take few rounds.
        const Count n = std::uniform_int_distribution<Count>(1, top)(rng);
        consume_rule(rem, sys.rules()[r], n);
        mult[r] += n;
    }
    StepChoice s;
    for (std::size_t i = 0; i < mult.size(); ++i)
        if (mult[i] > 0) s.applications.emplace_back(i, mult[i]);
    return s;
}

std::string_view to_string(Policy p) {
    return p == Policy::EnumerateUniform ? "enumerate-uniform" : "greedy-random";
}

std::optional<Policy> parse_policy(std::string_view text) {
    if (text == "enumerate-uniform") return Policy::EnumerateUniform;
    if (text == "greedy-random") return Policy::GreedyRandom;
    return std::nullopt;
}

std::vector<Configuration> Trace::configurations() const {
    std::vector<Configuration> out;
    out.reserve(steps.size() + 1);
    for (const auto& s : steps) out.push_back(s.before);
    out.push_back(final_config);
    return out;
}

Trace run_from(const TransitionSystem& sys, Configuration start, const RunOptions& opts) {
    std::mt19937_64 rng(opts.seed);
    Trace trace;
    Configuration cur = std::move(start);
    while (true) {
        if (is_halted(sys, cur)) {
            trace.halted = true;
            break;
        }
        if (trace.steps_taken >= opts.max_steps) break;
        StepChoice choice;
        if (opts.policy == Policy::EnumerateUniform) {
            StepSet set = maximal_steps(sys, cur, opts.enumerate_cap);
            if (set.complete) {
                std::uniform_int_distribution<std::size_t> pick(0, set.choices.size() - 1);
                choice = set.choices[pick(rng)];
            } else {
                trace.notes.push_back("step " + std::to_string(trace.steps_taken + 1) +
                                      ": maximal steps not enumerable within cap " +
                                      std::to_string(opts.enumerate_cap) + ", used greedy-random");
                choice = greedy_random_step(sys, cur, rng);
            }
        } else {
            choice = greedy_random_step(sys, cur, rng);
        }
        Configuration next = apply_step(sys, cur, choice);
        trace.steps.push_back({std::move(cur), std::move(choice)});
        cur = std::move(next);
        ++trace.steps_taken;
    }
    trace.final_config = std::move(cur);
    return trace;
}

Trace run(const TransitionSystem& sys, const RunOptions& opts) {
    return run_from(sys, sys.initial(), opts);
}

AcceptRun run_accepting(const TransitionSystem& sys, const Multiset& input, Label input_region,
                        const RunOptions& opts) {
    AcceptRun out;
    out.trace = run_from(sys, sys.initial_with(input, input_region), opts);
    out.verdict = out.trace.halted ? AcceptVerdict::Accepted : AcceptVerdict::BudgetExhausted;
    return out;
}

namespace {

nlohmann::ordered_json multiset_json(const Multiset& m) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [a, n] : m) j[a] = n;
    return j;
}

void put_configuration(nlohmann::ordered_json& rec, const Configuration& c) {
    nlohmann::ordered_json regions = nlohmann::ordered_json::object();
    for (std::size_t l = 0; l < c.regions.size(); ++l)
        regions[std::to_string(l + 1)] = multiset_json(c.regions[l]);
    rec["regions"] = std::move(regions);
    rec["env"] = multiset_json(c.env.finite_part());
}

}  // namespace

void write_trace_jsonl(const TransitionSystem& sys, const Trace& trace, std::ostream& out) {
    for (std::size_t t = 0; t < trace.steps.size(); ++t) {
        nlohmann::ordered_json rec;
        rec["step"] = t + 1;
        nlohmann::ordered_json choice = nlohmann::ordered_json::array();
        for (const auto& [rule, m] : trace.steps[t].choice.applications)
            choice.push_back({{"rule", sys.rules()[rule].id}, {"n", m}});
        rec["choice"] = std::move(choice);
        const Configuration& after =
            t + 1 < trace.steps.size() ? trace.steps[t + 1].before : trace.final_config;
        put_configuration(rec, after);
        out << rec.dump() << '\n';
    }
    nlohmann::ordered_json fin;
    fin["step"] = trace.steps_taken;
    put_configuration(fin, trace.final_config);
    fin["halted"] = trace.halted;
    if (trace.halted) fin["result"] = trace.final_config.region(sys.output()).size();
    if (!trace.notes.empty()) fin["notes"] = trace.notes;
    out << fin.dump() << '\n';
}

}  // namespace psys
