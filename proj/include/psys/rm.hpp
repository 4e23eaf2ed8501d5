#ifndef PSYS_RM_HPP
#define PSYS_RM_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "psys/diagnostic.hpp"
#include "psys/explore.hpp"
#include "psys/model.hpp"

namespace psys {

/// ADD r -> a | b: increment r, continue at a or b (nondeterministically).
struct AddInstr {
    int reg = 1;
    std::string next_a;
    std::string next_b;
    friend bool operator==(const AddInstr&, const AddInstr&) = default;
};

/// SUB r -> nz | z: if r > 0 decrement and continue at nz, else continue at z.
struct SubInstr {
    int reg = 1;
    std::string nonzero;
    std::string zero;
    friend bool operator==(const SubInstr&, const SubInstr&) = default;
};

struct HaltInstr {
    friend bool operator==(const HaltInstr&, const HaltInstr&) = default;
};

using Instruction = std::variant<AddInstr, SubInstr, HaltInstr>;

/// Registers are numbered 1..num_registers and start at zero.
struct RegisterMachine {
    int num_registers = 1;
    int output_register = 1;
    std::map<std::string, Instruction> program;
    std::string start;

    friend bool operator==(const RegisterMachine&, const RegisterMachine&) = default;
};

/// Empty when well formed: start and all goto targets defined, registers in range.
std::vector<std::string> machine_defects(const RegisterMachine& m);

Parsed<RegisterMachine> parse_machine(std::string_view text);
std::string print_machine(const RegisterMachine& m);

struct RmState {
    std::string label;
    std::vector<Count> regs;
    friend bool operator==(const RmState&, const RmState&) = default;
    friend auto operator<=>(const RmState&, const RmState&) = default;
};

struct RmResults {
    std::set<Count> results;
    bool exhausted = true;  // nothing pruned by value or step bound
    std::uint64_t pruned_by_value = 0;
    std::uint64_t pruned_by_steps = 0;
    bool normal_form_ok = true;
    std::optional<RmState> normal_form_witness;  // halting state with a non-output register > 0
    std::uint64_t states = 0;
    std::map<Count, std::vector<std::string>> witnesses;  // label path per result
};

/// Exhaustive breadth-first search over (label, registers), pruning states
/// with any register above value_bound or deeper than step_bound.
RmResults rm_results(const RegisterMachine& m, Count value_bound, std::uint64_t step_bound);

/// One deterministic interpretation step; nullopt on HALT. Add takes next_a.
std::optional<RmState> rm_step_first(const RegisterMachine& m, const RmState& s);

/**
 * One-membrane antiport system simulating a register machine.
 *
 * Register r is the count of register_objects[r] inside the membrane; the
 * current instruction is the single program object inside.
 */
struct CompiledSystem {
    CellPSystem system;
    std::map<int, ObjectId> register_objects;
    std::map<std::string, std::vector<ObjectId>> label_objects;  // label and its gadget symbols
    std::set<ObjectId> program_objects;  // instruction labels plus SUB phase symbols
    Count certified_max_antiport = 2;
};

/// Throws std::invalid_argument on a malformed machine or a symbol clash.
CompiledSystem compile(const RegisterMachine& m);

struct VerifyBudget {
    Count value_bound = 8;
    std::uint64_t step_bound = 1'000'000;
    std::uint64_t max_configs = 1'000'000;
};

struct VerifyReport {
    bool ok = false;
    std::set<Count> machine_values;  // rm_results restricted to [0, bound]
    std::set<Count> system_values;   // explore results restricted to [0, bound]
    bool machine_exhausted_below_bound = false;
    bool system_exhausted_below_bound = false;
    bool normal_form_ok = true;
    bool size_certificate_ok = true;
    std::uint64_t program_symbol_violations = 0;
    std::optional<Count> first_mismatch;
    std::vector<std::string> messages;
};

VerifyReport verify_compiled(const RegisterMachine& m, const CompiledSystem& compiled,
                             const VerifyBudget& budget = {});
VerifyReport verify_compilation(const RegisterMachine& m, const VerifyBudget& budget = {});

}  // namespace psys

#endif  // PSYS_RM_HPP
