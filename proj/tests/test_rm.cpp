#include "doctest.h"
#include "support.hpp"

#include "psys/dsl.hpp"
#include "psys/measures.hpp"
#include "psys/rm.hpp"

using namespace psys;
using testing::ms;

namespace {

RegisterMachine machine(const std::string& name) {
    auto parsed = parse_machine(testing::read_file(testing::data_path("rm/" + name)));
    for (const auto& d : parsed.diagnostics) MESSAGE(to_string(d));
    REQUIRE(parsed.ok());
    return *parsed.value;
}

std::set<Count> range(Count lo, Count hi) {
    std::set<Count> s;
    for (Count v = lo; v <= hi; ++v) s.insert(v);
    return s;
}

}  // namespace

TEST_CASE("machine parsing and printing") {
    const auto m = machine("add_loop.rm");
    CHECK(m.num_registers == 1);
    CHECK(m.start == "p0");
    CHECK(std::get<AddInstr>(m.program.at("p0")) == AddInstr{1, "p0", "ph"});
    auto again = parse_machine(print_machine(m));
    REQUIRE(again.ok());
    CHECK(*again.value == m);

    CHECK(parse_machine("registers 1\noutput r1\nstart p\np: JMP q\n").diagnostics.at(0).code == "R001");
    CHECK(parse_machine("registers 1\noutput r1\nstart p\np: HALT\np: HALT\n").diagnostics.at(0).code == "R002");
    CHECK(parse_machine("registers 1\noutput r1\nstart p\np: ADD r1 -> q | p\n").diagnostics.at(0).code == "R003");
    CHECK(parse_machine("registers 1\noutput r1\nstart p\np: ADD r2 -> p | p\n").diagnostics.at(0).code == "R004");
    CHECK(parse_machine("output r1\nstart p\np: HALT\n").diagnostics.at(0).code == "R005");
}

TEST_CASE("machine results") {
    auto halt = rm_results(machine("halt.rm"), 8, 1000);
    CHECK(halt.results == std::set<Count>{0});
    CHECK(halt.exhausted);

    auto loop = rm_results(machine("add_loop.rm"), 8, 1000);
    CHECK(loop.results == range(1, 8));
    CHECK_FALSE(loop.exhausted);
    CHECK(loop.pruned_by_value > 0);

    auto zero = rm_results(machine("sub_on_zero.rm"), 8, 1000);
    CHECK(zero.results == std::set<Count>{0});
    CHECK(zero.exhausted);

    CHECK(rm_results(machine("even.rm"), 8, 1000).results == std::set<Count>{2, 4, 6, 8});
    CHECK(rm_results(machine("parity.rm"), 8, 1000).results == std::set<Count>{0, 1});
    CHECK(rm_results(machine("transfer.rm"), 8, 1000).results == range(1, 8));
    for (const char* f : {"halt.rm", "add_loop.rm", "even.rm", "parity.rm", "transfer.rm"})
        CHECK(rm_results(machine(f), 8, 1000).normal_form_ok);
}

TEST_CASE("normal form violations are reported") {
    auto p = parse_machine("registers 2\noutput r1\nstart p\np: ADD r2 -> h | h\nh: HALT\n");
    REQUIRE(p.ok());
    auto r = rm_results(*p.value, 8, 100);
    CHECK_FALSE(r.normal_form_ok);
    REQUIRE(r.normal_form_witness);
    CHECK(r.normal_form_witness->label == "h");
}

TEST_CASE("compiled halt-only machine") {
    const auto c = compile(machine("halt.rm"));
    CHECK(c.system.rules == std::vector{CellRule::symport_out(1, ms("h"))});
    CHECK(validate_cell(c.system).ok());
    const auto ts = TransitionSystem::from(c.system);
    const auto t = run(ts, {});
    CHECK(t.halted);
    CHECK(t.steps_taken == 1);
    CHECK(result(ts, t.final_config) == 0);
    const auto p = profile(c.system);
    CHECK(p.degree == 1);
    CHECK(p.max_antiport_size <= 2);
}

TEST_CASE("compiled zero test takes three steps, then halts") {
    const auto c = compile(machine("sub_on_zero.rm"));
    const auto ts = TransitionSystem::from(c.system);
    const auto t = run(ts, {});
    REQUIRE(t.halted);
    CHECK(t.steps_taken == 4);  // three gadget steps plus the halt cleanup
    CHECK(result(ts, t.final_config) == 0);
    const auto configs = t.configurations();
    CHECK(configs[3].region(1) == ms("ph"));
}

TEST_CASE("compiled systems are valid, minimal in size, and round-trip") {
    for (const char* f : {"halt.rm", "add_loop.rm", "even.rm", "parity.rm", "transfer.rm", "sub_on_zero.rm"}) {
        INFO(f);
        const auto c = compile(machine(f));
        CHECK(validate_cell(c.system).ok());
        const auto p = profile(c.system);
        CHECK(p.max_antiport_size <= 2);
        CHECK(p.max_symport_size <= 1);
        const auto text = print_system(c.system);
        auto back = parse_system(text);
        REQUIRE(back.ok());
        CHECK(structurally_equal(*back.value, c.system));
    }
}

TEST_CASE("verification against the machine") {
    for (const char* f : {"halt.rm", "add_loop.rm", "even.rm", "parity.rm", "transfer.rm", "sub_on_zero.rm"}) {
        INFO(f);
        const auto rep = verify_compilation(machine(f));
        for (const auto& msg : rep.messages) MESSAGE(msg);
        CHECK(rep.ok);
        CHECK(rep.machine_values == rep.system_values);
        CHECK(rep.program_symbol_violations == 0);
    }
    VerifyBudget b;
    b.value_bound = 8;
    CHECK(verify_compilation(machine("add_loop.rm"), b).system_values == range(1, 8));
}

TEST_CASE("register fidelity under co-simulation") {
    // Drive the machine deterministically (ADD takes its first target) and
    // check the compiled system reaches the same register contents.
    auto parsed = parse_machine(
        "registers 2\noutput r1\nstart p0\n"
        "p0: ADD r2 -> p0b | p0b\np0b: ADD r2 -> p0c | p0c\np0c: ADD r2 -> p1 | p1\n"
        "p1: SUB r2 -> p2 | h\np2: ADD r1 -> p1 | p1\nh: HALT\n");
    REQUIRE(parsed.ok());
    const auto det = *parsed.value;

    const auto c = compile(det);
    const auto ts = TransitionSystem::from(c.system);
    const auto t = run(ts, {});
    REQUIRE(t.halted);

    RmState s{det.start, {0, 0}};
    std::vector<RmState> states{s};
    while (auto n = rm_step_first(det, s)) {
        s = *n;
        states.push_back(s);
    }
    // Each machine state appears, in order, as a configuration holding its label.
    std::size_t next = 0;
    for (const auto& cfg : t.configurations()) {
        if (next == states.size()) break;
        const auto& want = states[next];
        if (cfg.region(1).count(want.label) == 0) continue;
        CHECK(cfg.region(1).count(c.register_objects.at(1)) == want.regs[0]);
        CHECK(cfg.region(1).count(c.register_objects.at(2)) == want.regs[1]);
        ++next;
    }
    CHECK(next == states.size());
    CHECK(result(ts, t.final_config) == 3);
}

TEST_CASE("a corrupted gadget is caught") {
    const auto m = machine("parity.rm");
    auto c = compile(m);
    // Swap the targets of the zero and nonzero exits of p1.
    for (auto& r : c.system.rules) {
        if (r.out == ms("p1_2 p1_cb")) r.in = ms("hz");
        else if (r.out == ms("p1_2 p1_c")) r.in = ms("p2");
    }
    const auto rep = verify_compiled(m, c);
    CHECK_FALSE(rep.ok);
    CHECK(rep.first_mismatch.has_value());
    CHECK_FALSE(rep.messages.empty());

    auto dropped = compile(machine("add_loop.rm"));
    dropped.system.rules.erase(dropped.system.rules.begin());
    CHECK_FALSE(verify_compiled(machine("add_loop.rm"), dropped).ok);
}

TEST_CASE("symbol clashes are rejected") {
    auto p = parse_machine("registers 1\noutput r1\nstart a1\na1: HALT\n");
    REQUIRE(p.ok());
    CHECK_THROWS_AS(compile(*p.value), std::invalid_argument);
}
