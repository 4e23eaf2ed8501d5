#include "doctest.h"
#include "support.hpp"

#include "psys/measures.hpp"

using namespace psys;
using testing::ms;

TEST_CASE("cell rule sizes") {
    CHECK(cell_rule_size(CellRule::symport_in(1, ms("a b"))) == 2);
    CHECK(cell_rule_size(CellRule::antiport(1, ms("a b"), ms("c"))) == 2);
    CHECK(cell_rule_size(CellRule::symport_out(1, ms("a"))) == 1);
}

TEST_CASE("tissue rule sizes") {
    CHECK(tissue_rule_size(TissueRule::symport(1, ms("a b"), 2)) == 2);
    CHECK(tissue_rule_size(TissueRule::antiport(1, ms("a b"), ms("c"), 2)) == 3);
    CHECK(tissue_rule_size(TissueRule::antiport(1, ms("a"), ms("b"), 0)) == 2);
}

TEST_CASE("profiles") {
    auto s = testing::one_membrane({"p", "q", "a"}, "p", {}, {CellRule::antiport(1, ms("p"), ms("q a"))});
    auto p = profile(s);
    CHECK(p.degree == 1);
    CHECK(p.max_symport_size == 0);
    CHECK(p.max_antiport_size == 2);
    CHECK(p.num_objects == 3);
    CHECK(p.num_rules == 1);
    CHECK(p.measure == SizeMeasure::CellMax);

    CellPSystem empty;
    empty.alphabet = {"a", "b"};
    empty.structure = MembraneStructure({0, 1});
    empty.init = {Multiset{}, Multiset{}};
    empty.output = 2;
    auto q = profile(empty);
    CHECK(q.degree == 2);
    CHECK(q.max_symport_size == 0);
    CHECK(q.max_antiport_size == 0);
    CHECK(q.num_objects == 2);
    CHECK(q.num_rules == 0);

    auto ab = testing::one_membrane({"a", "b"}, "a", {"b"}, {CellRule::antiport(1, ms("a"), ms("b"))});
    CHECK(profile(ab).max_antiport_size == 1);
    auto t = profile(encode_cell_as_tissue(ab));
    CHECK(t.max_antiport_size == 2);
    CHECK(t.measure == SizeMeasure::TissueSum);
}

namespace {

InteractionRule pattern(int i, int j, int k, int l) { return {"a", i, "b", j, k, l}; }

}  // namespace

TEST_CASE("classifier examples") {
    CHECK(classify(pattern(1, 1, 1, 2)) == RuleClass::ConditionalUniportOut);
    CHECK(classify(pattern(1, 1, 2, 2)) == RuleClass::Symport2);
    CHECK(classify(pattern(1, 2, 2, 1)) == RuleClass::Antiport1);
    CHECK(classify(pattern(1, 2, 1, 3)) == RuleClass::PresenceMove);
    CHECK(classify(pattern(1, 2, 1, 2)) == RuleClass::NoOp);
    CHECK(classify(pattern(1, 2, 3, 1)) == RuleClass::Chain);
    CHECK(classify(pattern(2, 1, 1, 3)) == classify(swap_roles(pattern(2, 1, 1, 3))));
    CHECK(classify(pattern(0, 1, 2, 3)) == RuleClass::ParallelShift);
    CHECK(to_string(RuleClass::ConditionalUniportOut) == "conditional-uniport-out");
}

TEST_CASE("classifier matches the table on every labelling over 0..3") {
    std::set<std::string> patterns;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    const auto key = testing::rgs({i, j, k, l});
                    patterns.insert(key);
                    const auto r = pattern(i, j, k, l);
                    INFO(key);
                    CHECK(classify(r) == testing::expected_class(key));
                    CHECK(classify(swap_roles(r)) == classify(r));
                }
    CHECK(patterns.size() == 15);
}
