#include "doctest.h"
#include "support.hpp"

using namespace psys;
using testing::ms;
using testing::one_membrane;

namespace {

CellPSystem nested(std::vector<CellRule> rules, Label output = 2) {
    CellPSystem s;
    s.alphabet = {"a", "b", "e", "f"};
    s.structure = MembraneStructure({0, 1});
    s.init = {ms("a"), ms("b")};
    s.env = {"e"};
    s.rules = std::move(rules);
    s.output = output;
    return s;
}

TissuePSystem tissue(std::vector<TissueRule> rules) {
    TissuePSystem t;
    t.alphabet = {"a", "b", "e", "f"};
    t.n_cells = 2;
    t.init = {ms("a"), Multiset{}};
    t.env = {"e"};
    t.rules = std::move(rules);
    t.output = 1;
    return t;
}

}  // namespace

TEST_CASE("membrane structure") {
    MembraneStructure mu({0, 1, 1, 3});
    CHECK(mu.tree_defect().empty());
    CHECK(mu.skin() == 1);
    CHECK(mu.children(1) == std::vector<Label>{2, 3});
    CHECK(mu.is_elementary(4));
    CHECK_FALSE(mu.is_elementary(3));
    CHECK(to_string(mu) == "1(2 3(4))");
    CHECK_FALSE(MembraneStructure({0, 0}).tree_defect().empty());
    CHECK_FALSE(MembraneStructure({2, 1}).tree_defect().empty());
    CHECK_FALSE(MembraneStructure({0, 5}).tree_defect().empty());
    CHECK_FALSE(MembraneStructure(std::vector<Label>{}).tree_defect().empty());
}

TEST_CASE("skin symport-in of E objects is forbidden only at the skin") {
    auto skin = nested({CellRule::symport_in(1, ms("e"))});
    auto rep = validate_cell(skin);
    CHECK(rep.has("V001"));
    CHECK_FALSE(rep.ok());

    auto inner = nested({CellRule::symport_in(2, ms("e"))});
    CHECK(validate_cell(inner).ok());

    auto mixed = nested({CellRule::symport_in(1, ms("e f"))});
    CHECK(validate_cell(mixed).ok());
}

TEST_CASE("output must be elementary") {
    CHECK(validate_cell(nested({}, 2)).ok());
    CHECK(validate_cell(nested({}, 1)).has("V002"));
    CHECK(validate_cell(nested({}, 3)).has("V009"));
}

TEST_CASE("cell validation catches malformed pieces") {
    CHECK(validate_cell(nested({CellRule::symport_out(1, ms("z"))})).has("V003"));
    CHECK(validate_cell(nested({CellRule::symport_out(1, Multiset{})})).has("V004"));
    CHECK(validate_cell(nested({CellRule::antiport(1, ms("a"), Multiset{})})).has("V004"));
    CHECK(validate_cell(nested({CellRule::symport_out(3, ms("a"))})).has("V005"));
    auto dup = nested({CellRule::symport_out(2, ms("a")), CellRule::symport_out(2, ms("a"))});
    CHECK(validate_cell(dup).has("V011"));
    auto bad_env = nested({});
    bad_env.env.insert("zz");
    CHECK(validate_cell(bad_env).has("V010"));
    auto bad_tree = nested({});
    bad_tree.structure = MembraneStructure({0, 0});
    CHECK(validate_cell(bad_tree).has("V006"));
}

TEST_CASE("tissue validation") {
    CHECK(validate_tissue(tissue({TissueRule::symport(0, ms("e"), 1)})).has("V008"));
    CHECK(validate_tissue(tissue({TissueRule::symport(0, ms("e f"), 1)})).ok());
    CHECK(validate_tissue(tissue({TissueRule::symport(1, ms("a"), 1)})).has("V007"));
    CHECK(validate_tissue(tissue({TissueRule::symport(1, ms("a"), 3)})).has("V005"));
    CHECK(validate_tissue(tissue({TissueRule::antiport(1, ms("a"), ms("e"), 0)})).ok());
}

TEST_CASE("derived graph") {
    CHECK(derive_graph(tissue({TissueRule::symport(1, ms("a"), 2)})) ==
          std::set<std::pair<Label, Label>>{{1, 2}});
    CHECK(derive_graph(tissue({TissueRule::antiport(1, ms("a"), ms("b"), 0)})) ==
          std::set<std::pair<Label, Label>>{{1, 0}, {0, 1}});
    CHECK(derive_graph(tissue({})).empty());
}

TEST_CASE("cell to tissue encoding") {
    auto one = one_membrane({"a"}, "a", {}, {CellRule::symport_out(1, ms("a"))});
    auto t = encode_cell_as_tissue(one);
    REQUIRE(t.rules.size() == 1);
    CHECK(t.rules[0] == TissueRule::symport(1, ms("a"), 0));

    auto two = nested({CellRule::symport_in(2, ms("b"))});
    CHECK(encode_cell_as_tissue(two).rules == std::vector{TissueRule::symport(1, ms("b"), 2)});

    auto anti = nested({CellRule::antiport(1, ms("a"), ms("e"))});
    CHECK(encode_cell_as_tissue(anti).rules ==
          std::vector{TissueRule::antiport(1, ms("a"), ms("e"), 0)});

    CHECK(encode_cell_as_tissue(nested({})).rules.empty());
    CHECK_THROWS_AS(encode_cell_as_tissue(nested({CellRule::symport_in(1, ms("e"))})),
                    std::invalid_argument);
}

TEST_CASE("interaction validation") {
    InteractionSystem s;
    s.alphabet = {"a", "b", "e"};
    s.n_cells = 2;
    s.init = {ms("a"), ms("b")};
    s.env = {"e"};
    s.output = 1;
    s.rules = {InteractionRule{"a", 1, "b", 2, 2, 1}};
    CHECK(validate_interaction(s).ok());

    s.rules = {UniportRule{"a", 1, 1}};
    CHECK(validate_interaction(s).has("V014"));

    s.rules = {InteractionRule{"a", 1, "b", 2, 1, 2}};
    auto rep = validate_interaction(s);
    CHECK(rep.ok());
    CHECK(rep.has("W001"));

    s.rules = {InteractionRule{"e", 0, "e", 0, 1, 1}};
    CHECK(validate_interaction(s).has("V013"));

    s.rules = {InteractionRule{"a", 1, "b", 5, 1, 2}};
    CHECK(validate_interaction(s).has("V005"));
}

TEST_CASE("canonical form ignores rule order") {
    auto a = nested({CellRule::symport_out(2, ms("b")), CellRule::symport_out(1, ms("a"))});
    auto b = nested({CellRule::symport_out(1, ms("a")), CellRule::symport_out(2, ms("b"))});
    CHECK(structurally_equal(a, b));
    CHECK_FALSE(structurally_equal(a, nested({})));
    CHECK_FALSE(structurally_equal(AnySystem{a}, AnySystem{encode_cell_as_tissue(a)}));
}

TEST_CASE("rule text") {
    CHECK(to_string(CellRule::antiport(1, ms("a b"), ms("c"))) == "(a b, out; c, in)");
    CHECK(to_string(CellRule::symport_in(1, ms("a^2"))) == "(a^2, in)");
    CHECK(to_string(TissueRule::antiport(1, ms("a"), ms("b"), 0)) == "(1, a / b, 0)");
    CHECK(to_string(TissueRule::symport(1, ms("a"), 2)) == "(1, a, 2)");
    CHECK(to_string(MinimalRule{InteractionRule{"a", 1, "b", 2, 3, 4}}) ==
          "(a,1)(b,2) -> (a,3)(b,4)");
    CHECK(to_string(MinimalRule{UniportRule{"a", 1, 2}}) == "(a,1) -> (a,2)");
}
