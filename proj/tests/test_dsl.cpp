#include "doctest.h"
#include "support.hpp"

#include "psys/dsl.hpp"
#include "psys/measures.hpp"
#include "psys/random_systems.hpp"
#include "psys/rm.hpp"

using namespace psys;
using testing::ms;

namespace {

const char* kExample =
    "@model cell\n@objects a\n@env a\n@membranes 1\n@init 1: empty\n@rules 1: (a, out; a, in)\n@output 1\n";

bool reports(const std::string& text, const std::string& code) {
    const auto p = parse_system(text);
    return std::any_of(p.diagnostics.begin(), p.diagnostics.end(),
                       [&](const SourceDiagnostic& d) { return d.code == code; });
}

}  // namespace

TEST_CASE("parses the one-membrane example") {
    auto p = parse_system(kExample);
    REQUIRE(p.ok());
    CHECK(validate(*p.value).ok());
    const auto& s = std::get<CellPSystem>(*p.value);
    CHECK(s.rules == std::vector{CellRule::antiport(1, ms("a"), ms("a"))});
    CHECK(s.env == std::set<ObjectId>{"a"});
}

TEST_CASE("parsing does not validate") {
    std::string text = kExample;
    text.replace(text.find("(a, out; a, in)"), 15, "(a, in)");
    auto p = parse_system(text);
    REQUIRE(p.ok());
    CHECK(validate(*p.value).has("V001"));
}

TEST_CASE("diagnostics") {
    std::string zero = kExample;
    zero.replace(zero.find("@init 1: empty"), 14, "@init 1: a^0");
    auto p = parse_system(zero);
    REQUIRE(p.diagnostics.size() == 1);
    CHECK(p.diagnostics[0].code == "P008");
    CHECK(p.diagnostics[0].line == 5);
    CHECK(p.diagnostics[0].column == 12);  // at the multiplicity

    CHECK(reports("@model cell\n@bogus\n", "P001"));
    CHECK(reports("@objects a\n", "P001"));
    CHECK(reports("@model cell\n@objects a\n@membranes 1\n@init 1: a b\n@output 1\n", "P003"));
    CHECK(reports("@model cell\n@objects a\n@membranes 1(1)\n@output 1\n", "P004"));
    CHECK(reports("@model cell\n@objects a\n@membranes 1\n@output 2\n", "P004"));
    CHECK(reports("@model cell\n@objects a\n@objects a\n@membranes 1\n@output 1\n", "P005"));
    CHECK(reports("@model cell\n@objects a\n@membranes 1\n", "P006"));
    CHECK(reports("@model cell\n@objects a\n@membranes 1\n@rules 1: (a, sideways)\n@output 1\n", "P007"));
    CHECK(reports("@model cell\n@objects a\n@membranes 1\n@init 1: a^\n@output 1\n", "P002"));
    CHECK(reports("@model cell\n@objects a\n@membranes 1(2\n@output 1\n", "P007"));
    CHECK(reports("", "P006"));
}

TEST_CASE("comments, blank lines and several rules per line") {
    auto p = parse_system(
        "# header\n@model cell\n\n@objects a b  # two\n@membranes 1(2)\n@init 2: a^2 b\n"
        "@rules 2: (a, out) (b, out; a, in)\n@output 2\n");
    REQUIRE(p.ok());
    const auto& s = std::get<CellPSystem>(*p.value);
    CHECK(s.rules.size() == 2);
    CHECK(s.initial(1).empty());
    CHECK(s.initial(2) == ms("a^2 b"));
    CHECK(s.structure == MembraneStructure({0, 1}));
}

TEST_CASE("tissue and interaction formats") {
    TissuePSystem t;
    t.alphabet = {"a", "b"};
    t.n_cells = 1;
    t.init = {ms("a")};
    t.env = {"b"};
    t.rules = {TissueRule::antiport(1, ms("a"), ms("b"), 0)};
    const auto text = print_system(t);
    CHECK(text.find("@rules: (1, a / b, 0)\n") != std::string::npos);
    auto back = parse_system(text);
    REQUIRE(back.ok());
    CHECK(structurally_equal(*back.value, t));

    auto ip = parse_system("@model interaction\n@objects a b\n@cells 2\n@init 1: a b\n"
                           "@rules: (a,1)(b,1) -> (a,1)(b,2)\n@rules: (a,1) -> (a,0)\n@output 2\n");
    REQUIRE(ip.ok());
    CHECK(std::get<InteractionSystem>(*ip.value).rules.size() == 2);
}

TEST_CASE("interaction rule files") {
    auto p = parse_interactions("(a,1)(b,1) -> (a,1)(b,2)\n(a,1) -> (a,2)\n");
    REQUIRE(p.ok());
    REQUIRE(p.value->size() == 2);
    CHECK(classify(std::get<InteractionRule>((*p.value)[0])) == RuleClass::ConditionalUniportOut);
    CHECK(std::get<UniportRule>((*p.value)[1]) == UniportRule{"a", 1, 2});

    auto bad = parse_interactions("(a,1)(b,2) -> (a,1)\n");
    REQUIRE(bad.diagnostics.size() == 1);
    CHECK(bad.diagnostics[0].code == "P007");
    CHECK(bad.diagnostics[0].line == 1);
    CHECK(parse_interactions("(a,1) -> (b,2)\n").diagnostics.size() == 1);

    auto again = parse_interactions(print_interactions(*p.value));
    REQUIRE(again.ok());
    CHECK(*again.value == *p.value);
}

TEST_CASE("structurally equal systems print identically") {
    auto a = testing::two_branch();
    auto b = a;
    std::swap(b.rules[0], b.rules[1]);
    CHECK(print_system(a) == print_system(b));
    CHECK(print_system(a) == print_system(a));
}

TEST_CASE("property: print then parse is the identity") {
    std::mt19937_64 rng(31);
    for (int n = 0; n < 300; ++n) {
        const AnySystem systems[] = {random_cell_system(rng), random_tissue_system(rng),
                                     testing::random_interaction(rng)};
        for (const auto& s : systems) {
            const auto text = print_system(s);
            auto back = parse_system(text);
            for (const auto& d : back.diagnostics) MESSAGE(text << "\n" << to_string(d));
            REQUIRE(back.ok());
            CHECK(structurally_equal(*back.value, s));
            CHECK(print_system(*back.value) == text);
        }
    }
}

TEST_CASE("property: arbitrary bytes never crash the parsers") {
    std::mt19937_64 rng(32);
    const std::string seed_text = print_system(testing::two_branch());
    for (int n = 0; n < 3000; ++n) {
        std::string text;
        if (n % 2) {
            const auto len = rng() % 200;
            for (std::size_t i = 0; i < len; ++i) text += static_cast<char>(rng() & 0xff);
        } else {
            text = seed_text;
            for (int e = 0; e < 4; ++e) text[rng() % text.size()] = static_cast<char>(rng() & 0xff);
        }
        auto p = parse_system(text);
        CHECK((p.ok() || !p.diagnostics.empty()));
        auto q = parse_interactions(text);
        CHECK((q.ok() || !q.diagnostics.empty()));
        auto r = parse_machine(text);
        (void)r;
    }
}
