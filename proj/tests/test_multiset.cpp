#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace psys;
using testing::ms;

TEST_CASE("size sums multiplicities") {
    CHECK(ms_size(Multiset{}) == 0);
    CHECK(ms_size(ms("a^3 b")) == 4);
    CHECK(ms_size(ms("a^2 b^2 c")) == 5);
}

TEST_CASE("sub-multiset comparison") {
    CHECK(ms_leq(Multiset{}, ms("a^3 b")));
    CHECK(ms_leq(ms("a b"), ms("a^3 b")));
    CHECK_FALSE(ms_leq(ms("a^4"), ms("a^3 b")));
}

TEST_CASE("add and sub") {
    CHECK(ms_add(ms("a b"), ms("a")) == ms("a^2 b"));
    CHECK(ms_sub(ms("a^3 b"), ms("a b")) == ms("a^2"));
    CHECK(ms_sub(ms("a"), ms("a")).empty());
    CHECK_THROWS_AS(ms_sub(ms("a"), ms("b")), std::logic_error);
}

TEST_CASE("no zero entries are stored") {
    Multiset m = ms("a^2 b");
    m.remove("b");
    CHECK(m.distinct() == 1);
    CHECK(m == ms("a^2"));
    CHECK(Multiset::of("x", 0).empty());
}

TEST_CASE("max copies") {
    CHECK(ms_max_copies(ms("a b"), ms("a^3 b^2")) == 2u);
    CHECK(ms_max_copies(ms("c"), ms("a")) == 0u);
    CHECK_FALSE(ms_max_copies(Multiset{}, ms("a")).has_value());
}

TEST_CASE("overflow is detected") {
    Multiset m = Multiset::of("a", UINT64_MAX);
    CHECK_THROWS_AS(m.add("a"), std::overflow_error);
    CHECK_THROWS_AS(Multiset::of("a", UINT64_MAX / 2 + 1).scaled(2), std::overflow_error);
    CHECK_THROWS_AS(checked_mul(1ull << 40, 1ull << 40), std::overflow_error);
}

TEST_CASE("printing and parsing") {
    CHECK(to_string(Multiset{}) == "empty");
    CHECK(to_string(ms("b a^3")) == "a^3 b");
    CHECK(ms("a a b a") == ms("a^3 b"));
    CHECK(ms("empty").empty());

    auto bad = [](std::string_view t) { return !parse_multiset(t).first.has_value(); };
    CHECK(bad("a^0"));
    CHECK(bad(""));
    CHECK(bad("a^"));
    CHECK(bad("a^-1"));
    CHECK(bad("empty a"));
    CHECK(bad("a^99999999999999999999999"));
    CHECK(bad("a-b"));
    auto [m, err] = parse_multiset("a b^0");
    REQUIRE(err);
    CHECK(err->offset == 4);  // at the multiplicity
}

TEST_CASE("environment availability") {
    EnvContent e({"a"});
    CHECK(env_available(e, ms("a^99")));
    EnvContent f({"a"}, ms("b"));
    CHECK(env_available(f, ms("a b")));
    CHECK_FALSE(env_available(f, ms("b^2")));
}

TEST_CASE("environment deposit drops E objects") {
    EnvContent e({"a"});
    e.deposit(ms("a^3 b"));
    CHECK(e.finite_part() == ms("b"));
    e.withdraw(ms("a^5 b"));
    CHECK(e.finite_part().empty());
    CHECK_THROWS(e.withdraw(ms("b")));
}

namespace {

Multiset random_ms(std::mt19937_64& rng) {
    static const char* names[] = {"a", "b", "c", "d"};
    Multiset m;
    std::uniform_int_distribution<int> n(0, 4);
    for (const char* a : names) m.add(a, static_cast<Count>(n(rng)));
    return m;
}

}  // namespace

TEST_CASE("property: add/sub round trip and order laws") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 2000; ++t) {
        const Multiset x = random_ms(rng), y = random_ms(rng), z = random_ms(rng);
        CHECK(ms_sub(ms_add(x, y), y) == x);
        CHECK(ms_size(ms_add(x, y)) == ms_size(x) + ms_size(y));
        CHECK(ms_leq(x, x));
        if (ms_leq(x, y) && ms_leq(y, x)) CHECK(x == y);
        if (ms_leq(x, y) && ms_leq(y, z)) CHECK(ms_leq(x, z));
        CHECK(ms_leq(x, ms_add(x, y)));
        auto [back, err] = parse_multiset(to_string(x));
        REQUIRE(back);
        CHECK(*back == x);
    }
}
