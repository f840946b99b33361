#include <catch_amalgamated.hpp>

#include "sheafkit/poset.hpp"
#include "support/generators.hpp"

#include <algorithm>
#include <set>

using namespace sheafkit;

namespace {

FinitePoset four_poset() {
    return validate_poset({"a", "b", "c", "d"}, {{"a", "c"}, {"b", "c"}, {"b", "d"}});
}

// Brute force over the power set, independent of the library's enumeration.
std::set<LabelSet> brute_closed(const FinitePoset& p, bool down) {
    std::set<LabelSet> out;
    const auto& el = p.elements();
    for (unsigned m = 0; m < (1u << el.size()); ++m) {
        LabelSet s;
        for (std::size_t i = 0; i < el.size(); ++i)
            if (m >> i & 1) s.push_back(el[i]);
        bool ok = true;
        for (const auto& x : s)
            for (const auto& y : el) {
                bool forced = down ? p.leq(y, x) : p.leq(x, y);
                if (forced && !std::binary_search(s.begin(), s.end(), y)) ok = false;
            }
        if (ok) out.insert(s);
    }
    return out;
}

} // namespace

TEST_CASE("validate_poset", "[poset]") {
    auto p = four_poset();
    CHECK(p.size() == 4);
    CHECK(p.leq("a", "c"));
    CHECK(p.leq("a", "a"));
    CHECK_FALSE(p.leq("a", "b"));
    CHECK_FALSE(p.leq("c", "a"));

    auto single = validate_poset({"x"}, {});
    CHECK(single.leq("x", "x"));

    try {
        validate_poset({"x", "y"}, {{"x", "y"}, {"y", "x"}});
        FAIL("expected rejection");
    } catch (const PosetError& e) {
        std::string msg = e.what();
        CHECK(msg.find("'x' <= 'y'") != std::string::npos);
        CHECK(msg.find("'y' <= 'x'") != std::string::npos);
    }
    // a longer cycle collapses to a 2-cycle after closure
    CHECK_THROWS_AS(validate_poset({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}, {"z", "x"}}), PosetError);
    CHECK_THROWS_AS(validate_poset({"x"}, {{"x", "q"}}), PosetError);
    CHECK_THROWS_AS(validate_poset({"x", "x"}, {}), PosetError);

    // closure is explicit
    auto chain = validate_poset({"z", "y", "x"}, {{"x", "y"}, {"y", "z"}});
    CHECK(chain.leq("x", "z"));
    CHECK(chain.elements() == std::vector<Label>{"x", "y", "z"});
}

TEST_CASE("principal downsets and upsets", "[poset]") {
    auto p = four_poset();
    CHECK(principal_down(p, "c") == LabelSet{"a", "b", "c"});
    CHECK(principal_up(p, "b") == LabelSet{"b", "c", "d"});
    auto anti = validate_poset({"x", "y"}, {});
    CHECK(principal_down(anti, "x") == LabelSet{"x"});
    CHECK_THROWS_AS(principal_down(p, "q"), PosetError);
}

TEST_CASE("all_downsets", "[poset]") {
    auto ds = downsets(four_poset());
    std::set<LabelSet> got(ds.begin(), ds.end());
    std::set<LabelSet> want{{}, {"a"}, {"b"}, {"a", "b"}, {"b", "d"}, {"a", "b", "c"}, {"a", "b", "d"}, {"a", "b", "c", "d"}};
    CHECK(got == want);
    CHECK(ds.size() == 8);

    auto lattice = all_downsets(four_poset());
    CHECK(lattice.size() == 8);
    CHECK(lattice.is_lattice());
    CHECK(lattice.leq("{a}", "{a,b,c}"));
    CHECK_FALSE(lattice.leq("{b,d}", "{a,b,c}"));

    CHECK(downsets(validate_poset({"x"}, {})) == std::vector<LabelSet>{{}, {"x"}});
    CHECK(downsets(validate_poset({"x", "y"}, {{"x", "y"}})) == std::vector<LabelSet>{{}, {"x"}, {"x", "y"}});

    std::vector<Label> big;
    for (int i = 0; i < 17; ++i) big.push_back("p" + std::to_string(i));
    CHECK_THROWS_AS(all_downsets(validate_poset(big, {})), PosetError);
}

TEST_CASE("downsets and upsets match brute force on random posets", "[poset][property]") {
    std::mt19937 rng(3);
    for (int t = 0; t < 60; ++t) {
        auto p = testgen::random_poset(rng, 1 + t % 7);
        auto ds = downsets(p);
        CHECK(std::set<LabelSet>(ds.begin(), ds.end()) == brute_closed(p, true));
        CHECK(ds.size() == brute_closed(p, true).size());

        auto top = alexandrov(p, Direction::up);
        std::set<LabelSet> opens;
        for (std::size_t i = 0; i < top.size(); ++i) opens.insert(top.members(i));
        CHECK(opens == brute_closed(p, false));

        // downset family is closed under union and intersection
        for (const auto& a : ds)
            for (const auto& b : ds) {
                LabelSet u, n;
                std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
                std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(n));
                CHECK(std::find(ds.begin(), ds.end(), u) != ds.end());
                CHECK(std::find(ds.begin(), ds.end(), n) != ds.end());
            }
        CHECK(all_downsets(p).is_lattice());
    }
}

TEST_CASE("alexandrov topologies", "[poset]") {
    auto up = alexandrov(four_poset(), Direction::up);
    CHECK(up.members(up.minimal_open("a")) == LabelSet{"a", "c"});
    CHECK(up.members(up.minimal_open("b")) == LabelSet{"b", "c", "d"});
    CHECK(up.members(up.minimal_open("c")) == LabelSet{"c"});
    CHECK(up.members(up.minimal_open("d")) == LabelSet{"d"});

    auto anti = alexandrov(validate_poset({"x", "y", "z"}, {}), Direction::up);
    CHECK(anti.size() == 8);

    auto chain = alexandrov(validate_poset({"x", "y"}, {{"x", "y"}}), Direction::up);
    REQUIRE(chain.size() == 3);
    CHECK(chain.members(0) == LabelSet{});
    CHECK(chain.members(1) == LabelSet{"y"});
    CHECK(chain.members(2) == LabelSet{"x", "y"});

    auto down = alexandrov(validate_poset({"x", "y"}, {{"x", "y"}}), Direction::down);
    CHECK(down.members(1) == LabelSet{"x"});
}

TEST_CASE("finite topology validation", "[poset]") {
    CHECK_NOTHROW(FiniteTopology({"p", "q"}, std::vector<LabelSet>{{}, {"p"}, {"q"}, {"p", "q"}}));
    CHECK_THROWS_AS(FiniteTopology({"p", "q"}, std::vector<LabelSet>{{}, {"p"}, {"q"}}), PosetError);
    CHECK_THROWS_AS(FiniteTopology({"p", "q"}, std::vector<LabelSet>{{"p"}, {"p", "q"}}), PosetError);
    CHECK_THROWS_AS(FiniteTopology({"p", "q", "r"}, std::vector<LabelSet>{{}, {"p", "q"}, {"q", "r"}, {"p", "q", "r"}}),
                    PosetError);
}

TEST_CASE("yoneda_check", "[poset]") {
    CHECK(yoneda_check(four_poset()));
    CHECK(yoneda_check(validate_poset({"x", "y", "z"}, {})));
    std::mt19937 rng(5);
    for (int t = 0; t < 100; ++t) CHECK(yoneda_check(testgen::random_poset(rng, 6)));
}

TEST_CASE("principal downset is an order embedding", "[poset][property]") {
    std::mt19937 rng(9);
    for (int t = 0; t < 40; ++t) {
        auto p = testgen::random_poset(rng, 1 + t % 7, 0.4);
        for (const auto& x : p.elements())
            for (const auto& y : p.elements()) {
                auto dx = principal_down(p, x), dy = principal_down(p, y);
                CHECK(p.leq(x, y) == std::includes(dy.begin(), dy.end(), dx.begin(), dx.end()));
            }
    }
}

TEST_CASE("is_monotone", "[poset]") {
    auto p = four_poset();
    Mapping id;
    for (const auto& x : p.elements()) id[x] = x;
    CHECK(is_monotone(p, p, id));
    Mapping constant;
    for (const auto& x : p.elements()) constant[x] = "c";
    CHECK(is_monotone(p, p, constant));

    auto chain = validate_poset({"x", "y"}, {{"x", "y"}});
    CHECK_FALSE(is_monotone(chain, chain, {{"x", "y"}, {"y", "x"}}));
    CHECK_THROWS_AS(is_monotone(chain, chain, {{"x", "y"}}), PosetError);
}

TEST_CASE("dual and lattice operations", "[poset]") {
    auto p = four_poset();
    auto d = p.dual();
    CHECK(d.leq("c", "a"));
    CHECK_FALSE(p.is_lattice());
    auto lat = all_downsets(p);
    auto bot = lat.join({});
    REQUIRE(bot);
    CHECK(lat.label(*bot) == "{}");
    auto j = lat.join({lat.index("{a}"), lat.index("{b,d}")});
    REQUIRE(j);
    CHECK(lat.label(*j) == "{a,b,d}");
    CHECK(p.covers().size() == 3);
}
