#include <catch_amalgamated.hpp>

#include "sheafkit/galois.hpp"
#include "sheafkit/morphology.hpp"
#include "support/generators.hpp"

using namespace sheafkit;

namespace {

FinitePoset chain(int n) {
    std::vector<Label> l;
    std::vector<std::pair<Label, Label>> r;
    for (int i = 0; i < n; ++i) {
        l.push_back(std::to_string(i));
        if (i) r.emplace_back(std::to_string(i - 1), std::to_string(i));
    }
    return validate_poset(l, r);
}

// bottom < x, y < top
FinitePoset diamond() {
    return validate_poset({"bot", "x", "y", "top"}, {{"bot", "x"}, {"bot", "y"}, {"x", "top"}, {"y", "top"}});
}

GaloisConnection morphology_pair(int w, int h, const StructuringElement& b) {
    auto lat = image_lattice(w, h);
    auto F = lattice_map(lat, w, h, [&](const BinaryImage& x) { return dilate(x, b); });
    auto G = lattice_map(lat, w, h, [&](const BinaryImage& x) { return erode(x, b); });
    return GaloisConnection(lat, lat, F, G);
}

} // namespace

TEST_CASE("check_connection", "[galois]") {
    auto c = morphology_pair(2, 2, StructuringElement({{0, 0}, {1, 0}}));
    CHECK(check_connection(c).ok());

    auto p = diamond();
    CHECK(check_connection(GaloisConnection(p, p, identity_map(p), identity_map(p))).ok());

    auto c3 = chain(3);
    IndexMap succ{1, 2, 2};  // monotone, but not adjoint to the identity
    auto rep = check_connection(GaloisConnection(c3, c3, identity_map(c3), succ));
    CHECK_FALSE(rep.ok());
    CHECK(rep.failure == ConnectionReport::Failure::adjunction);
    // first scanned witness: p = 1 <= G(0) = 1 but F(1) = 1 is not <= 0
    CHECK(rep.p == 1);
    CHECK(rep.q == 0);
    CHECK_FALSE(rep.message.empty());
}

TEST_CASE("connections reject non-monotone or partial maps", "[galois]") {
    auto c3 = chain(3);
    CHECK_THROWS_AS(GaloisConnection(c3, c3, IndexMap{2, 1, 0}, identity_map(c3)), GaloisError);
    CHECK_THROWS_AS(GaloisConnection(c3, c3, IndexMap{0, 1}, identity_map(c3)), GaloisError);
    CHECK_THROWS_AS(GaloisConnection(c3, c3, Mapping{{"0", "0"}}, Mapping{}), GaloisError);
}

TEST_CASE("right_adjoint_of recovers erosion from dilation", "[galois]") {
    StructuringElement b({{0, 0}, {0, 1}, {1, 1}});
    auto lat = image_lattice(3, 2);
    auto F = lattice_map(lat, 3, 2, [&](const BinaryImage& x) { return dilate(x, b); });
    auto G = lattice_map(lat, 3, 2, [&](const BinaryImage& x) { return erode(x, b); });
    auto r = right_adjoint_of(F, lat, lat);
    REQUIRE(r.exists());
    CHECK(*r.map == G);
    // uniqueness: a second synthesis gives the same map
    CHECK(*right_adjoint_of(F, lat, lat).map == *r.map);

    auto l = left_adjoint_of(G, lat, lat);
    REQUIRE(l.exists());
    CHECK(*l.map == F);
}

TEST_CASE("adjoint synthesis on small lattices", "[galois]") {
    auto p = diamond();
    auto id = right_adjoint_of(identity_map(p), p, p);
    REQUIRE(id.exists());
    CHECK(*id.map == identity_map(p));

    // x, y -> x but bot -> bot and top -> top: join of {x, y} is top, image join is x
    IndexMap f(p.size());
    f[p.index("bot")] = p.index("bot");
    f[p.index("x")] = p.index("x");
    f[p.index("y")] = p.index("x");
    f[p.index("top")] = p.index("top");
    auto r = right_adjoint_of(f, p, p);
    CHECK_FALSE(r.exists());
    std::vector<std::size_t> want{p.index("x"), p.index("y")};
    std::sort(want.begin(), want.end());
    CHECK(r.violated == want);
    CHECK(r.reason.find("join") != std::string::npos);

    // not preserving the empty join
    IndexMap lift(p.size(), p.index("x"));
    lift[p.index("top")] = p.index("top");
    auto r2 = right_adjoint_of(lift, p, p);
    CHECK_FALSE(r2.exists());
    CHECK(r2.violated.empty());

    // dually a meet-breaking map has no left adjoint
    IndexMap g(p.size());
    g[p.index("bot")] = p.index("bot");
    g[p.index("x")] = p.index("x");
    g[p.index("y")] = p.index("x");
    g[p.index("top")] = p.index("top");
    CHECK_FALSE(left_adjoint_of(g, p, p).exists());

    CHECK_THROWS_AS(right_adjoint_of(identity_map(p), validate_poset({"a", "b", "c", "d"}, {}),
                                     validate_poset({"a", "b", "c", "d"}, {})),
                    GaloisError);
}

TEST_CASE("adjoints preserve joins and meets", "[galois][property]") {
    // every monotone self-map of a 4-chain that has a right adjoint preserves all joins
    auto c = chain(4);
    int with_adjoint = 0;
    for (int code = 0; code < 256; ++code) {
        IndexMap f{static_cast<std::size_t>(code & 3), static_cast<std::size_t>(code >> 2 & 3),
                   static_cast<std::size_t>(code >> 4 & 3), static_cast<std::size_t>(code >> 6 & 3)};
        if (!is_monotone(c, c, f)) continue;
        auto r = right_adjoint_of(f, c, c);
        CHECK(r.exists() == !join_violation(f, c, c, 4).has_value());
        if (r.exists()) {
            ++with_adjoint;
            CHECK(check_connection(GaloisConnection(c, c, f, *r.map)).ok());
            CHECK_FALSE(meet_violation(*r.map, c, c, 4).has_value());
        }
    }
    CHECK(with_adjoint > 0);

    auto m = morphology_pair(2, 2, StructuringElement({{0, 0}, {1, 1}}));
    CHECK_FALSE(join_violation(m.left(), m.source(), m.target(), 3).has_value());
    CHECK_FALSE(meet_violation(m.right(), m.target(), m.source(), 3).has_value());
}

TEST_CASE("induced closure and kernel operators", "[galois]") {
    StructuringElement b({{0, 0}, {1, 0}});
    auto c = morphology_pair(3, 2, b);
    auto ops = induced_operators(c);
    CHECK(ops.closure.extensive());
    CHECK(ops.closure.idempotent());
    CHECK(ops.kernel.contractive());
    CHECK(ops.kernel.idempotent());
    const auto& lat = c.source();
    for (std::size_t i = 0; i < lat.size(); ++i) {
        auto x = image_from_label(3, 2, lat.label(i));
        CHECK(lat.label(ops.closure.map[i]) == image_label(closing(x, b)));
        CHECK(lat.label(ops.kernel.map[i]) == image_label(opening(x, b)));
    }

    auto p = diamond();
    auto idops = induced_operators(GaloisConnection(p, p, identity_map(p), identity_map(p)));
    CHECK(idops.closure.map == identity_map(p));
    CHECK(idops.kernel.map == identity_map(p));

    // ceiling-style pair between a 5-chain and a 3-chain: F(i) = ceil(i/2), G(j) = 2j
    auto c5 = chain(5), c3 = chain(3);
    GaloisConnection half(c5, c3, IndexMap{0, 1, 1, 2, 2}, IndexMap{0, 2, 4});
    REQUIRE(check_connection(half).ok());
    auto o = induced_operators(half);
    CHECK(o.closure.map == IndexMap{0, 2, 2, 4, 4});
    CHECK(o.kernel.map == IndexMap{0, 1, 2});
    CHECK(o.closure.idempotent());
    CHECK(o.closure.fixed_points() == std::vector<std::size_t>{0, 2, 4});

    auto c3b = chain(3);
    CHECK_THROWS_AS(induced_operators(GaloisConnection(c3b, c3b, identity_map(c3b), IndexMap{1, 2, 2})), GaloisError);
}

TEST_CASE("composition of connections", "[galois][property]") {
    std::vector<StructuringElement> els{StructuringElement({{0, 0}, {1, 0}}), StructuringElement({{0, 1}}),
                                        StructuringElement({{0, 0}, {1, 1}})};
    for (const auto& b1 : els)
        for (const auto& b2 : els) {
            auto c1 = morphology_pair(2, 2, b1), c2 = morphology_pair(2, 2, b2);
            auto c = compose(c1, c2);
            CHECK(check_connection(c).ok());
            CHECK(check_connection(opposite(c)).ok());
        }
    auto c3 = chain(3), c2 = chain(2);
    // c3 -> c2 -> c3 through explicit adjoint pairs
    IndexMap F1{0, 0, 1};
    auto G1 = right_adjoint_of(F1, c3, c2);
    REQUIRE(G1.exists());
    IndexMap F2{0, 2};
    auto G2 = right_adjoint_of(F2, c2, c3);
    REQUIRE(G2.exists());
    auto comp = compose(GaloisConnection(c3, c2, F1, *G1.map), GaloisConnection(c2, c3, F2, *G2.map));
    CHECK(check_connection(comp).ok());
    CHECK(comp.left() == IndexMap{0, 0, 2});
}

TEST_CASE("cantor diagonal", "[galois]") {
    IndexMap neg{1, 0};
    std::vector<IndexMap> proj2{{0, 1}, {0, 1}};  // f(x, y) = y
    auto g = cantor_diagonal(proj2, neg);
    CHECK(g == IndexMap{1, 0});

    // every table X = {0,1,2} -> Y = {0,1}
    for (int code = 0; code < 512; ++code) {
        std::vector<IndexMap> f(3, IndexMap(3));
        for (int i = 0; i < 9; ++i) f[static_cast<std::size_t>(i / 3)][static_cast<std::size_t>(i % 3)] = static_cast<std::size_t>(code >> i & 1);
        auto d = cantor_diagonal(f, neg);
        for (std::size_t y = 0; y < 3; ++y) {
            bool differs = false;
            for (std::size_t x = 0; x < 3; ++x) differs = differs || d[x] != f[x][y];
            CHECK(differs);
            CHECK(d[y] != f[y][y]);
        }
    }
    CHECK_THROWS_AS(cantor_diagonal(proj2, IndexMap{0, 1}), GaloisError);
    CHECK_THROWS_AS(cantor_diagonal({{0, 1}}, neg), GaloisError);
}

TEST_CASE("antitone connections through the dual poset", "[galois]") {
    // A <-> B, F(p) = complement is antitone; as a monotone map P -> Q^op it has an adjoint
    auto lat = image_lattice(2, 1);
    IndexMap comp(lat.size());
    for (std::size_t i = 0; i < lat.size(); ++i) {
        auto s = lat.label(i);
        for (auto& ch : s) ch = ch == '1' ? '0' : '1';
        comp[i] = lat.index(s);
    }
    auto op = lat.dual();
    auto r = right_adjoint_of(comp, lat, op);
    REQUIRE(r.exists());
    CHECK(check_connection(GaloisConnection(lat, op, comp, *r.map)).ok());
}
