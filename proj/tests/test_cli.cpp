#include "sheafkit/cli.hpp"
#include "sheafkit/cohomology.hpp"
#include "sheafkit/io.hpp"
#include "support/generators.hpp"
#include "support/presheaves.hpp"
#include "support/running.hpp"
#include "support/sprinkler.hpp"

#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>

using namespace sheafkit;

namespace {

const std::string data = SHEAFKIT_DATA_DIR;

std::string path(const std::string& name) { return data + "/" + name; }

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

template <typename Fn>
std::string error_location(Fn fn) {
    try {
        fn();
    } catch (const ParseError& e) {
        return e.where();
    }
    return "<no error>";
}

} // namespace

TEST_CASE("rational strings") {
    CHECK(rational_from_json("7.5") == Rational(15, 2));
    CHECK(rational_from_json("1/3") == Rational(1, 3));
    CHECK(rational_from_json("0.5") == rational_from_json("1/2"));
    CHECK(rational_from_json("-0.25") == Rational(-1, 4));
    CHECK(rational_from_json(json(-3)) == Rational(-3));
    CHECK(to_json(Rational(15, 2)) == "15/2");
    CHECK(to_json(Rational(-3)) == "-3");
    CHECK_THROWS_AS(rational_from_json(json(0.5)), ParseError);
    CHECK_THROWS_AS(rational_from_json("x"), ParseError);
    CHECK_THROWS_AS(rational_from_json("1/0"), ParseError);
}

TEST_CASE("parse errors carry a location") {
    CHECK(error_location([] { matrix_from_json(json::parse(R"([["1","2"],["3"]])")); }) == "$[1]");
    CHECK(error_location([] { matrix_from_json(json::parse(R"([["1","2"],["3","q"]])")); }) == "$[1][1]");

    auto j = json::parse(read_text_file(path("running.json")));
    j["maps"]["a->ab"][0][1] = "1/x";
    CHECK(error_location([&] { sheaf_from_json(j, data); }) == "$.maps.a->ab[0][1]");

    j = json::parse(read_text_file(path("running.json")));
    j["stalks"]["a"] = "2";
    CHECK(error_location([&] { sheaf_from_json(j, data); }) == "$.stalks.a");

    j = json::parse(read_text_file(path("running.json")));
    j.erase("stalks");
    CHECK(error_location([&] { sheaf_from_json(j, data); }) == "$");

    CHECK(error_location([] { load_json("{\"a\": }"); }) == "inline JSON");
    CHECK(error_location([] { read_json_file("/nonexistent/file.json"); }) == "/nonexistent/file.json");
}

TEST_CASE("faces must be listed in vertex order") {
    auto ok = json::parse(R"({"vertices":["a","b","c"],"faces":[["a","b"],["b","c"]]})");
    auto c = complex_from_json(ok);
    CHECK(c.face_count() == 5);

    auto unsorted = json::parse(R"({"vertices":["a","b","c"],"faces":[["b","a"]]})");
    CHECK(error_location([&] { complex_from_json(unsorted); }) == "$.faces[0]");

    // Order is the listed vertex order, not alphabetical.
    auto custom = json::parse(R"({"vertices":["b","a"],"faces":[["b","a"]]})");
    CHECK(complex_from_json(custom).labels(2) == std::vector<Label>{"b", "a"});

    auto unknown = json::parse(R"({"vertices":["a","b"],"faces":[["a","z"]]})");
    CHECK(error_location([&] { complex_from_json(unknown); }) == "$.faces[0][1]");

    auto repeated = json::parse(R"({"vertices":["a","b"],"faces":[["a","a"]]})");
    CHECK_THROWS_AS(complex_from_json(repeated), ParseError);
}

TEST_CASE("shipped running example matches the in-code fixture") {
    auto d = read_json_file(path("running.json"));
    auto s = sheaf_from_json(d, data);
    CHECK(s == fixtures::running_sheaf());
    CHECK(validate_sheaf(s).ok);

    auto seed = assignment_from_json(s, read_json_file(path("running_seed.json")));
    CHECK(seed == make_assignment(s, {{"e", vec({1, 0, -1})}}));
}

TEST_CASE("shipped fixtures match the in-code ones") {
    CHECK(presheaf_from_json(read_json_file(path("presheaf_p.json"))) == fixtures::presheaf_p());
    CHECK(presheaf_from_json(read_json_file(path("presheaf_g.json"))) == fixtures::presheaf_g());
    CHECK(presheaf_from_json(read_json_file(path("presheaf_h.json"))) == fixtures::presheaf_h());
    CHECK(bayes_to_json(bayes_from_json(read_json_file(path("sprinkler.json")))) == bayes_to_json(fixtures::sprinkler()));
}

TEST_CASE("round trips") {
    std::mt19937 rng(41);

    SECTION("complexes and sheaves") {
        for (int t = 0; t < 40; ++t) {
            auto c = testgen::random_complex(rng, 2 + rng() % 5, 1 + rng() % 5);
            CHECK(complex_from_json(json::parse(complex_to_json(c).dump())) == c);
            auto v = t % 3 == 0 ? Variance::cosheaf : Variance::sheaf;
            auto s = testgen::random_sheaf(rng, c, 5, 3, v);
            auto back = sheaf_from_json(json::parse(sheaf_to_json(s).dump()));
            CHECK(back == s);
            auto space = global_section_space(s);
            for (const auto& a : space.basis)
                CHECK(assignment_from_json(s, json::parse(assignment_to_json(s, a).dump())) == a);
        }
        auto r = fixtures::running_sheaf();
        CHECK(sheaf_from_json(sheaf_to_json(r)) == r);
    }

    SECTION("posets") {
        for (int t = 0; t < 40; ++t) {
            auto p = testgen::random_poset(rng, 1 + rng() % 6);
            CHECK(poset_from_json(json::parse(poset_to_json(p).dump())) == p);
        }
    }

    SECTION("graphs and subgraphs") {
        DirectedMultigraph g({"a", "b", "c"}, {{"e1", "a", "b"}, {"e2", "a", "b"}, {"loop", "c", "c"}});
        CHECK(graph_from_json(graph_to_json(g)).edges() == g.edges());
        CHECK(graph_from_json(graph_to_json(g)).vertices() == g.vertices());
        for (const auto& s : {empty_subgraph(g), whole(g), make_subgraph(g, {"a", "b"}, {"e2"})})
            CHECK(subgraph_from_json(g, subgraph_to_json(g, s)) == s);
        CHECK_THROWS_AS(subgraph_from_json(g, json::parse(R"({"vertices":["a"],"edges":["e1"]})")), ParseError);
    }

    SECTION("presheaves") {
        for (const auto& p : {fixtures::presheaf_p(), fixtures::presheaf_g(), fixtures::presheaf_h()})
            CHECK(presheaf_from_json(json::parse(presheaf_to_json(p).dump())) == p);
        DirectedMultigraph k3({"a", "b", "c"}, {{"ab", "a", "b"}, {"bc", "b", "c"}, {"ca", "c", "a"}});
        auto n = ncolor(k3.vertices(), k3.edges(), 2);
        CHECK(presheaf_from_json(presheaf_to_json(n)) == n);
    }

    SECTION("morphology inputs") {
        StructuringElement b({{0, 0}, {1, 0}, {0, -1}});
        CHECK(structuring_element_from_json(to_json(b)).offsets() == b.offsets());
        GrayscaleSignal f{ExtendedRational::neg_inf(), Rational(7, 2), 0, ExtendedRational::pos_inf()};
        CHECK(signal_from_json(json::parse(to_json(f).dump())) == f);
        CHECK(signal_from_json(json::parse(R"(["7.5", 2])"))[0] == ExtendedRational(Rational(15, 2)));
    }

    SECTION("bayes models") {
        auto m = fixtures::sprinkler();
        auto back = bayes_from_json(json::parse(bayes_to_json(m).dump()));
        CHECK(bayes_to_json(back) == bayes_to_json(m));
        CHECK(bayes_build(back).joint == bayes_build(m).joint);
    }
}

TEST_CASE("library rejections are validation errors") {
    CHECK_THROWS_AS(poset_from_json(json::parse(R"({"elements":["a","b"],"relation":[["a","b"],["b","a"]]})")),
                    ValidationError);
    auto m = bayes_to_json(fixtures::sprinkler());
    m["variables"][2]["cpt"] = json::array({json::array({"1/2", "1/3"})});
    CHECK_THROWS_AS(bayes_from_json(m), ValidationError);
    bool validation = false;
    try {
        rational_from_json("q");
    } catch (const ValidationError&) {
        validation = true;
    } catch (const ParseError&) {
    }
    CHECK_FALSE(validation);
}

TEST_CASE("cli exit codes and witnesses") {
    SECTION("obstruction") {
        auto r = run({"sheaf", "extend", "--sheaf", path("running.json"), "--seed", R"({"e":["1","0","-1"]})"});
        REQUIRE(r.code == cli::kFailure);
        auto j = json::parse(r.out);
        CHECK(j["obstruction"] == "d");
        CHECK(j["kind"] == "no-consistent-value");
        CHECK(j["determined"]["ce"] == json::array({"0", "-13/2"}));
        CHECK(j["determined"]["de"] == json::array({"1", "1"}));
        CHECK(j["determined"]["ef"] == json::array({"0", "0"}));
    }
    SECTION("successful extension is a global section") {
        auto r = run({"sheaf", "extend", "--sheaf", path("running.json"), "--seed", R"({"f":["1","1","-1"]})"});
        REQUIRE(r.code == cli::kOk);
        auto s = fixtures::running_sheaf();
        auto a = assignment_from_json(s, json::parse(r.out)["section"]);
        CHECK(is_global_section(s, a).ok);
    }
    SECTION("zero sheaf cohomology") {
        auto r = run({"cohomology", "dims", "--sheaf", path("zero.json")});
        CHECK(r.code == cli::kOk);
        CHECK(json::parse(r.out) == json::array({0, 0, 0}));
    }
    SECTION("edge homology") {
        auto r = run({"complex", "homology", "--complex", path("edge.json")});
        CHECK(r.code == cli::kOk);
        CHECK(json::parse(r.out) == json::array({1, 0}));
    }
    SECTION("running cohomology and coboundary") {
        CHECK(json::parse(run({"cohomology", "dims", "--sheaf", path("running.json")}).out) == json::array({2, 2, 0}));
        auto r = run({"cohomology", "coboundary", "--sheaf", path("running.json"), "--k", "0"});
        REQUIRE(r.code == cli::kOk);
        auto j = json::parse(r.out);
        auto cc = cochain_complex(fixtures::running_sheaf());
        CHECK(matrix_from_json(j["matrix"]) == cc.deltas[0]);
        CHECK(j["cols"].size() == 6);
        CHECK(run({"cohomology", "coboundary", "--sheaf", path("running.json"), "--k", "2"}).code == cli::kUsage);
    }
    SECTION("presheaf witnesses") {
        auto p = run({"presheaf", "sheaf-check", "--presheaf", path("presheaf_p.json")});
        CHECK(p.code == cli::kFailure);
        auto jp = json::parse(p.out);
        CHECK(jp["target"] == "{}");
        CHECK(jp["cover"] == json::array());
        CHECK(jp["locality"] == false);
        CHECK(jp["gluing"] == true);

        auto g = run({"presheaf", "sheaf-check", "--presheaf", path("presheaf_g.json"), "--cover", "{p},{q}", "--target",
                      "{p,q}"});
        CHECK(g.code == cli::kFailure);
        auto jg = json::parse(g.out);
        CHECK(jg["locality"] == true);
        CHECK(jg["gluing"] == false);
        CHECK(jg["gluing_witness"][0] != jg["gluing_witness"][1]);

        CHECK(run({"presheaf", "sheaf-check", "--presheaf", path("presheaf_h.json")}).code == cli::kOk);
    }
    SECTION("check-section") {
        auto bad = run({"sheaf", "check-section", "--sheaf", path("running.json"), "--assignment",
                        json{{"a", {"1", "0"}}}.dump()});
        CHECK(bad.code == cli::kUsage);  // not total
        auto space = global_section_space(fixtures::running_sheaf());
        auto s = fixtures::running_sheaf();
        auto good = run({"sheaf", "check-section", "--sheaf", path("running.json"), "--assignment",
                         assignment_to_json(s, space.basis[1]).dump()});
        CHECK(good.code == cli::kOk);
    }
    SECTION("usage errors") {
        CHECK(run({}).code == cli::kUsage);
        CHECK(run({"sheaf"}).code == cli::kUsage);
        CHECK(run({"frobnicate"}).code == cli::kUsage);
        CHECK(run({"sheaf", "extend", "--sheaf", path("running.json")}).code == cli::kUsage);
        auto missing = run({"sheaf", "validate", "--sheaf", path("missing.json")});
        CHECK(missing.code == cli::kUsage);
        CHECK(missing.err.find("missing.json") != std::string::npos);
        auto unsorted = run({"complex", "homology", "--complex", R"({"vertices":["a","b"],"faces":[["b","a"]]})"});
        CHECK(unsorted.code == cli::kUsage);
        CHECK(unsorted.err.find("$.faces[0]") != std::string::npos);
        auto bad_file = run({"sheaf", "validate", "--sheaf", path("k3.json")});
        CHECK(bad_file.code == cli::kUsage);
        CHECK(bad_file.err.find("k3.json: $") != std::string::npos);
        CHECK(run({"--help"}).code == cli::kOk);
    }
    SECTION("validation failures are domain failures") {
        auto r = run({"poset", "check", "--poset", R"({"elements":["a","b"],"relation":[["a","b"],["b","a"]]})"});
        CHECK(r.code == cli::kFailure);
        CHECK(json::parse(r.out)["ok"] == false);
        auto s = json::parse(read_text_file(path("running.json")));
        s["complex"] = path("running_complex.json");
        s["maps"]["a->ab"] = json::array({json::array({"1"})});
        auto v = run({"sheaf", "validate", "--sheaf", s.dump()});
        CHECK(v.code == cli::kFailure);
        CHECK(json::parse(v.out)["faces"] == json::array({"a", "ab"}));
    }
}

TEST_CASE("cli output is deterministic and re-parses") {
    std::vector<std::vector<std::string>> commands{
        {"sheaf", "sections", "--sheaf", path("running.json")},
        {"bayes", "build", "--model", path("sprinkler.json")},
        {"presheaf", "ncolor", "--graph", path("k3.json")},
        {"poset", "alexandrov", "--poset", path("diamond.json")},
        {"galois", "closure", "--connection", path("truncate.json")},
        {"modal", "diamond", "--graph", path("k3.json"), "--subgraph", path("k3_edge.json")},
        {"morph", "filters", "--image", path("noise.txt"), "--se", path("bar.json")},
    };
    for (const auto& c : commands) {
        auto a = run(c), b = run(c);
        INFO(c[0] << " " << c[1]);
        CHECK(a.code == cli::kOk);
        CHECK(a.out == b.out);
    }

    auto s = fixtures::running_sheaf();
    auto sections = json::parse(run(commands[0]).out);
    CHECK(sections["dimension"] == 2);
    for (const auto& a : sections["basis"]) CHECK(is_global_section(s, assignment_from_json(s, a)).ok);

    auto built = json::parse(run(commands[1]).out);
    auto b = bayes_build(fixtures::sprinkler());
    CHECK(sheaf_from_json(built["cosheaf"]) == b.cosheaf);
    CHECK(vector_from_json(built["joint"]) == b.joint);

    auto n = json::parse(run(commands[2]).out);
    CHECK(n["opens"]["{a,ab,b,bc,c,ca}"].size() == 6);
}

TEST_CASE("cli morphology and order commands") {
    auto opened = run({"morph", "open", "--image", path("noise.txt"), "--se", path("bar.json")});
    CHECK(opened.code == cli::kOk);
    CHECK(opened.out == "000000\n011100\n011100\n000000\n");
    CHECK(run({"morph", "dilate", "--image", "010/000", "--se", "[[0,0],[1,0]]"}).out == "011\n000\n");
    CHECK(run({"morph", "dilate", "--image", "012", "--se", "[[0,0]]"}).code == cli::kUsage);

    auto flat = run({"morph", "flat", "--signal", path("signal.json"), "--window", "[-1,0,1]", "--op", "dilate"});
    CHECK(json::parse(flat.out) == json::array({"5", "5", "5"}));

    auto right = run({"galois", "right-adjoint", "--source", path("chain3.json"), "--target", path("chain2.json"),
                      "--map", R"({"0":"0","1":"1","2":"1"})"});
    CHECK(right.code == cli::kOk);
    CHECK(json::parse(right.out)["right"] == json::parse(R"({"0":"0","1":"2"})"));

    // Constant 1 does not preserve the empty join.
    auto none = run({"galois", "right-adjoint", "--source", path("chain3.json"), "--target", path("chain2.json"),
                     "--map", R"({"0":"1","1":"1","2":"1"})"});
    CHECK(none.code == cli::kFailure);

    auto conn = json::parse(read_text_file(path("truncate.json")));
    conn["source"] = path("chain3.json");
    conn["target"] = path("chain2.json");
    conn["right"]["1"] = "1";
    auto broken = run({"galois", "check", "--connection", conn.dump()});
    CHECK(broken.code == cli::kFailure);

    CHECK(json::parse(run({"poset", "downsets", "--poset", path("chain2.json")}).out) ==
          json::parse(R"([[], ["0"], ["0","1"]])"));
    CHECK(run({"poset", "yoneda", "--poset", path("diamond.json")}).code == cli::kOk);

    auto heyting = run({"modal", "heyting", "--graph", path("k3.json"), "--subgraph", path("k3_edge.json")});
    CHECK(json::parse(heyting.out) == json::parse(R"({"vertices":["c"],"edges":[]})"));

    CHECK(run({"bayes", "check", "--model", path("sprinkler.json")}).code == cli::kOk);
    // Move the mass of one joint entry onto its neighbour: still a distribution, no longer the model's.
    auto p = bayes_build(fixtures::sprinkler()).joint;
    p(1) += p(0);
    p(0) = 0;
    auto joint = vector_to_json(p);
    CHECK(run({"bayes", "check", "--model", path("sprinkler.json"), "--joint", joint.dump()}).code == cli::kFailure);
}
