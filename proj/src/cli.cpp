#include "sheafkit/cli.hpp"

#include "sheafkit/cohomology.hpp"
#include "sheafkit/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <sstream>

namespace sheafkit::cli {

namespace {

namespace fs = std::filesystem;

struct Doc {
    json j;
    fs::path dir;
};

bool is_inline(const std::string& arg) {
    auto first = arg.find_first_not_of(" \t\r\n");
    return first != std::string::npos && (arg[first] == '{' || arg[first] == '[');
}

Doc load(const std::string& arg) {
    if (is_inline(arg)) return {load_json(arg), {}};
    return {read_json_file(arg), fs::path(arg).parent_path()};
}

// Parsers that start their paths at "$" get the file name put in front.
template <typename Parse>
auto parsed(const std::string& arg, Parse parse) {
    auto d = load(arg);
    try {
        return parse(d.j, d.dir);
    } catch (const ValidationError& e) {
        if (is_inline(arg)) throw;
        throw ValidationError(arg + ": " + e.where(), e.message());
    } catch (const ParseError& e) {
        if (is_inline(arg)) throw;
        throw ParseError(arg + ": " + e.where(), e.message());
    }
}

// "010/111" is an inline bitmap; anything else names a file.
BinaryImage load_bitmap(const std::string& arg) {
    std::string text;
    if (!arg.empty() && arg.find_first_not_of("01/") == std::string::npos) {
        text = arg;
        std::replace(text.begin(), text.end(), '/', '\n');
    } else {
        text = read_text_file(arg);
    }
    try {
        return parse_bitmap(text);
    } catch (const std::exception& e) {
        throw ParseError(arg, e.what());
    }
}

json bitmap_rows(const BinaryImage& x) {
    json rows = json::array();
    std::istringstream in(to_bitmap(x));
    for (std::string line; std::getline(in, line);) rows.push_back(line);
    return rows;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ','))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

json labels(const FinitePoset& p, const std::vector<std::size_t>& xs) {
    json out = json::array();
    for (auto x : xs) out.push_back(p.label(x));
    return out;
}

json names(const SimplicialComplex& c, const std::vector<FaceId>& fs) {
    json out = json::array();
    for (auto f : fs) out.push_back(c.name(f));
    return out;
}

json endomap(const LatticeEndomap& m) {
    json out = json::object();
    for (std::size_t i = 0; i < m.map.size(); ++i) out[m.carrier.label(i)] = m.carrier.label(m.map[i]);
    return out;
}

json members(const SetFamily& f, const std::vector<std::size_t>& xs) {
    json out = json::array();
    for (auto x : xs) out.push_back(f.name(x));
    return out;
}

json sheaf_check_json(const SheafCheck& r) {
    return {{"ok", r.ok()},
            {"locality", r.locality},
            {"locality_witness", r.locality_witness},
            {"gluing", r.gluing},
            {"gluing_witness", r.gluing_witness}};
}

std::string failure_name(ConnectionReport::Failure f) {
    switch (f) {
    case ConnectionReport::Failure::adjunction: return "adjunction";
    case ConnectionReport::Failure::unit: return "unit";
    case ConnectionReport::Failure::counit: return "counit";
    default: return "none";
    }
}

json rejected(const ValidationError& e) { return {{"ok", false}, {"where", e.where()}, {"error", e.what()}}; }

struct Options {
    std::string poset, connection, source, target, map, direction = "up";
    std::string image, se, signal, window, op = "dilate";
    std::string graph, subgraph, complex, face;
    std::string presheaf, cover, open, point;
    std::string sheaf, seed, assignment, model, joint;
    int k = 0;
    std::size_t colors = 3, limit = kDefaultPowerSetLimit;
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    std::function<int()> action;
    auto emit = [&](const json& j, bool ok = true) {
        out << j.dump() << '\n';
        return ok ? kOk : kFailure;
    };

    CLI::App app{"Exact computations with cellular sheaves, posets and morphology", "sheafkit"};
    app.require_subcommand(1);
    auto verb = [&](const std::string& name, const std::string& what) {
        auto* v = app.add_subcommand(name, what);
        v->require_subcommand(1);
        return v;
    };
    auto act = [&](CLI::App* v, const std::string& name, const std::string& what, std::function<int()> fn) {
        auto* a = v->add_subcommand(name, what);
        a->callback([&action, fn] { action = fn; });
        return a;
    };
    auto need = [](CLI::App* a, const std::string& flag, std::string& into, const std::string& what) {
        a->add_option(flag, into, what)->required();
    };

    // poset
    auto* poset = verb("poset", "finite posets");
    auto load_poset = [&] { return parsed(o.poset, [](const json& j, const fs::path&) { return poset_from_json(j); }); };
    auto* a = act(poset, "check", "validate a partial order", [&] {
        try {
            auto p = load_poset();
            json covers = json::array();
            for (auto [x, y] : p.covers()) covers.push_back({p.label(x), p.label(y)});
            return emit({{"ok", true}, {"elements", p.elements()}, {"covers", covers}, {"lattice", p.is_lattice()}});
        } catch (const ValidationError& e) {
            return emit(rejected(e), false);
        }
    });
    need(a, "--poset", o.poset, "poset JSON");
    a = act(poset, "downsets", "list every down-set", [&] {
        json sets = json::array();
        for (const auto& s : downsets(load_poset(), o.limit)) sets.push_back(s);
        return emit(sets);
    });
    need(a, "--poset", o.poset, "poset JSON");
    a->add_option("--limit", o.limit, "largest poset accepted");
    a = act(poset, "alexandrov", "Alexandrov topology of up-sets or down-sets", [&] {
        auto t = alexandrov(load_poset(), o.direction == "up" ? Direction::up : Direction::down, o.limit);
        json opens = json::array();
        for (std::size_t u = 0; u < t.size(); ++u) {
            json row = json::array({t.name(u)});
            for (const auto& x : t.members(u)) row.push_back(x);
            opens.push_back(row);
        }
        return emit({{"points", t.points()}, {"topology", opens}});
    });
    need(a, "--poset", o.poset, "poset JSON");
    a->add_option("--direction", o.direction, "up or down")->check(CLI::IsMember({"up", "down"}));
    a->add_option("--limit", o.limit, "largest poset accepted");
    a = act(poset, "yoneda", "check the downset embedding", [&] {
        bool ok = yoneda_check(load_poset(), o.limit);
        return emit({{"ok", ok}}, ok);
    });
    need(a, "--poset", o.poset, "poset JSON");
    a->add_option("--limit", o.limit, "largest poset accepted");

    // galois
    auto* galois = verb("galois", "Galois connections");
    auto load_connection = [&] { return parsed(o.connection, connection_from_json); };
    a = act(galois, "check", "check F(p) <= q iff p <= G(q)", [&] {
        try {
            auto c = load_connection();
            auto r = check_connection(c);
            if (r.ok()) return emit({{"ok", true}});
            return emit({{"ok", false},
                         {"failure", failure_name(r.failure)},
                         {"p", c.source().label(r.p)},
                         {"q", c.target().label(r.q)},
                         {"message", r.message}},
                        false);
        } catch (const ValidationError& e) {
            return emit(rejected(e), false);
        }
    });
    need(a, "--connection", o.connection, "connection JSON");
    a = act(galois, "closure", "induced closure and kernel operators", [&] {
        auto c = load_connection();
        auto r = check_connection(c);
        if (!r.ok()) return emit({{"ok", false}, {"failure", failure_name(r.failure)}, {"message", r.message}}, false);
        auto ops = induced_operators(c);
        return emit({{"closure", endomap(ops.closure)},
                     {"closure_fixed", labels(ops.closure.carrier, ops.closure.fixed_points())},
                     {"kernel", endomap(ops.kernel)},
                     {"kernel_fixed", labels(ops.kernel.carrier, ops.kernel.fixed_points())}});
    });
    need(a, "--connection", o.connection, "connection JSON");
    auto adjoint = [&](bool right) {
        auto src = parsed(o.source, [](const json& j, const fs::path&) { return poset_from_json(j); });
        auto tgt = parsed(o.target, [](const json& j, const fs::path&) { return poset_from_json(j); });
        Mapping m;
        auto mj = load(o.map).j;
        if (!mj.is_object()) throw ParseError(o.map, "expected an object of label pairs");
        for (auto it = mj.begin(); it != mj.end(); ++it) {
            if (!it.value().is_string()) throw ParseError("$." + it.key(), "expected a string");
            m[it.key()] = it.value().get<std::string>();
        }
        IndexMap f;
        try {
            f = index_map(src, tgt, m);
        } catch (const std::exception& e) {
            throw ParseError(o.map, e.what());
        }
        auto r = right ? right_adjoint_of(f, src, tgt) : left_adjoint_of(f, src, tgt);
        if (r.exists()) return emit({{right ? "right" : "left", label_map(tgt, src, *r.map)}});
        return emit({{"ok", false}, {"violated", labels(src, r.violated)}, {"reason", r.reason}}, false);
    };
    for (bool right : {true, false}) {
        a = act(galois, right ? "right-adjoint" : "left-adjoint",
                right ? "synthesize G from a join-preserving F" : "synthesize F from a meet-preserving G",
                [adjoint, right] { return adjoint(right); });
        need(a, "--source", o.source, "poset JSON of the domain");
        need(a, "--target", o.target, "poset JSON of the codomain");
        need(a, "--map", o.map, "label map JSON");
    }

    // morph
    auto* morph = verb("morph", "binary and flat grayscale morphology");
    auto binary = [&](const std::string& name, const std::string& what, auto op) {
        auto* b = act(morph, name, what, [&o, &out, op] {
            auto x = load_bitmap(o.image);
            auto se = parsed(o.se, [](const json& j, const fs::path&) { return structuring_element_from_json(j); });
            out << to_bitmap(op(x, se));
            return kOk;
        });
        need(b, "--image", o.image, "0/1 bitmap file, or inline rows joined by '/'");
        need(b, "--se", o.se, "structuring element offsets JSON");
    };
    binary("dilate", "clipped Minkowski sum", [](const BinaryImage& x, const StructuringElement& b) { return dilate(x, b); });
    binary("erode", "right adjoint of dilate", [](const BinaryImage& x, const StructuringElement& b) { return erode(x, b); });
    binary("open", "erode then dilate", [](const BinaryImage& x, const StructuringElement& b) { return opening(x, b); });
    binary("close", "dilate then erode", [](const BinaryImage& x, const StructuringElement& b) { return closing(x, b); });
    a = act(morph, "filters", "the composite filters generated by open and close", [&] {
        auto r = composite_filter_lattice(load_bitmap(o.image), parsed(o.se, [](const json& j, const fs::path&) { return structuring_element_from_json(j); }));
        bool ok = r.idempotent && r.chain && r.closed;
        return emit({{"phi", bitmap_rows(r.phi)},
                     {"kappa", bitmap_rows(r.kappa)},
                     {"kappa_phi", bitmap_rows(r.kappa_phi)},
                     {"phi_kappa", bitmap_rows(r.phi_kappa)},
                     {"phi_kappa_phi", bitmap_rows(r.phi_kappa_phi)},
                     {"kappa_phi_kappa", bitmap_rows(r.kappa_phi_kappa)},
                     {"idempotent", r.idempotent},
                     {"chain", r.chain},
                     {"closed", r.closed},
                     {"failures", r.failures}},
                    ok);
    });
    need(a, "--image", o.image, "0/1 bitmap file, or inline rows joined by '/'");
    need(a, "--se", o.se, "structuring element offsets JSON");
    a = act(morph, "flat", "flat 1-D grayscale dilation or erosion", [&] {
        auto f = parsed(o.signal, [](const json& j, const fs::path&) { return signal_from_json(j); });
        auto wj = load(o.window).j;
        std::vector<int> window;
        if (!wj.is_array()) throw ParseError(o.window, "expected an array of offsets");
        for (std::size_t i = 0; i < wj.size(); ++i) {
            if (!wj[i].is_number_integer()) throw ParseError("$[" + std::to_string(i) + "]", "expected an integer");
            window.push_back(wj[i].get<int>());
        }
        try {
            return emit(to_json(flat_filter(f, window, o.op == "dilate" ? FlatOp::dilate : FlatOp::erode)));
        } catch (const std::invalid_argument& e) {
            throw ParseError(o.window, e.what());
        }
    });
    need(a, "--signal", o.signal, "signal JSON: rational strings, \"inf\" or \"-inf\"");
    need(a, "--window", o.window, "window offsets JSON");
    a->add_option("--op", o.op, "dilate or erode")->check(CLI::IsMember({"dilate", "erode"}));

    // modal
    auto* modal = verb("modal", "bi-Heyting operators on subgraphs");
    auto unary = [&](const std::string& name, const std::string& what, auto op) {
        auto* b = act(modal, name, what, [&o, emit, op] {
            auto g = parsed(o.graph, [](const json& j, const fs::path&) { return graph_from_json(j); });
            auto s = parsed(o.subgraph, [&g](const json& j, const fs::path&) { return subgraph_from_json(g, j); });
            return emit(op(g, s));
        });
        need(b, "--graph", o.graph, "graph JSON");
        need(b, "--subgraph", o.subgraph, "subgraph JSON");
    };
    unary("heyting", "largest subgraph disjoint from x",
          [](const DirectedMultigraph& g, const Subgraph& s) { return subgraph_to_json(g, heyting_neg(g, s)); });
    unary("coheyting", "smallest subgraph covering the rest",
          [](const DirectedMultigraph& g, const Subgraph& s) { return subgraph_to_json(g, coheyting_neg(g, s)); });
    unary("boundary", "x meet its co-Heyting complement",
          [](const DirectedMultigraph& g, const Subgraph& s) { return subgraph_to_json(g, boundary(g, s)); });
    for (auto which : {Modality::diamond, Modality::box}) {
        unary(which == Modality::diamond ? "diamond" : "box", "iterate to a fixpoint",
              [which](const DirectedMultigraph& g, const Subgraph& s) {
                  auto t = modal_iterate(g, s, which);
                  json trace = json::array();
                  for (const auto& x : t.trace) trace.push_back(subgraph_to_json(g, x));
                  return json{{"steps", t.steps}, {"stabilized", subgraph_to_json(g, t.stabilized)}, {"trace", trace}};
              });
    }

    // complex
    auto* cx = verb("complex", "simplicial complexes");
    auto load_complex = [&] {
        return parsed(o.complex, [](const json& j, const fs::path&) { return complex_from_json(j); });
    };
    a = act(cx, "homology", "rational Betti numbers", [&] { return emit(homology_dims(load_complex())); });
    need(a, "--complex", o.complex, "complex JSON");
    a = act(cx, "boundary", "boundary matrix from k-chains to (k-1)-chains", [&] {
        auto c = load_complex();
        if (o.k < 0 || o.k > c.dim()) throw ParseError("--k", "no faces of dimension " + std::to_string(o.k));
        json rows = o.k == 0 ? json::array() : names(c, c.faces_of_dim(o.k - 1));
        return emit({{"rows", rows}, {"cols", names(c, c.faces_of_dim(o.k))}, {"matrix", to_json(boundary_matrix(c, o.k))}});
    });
    need(a, "--complex", o.complex, "complex JSON");
    a->add_option("--k", o.k, "chain degree")->required();
    a = act(cx, "faces", "faces in canonical order", [&] {
        auto c = load_complex();
        json fs = json::array();
        for (FaceId f = 0; f < c.face_count(); ++f) fs.push_back({{"name", c.name(f)}, {"dim", c.face_dim(f)}});
        return emit(fs);
    });
    need(a, "--complex", o.complex, "complex JSON");
    a = act(cx, "star", "open star of a face", [&] {
        auto c = load_complex();
        FaceId f;
        try {
            f = c.id(o.face);
        } catch (const std::exception& e) {
            throw ParseError("--face", e.what());
        }
        return emit(names(c, open_star(c, f)));
    });
    need(a, "--complex", o.complex, "complex JSON");
    need(a, "--face", o.face, "face name, e.g. ab");

    // presheaf
    auto* pre = verb("presheaf", "presheaves of sets on finite spaces");
    auto load_presheaf = [&] { return parsed(o.presheaf, [](const json& j, const fs::path&) { return presheaf_from_json(j); }); };
    a = act(pre, "check", "functoriality of the restriction tables", [&] {
        try {
            auto r = validate_presheaf(load_presheaf());
            if (r.ok) return emit({{"ok", true}});
            return emit({{"ok", false}, {"message", r.message}, {"opens", r.opens}, {"element", r.element}}, false);
        } catch (const ValidationError& e) {
            return emit(rejected(e), false);
        }
    });
    need(a, "--presheaf", o.presheaf, "presheaf JSON");
    CLI::Option* cover_opt = nullptr;
    a = act(pre, "sheaf-check", "locality and gluing", [&] {
        auto p = load_presheaf();
        const auto& b = p.base();
        if (cover_opt->count() > 0) {
            if (o.open.empty()) throw ParseError("--target", "a cover needs a target member");
            SheafCheck r;
            try {
                r = sheaf_check(p, split(o.cover), o.open);
            } catch (const std::exception& e) {
                throw ParseError("--cover", e.what());
            }
            auto j = sheaf_check_json(r);
            j["target"] = o.open;
            j["cover"] = split(o.cover);
            return emit(j, r.ok());
        }
        auto fail = sheaf_failure(p);
        if (!fail) return emit({{"ok", true}});
        auto j = sheaf_check_json(fail->check);
        j["target"] = b.name(fail->target);
        j["cover"] = members(b, fail->cover);
        return emit(j, false);
    });
    need(a, "--presheaf", o.presheaf, "presheaf JSON");
    cover_opt = a->add_option("--cover", o.cover, "comma-separated members; empty for the empty cover");
    a->add_option("--target", o.open, "member covered by --cover");
    a = act(pre, "stalk", "stalk at a point (its smallest open)", [&] {
        auto p = load_presheaf();
        try {
            return emit(stalk_at(p, o.point));
        } catch (const std::exception& e) {
            throw ParseError("--point", e.what());
        }
    });
    need(a, "--presheaf", o.presheaf, "presheaf JSON");
    need(a, "--point", o.point, "point label");
    a = act(pre, "ncolor", "proper n-colorings over connected subgraphs", [&] {
        auto g = parsed(o.graph, [](const json& j, const fs::path&) { return graph_from_json(j); });
        auto p = ncolor(g.vertices(), g.edges(), o.colors);
        if (o.open.empty()) return emit(presheaf_to_json(p));
        try {
            return emit(p.stalk(o.open));
        } catch (const std::exception& e) {
            throw ParseError("--open", e.what());
        }
    });
    need(a, "--graph", o.graph, "graph JSON");
    a->add_option("--colors", o.colors, "number of colors");
    a->add_option("--open", o.open, "print only the stalk over this member");

    // sheaf
    auto* sh = verb("sheaf", "cellular sheaves and cosheaves");
    auto load_sheaf = [&] { return parsed(o.sheaf, sheaf_from_json); };
    a = act(sh, "validate", "shapes and path independence", [&] {
        try {
            auto s = load_sheaf();
            auto r = validate_sheaf(s);
            if (r.ok) return emit({{"ok", true}, {"faces", s.base().face_count()}, {"maps", s.maps().size()}});
            return emit({{"ok", false}, {"message", r.message}, {"faces", r.faces}}, false);
        } catch (const ValidationError& e) {
            return emit(rejected(e), false);
        }
    });
    need(a, "--sheaf", o.sheaf, "sheaf JSON");
    a = act(sh, "extend", "propagate a partial assignment", [&] {
        auto s = load_sheaf();
        auto seed = parsed(o.seed, [&s](const json& j, const fs::path&) { return assignment_from_json(s, j); });
        auto r = extend(s, seed);
        if (r.ok()) return emit({{"ok", true}, {"section", assignment_to_json(s, *r.result)}});
        const auto& ob = *r.obstruction;
        return emit({{"ok", false},
                     {"obstruction", s.base().name(ob.face)},
                     {"kind", to_string(ob.kind)},
                     {"detail", ob.detail},
                     {"determined", assignment_to_json(s, ob.determined)}},
                    false);
    });
    need(a, "--sheaf", o.sheaf, "sheaf JSON");
    need(a, "--seed", o.seed, "assignment JSON");
    a = act(sh, "sections", "basis of the global sections", [&] {
        auto s = load_sheaf();
        auto space = global_section_space(s);
        json basis = json::array();
        for (const auto& v : space.basis) basis.push_back(assignment_to_json(s, v));
        return emit({{"dimension", space.dimension}, {"basis", basis}});
    });
    need(a, "--sheaf", o.sheaf, "sheaf JSON");
    a = act(sh, "check-section", "test a total assignment", [&] {
        auto s = load_sheaf();
        auto asg = parsed(o.assignment, [&s](const json& j, const fs::path&) { return assignment_from_json(s, j); });
        SectionReport r;
        try {
            r = is_global_section(s, asg);
        } catch (const std::exception& e) {
            throw ParseError(o.assignment, e.what());
        }
        json bad = json::array();
        for (auto v : r.violations) bad.push_back(attachment_name(s.base(), v));
        return emit({{"ok", r.ok}, {"violations", bad}}, r.ok);
    });
    need(a, "--sheaf", o.sheaf, "sheaf JSON");
    need(a, "--assignment", o.assignment, "assignment JSON");

    // cohomology
    auto* co = verb("cohomology", "sheaf cohomology over Q");
    a = act(co, "dims", "dimension of each cohomology group", [&] { return emit(cohomology_dims(load_sheaf())); });
    need(a, "--sheaf", o.sheaf, "sheaf JSON");
    a = act(co, "coboundary", "the coboundary from degree k to k+1", [&] {
        auto s = load_sheaf();
        auto cc = cochain_complex(s);
        if (o.k < 0 || o.k >= static_cast<int>(cc.deltas.size()))
            throw ParseError("--k", "no coboundary in degree " + std::to_string(o.k));
        auto k = static_cast<std::size_t>(o.k);
        return emit({{"rows", names(s.base(), cc.faces[k + 1])},
                     {"cols", names(s.base(), cc.faces[k])},
                     {"matrix", to_json(cc.deltas[k])}});
    });
    need(a, "--sheaf", o.sheaf, "sheaf JSON");
    a->add_option("--k", o.k, "cochain degree")->required();

    // bayes
    auto* by = verb("bayes", "finite Bayesian networks as cosheaves");
    auto load_model = [&] { return parsed(o.model, [](const json& j, const fs::path&) { return bayes_from_json(j); }); };
    a = act(by, "build", "joint, marginalization cosheaf and conditional components", [&] {
        auto b = bayes_build(load_model());
        const auto& c = b.cosheaf.base();
        json conds = json::array();
        for (const auto& k : b.conditionals)
            conds.push_back({{"variable", k.variable},
                             {"parents", k.parents ? json(c.name(*k.parents)) : json(nullptr)},
                             {"family", c.name(k.family)},
                             {"map", to_json(k.map)}});
        return emit({{"joint", vector_to_json(b.joint)}, {"cosheaf", sheaf_to_json(b.cosheaf)}, {"conditionals", conds}});
    });
    need(a, "--model", o.model, "Bayes model JSON");
    a = act(by, "check", "check a joint against the model", [&] {
        BayesModel m;
        try {
            m = load_model();
        } catch (const ValidationError& e) {
            return emit(rejected(e), false);
        }
        auto r = o.joint.empty() ? bayes_check(m) : bayes_check(m, parsed(o.joint, [](const json& j, const fs::path&) { return vector_from_json(j); }));
        return emit({{"ok", r.ok}, {"failures", r.failures}}, r.ok);
    });
    need(a, "--model", o.model, "Bayes model JSON");
    a->add_option("--joint", o.joint, "joint distribution JSON (defaults to the product of the CPTs)");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return e.get_exit_code() == 0 ? kOk : kUsage;
    }
    try {
        return action();
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const json::exception& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return kUsage;
}

} // namespace sheafkit::cli
