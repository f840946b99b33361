#include "sheafkit/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace sheafkit {

namespace {

std::string kind_name(const json& j) {
    switch (j.type()) {
    case json::value_t::object: return "an object";
    case json::value_t::array: return "an array";
    case json::value_t::string: return "a string";
    case json::value_t::boolean: return "a boolean";
    case json::value_t::null: return "null";
    default: return "a number";
    }
}

const json& expect(const json& j, json::value_t t, const std::string& where) {
    const bool ok = j.type() == t || (t == json::value_t::number_integer && j.is_number_integer());
    if (!ok) {
        static const std::map<json::value_t, std::string> want{{json::value_t::object, "an object"},
                                                               {json::value_t::array, "an array"},
                                                               {json::value_t::string, "a string"},
                                                               {json::value_t::number_integer, "an integer"}};
        throw ParseError(where, "expected " + want.at(t) + ", found " + kind_name(j));
    }
    return j;
}

const json& field(const json& j, const std::string& key, const std::string& where) {
    expect(j, json::value_t::object, where);
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(where, "missing field '" + key + "'");
    return *it;
}

std::string str(const json& j, const std::string& where) { return expect(j, json::value_t::string, where).get<std::string>(); }

std::vector<std::string> strings(const json& j, const std::string& where) {
    expect(j, json::value_t::array, where);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(str(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

std::string at(const std::string& where, const std::string& key) { return where + "." + key; }
std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

// Runs a library constructor, turning its exceptions into located parse errors.
template <typename Fn>
auto located(const std::string& where, Fn fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const ParseError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ValidationError(where, e.what());
    } catch (const std::exception& e) {
        throw ParseError(where, e.what());
    }
}

} // namespace

json load_json(const std::string& text_or_path) {
    auto first = std::find_if(text_or_path.begin(), text_or_path.end(), [](unsigned char c) { return !std::isspace(c); });
    if (first != text_or_path.end() && (*first == '{' || *first == '[')) {
        try {
            return json::parse(text_or_path);
        } catch (const json::parse_error& e) {
            throw ParseError("inline JSON", e.what());
        }
    }
    return read_json_file(text_or_path);
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), "cannot read file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json_file(const std::filesystem::path& path) {
    auto text = read_text_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string(), e.what());
    }
}

Rational rational_from_json(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (!j.is_string()) throw ParseError(where, "expected a rational string, found " + kind_name(j));
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
        throw ParseError(where, e.what());
    }
}

json to_json(const Rational& r) { return r.str(); }

RationalMatrix matrix_from_json(const json& j, const std::string& where) {
    expect(j, json::value_t::array, where);
    const auto rows = static_cast<Eigen::Index>(j.size());
    Eigen::Index cols = -1;
    for (std::size_t i = 0; i < j.size(); ++i) {
        expect(j[i], json::value_t::array, at(where, i));
        if (cols < 0) cols = static_cast<Eigen::Index>(j[i].size());
        if (static_cast<Eigen::Index>(j[i].size()) != cols)
            throw ParseError(at(where, i), "row has " + std::to_string(j[i].size()) + " entries, expected " + std::to_string(cols));
    }
    RationalMatrix m(rows, std::max<Eigen::Index>(cols, 0));
    for (std::size_t i = 0; i < j.size(); ++i)
        for (std::size_t k = 0; k < j[i].size(); ++k)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rational_from_json(j[i][k], at(at(where, i), k));
    return m;
}

json to_json(const RationalMatrix& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k).str());
        out.push_back(row);
    }
    return out;
}

RationalVector vector_from_json(const json& j, const std::string& where) {
    expect(j, json::value_t::array, where);
    RationalVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = rational_from_json(j[i], at(where, i));
    return v;
}

json vector_to_json(const RationalVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i).str());
    return out;
}

SimplicialComplex complex_from_json(const json& j, const std::string& where) {
    auto vertices = strings(field(j, "vertices", where), at(where, "vertices"));
    std::vector<std::vector<Label>> faces;
    if (j.contains("faces")) {
        const auto& fs = expect(j["faces"], json::value_t::array, at(where, "faces"));
        std::map<Label, std::size_t> pos;
        for (std::size_t i = 0; i < vertices.size(); ++i) pos.emplace(vertices[i], i);
        for (std::size_t i = 0; i < fs.size(); ++i) {
            auto w = at(at(where, "faces"), i);
            auto f = strings(fs[i], w);
            for (std::size_t k = 0; k < f.size(); ++k) {
                if (!pos.count(f[k])) throw ParseError(at(w, k), "unknown vertex '" + f[k] + "'");
                if (k > 0 && pos[f[k - 1]] >= pos[f[k]])
                    throw ParseError(w, "face vertices must be listed in vertex order");
            }
            faces.push_back(std::move(f));
        }
    }
    return located(where, [&] { return validate_complex(vertices, faces); });
}

json complex_to_json(const SimplicialComplex& c) {
    json faces = json::array();
    for (FaceId f = 0; f < c.face_count(); ++f)
        if (c.face_dim(f) >= 1) faces.push_back(c.labels(f));
    return {{"vertices", c.vertex_order()}, {"faces", faces}};
}

CellularSheaf sheaf_from_json(const json& j, const std::filesystem::path& dir) {
    const auto& cj = field(j, "complex", "$");
    SimplicialComplex c;
    if (cj.is_string()) {
        auto path = dir / cj.get<std::string>();
        c = complex_from_json(read_json_file(path), path.string());
    } else {
        c = complex_from_json(cj, "$.complex");
    }
    Variance v = Variance::sheaf;
    if (j.contains("variance")) {
        auto name = str(j["variance"], "$.variance");
        if (name == "cosheaf") v = Variance::cosheaf;
        else if (name != "sheaf") throw ParseError("$.variance", "expected \"sheaf\" or \"cosheaf\"");
    }
    std::map<std::string, Eigen::Index> dims;
    const auto& st = expect(field(j, "stalks", "$"), json::value_t::object, "$.stalks");
    for (auto it = st.begin(); it != st.end(); ++it) {
        auto w = at("$.stalks", it.key());
        expect(it.value(), json::value_t::number_integer, w);
        if (it.value().get<long long>() < 0) throw ParseError(w, "stalk dimension must be nonnegative");
        dims[it.key()] = it.value().get<Eigen::Index>();
    }
    std::map<std::string, RationalMatrix> maps;
    if (j.contains("maps")) {
        const auto& ms = expect(j["maps"], json::value_t::object, "$.maps");
        for (auto it = ms.begin(); it != ms.end(); ++it) maps[it.key()] = matrix_from_json(it.value(), at("$.maps", it.key()));
    }
    return located("$", [&] { return CellularSheaf::from_names(c, dims, maps, v); });
}

json sheaf_to_json(const CellularSheaf& s) {
    const auto& c = s.base();
    json stalks = json::object(), maps = json::object();
    for (FaceId f = 0; f < c.face_count(); ++f) stalks[c.name(f)] = s.dim(f);
    for (const auto& [key, m] : s.maps())
        if (s.dim(key.first) != 0 && s.dim(key.second) != 0) maps[attachment_name(c, key)] = to_json(m);
    return {{"complex", complex_to_json(c)},
            {"stalks", stalks},
            {"maps", maps},
            {"variance", s.variance() == Variance::sheaf ? "sheaf" : "cosheaf"}};
}

Assignment assignment_from_json(const CellularSheaf& s, const json& j) {
    expect(j, json::value_t::object, "$");
    std::map<std::string, RationalVector> by_name;
    for (auto it = j.begin(); it != j.end(); ++it) by_name[it.key()] = vector_from_json(it.value(), at("$", it.key()));
    return located("$", [&] { return make_assignment(s, by_name); });
}

json assignment_to_json(const CellularSheaf& s, const Assignment& a) {
    json out = json::object();
    for (const auto& [f, v] : a.values) out[s.base().name(f)] = vector_to_json(v);
    return out;
}

FinitePoset poset_from_json(const json& j, const std::string& where) {
    auto elements = strings(field(j, "elements", where), at(where, "elements"));
    std::vector<std::pair<Label, Label>> rel;
    if (j.contains("relation")) {
        const auto& r = expect(j["relation"], json::value_t::array, at(where, "relation"));
        for (std::size_t i = 0; i < r.size(); ++i) {
            auto w = at(at(where, "relation"), i);
            auto pair = strings(r[i], w);
            if (pair.size() != 2) throw ParseError(w, "expected a pair");
            rel.emplace_back(pair[0], pair[1]);
        }
    }
    return located(where, [&] { return validate_poset(elements, rel); });
}

json poset_to_json(const FinitePoset& p) {
    json rel = json::array();
    for (auto [a, b] : p.covers()) rel.push_back({p.label(a), p.label(b)});
    return {{"elements", p.elements()}, {"relation", rel}};
}

GaloisConnection connection_from_json(const json& j, const std::filesystem::path& dir) {
    auto load = [&](const std::string& key) {
        const auto& pj = field(j, key, "$");
        if (pj.is_string()) {
            auto path = dir / pj.get<std::string>();
            return poset_from_json(read_json_file(path), path.string());
        }
        return poset_from_json(pj, at("$", key));
    };
    auto mapping = [&](const std::string& key) {
        const auto& mj = expect(field(j, key, "$"), json::value_t::object, at("$", key));
        Mapping m;
        for (auto it = mj.begin(); it != mj.end(); ++it) m[it.key()] = str(it.value(), at(at("$", key), it.key()));
        return m;
    };
    auto source = load("source"), target = load("target");
    auto left = mapping("left"), right = mapping("right");
    return located("$", [&] { return GaloisConnection(source, target, left, right); });
}

DirectedMultigraph graph_from_json(const json& j, const std::string& where) {
    auto vertices = strings(field(j, "vertices", where), at(where, "vertices"));
    std::vector<Edge> edges;
    if (j.contains("edges")) {
        const auto& es = expect(j["edges"], json::value_t::array, at(where, "edges"));
        for (std::size_t i = 0; i < es.size(); ++i) {
            auto w = at(at(where, "edges"), i);
            edges.push_back({str(field(es[i], "id", w), at(w, "id")), str(field(es[i], "src", w), at(w, "src")),
                             str(field(es[i], "dst", w), at(w, "dst"))});
        }
    }
    return located(where, [&] { return DirectedMultigraph(vertices, edges); });
}

json graph_to_json(const DirectedMultigraph& g) {
    json edges = json::array();
    for (const auto& e : g.edges()) edges.push_back({{"id", e.id}, {"src", e.src}, {"dst", e.dst}});
    return {{"vertices", g.vertices()}, {"edges", edges}};
}

Subgraph subgraph_from_json(const DirectedMultigraph& g, const json& j, const std::string& where) {
    auto vs = strings(field(j, "vertices", where), at(where, "vertices"));
    std::vector<std::string> es;
    if (j.contains("edges")) es = strings(j["edges"], at(where, "edges"));
    std::sort(vs.begin(), vs.end());
    return located(where, [&] { return make_subgraph(g, vs, es); });
}

json subgraph_to_json(const DirectedMultigraph& g, const Subgraph& s) {
    return {{"vertices", vertex_labels(g, s)}, {"edges", edge_ids(g, s)}};
}

FinitePresheaf presheaf_from_json(const json& j) {
    const auto& top = expect(field(j, "topology", "$"), json::value_t::array, "$.topology");
    std::vector<std::pair<std::string, LabelSet>> members;
    std::set<Label> seen;
    for (std::size_t i = 0; i < top.size(); ++i) {
        auto w = at("$.topology", i);
        auto row = strings(top[i], w);
        if (row.empty()) throw ParseError(w, "expected a name followed by points");
        LabelSet pts(row.begin() + 1, row.end());
        std::sort(pts.begin(), pts.end());
        seen.insert(pts.begin(), pts.end());
        members.emplace_back(row[0], pts);
    }
    std::vector<Label> points(seen.begin(), seen.end());
    if (j.contains("points")) points = strings(j["points"], "$.points");
    auto family = located("$.topology", [&] { return SetFamily(points, members); });

    std::map<std::string, std::vector<std::string>> stalks;
    const auto& opens = expect(field(j, "opens", "$"), json::value_t::object, "$.opens");
    for (auto it = opens.begin(); it != opens.end(); ++it) stalks[it.key()] = strings(it.value(), at("$.opens", it.key()));
    std::map<OpenPair, ElementMap> restrictions;
    if (j.contains("restrictions")) {
        const auto& rs = expect(j["restrictions"], json::value_t::object, "$.restrictions");
        for (auto it = rs.begin(); it != rs.end(); ++it) {
            auto w = at("$.restrictions", it.key());
            auto cut = it.key().find("<=");
            if (cut == std::string::npos) throw ParseError(w, "key must have the form V<=U");
            ElementMap m;
            const auto& tbl = expect(it.value(), json::value_t::object, w);
            for (auto e = tbl.begin(); e != tbl.end(); ++e) m[e.key()] = str(e.value(), at(w, e.key()));
            restrictions[{it.key().substr(0, cut), it.key().substr(cut + 2)}] = std::move(m);
        }
    }
    return located("$", [&] { return FinitePresheaf(family, stalks, restrictions); });
}

json presheaf_to_json(const FinitePresheaf& p) {
    const auto& b = p.base();
    json top = json::array(), opens = json::object(), res = json::object();
    for (std::size_t u = 0; u < b.size(); ++u) {
        json row = json::array({b.name(u)});
        for (const auto& x : b.members(u)) row.push_back(x);
        top.push_back(row);
        opens[b.name(u)] = p.stalk(u);
    }
    for (std::size_t u = 0; u < b.size(); ++u)
        for (std::size_t v = 0; v < b.size(); ++v) {
            if (u == v || !b.subset(v, u)) continue;
            json tbl = json::object();
            for (std::size_t i = 0; i < p.stalk(u).size(); ++i) tbl[p.stalk(u)[i]] = p.stalk(v)[p.restrict(u, v, i)];
            res[b.name(v) + "<=" + b.name(u)] = tbl;
        }
    return {{"points", b.points()}, {"topology", top}, {"opens", opens}, {"restrictions", res}};
}

StructuringElement structuring_element_from_json(const json& j) {
    expect(j, json::value_t::array, "$");
    std::vector<Point> pts;
    for (std::size_t i = 0; i < j.size(); ++i) {
        auto w = at("$", i);
        expect(j[i], json::value_t::array, w);
        if (j[i].size() != 2) throw ParseError(w, "expected an offset [dx, dy]");
        expect(j[i][0], json::value_t::number_integer, at(w, 0));
        expect(j[i][1], json::value_t::number_integer, at(w, 1));
        pts.push_back({j[i][0].get<int>(), j[i][1].get<int>()});
    }
    return located("$", [&] { return StructuringElement(pts); });
}

json to_json(const StructuringElement& b) {
    json out = json::array();
    for (auto p : b.offsets()) out.push_back({p.x, p.y});
    return out;
}

GrayscaleSignal signal_from_json(const json& j) {
    expect(j, json::value_t::array, "$");
    GrayscaleSignal f;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (j[i].is_number_integer()) f.emplace_back(Rational(j[i].get<long long>()));
        else {
            auto text = str(j[i], at("$", i));
            try {
                f.push_back(ExtendedRational::parse(text));
            } catch (const std::exception& e) {
                throw ParseError(at("$", i), e.what());
            }
        }
    }
    return f;
}

json to_json(const GrayscaleSignal& f) {
    json out = json::array();
    for (const auto& x : f) out.push_back(x.str());
    return out;
}

BayesModel bayes_from_json(const json& j) {
    const auto& vs = expect(field(j, "variables", "$"), json::value_t::array, "$.variables");
    BayesModel m;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        auto w = at("$.variables", i);
        BayesVariable v;
        v.name = str(field(vs[i], "name", w), at(w, "name"));
        v.outcomes = strings(field(vs[i], "outcomes", w), at(w, "outcomes"));
        if (vs[i].contains("parents")) v.parents = strings(vs[i]["parents"], at(w, "parents"));
        const auto& cpt = field(vs[i], "cpt", w);
        expect(cpt, json::value_t::array, at(w, "cpt"));
        if (!cpt.empty() && !cpt[0].is_array()) v.cpt = matrix_from_json(json::array({cpt}), at(w, "cpt"));
        else v.cpt = matrix_from_json(cpt, at(w, "cpt"));
        m.variables.push_back(std::move(v));
    }
    located("$", [&] {
        validate_bayes(m);
        return 0;
    });
    return m;
}

json bayes_to_json(const BayesModel& m) {
    json vars = json::array();
    for (const auto& v : m.variables)
        vars.push_back({{"name", v.name}, {"outcomes", v.outcomes}, {"parents", v.parents}, {"cpt", to_json(v.cpt)}});
    return {{"variables", vars}};
}

} // namespace sheafkit
