#include "sheafkit/cellsheaf.hpp"

#include <algorithm>
#include <set>

namespace sheafkit {

namespace {

std::string shape(Eigen::Index r, Eigen::Index c) { return std::to_string(r) + "x" + std::to_string(c); }

bool is_attachment(const SimplicialComplex& c, FaceId sigma, FaceId tau) {
    const auto& f = c.facets(tau);
    return std::find(f.begin(), f.end(), sigma) != f.end();
}

// Unknowns for a set of faces laid out in face order.
struct Layout {
    std::map<FaceId, Eigen::Index> offset;
    Eigen::Index size = 0;

    Layout(const CellularSheaf& s, const std::vector<FaceId>& faces) {
        auto sorted = faces;
        std::sort(sorted.begin(), sorted.end());
        for (auto f : sorted) {
            offset[f] = size;
            size += s.dim(f);
        }
    }
};

// Homogeneous rows x_to - M x_from = 0 for each attachment, plus pinned values.
struct System {
    RationalMatrix a;
    RationalVector b;
};

System build_system(const CellularSheaf& s, const Layout& lay, const std::vector<Attachment>& atts,
                    const std::vector<std::pair<FaceId, RationalVector>>& pins) {
    Eigen::Index rows = 0;
    for (auto [sg, t] : atts) rows += s.variance() == Variance::sheaf ? s.dim(t) : s.dim(sg);
    for (const auto& [f, v] : pins) rows += v.size();
    System sys{zeros(rows, lay.size), RationalVector::Constant(rows, Rational(0))};
    Eigen::Index r = 0;
    for (auto [sg, t] : atts) {
        FaceId from = sg, to = t;
        if (s.variance() == Variance::cosheaf) std::swap(from, to);
        const auto& m = s.map(sg, t);
        sys.a.block(r, lay.offset.at(to), s.dim(to), s.dim(to)) = identity(s.dim(to));
        sys.a.block(r, lay.offset.at(from), s.dim(to), s.dim(from)) -= m;
        r += s.dim(to);
    }
    for (const auto& [f, v] : pins) {
        sys.a.block(r, lay.offset.at(f), v.size(), v.size()) = identity(v.size());
        sys.b.segment(r, v.size()) = v;
        r += v.size();
    }
    return sys;
}

std::optional<RationalVector> solve_system(const System& sys) {
    if (sys.a.rows() == 0) return RationalVector::Constant(sys.a.cols(), Rational(0));
    if (sys.a.cols() == 0) {
        if (!is_zero(sys.b)) return std::nullopt;
        return RationalVector(0);
    }
    return solve(sys.a, sys.b);
}

std::vector<RationalVector> kernel(const RationalMatrix& a) {
    if (a.rows() == 0) {
        std::vector<RationalVector> out;
        for (Eigen::Index i = 0; i < a.cols(); ++i) {
            RationalVector e = RationalVector::Constant(a.cols(), Rational(0));
            e(i) = Rational(1);
            out.push_back(e);
        }
        return out;
    }
    if (a.cols() == 0) return {};
    return decompose(a).kernel_basis;
}

std::vector<Attachment> attachments_within(const SimplicialComplex& c, const std::vector<bool>& in) {
    std::vector<Attachment> out;
    for (FaceId t = 0; t < c.face_count(); ++t)
        if (in[t])
            for (auto sg : c.facets(t))
                if (in[sg]) out.emplace_back(sg, t);
    return out;
}

} // namespace

CellularSheaf::CellularSheaf(SimplicialComplex base, std::vector<Eigen::Index> stalk_dims,
                             std::map<Attachment, RationalMatrix> maps, Variance variance)
    : base_(std::move(base)), dims_(std::move(stalk_dims)), maps_(std::move(maps)), variance_(variance) {
    if (dims_.size() != base_.face_count()) throw SheafError("one stalk dimension per face is required");
    for (auto d : dims_)
        if (d < 0) throw SheafError("negative stalk dimension");
    for (const auto& [key, m] : maps_) {
        if (key.first >= base_.face_count() || key.second >= base_.face_count() ||
            !is_attachment(base_, key.first, key.second))
            throw SheafError("map given for a pair that is not a covering attachment");
    }
    for (FaceId t = 0; t < base_.face_count(); ++t)
        for (auto sg : base_.facets(t)) {
            if (maps_.count({sg, t})) continue;
            if (dims_[sg] != 0 && dims_[t] != 0)
                throw SheafError("no map for attachment " + attachment_name(base_, {sg, t}));
            maps_[{sg, t}] = variance_ == Variance::sheaf ? zeros(dims_[t], dims_[sg]) : zeros(dims_[sg], dims_[t]);
        }
}

bool operator==(const CellularSheaf& a, const CellularSheaf& b) {
    if (a.base_ != b.base_ || a.dims_ != b.dims_ || a.variance_ != b.variance_ || a.maps_.size() != b.maps_.size())
        return false;
    for (auto i = a.maps_.begin(), j = b.maps_.begin(); i != a.maps_.end(); ++i, ++j) {
        if (i->first != j->first || i->second.rows() != j->second.rows() || i->second.cols() != j->second.cols() ||
            i->second != j->second)
            return false;
    }
    return true;
}

CellularSheaf CellularSheaf::from_names(SimplicialComplex base, const std::map<std::string, Eigen::Index>& stalk_dims,
                                        const std::map<std::string, RationalMatrix>& maps, Variance variance) {
    std::vector<Eigen::Index> dims(base.face_count(), -1);
    for (const auto& [name, d] : stalk_dims) {
        FaceId f;
        try {
            f = base.id(name);
        } catch (const ComplexError&) {
            throw SheafError("stalk given for unknown face '" + name + "'");
        }
        dims[f] = d;
    }
    for (FaceId f = 0; f < base.face_count(); ++f)
        if (dims[f] < 0) throw SheafError("no stalk dimension for face '" + base.name(f) + "'");
    std::map<Attachment, RationalMatrix> keyed;
    for (const auto& [name, m] : maps) {
        auto arrow = name.find("->");
        if (arrow == std::string::npos) throw SheafError("map key '" + name + "' is not of the form a->ab");
        FaceId sg, t;
        try {
            sg = base.id(name.substr(0, arrow));
            t = base.id(name.substr(arrow + 2));
        } catch (const ComplexError& e) {
            throw SheafError("map key '" + name + "': " + e.what());
        }
        if (!is_attachment(base, sg, t)) throw SheafError("map key '" + name + "' is not a covering attachment");
        keyed[{sg, t}] = m;
    }
    return CellularSheaf(std::move(base), std::move(dims), std::move(keyed), variance);
}

const RationalMatrix& CellularSheaf::map(FaceId sigma, FaceId tau) const {
    auto it = maps_.find({sigma, tau});
    if (it == maps_.end()) throw SheafError("no covering attachment between these faces");
    return it->second;
}

RationalMatrix CellularSheaf::composite(FaceId sigma, FaceId tau) const {
    if (!base_.leq(sigma, tau))
        throw SheafError("'" + base_.name(sigma) + "' is not a face of '" + base_.name(tau) + "'");
    RationalMatrix m = identity(dims_[sigma]);
    Simplex cur = base_.face(sigma);
    FaceId at = sigma;
    for (auto v : base_.face(tau)) {
        if (std::binary_search(cur.begin(), cur.end(), v)) continue;
        cur.insert(std::lower_bound(cur.begin(), cur.end(), v), v);
        FaceId next = *base_.find(cur);
        m = variance_ == Variance::sheaf ? matmul(map(at, next), m) : matmul(m, map(at, next));
        at = next;
    }
    return m;
}

std::string attachment_name(const SimplicialComplex& c, Attachment a) {
    return c.name(a.first) + "->" + c.name(a.second);
}

CellularSheaf zero_sheaf(const SimplicialComplex& c, Variance v) {
    return CellularSheaf(c, std::vector<Eigen::Index>(c.face_count(), 0), {}, v);
}

CellularSheaf constant_sheaf(const SimplicialComplex& c, Eigen::Index n, Variance v) {
    std::map<Attachment, RationalMatrix> maps;
    for (FaceId t = 0; t < c.face_count(); ++t)
        for (auto sg : c.facets(t)) maps[{sg, t}] = identity(n);
    return CellularSheaf(c, std::vector<Eigen::Index>(c.face_count(), n), maps, v);
}

SheafReport validate_sheaf(const CellularSheaf& s) {
    const auto& c = s.base();
    for (const auto& [key, m] : s.maps()) {
        auto [sg, t] = key;
        Eigen::Index r = s.dim(t), k = s.dim(sg);
        if (s.variance() == Variance::cosheaf) std::swap(r, k);
        if (m.rows() != r || m.cols() != k)
            return {false, "map " + attachment_name(c, key) + " is " + shape(m.rows(), m.cols()) + ", expected " + shape(r, k),
                    {c.name(sg), c.name(t)}};
    }
    for (FaceId t = 0; t < c.face_count(); ++t) {
        std::set<FaceId> seen;
        for (auto mid : c.facets(t))
            for (auto rho : c.facets(mid)) {
                if (!seen.insert(rho).second) continue;
                std::vector<FaceId> through;
                for (auto m2 : c.facets(t))
                    if (c.leq(rho, m2)) through.push_back(m2);
                auto path = [&](FaceId m2) {
                    return s.variance() == Variance::sheaf ? matmul(s.map(m2, t), s.map(rho, m2))
                                                           : matmul(s.map(rho, m2), s.map(m2, t));
                };
                auto first = path(through[0]);
                for (std::size_t i = 1; i < through.size(); ++i)
                    if (path(through[i]) != first)
                        return {false,
                                "composites between " + c.name(rho) + " and " + c.name(t) + " through " +
                                    c.name(through[0]) + " and " + c.name(through[i]) + " differ",
                                {c.name(rho), c.name(through[0]), c.name(through[i]), c.name(t)}};
            }
    }
    return {};
}

Assignment make_assignment(const CellularSheaf& s, const std::map<std::string, RationalVector>& by_name) {
    Assignment a;
    for (const auto& [name, v] : by_name) {
        FaceId f;
        try {
            f = s.base().id(name);
        } catch (const ComplexError&) {
            throw SheafError("value given for unknown face '" + name + "'");
        }
        if (v.size() != s.dim(f))
            throw SheafError("value at '" + name + "' has length " + std::to_string(v.size()) + ", stalk has dimension " +
                             std::to_string(s.dim(f)));
        a.values[f] = v;
    }
    return a;
}

SectionReport section_violations(const CellularSheaf& s, const Assignment& a) {
    for (const auto& [f, v] : a.values) {
        if (f >= s.base().face_count()) throw SheafError("assignment names a face outside the complex");
        if (v.size() != s.dim(f))
            throw SheafError("value at '" + s.base().name(f) + "' has the wrong length");
    }
    SectionReport out;
    for (const auto& [key, m] : s.maps()) {
        auto from = a.values.find(key.first), to = a.values.find(key.second);
        if (from == a.values.end() || to == a.values.end()) continue;
        if (s.variance() == Variance::cosheaf) std::swap(from, to);
        if (matmul(m, from->second) != to->second) out.violations.push_back(key);
    }
    out.ok = out.violations.empty();
    return out;
}

SectionReport is_global_section(const CellularSheaf& s, const Assignment& a) {
    for (FaceId f = 0; f < s.base().face_count(); ++f)
        if (!a.values.count(f)) throw SheafError("assignment has no value at '" + s.base().name(f) + "'");
    return section_violations(s, a);
}

std::string to_string(ObstructionKind k) {
    return k == ObstructionKind::no_consistent_value ? "no-consistent-value" : "conflicting-values";
}

ExtendResult extend(const CellularSheaf& s, const Assignment& seed) {
    const auto& c = s.base();
    section_violations(s, seed);  // length checks

    std::vector<bool> in(c.face_count(), false);
    std::vector<FaceId> reached;
    std::vector<Attachment> atts;
    std::vector<std::pair<FaceId, RationalVector>> pins;

    auto add = [&](FaceId f) -> std::optional<Obstruction> {
        Layout before(s, reached);
        auto prior = build_system(s, before, atts, pins);

        std::vector<Attachment> fresh;
        for (auto sg : c.facets(f))
            if (in[sg]) fresh.emplace_back(sg, f);
        for (auto t : c.cofacets(f))
            if (in[t]) fresh.emplace_back(f, t);
        auto pin = seed.values.find(f);

        in[f] = true;
        reached.push_back(f);
        atts.insert(atts.end(), fresh.begin(), fresh.end());
        if (pin != seed.values.end()) pins.emplace_back(f, pin->second);
        Layout lay(s, reached);
        if (solve_system(build_system(s, lay, atts, pins))) return std::nullopt;

        // Classify against the system before f joined.
        std::vector<Attachment> base_atts(atts.begin(), atts.end() - static_cast<long>(fresh.size()));
        auto base_pins = pins;
        if (pin != seed.values.end()) base_pins.pop_back();
        Obstruction ob{f, ObstructionKind::conflicting_values, "", {}};
        std::vector<std::string> culprits;
        auto alone = [&](std::vector<Attachment> a2, std::vector<std::pair<FaceId, RationalVector>> p2) {
            return solve_system(build_system(s, lay, a2, p2)).has_value();
        };
        if (pin != seed.values.end() && !alone(base_atts, pins)) {
            ob.kind = ObstructionKind::no_consistent_value;
            culprits.push_back("the seed value");
        }
        for (const auto& a : fresh) {
            auto a2 = base_atts;
            a2.push_back(a);
            if (!alone(a2, base_pins)) {
                ob.kind = ObstructionKind::no_consistent_value;
                culprits.push_back(attachment_name(c, a));
            }
        }
        if (ob.kind == ObstructionKind::no_consistent_value) {
            ob.detail = "no value at " + c.name(f) + " satisfies ";
            for (std::size_t i = 0; i < culprits.size(); ++i) ob.detail += (i ? ", " : "") + culprits[i];
        } else {
            ob.detail = "constraints at " + c.name(f) + " are each satisfiable but not jointly:";
            for (const auto& a : fresh) ob.detail += " " + attachment_name(c, a);
        }

        // Values forced by the prior system: coordinates on which every kernel vector vanishes.
        auto x = solve_system(prior);
        auto ker = kernel(prior.a);
        for (const auto& [g, off] : before.offset) {
            bool fixed = true;
            for (const auto& k : ker)
                if (!is_zero(k.segment(off, s.dim(g)))) fixed = false;
            if (fixed) ob.determined.values[g] = x->segment(off, s.dim(g));
        }
        return ob;
    };

    std::vector<FaceId> layer;
    for (const auto& [f, v] : seed.values) layer.push_back(f);
    while (!layer.empty()) {
        for (auto f : layer)
            if (auto ob = add(f)) return {std::nullopt, std::move(ob)};
        std::set<FaceId> next;
        for (auto f : layer) {
            for (auto g : c.facets(f))
                if (!in[g]) next.insert(g);
            for (auto g : c.cofacets(f))
                if (!in[g]) next.insert(g);
        }
        layer.assign(next.begin(), next.end());
    }

    Layout lay(s, reached);
    auto x = solve_system(build_system(s, lay, atts, pins));
    Assignment out;
    for (FaceId f = 0; f < c.face_count(); ++f)
        out.values[f] = in[f] ? RationalVector(x->segment(lay.offset.at(f), s.dim(f)))
                              : RationalVector::Constant(s.dim(f), Rational(0));
    return {out, std::nullopt};
}

SectionSpace global_section_space(const CellularSheaf& s) {
    auto rep = validate_sheaf(s);
    if (!rep.ok) throw SheafError("invalid sheaf: " + rep.message);
    const auto& c = s.base();
    std::vector<FaceId> all(c.face_count());
    for (FaceId f = 0; f < c.face_count(); ++f) all[f] = f;
    Layout lay(s, all);
    auto sys = build_system(s, lay, attachments_within(c, std::vector<bool>(c.face_count(), true)), {});
    SectionSpace out;
    for (const auto& k : kernel(sys.a)) {
        Assignment a;
        for (FaceId f = 0; f < c.face_count(); ++f) a.values[f] = k.segment(lay.offset.at(f), s.dim(f));
        out.basis.push_back(std::move(a));
    }
    out.dimension = out.basis.size();
    return out;
}

CellularSheaf direct_sum(const CellularSheaf& f, const CellularSheaf& g) {
    if (!(f.base() == g.base())) throw SheafError("direct sum needs a common base complex");
    if (f.variance() != g.variance()) throw SheafError("direct sum needs matching variance");
    std::vector<Eigen::Index> dims;
    for (FaceId x = 0; x < f.base().face_count(); ++x) dims.push_back(f.dim(x) + g.dim(x));
    std::map<Attachment, RationalMatrix> maps;
    for (const auto& [key, m] : f.maps()) {
        const auto& n = g.map(key.first, key.second);
        maps[key] = block_assemble<Rational>({{m, std::nullopt}, {std::nullopt, n}}, {m.rows(), n.rows()},
                                             {m.cols(), n.cols()});
    }
    return CellularSheaf(f.base(), dims, maps, f.variance());
}

CellMap identity_cell_map(const SimplicialComplex& c) {
    CellMap m{c, c, std::vector<FaceId>(c.face_count())};
    for (FaceId f = 0; f < c.face_count(); ++f) m.image[f] = f;
    return m;
}

CellMap compose(const CellMap& g, const CellMap& f) {
    if (!(f.target == g.source)) throw SheafError("cell maps do not compose");
    CellMap out{f.source, g.target, {}};
    for (auto y : f.image) out.image.push_back(g.image.at(y));
    return out;
}

CellMap cell_map_from_vertices(const SimplicialComplex& source, const SimplicialComplex& target,
                               const std::map<Label, Label>& vertex_map) {
    CellMap out{source, target, {}};
    for (FaceId f = 0; f < source.face_count(); ++f) {
        std::set<Label> img;
        for (const auto& v : source.labels(f)) {
            auto it = vertex_map.find(v);
            if (it == vertex_map.end()) throw SheafError("vertex '" + v + "' has no image");
            img.insert(it->second);
        }
        auto hit = target.find_labels(std::vector<Label>(img.begin(), img.end()));
        if (!hit) throw SheafError("image of face '" + source.name(f) + "' is not a face of the target");
        out.image.push_back(*hit);
    }
    return out;
}

bool is_order_preserving(const CellMap& f) {
    if (f.image.size() != f.source.face_count()) return false;
    for (auto y : f.image)
        if (y >= f.target.face_count()) return false;
    for (FaceId a = 0; a < f.source.face_count(); ++a)
        for (auto b : f.source.cofacets(a))
            if (!f.target.leq(f.image[a], f.image[b])) return false;
    return true;
}

CellularSheaf pullback(const CellMap& f, const CellularSheaf& s) {
    if (!(f.target == s.base())) throw SheafError("cell map does not land in the sheaf's base");
    if (!is_order_preserving(f)) throw SheafError("cell map is not order preserving");
    std::vector<Eigen::Index> dims;
    for (auto y : f.image) dims.push_back(s.dim(y));
    std::map<Attachment, RationalMatrix> maps;
    for (FaceId t = 0; t < f.source.face_count(); ++t)
        for (auto sg : f.source.facets(t)) maps[{sg, t}] = s.composite(f.image[sg], f.image[t]);
    return CellularSheaf(f.source, dims, maps, s.variance());
}

MorphismReport check_morphism(const SheafMorphism& m) {
    const auto& F = m.source;
    const auto& G = m.target;
    const auto& X = G.base();
    const auto& f = m.cell_map;
    MorphismReport out;
    auto fail = [&](std::string msg, std::vector<std::string> sq = {}) {
        out.ok = false;
        out.sections_preserved = false;
        out.message = std::move(msg);
        out.square = std::move(sq);
        return out;
    };
    if (!(f.source == X) || !(f.target == F.base())) return fail("cell map does not run from the target base to the source base");
    if (F.variance() != G.variance()) return fail("source and target differ in variance");
    if (!is_order_preserving(f)) return fail("cell map is not order preserving");
    if (m.components.size() != X.face_count()) return fail("one component per face of the target base is required");
    for (FaceId x = 0; x < X.face_count(); ++x) {
        const auto& l = m.components[x];
        if (l.rows() != G.dim(x) || l.cols() != F.dim(f.image[x]))
            return fail("component at " + X.name(x) + " is " + shape(l.rows(), l.cols()) + ", expected " +
                            shape(G.dim(x), F.dim(f.image[x])),
                        {X.name(x)});
    }
    for (const auto& [key, gm] : G.maps()) {
        auto [sg, t] = key;
        auto fm = F.composite(f.image[sg], f.image[t]);
        bool ok = G.variance() == Variance::sheaf ? matmul(gm, m.components[sg]) == matmul(m.components[t], fm)
                                                  : matmul(gm, m.components[t]) == matmul(m.components[sg], fm);
        if (!ok) return fail("square at " + attachment_name(X, key) + " does not commute", {X.name(sg), X.name(t)});
    }
    for (const auto& sec : global_section_space(F).basis) {
        Assignment img;
        for (FaceId x = 0; x < X.face_count(); ++x) img.values[x] = matmul(m.components[x], sec.values.at(f.image[x]));
        if (!is_global_section(G, img).ok) {
            out.ok = false;
            out.sections_preserved = false;
            out.message = "a global section of the source is not sent to a global section";
            return out;
        }
    }
    return out;
}

} // namespace sheafkit
