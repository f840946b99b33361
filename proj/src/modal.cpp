#include "sheafkit/modal.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace sheafkit {

DirectedMultigraph::DirectedMultigraph(std::vector<Label> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
        throw ModalError("duplicate vertex");
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < edges_.size(); ++i)
        if (edges_[i].id == edges_[i - 1].id) throw ModalError("duplicate edge id '" + edges_[i].id + "'");
    for (const auto& e : edges_) {
        auto s = std::lower_bound(vertices_.begin(), vertices_.end(), e.src);
        auto d = std::lower_bound(vertices_.begin(), vertices_.end(), e.dst);
        if (s == vertices_.end() || *s != e.src) throw ModalError("edge '" + e.id + "' has unknown source '" + e.src + "'");
        if (d == vertices_.end() || *d != e.dst) throw ModalError("edge '" + e.id + "' has unknown target '" + e.dst + "'");
        src_.push_back(static_cast<std::size_t>(s - vertices_.begin()));
        dst_.push_back(static_cast<std::size_t>(d - vertices_.begin()));
    }
}

std::size_t DirectedMultigraph::vertex_index(const Label& v) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) throw ModalError("unknown vertex '" + v + "'");
    return static_cast<std::size_t>(it - vertices_.begin());
}

std::size_t DirectedMultigraph::edge_index(const std::string& id) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), id, [](const Edge& e, const std::string& k) { return e.id < k; });
    if (it == edges_.end() || it->id != id) throw ModalError("unknown edge '" + id + "'");
    return static_cast<std::size_t>(it - edges_.begin());
}

Subgraph empty_subgraph(const DirectedMultigraph& g) {
    return {boost::dynamic_bitset<>(g.vertex_count()), boost::dynamic_bitset<>(g.edge_count())};
}

Subgraph whole(const DirectedMultigraph& g) {
    Subgraph s = empty_subgraph(g);
    s.vertices.set();
    s.edges.set();
    return s;
}

bool is_valid(const DirectedMultigraph& g, const Subgraph& s) {
    if (s.vertices.size() != g.vertex_count() || s.edges.size() != g.edge_count()) return false;
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (s.edges[e] && (!s.vertices[g.src(e)] || !s.vertices[g.dst(e)])) return false;
    return true;
}

Subgraph make_subgraph(const DirectedMultigraph& g, const LabelSet& vertices, const std::vector<std::string>& edge_ids) {
    Subgraph s = empty_subgraph(g);
    for (const auto& v : vertices) s.vertices.set(g.vertex_index(v));
    for (const auto& id : edge_ids) s.edges.set(g.edge_index(id));
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (s.edges[e] && (!s.vertices[g.src(e)] || !s.vertices[g.dst(e)]))
            throw ModalError("edge '" + g.edges()[e].id + "' is included without both endpoints");
    return s;
}

LabelSet vertex_labels(const DirectedMultigraph& g, const Subgraph& s) {
    LabelSet out;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (s.vertices[v]) out.push_back(g.vertices()[v]);
    return out;
}

std::vector<std::string> edge_ids(const DirectedMultigraph& g, const Subgraph& s) {
    std::vector<std::string> out;
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (s.edges[e]) out.push_back(g.edges()[e].id);
    return out;
}

namespace {

void require_valid(const DirectedMultigraph& g, const Subgraph& s) {
    if (!is_valid(g, s)) throw ModalError("not a subgraph of the given graph");
}

} // namespace

Subgraph meet_join(const DirectedMultigraph& g, const Subgraph& a, const Subgraph& b, LatticeOp which) {
    require_valid(g, a);
    require_valid(g, b);
    if (which == LatticeOp::meet) return {a.vertices & b.vertices, a.edges & b.edges};
    return {a.vertices | b.vertices, a.edges | b.edges};
}

Subgraph heyting_neg(const DirectedMultigraph& g, const Subgraph& y) {
    require_valid(g, y);
    Subgraph z{~y.vertices, boost::dynamic_bitset<>(g.edge_count())};
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (z.vertices[g.src(e)] && z.vertices[g.dst(e)]) z.edges.set(e);
    return z;
}

Subgraph coheyting_neg(const DirectedMultigraph& g, const Subgraph& y) {
    require_valid(g, y);
    Subgraph z{~y.vertices, ~y.edges};
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (z.edges[e]) {
            z.vertices.set(g.src(e));
            z.vertices.set(g.dst(e));
        }
    return z;
}

Subgraph boundary(const DirectedMultigraph& g, const Subgraph& y) {
    return meet_join(g, y, coheyting_neg(g, y), LatticeOp::meet);
}

ModalTrace modal_iterate(const DirectedMultigraph& g, const Subgraph& x, Modality which) {
    require_valid(g, x);
    ModalTrace t;
    t.trace.push_back(x);
    for (;;) {
        const Subgraph& cur = t.trace.back();
        Subgraph next = which == Modality::diamond ? coheyting_neg(g, heyting_neg(g, cur))
                                                   : heyting_neg(g, coheyting_neg(g, cur));
        if (next == cur) break;
        t.trace.push_back(std::move(next));
    }
    t.steps = t.trace.size() - 1;
    t.stabilized = t.trace.back();
    return t;
}

Subgraph reach_oracle(const DirectedMultigraph& g, const Subgraph& x, Reach which) {
    require_valid(g, x);
    Subgraph out = x;
    std::deque<std::size_t> queue;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (x.vertices[v]) queue.push_back(v);
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            std::size_t next;
            if (g.src(e) == v)
                next = g.dst(e);
            else if (which == Reach::weak_components && g.dst(e) == v)
                next = g.src(e);
            else
                continue;
            out.edges.set(e);
            if (!out.vertices[next]) {
                out.vertices.set(next);
                queue.push_back(next);
            }
        }
    }
    return out;
}

// Aspect predicates ------------------------------------------------------------

bool AspectPredicate::holds(const Label& aspect, const Label& x) const {
    auto it = std::lower_bound(carrier.begin(), carrier.end(), x);
    if (it == carrier.end() || *it != x) throw ModalError("unknown carrier element '" + x + "'");
    return truth[aspects.index(aspect)][static_cast<std::size_t>(it - carrier.begin())];
}

LabelSet AspectPredicate::true_at(const Label& aspect) const {
    LabelSet out;
    const auto& row = truth[aspects.index(aspect)];
    for (std::size_t i = 0; i < carrier.size(); ++i)
        if (row[i]) out.push_back(carrier[i]);
    return out;
}

AspectPredicate make_aspect_predicate(const FinitePoset& aspects, std::vector<Label> carrier,
                                      const std::map<Label, LabelSet>& truth) {
    std::sort(carrier.begin(), carrier.end());
    if (std::adjacent_find(carrier.begin(), carrier.end()) != carrier.end())
        throw ModalError("duplicate carrier element");
    AspectPredicate p{aspects, carrier, std::vector<std::vector<bool>>(aspects.size(), std::vector<bool>(carrier.size()))};
    for (const auto& [aspect, xs] : truth) {
        if (!aspects.contains(aspect)) throw ModalError("unknown aspect '" + aspect + "'");
        for (const auto& x : xs) {
            auto it = std::lower_bound(carrier.begin(), carrier.end(), x);
            if (it == carrier.end() || *it != x) throw ModalError("unknown carrier element '" + x + "'");
            p.truth[aspects.index(aspect)][static_cast<std::size_t>(it - carrier.begin())] = true;
        }
    }
    for (std::size_t a = 0; a < aspects.size(); ++a)
        for (std::size_t b = 0; b < aspects.size(); ++b)
            if (aspects.leq(b, a))
                for (std::size_t i = 0; i < carrier.size(); ++i)
                    if (p.truth[a][i] && !p.truth[b][i])
                        throw ModalError("'" + carrier[i] + "' holds under '" + aspects.label(a) +
                                         "' but not under its subaspect '" + aspects.label(b) + "'");
    return p;
}

AspectPredicate aspect_neg(const AspectPredicate& p, Negation which) {
    AspectPredicate out = p;
    const auto& P = p.aspects;
    for (std::size_t a = 0; a < P.size(); ++a)
        for (std::size_t i = 0; i < p.carrier.size(); ++i) {
            bool v;
            if (which == Negation::heyting) {
                v = true;  // fails at every A' <= A
                for (std::size_t b = 0; b < P.size() && v; ++b)
                    if (P.leq(b, a) && p.truth[b][i]) v = false;
            } else {
                v = false;  // fails at some A' >= A
                for (std::size_t b = 0; b < P.size() && !v; ++b)
                    if (P.leq(a, b) && !p.truth[b][i]) v = true;
            }
            out.truth[a][i] = v;
        }
    return out;
}

AspectPredicate aspect_modal(const AspectPredicate& p, Modality which) {
    if (which == Modality::diamond) return aspect_neg(aspect_neg(p, Negation::heyting), Negation::coheyting);
    return aspect_neg(aspect_neg(p, Negation::coheyting), Negation::heyting);
}

bool aspect_leq(const AspectPredicate& p, const AspectPredicate& q) {
    if (!(p.aspects == q.aspects) || p.carrier != q.carrier) throw ModalError("predicates over different aspects");
    for (std::size_t a = 0; a < p.truth.size(); ++a)
        for (std::size_t i = 0; i < p.carrier.size(); ++i)
            if (p.truth[a][i] && !q.truth[a][i]) return false;
    return true;
}

} // namespace sheafkit
