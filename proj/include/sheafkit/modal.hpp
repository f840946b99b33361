/**
 * @file modal.hpp
 * Bi-Heyting operations on the subgraph lattice of a directed multigraph and
 * on aspect predicates over a finite poset.
 *
 * Aspect convention: A' <= A in the aspect poset means A' is a subaspect of
 * A (an arrow A' -> A). Truth is downward closed: holding under A implies
 * holding under every A' <= A.
 */
#pragma once

#include "sheafkit/poset.hpp"

#include <boost/dynamic_bitset.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace sheafkit {

class ModalError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Edge {
    std::string id, src, dst;
    friend bool operator==(const Edge&, const Edge&) = default;
};

class DirectedMultigraph {
public:
    DirectedMultigraph() = default;
    /// Vertices are sorted, edges sorted by id. Loops and parallel edges are fine.
    DirectedMultigraph(std::vector<Label> vertices, std::vector<Edge> edges);

    const std::vector<Label>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t vertex_index(const Label& v) const;
    std::size_t edge_index(const std::string& id) const;
    std::size_t src(std::size_t e) const { return src_[e]; }
    std::size_t dst(std::size_t e) const { return dst_[e]; }

private:
    std::vector<Label> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> src_, dst_;
};

struct Subgraph {
    boost::dynamic_bitset<> vertices, edges;

    friend bool operator==(const Subgraph&, const Subgraph&) = default;
    bool leq(const Subgraph& o) const { return vertices.is_subset_of(o.vertices) && edges.is_subset_of(o.edges); }
    bool empty() const { return vertices.none() && edges.none(); }
};

Subgraph make_subgraph(const DirectedMultigraph& g, const LabelSet& vertices, const std::vector<std::string>& edge_ids);
Subgraph empty_subgraph(const DirectedMultigraph& g);
Subgraph whole(const DirectedMultigraph& g);
bool is_valid(const DirectedMultigraph& g, const Subgraph& s);
LabelSet vertex_labels(const DirectedMultigraph& g, const Subgraph& s);
std::vector<std::string> edge_ids(const DirectedMultigraph& g, const Subgraph& s);

enum class LatticeOp { meet, join };

Subgraph meet_join(const DirectedMultigraph& g, const Subgraph& a, const Subgraph& b, LatticeOp which);
/// Largest subgraph disjoint from y.
Subgraph heyting_neg(const DirectedMultigraph& g, const Subgraph& y);
/// Smallest subgraph whose union with y is the whole graph.
Subgraph coheyting_neg(const DirectedMultigraph& g, const Subgraph& y);
/// y meet ~y.
Subgraph boundary(const DirectedMultigraph& g, const Subgraph& y);

enum class Modality { diamond, box };

struct ModalTrace {
    std::vector<Subgraph> trace;  // stage 0 is x itself
    Subgraph stabilized;
    std::size_t steps = 0;        // first n with stage n = stage n+1
};

/// diamond: D(n+1) = ~(not D(n)); box: B(n+1) = not(~B(n)); iterated to a fixpoint.
ModalTrace modal_iterate(const DirectedMultigraph& g, const Subgraph& x, Modality which);

enum class Reach { forward, weak_components };

Subgraph reach_oracle(const DirectedMultigraph& g, const Subgraph& x, Reach which);

// Aspect predicates ------------------------------------------------------------

struct AspectPredicate {
    FinitePoset aspects;
    std::vector<Label> carrier;                  // sorted
    std::vector<std::vector<bool>> truth;        // truth[aspect][carrier element]

    bool holds(const Label& aspect, const Label& x) const;
    LabelSet true_at(const Label& aspect) const;
    friend bool operator==(const AspectPredicate&, const AspectPredicate&) = default;
};

/// Throws ModalError on unknown labels or if truth is not downward closed.
AspectPredicate make_aspect_predicate(const FinitePoset& aspects, std::vector<Label> carrier,
                                      const std::map<Label, LabelSet>& truth);

enum class Negation { heyting, coheyting };

AspectPredicate aspect_neg(const AspectPredicate& p, Negation which);
AspectPredicate aspect_modal(const AspectPredicate& p, Modality which);
/// Pointwise order: p holds implies q holds, at every aspect and element.
bool aspect_leq(const AspectPredicate& p, const AspectPredicate& q);

} // namespace sheafkit
