/**
 * @file complex.hpp
 * Abstract simplicial complexes with a fixed vertex order, signed incidence,
 * boundary matrices and rational homology.
 *
 * Faces are sorted lists of vertex positions. Face ids follow one global
 * order: by dimension, then lexicographically by vertex positions. Matrices
 * and cochains are laid out in that order.
 */
#pragma once

#include "sheafkit/linalg.hpp"
#include "sheafkit/poset.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sheafkit {

class ComplexError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

typedef std::vector<std::size_t> Simplex;
typedef std::size_t FaceId;

class SimplicialComplex {
public:
    SimplicialComplex() = default;

    const std::vector<Label>& vertex_order() const { return vertices_; }
    std::size_t face_count() const { return faces_.size(); }
    const Simplex& face(FaceId f) const { return faces_.at(f); }
    int face_dim(FaceId f) const { return static_cast<int>(faces_.at(f).size()) - 1; }
    /// -1 for the empty complex.
    int dim() const { return static_cast<int>(by_dim_.size()) - 1; }
    const std::vector<FaceId>& faces_of_dim(int k) const;
    std::size_t count(int k) const { return faces_of_dim(k).size(); }
    /// Position of f among the faces of its dimension.
    std::size_t local_index(FaceId f) const { return local_.at(f); }

    /// Vertex labels concatenated ("cde") when all labels are single
    /// characters, otherwise joined with commas ("v0,v1").
    std::string name(FaceId f) const;
    FaceId id(const std::string& name) const;
    std::optional<FaceId> find(const Simplex& s) const;
    std::optional<FaceId> find_labels(const std::vector<Label>& labels) const;
    std::vector<Label> labels(FaceId f) const;

    bool leq(FaceId a, FaceId b) const;
    /// Faces of dimension one higher containing f.
    const std::vector<FaceId>& cofacets(FaceId f) const { return cofacets_.at(f); }
    /// Faces of dimension one lower contained in f.
    const std::vector<FaceId>& facets(FaceId f) const { return facets_.at(f); }

    friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;

private:
    friend SimplicialComplex build_complex(std::vector<Label>, std::vector<Simplex>);
    std::vector<Label> vertices_;
    std::vector<Simplex> faces_;
    std::map<Simplex, FaceId> index_;
    std::vector<std::vector<FaceId>> by_dim_;
    std::vector<std::size_t> local_;
    std::vector<std::vector<FaceId>> cofacets_, facets_;
    bool short_names_ = true;
};

enum class Closure { complete, strict };

/// `faces` are label lists; each is put in vertex order. In complete mode the
/// downward closure is added and every listed vertex becomes a 0-face. In
/// strict mode the listed faces must already be closed (including every
/// listed vertex as a singleton); the first missing face is reported.
SimplicialComplex validate_complex(std::vector<Label> vertex_order, const std::vector<std::vector<Label>>& faces,
                                   Closure mode = Closure::complete);

FinitePoset face_poset(const SimplicialComplex& c);
/// Every face containing f, in face order.
std::vector<FaceId> open_star(const SimplicialComplex& c, FaceId f);

/// [b:a]: 0 unless a is b with one vertex deleted, then (-1)^n for the deleted position n.
int incidence(const SimplicialComplex& c, FaceId b, FaceId a);

/// d_k : C_k -> C_{k-1}; a 0 x n_0 zero matrix for k = 0, n_dim x 0 above the top dimension.
RationalMatrix boundary_matrix(const SimplicialComplex& c, int k);

/// dim H_k for k = 0..dim.
std::vector<std::size_t> homology_dims(const SimplicialComplex& c);

struct Chain {
    int k = 0;
    std::map<FaceId, Rational> coeffs;
};

RationalVector to_vector(const SimplicialComplex& c, const Chain& ch);
Chain boundary(const SimplicialComplex& c, const Chain& ch);

} // namespace sheafkit
