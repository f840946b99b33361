/**
 * @file cellsheaf.hpp
 * Cellular sheaves and cosheaves of rational vector spaces on a simplicial
 * complex.
 *
 * Maps are stored only for covering attachments sigma -> tau (tau one
 * dimension up). A sheaf map sends F(sigma) to F(tau); a cosheaf map sends
 * F(tau) to F(sigma). Longer composites are built on demand.
 */
#pragma once

#include "sheafkit/complex.hpp"
#include "sheafkit/linalg.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sheafkit {

class SheafError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Variance { sheaf, cosheaf };

/// (sigma, tau) with sigma a facet of tau.
typedef std::pair<FaceId, FaceId> Attachment;

class CellularSheaf {
public:
    CellularSheaf() = default;
    /// Throws SheafError for a key that is not a covering attachment, or a
    /// missing map between two nonzero stalks (missing maps touching a zero
    /// stalk default to the empty matrix). Shapes are checked by validate_sheaf.
    CellularSheaf(SimplicialComplex base, std::vector<Eigen::Index> stalk_dims, std::map<Attachment, RationalMatrix> maps,
                  Variance variance = Variance::sheaf);
    /// Name-keyed form: stalks by face name, maps keyed "a->ab".
    static CellularSheaf from_names(SimplicialComplex base, const std::map<std::string, Eigen::Index>& stalk_dims,
                                    const std::map<std::string, RationalMatrix>& maps,
                                    Variance variance = Variance::sheaf);

    const SimplicialComplex& base() const { return base_; }
    Variance variance() const { return variance_; }
    Eigen::Index dim(FaceId f) const { return dims_.at(f); }
    const std::vector<Eigen::Index>& stalk_dims() const { return dims_; }
    const RationalMatrix& map(FaceId sigma, FaceId tau) const;
    const std::map<Attachment, RationalMatrix>& maps() const { return maps_; }
    /// Map between any sigma <= tau along one chain of facets; identity when equal.
    RationalMatrix composite(FaceId sigma, FaceId tau) const;

    /// Shape-aware: sheaves whose maps differ in shape compare unequal.
    friend bool operator==(const CellularSheaf& a, const CellularSheaf& b);

private:
    SimplicialComplex base_;
    std::vector<Eigen::Index> dims_;
    std::map<Attachment, RationalMatrix> maps_;
    Variance variance_ = Variance::sheaf;
};

/// Display name of an attachment, as in "a->ab".
std::string attachment_name(const SimplicialComplex& c, Attachment a);

/// Zero-dimensional stalks everywhere.
CellularSheaf zero_sheaf(const SimplicialComplex& c, Variance v = Variance::sheaf);
/// Stalk Q^n everywhere with identity maps.
CellularSheaf constant_sheaf(const SimplicialComplex& c, Eigen::Index n = 1, Variance v = Variance::sheaf);

struct SheafReport {
    bool ok = true;
    std::string message;
    /// Shape failures name the attachment; path failures name (rho, sigma1, sigma2, tau).
    std::vector<std::string> faces;
};

SheafReport validate_sheaf(const CellularSheaf& s);

/// Face values; a partial assignment simply omits faces.
struct Assignment {
    std::map<FaceId, RationalVector> values;
    friend bool operator==(const Assignment&, const Assignment&) = default;
};

Assignment make_assignment(const CellularSheaf& s, const std::map<std::string, RationalVector>& by_name);

struct SectionReport {
    bool ok = true;
    std::vector<Attachment> violations;
};

/// Checks every attachment with both ends assigned. Throws SheafError on a
/// vector of the wrong length.
SectionReport section_violations(const CellularSheaf& s, const Assignment& a);
/// As section_violations, but the assignment must be total.
SectionReport is_global_section(const CellularSheaf& s, const Assignment& a);

enum class ObstructionKind { no_consistent_value, conflicting_values };
std::string to_string(ObstructionKind k);

struct Obstruction {
    FaceId face;
    ObstructionKind kind;
    std::string detail;
    /// Values already forced before the blocking face was reached.
    Assignment determined;
};

struct ExtendResult {
    std::optional<Assignment> result;
    std::optional<Obstruction> obstruction;
    bool ok() const { return result.has_value(); }
};

/// Breadth-first propagation from the seed support over the face poset; each
/// newly reached face joins an exact linear system. The first face that makes
/// the system infeasible is the obstruction: "no consistent value" when one of
/// its attachments alone contradicts what is already forced, "conflicting
/// values" when only several together do. On success free coordinates are 0.
ExtendResult extend(const CellularSheaf& s, const Assignment& seed);

struct SectionSpace {
    std::size_t dimension = 0;
    std::vector<Assignment> basis;
};

/// Kernel of the full attachment constraint system over all faces.
SectionSpace global_section_space(const CellularSheaf& s);

CellularSheaf direct_sum(const CellularSheaf& f, const CellularSheaf& g);

/// Face map between complexes; image[f] is the face of `target` hit by face f of `source`.
struct CellMap {
    SimplicialComplex source;
    SimplicialComplex target;
    std::vector<FaceId> image;
};

CellMap identity_cell_map(const SimplicialComplex& c);
/// g after f.
CellMap compose(const CellMap& g, const CellMap& f);
/// Vertex map extended to faces; throws SheafError if a face lands outside the target.
CellMap cell_map_from_vertices(const SimplicialComplex& source, const SimplicialComplex& target,
                               const std::map<Label, Label>& vertex_map);
bool is_order_preserving(const CellMap& f);

/// (f*F)(sigma) = F(f(sigma)); throws SheafError if f is not order preserving.
CellularSheaf pullback(const CellMap& f, const CellularSheaf& s);

/// components[sigma]: F(f(sigma)) -> G(sigma) for each face sigma of the base of G.
struct SheafMorphism {
    CellularSheaf source;
    CellularSheaf target;
    CellMap cell_map;
    std::vector<RationalMatrix> components;
};

struct MorphismReport {
    bool ok = true;
    std::string message;
    std::vector<std::string> square;
    /// Every basis global section of the source lands on a global section of the target.
    bool sections_preserved = true;
};

MorphismReport check_morphism(const SheafMorphism& m);

} // namespace sheafkit
