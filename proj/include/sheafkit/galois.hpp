/**
 * @file galois.hpp
 * Monotone Galois connections between finite posets, the closure and kernel
 * operators they induce, adjoint synthesis and the diagonal construction.
 *
 * Maps are stored as index vectors: f[i] is the index of the image of
 * element i in the target poset's (lexicographic) element order.
 */
#pragma once

#include "sheafkit/poset.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sheafkit {

typedef std::vector<std::size_t> IndexMap;

class GaloisError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

IndexMap index_map(const FinitePoset& source, const FinitePoset& target, const Mapping& f);
Mapping label_map(const FinitePoset& source, const FinitePoset& target, const IndexMap& f);
IndexMap identity_map(const FinitePoset& p);
bool is_monotone(const FinitePoset& source, const FinitePoset& target, const IndexMap& f);

/// F: source -> target is left adjoint to G: target -> source.
class GaloisConnection {
public:
    /// Throws GaloisError when either map is not total or not monotone.
    GaloisConnection(FinitePoset source, FinitePoset target, IndexMap left, IndexMap right);
    GaloisConnection(FinitePoset source, FinitePoset target, const Mapping& left, const Mapping& right);

    const FinitePoset& source() const { return source_; }
    const FinitePoset& target() const { return target_; }
    const IndexMap& left() const { return left_; }
    const IndexMap& right() const { return right_; }

private:
    FinitePoset source_, target_;
    IndexMap left_, right_;
};

struct ConnectionReport {
    enum class Failure { none, adjunction, unit, counit };
    Failure failure = Failure::none;
    std::size_t p = 0, q = 0;  // witness indices in source / target
    std::string message;
    bool ok() const { return failure == Failure::none; }
};

ConnectionReport check_connection(const GaloisConnection& c);

struct AdjointResult {
    std::optional<IndexMap> map;
    /// When no adjoint exists: a set whose join (meet, for left adjoints) is not preserved.
    std::vector<std::size_t> violated;
    std::string reason;
    bool exists() const { return map.has_value(); }
};

/// G(q) = join{p | F(p) <= q}. Requires `source` to be a lattice.
AdjointResult right_adjoint_of(const IndexMap& f, const FinitePoset& source, const FinitePoset& target);
/// F(p) = meet{q | p <= G(q)} for G: source -> target. Requires `source` to be a lattice.
AdjointResult left_adjoint_of(const IndexMap& g, const FinitePoset& source, const FinitePoset& target);

/// First subset S (by size, up to max_size elements) with F(join S) != join F(S).
std::optional<std::vector<std::size_t>> join_violation(const IndexMap& f, const FinitePoset& source,
                                                       const FinitePoset& target, std::size_t max_size);
std::optional<std::vector<std::size_t>> meet_violation(const IndexMap& f, const FinitePoset& source,
                                                       const FinitePoset& target, std::size_t max_size);

struct LatticeEndomap {
    FinitePoset carrier;
    IndexMap map;
    bool monotone = false;

    bool extensive() const;
    bool contractive() const;
    bool idempotent() const;
    std::vector<std::size_t> fixed_points() const;
};

struct InducedOperators {
    LatticeEndomap closure;  // G after F, on the source
    LatticeEndomap kernel;   // F after G, on the target
};

/// Throws GaloisError if the connection does not check out.
InducedOperators induced_operators(const GaloisConnection& c);

/// (F2 F1, G1 G2) for c1: P -> Q and c2: Q -> R.
GaloisConnection compose(const GaloisConnection& c1, const GaloisConnection& c2);

/// Swap the roles: (G, F) becomes a connection between the opposite posets.
GaloisConnection opposite(const GaloisConnection& c);

/// g(x) = alpha(f(x, x)) where f[x][y] indexes Y. Throws GaloisError if alpha
/// has a fixed point; the result differs from every row f(., y).
IndexMap cantor_diagonal(const std::vector<IndexMap>& f, const IndexMap& alpha);

} // namespace sheafkit
