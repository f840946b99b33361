/**
 * @file cohomology.hpp
 * Cochain complexes and cohomology of cellular sheaves.
 *
 * C^k is the direct sum of the stalks over k-faces, blocks in face order.
 * The block of delta^k from a to b is [b:a] F(a -> b).
 */
#pragma once

#include "sheafkit/cellsheaf.hpp"

#include <vector>

namespace sheafkit {

struct CochainComplex {
    std::vector<Eigen::Index> dims;          ///< dim C^k for k = 0..dim
    std::vector<RationalMatrix> deltas;      ///< delta^k : C^k -> C^(k+1) for k = 0..dim-1
    std::vector<std::vector<FaceId>> faces;  ///< block order of C^k
    std::vector<std::vector<Eigen::Index>> offsets;
};

/// Throws SheafError for a cosheaf or a sheaf that fails validate_sheaf.
CochainComplex cochain_complex(const CellularSheaf& s);

/// dim H^k = dim ker delta^k - rank delta^(k-1), k = 0..dim.
std::vector<std::size_t> cohomology_dims(const CellularSheaf& s);

} // namespace sheafkit
