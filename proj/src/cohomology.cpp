#include "sheafkit/cohomology.hpp"

namespace sheafkit {

CochainComplex cochain_complex(const CellularSheaf& s) {
    if (s.variance() != Variance::sheaf) throw SheafError("cohomology is defined here for sheaves, not cosheaves");
    auto rep = validate_sheaf(s);
    if (!rep.ok) throw SheafError("invalid sheaf: " + rep.message);
    const auto& c = s.base();
    CochainComplex out;
    for (int k = 0; k <= c.dim(); ++k) {
        std::vector<FaceId> fs = c.faces_of_dim(k);
        std::vector<Eigen::Index> offs;
        Eigen::Index total = 0;
        for (auto f : fs) {
            offs.push_back(total);
            total += s.dim(f);
        }
        out.dims.push_back(total);
        out.faces.push_back(std::move(fs));
        out.offsets.push_back(std::move(offs));
    }
    for (int k = 0; k < c.dim(); ++k) {
        const auto& cols = out.faces[static_cast<std::size_t>(k)];
        const auto& rows = out.faces[static_cast<std::size_t>(k + 1)];
        std::vector<std::vector<std::optional<RationalMatrix>>> grid(rows.size(),
                                                                     std::vector<std::optional<RationalMatrix>>(cols.size()));
        std::vector<Eigen::Index> rd, cd;
        for (auto b : rows) rd.push_back(s.dim(b));
        for (auto a : cols) cd.push_back(s.dim(a));
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (auto a : c.facets(rows[i]))
                grid[i][c.local_index(a)] = RationalMatrix(Rational(incidence(c, rows[i], a)) * s.map(a, rows[i]));
        out.deltas.push_back(block_assemble<Rational>(grid, rd, cd));
    }
    for (std::size_t k = 0; k + 1 < out.deltas.size(); ++k)
        if (!is_zero(matmul(out.deltas[k + 1], out.deltas[k])))
            throw SheafError("coboundary does not square to zero in degree " + std::to_string(k));
    return out;
}

std::vector<std::size_t> cohomology_dims(const CellularSheaf& s) {
    auto cc = cochain_complex(s);
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < cc.dims.size(); ++k) {
        auto kernel = static_cast<std::size_t>(cc.dims[k]);
        if (k < cc.deltas.size() && cc.deltas[k].rows() > 0 && cc.deltas[k].cols() > 0)
            kernel -= static_cast<std::size_t>(rank(cc.deltas[k]));
        std::size_t image = 0;
        if (k > 0 && cc.deltas[k - 1].rows() > 0 && cc.deltas[k - 1].cols() > 0)
            image = static_cast<std::size_t>(rank(cc.deltas[k - 1]));
        out.push_back(kernel - image);
    }
    return out;
}

} // namespace sheafkit
