// The six-vertex running example: a..f with one filled triangle cde, and the
// sheaf on it with 21 restriction maps.
#pragma once

#include "sheafkit/cellsheaf.hpp"
#include "sheafkit/complex.hpp"

namespace fixtures {

inline sheafkit::SimplicialComplex running_complex() {
    return sheafkit::validate_complex({"a", "b", "c", "d", "e", "f"},
                                      {{"a", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "d"},
                                       {"c", "d", "e"}, {"e", "f"}});
}

inline sheafkit::CellularSheaf running_sheaf() {
    using sheafkit::from_rows;
    using sheafkit::Rational;
    const Rational half(1, 2), fifteen_halves(15, 2);
    return sheafkit::CellularSheaf::from_names(
        running_complex(),
        {{"a", 2}, {"b", 3}, {"c", 2}, {"d", 1}, {"e", 3}, {"f", 3},
         {"ab", 2}, {"ac", 2}, {"ad", 1}, {"bc", 1}, {"bd", 1}, {"cd", 2}, {"ce", 2}, {"de", 2}, {"ef", 2},
         {"cde", 1}},
        {{"a->ab", from_rows({{1, 0}, {-1, 2}})},
         {"b->ab", from_rows({{1, 0, 1}, {0, -1, -1}})},
         {"a->ad", from_rows({{0, -2}})},
         {"d->ad", from_rows({{1}})},
         {"b->bd", from_rows({{2, 0, 2}})},
         {"d->bd", from_rows({{-3}})},
         {"b->bc", from_rows({{1, 2, 1}})},
         {"c->bc", from_rows({{1, 1}})},
         {"c->cd", from_rows({{-1, -1}, {3, 1}})},
         {"d->cd", from_rows({{half}, {1}})},
         {"a->ac", from_rows({{1, 0}, {0, 1}})},
         {"c->ac", from_rows({{3, 3}, {1, 1}})},
         {"d->de", from_rows({{3}, {1}})},
         {"e->de", from_rows({{2, 0, 1}, {0, 3, -1}})},
         {"c->ce", from_rows({{1, -1}, {-1, 2}})},
         {"e->ce", from_rows({{2, -3, 2}, {1, 0, fifteen_halves}})},
         {"de->cde", from_rows({{1, -1}})},
         {"cd->cde", from_rows({{2, 1}})},
         {"ce->cde", from_rows({{1, 0}})},
         {"e->ef", from_rows({{2, 0, 2}, {1, -1, 1}})},
         {"f->ef", from_rows({{0, 1, 1}, {1, -1, 0}})}});
}

} // namespace fixtures
