/**
 * @file io.hpp
 * JSON forms of every input and output type.
 *
 * Numbers are always rational strings ("-3", "1/2", "7.5" on input; the
 * canonical "15/2" on output). Plain JSON integers are accepted on input.
 * Parse failures carry a JSON-path style location such as $.maps.a->ab[0][1].
 */
#pragma once

#include "sheafkit/bayes.hpp"
#include "sheafkit/cellsheaf.hpp"
#include "sheafkit/complex.hpp"
#include "sheafkit/finsheaf.hpp"
#include "sheafkit/galois.hpp"
#include "sheafkit/modal.hpp"
#include "sheafkit/morphology.hpp"
#include "sheafkit/poset.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>

namespace sheafkit {

using nlohmann::json;

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(where), message_(what) {}
    const std::string& where() const { return where_; }
    const std::string& message() const { return message_; }

private:
    std::string where_, message_;
};

/// Well-formed input that the library itself rejected (not a partial order,
/// a non-monotone map, a row that does not sum to 1, ...).
class ValidationError : public ParseError {
public:
    using ParseError::ParseError;
};

/// Inline JSON when the text starts with '{' or '[', otherwise a file path.
json load_json(const std::string& text_or_path);
json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);

Rational rational_from_json(const json& j, const std::string& where = "$");
json to_json(const Rational& r);
RationalMatrix matrix_from_json(const json& j, const std::string& where = "$");
json to_json(const RationalMatrix& m);
RationalVector vector_from_json(const json& j, const std::string& where = "$");
json vector_to_json(const RationalVector& v);

/// {"vertices": [...], "faces": [[...], ...]}; each face must list its
/// vertices in vertex order. Sub-faces are added.
SimplicialComplex complex_from_json(const json& j, const std::string& where = "$");
/// Vertices plus every face of dimension >= 1.
json complex_to_json(const SimplicialComplex& c);

/// {"complex": inline or path, "stalks": {...}, "maps": {"a->ab": matrix}, "variance": "sheaf"}.
/// A complex given as a path is resolved against `dir`.
CellularSheaf sheaf_from_json(const json& j, const std::filesystem::path& dir = {});
/// Maps touching a zero stalk are left out; they are implied on input.
json sheaf_to_json(const CellularSheaf& s);

/// {"e": ["1", "0", "-1"], ...}
Assignment assignment_from_json(const CellularSheaf& s, const json& j);
json assignment_to_json(const CellularSheaf& s, const Assignment& a);

/// {"elements": [...], "relation": [["a", "b"], ...]}
FinitePoset poset_from_json(const json& j, const std::string& where = "$");
/// Elements plus covering pairs.
json poset_to_json(const FinitePoset& p);

/// {"source": poset, "target": poset, "left": {...}, "right": {...}}
GaloisConnection connection_from_json(const json& j, const std::filesystem::path& dir = {});

/// {"vertices": [...], "edges": [{"id": "e", "src": "a", "dst": "b"}, ...]}
DirectedMultigraph graph_from_json(const json& j, const std::string& where = "$");
json graph_to_json(const DirectedMultigraph& g);
/// {"vertices": [...], "edges": [edge ids]}
Subgraph subgraph_from_json(const DirectedMultigraph& g, const json& j, const std::string& where = "$");
json subgraph_to_json(const DirectedMultigraph& g, const Subgraph& s);

/// {"topology": [["U", points...], ...], "opens": {"U": [elements]},
///  "restrictions": {"V<=U": {"s": "t"}}}; optional "points" fixes the point order.
FinitePresheaf presheaf_from_json(const json& j);
json presheaf_to_json(const FinitePresheaf& p);

/// [[dx, dy], ...] relative to the origin.
StructuringElement structuring_element_from_json(const json& j);
json to_json(const StructuringElement& b);
GrayscaleSignal signal_from_json(const json& j);
json to_json(const GrayscaleSignal& f);

/// {"variables": [{"name", "outcomes", "parents", "cpt"}]}; a root's cpt may be a flat row.
BayesModel bayes_from_json(const json& j);
json bayes_to_json(const BayesModel& m);

} // namespace sheafkit
