#pragma once
// JSON encoding for the CLI. Complex numbers are [re, im] arrays; matrices
// are row-major nested arrays of those. Doubles are written with enough
// digits to round-trip exactly.

#include <string>
#include <vector>

#include "json.hpp"

#include "freeball/cp_perron.hpp"
#include "freeball/fixed_point.hpp"
#include "freeball/structure.hpp"
#include "freeball/varieties.hpp"

namespace freeball::cli {

using Json = nlohmann::ordered_json;

Json complex_to_json(Complex c);
Json matrix_to_json(const ComplexMatrix& m);
Json vector_to_json(const ComplexVector& v);

/// {"d": d, "n": n, "coords": [...]}, the TupleDocument layout.
Json tuple_to_json(const MatrixTuple& x);
/// {"d": d, "rows": n, "cols": m, "coords": [...]}.
Json tangent_to_json(const TangentTuple& z);

// Decoders throw Parse errors naming the offending JSON path, e.g.
// "$.coords[0][1][0]: expected a [re, im] pair".
Complex complex_from_json(const Json& j, const std::string& path);
ComplexMatrix matrix_from_json(const Json& j, const std::string& path);
MatrixTuple tuple_from_json(const Json& j);
/// Accepts either layout above; a square TupleDocument is a valid direction.
TangentTuple tangent_from_json(const Json& j);
/// {"d": d, "relations": ["poly", ...], "name": optional}.
VarietySpec variety_from_json(const Json& j);
Json variety_to_json(const VarietySpec& v);

/// Parses text as JSON; syntax errors become Parse errors with line:column.
Json parse_json_text(const std::string& text, const std::string& source);
/// Reads and parses a file; "-" means standard input. Io error when unreadable.
Json read_json_file(const std::string& path);

Json subspace_to_json(const MatSpanSubspace& v);
Json perron_to_json(const PerronData& p);
Json normalization_to_json(const CoisometryNormalization& c);
Json jh_to_json(const JHDecomposition& jh, double subdiagonal);
Json search_to_json(const FixedPointSearch& s);
Json report_to_json(const FixedSubspaceReport& r);
Json compression_to_json(const NormalCompression& c);
Json variety_report_to_json(const VarietyReport& r);

/// Plain "key: value" rendering of a document for --format text.
std::string render_text(const Json& doc);

}  // namespace freeball::cli
