#pragma once

// JSON encoding of the exact-algebra objects. Rationals are strings "p/q"
// (integers may also be given as JSON numbers on input).

#include <carrier/decomposition.hpp>

#include <json.hpp>

namespace carrier::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json rational_to_json(const Rational& q);
Rational rational_from_json(const json& j);
json vector_to_json(const Vector& v);
Vector vector_from_json(const json& j);
json matrix_to_json(const Matrix& m);
/// `rows`/`cols` give the expected shape (an empty array is a rows x 0 or
/// 0 x cols matrix).
Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols);

json poset_to_json(const Poset& p);
Poset poset_from_json(const json& j);

json index_set_to_json(const Poset& p, IndexSet s);
IndexSet index_set_from_json(const Poset& p, const json& j);

json system_to_json(const InductiveSystem& x);
/// Enforces the input caps: at most 16 index elements, fibers of dim <= 8.
InductiveSystem system_from_json(const json& j);

json morphism_to_json(const SystemMorphism& l);
SystemMorphism morphism_from_json(const json& j);

json sum_vector_to_json(const Poset& p, const SumVector& s);
SumVector sum_vector_from_json(const Poset& p, const json& j);

json certificate_to_json(const DecompositionCertificate& c);

json family_to_json(const SetFamily& f);
SetFamily family_from_json(const json& j);

/// Reads and parses a JSON file; throws SchemaError on I/O or parse failure.
json read_file(const std::string& path);
/// Writes `j` with two-space indentation and a trailing newline.
void write_file(const std::string& path, const json& j);

}  // namespace carrier::io
