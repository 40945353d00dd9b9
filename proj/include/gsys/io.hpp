#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "gsys/cochain.hpp"
#include "gsys/solver.hpp"

namespace gsys::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// Reads and parses a JSON file; FormatError names the file and the parse position.
Json load_json_file(const std::filesystem::path& path);

/// {"re": "p/q", "im": "p/q"}
Json scalar_to_json(const GaussianRational& z);
/// Accepts "p/q" strings, integers or {"re", "im"} objects. Floats are rejected.
GaussianRational scalar_from_json(const Json& j, const std::string& where);

Json poly_to_json(const PolyFunction& f);
PolyFunction poly_from_json(const Json& j, int dimension, const std::string& where);

/// {"A": [[...]], "b": [...]}; the inverse is recomputed.
Json affine_to_json(const AffineDiffeo& phi);
AffineDiffeo affine_from_json(const Json& j, int dimension, const std::string& where);

Json symbol_to_json(const FormalSymbol& p);
/// Grading is validated; violations raise FormatError.
FormalSymbol symbol_from_json(const Json& j, int dimension, const std::string& where);

Json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const Json& j, const std::string& where);

/// Flat map {label: affine map}; also accepts {"format_version", "maps": {...}}.
Json action_to_json(const AffineAction& a);
AffineAction action_from_json(const Json& j, const FiniteGroup& g, int dimension, const std::string& where);

/// Tuple key "g1,g2"; degree 0 uses "".
std::string tuple_key(const FiniteGroup& g, std::span<const std::size_t> tuple);
Json tuple_to_json(const FiniteGroup& g, std::span<const std::size_t> tuple);

Json cochain_to_json(const Cochain& c);
/// Every tuple must be present. Degree >= 1 files must be normalized.
Cochain cochain_from_json(const Json& j, const ComplexPtr& complex, int order, const std::string& where);

/// {label: poly} with one entry per group element.
std::vector<PolyFunction> table_from_json(const Json& j, const FiniteGroup& g, int dimension, const std::string& where);

Json witnesses_to_json(const FiniteGroup& g, const std::vector<Witness>& w);
Json cohomology_to_json(const CohomologyReport& r);
Json record_to_json(const OrderRecord& r);
Json certificate_to_json(const ObstructionCertificate& c);

}  // namespace gsys::io
