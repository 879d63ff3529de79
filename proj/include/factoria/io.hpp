#pragma once

#include "factoria/cube.hpp"
#include "factoria/hmf.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>

namespace factoria {

using Json = nlohmann::ordered_json;

// Malformed or inconsistent input files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Orientation { row, column };

FieldSpec field_from_json(const Json& j);
Json field_to_json(const FieldSpec& f);
RingData ring_from_json(const Json& j);
Json ring_to_json(const RingData& r);
TypeData type_from_json(const Json& j, const RingData& r);
Json type_to_json(const TypeData& t, const RingData& r);

QPoly poly_from_json(const Json& j, const RingData& r);
Json poly_to_json(const QPoly& p, const RingData& r);
// Matrices are returned in row orientation.
PolyMatrix matrix_from_json(const Json& j, const RingData& r, Orientation fallback);
Json matrix_to_json(const PolyMatrix& m, const RingData& r, Orientation o = Orientation::row);
Json kmatrix_to_json(const KMatrix& m);

FactorCube cube_from_json(const Json& j, Orientation fallback = Orientation::row);
Json cube_to_json(const FactorCube& x, Orientation o = Orientation::row);
FactorCube load_cube(const std::filesystem::path& path, Orientation fallback = Orientation::row);

// Morphism file: {"components": {...}, "source"?: cube or path, "target"?: cube or path};
// omitted ends default to `base`.
CubeMorphism morphism_from_json(const Json& j, const FactorCube& base, const std::filesystem::path& dir);

Json module_to_json(const QuotientModule& m);
Json hmf_to_json(const HigherMF& z);

Json read_json_file(const std::filesystem::path& path);

}  // namespace factoria
