#pragma once

#include <json.hpp>

#include "qrev/qcore.hpp"

namespace qrev {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Row-major nested arrays of [re, im] pairs.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json to_json(const DensityOperator& rho);
Json to_json(const CPMap& map);
Json to_json(const Instrument& instrument);

DensityOperator density_from_json(const Json& j);
CPMap map_from_json(const Json& j);
Channel channel_from_json(const Json& j);
Instrument instrument_from_json(const Json& j);

}  // namespace qrev
