#include "qrev/serialize.hpp"

namespace qrev {

namespace {

void expect_type(const Json& j, const char* type) {
  if (!j.is_object() || !j.contains("type") || j.at("type") != type) {
    throw DimensionError(std::string("expected JSON object of type '") + type + "'");
  }
  if (j.value("schema_version", 0) != kSchemaVersion) {
    throw DimensionError("unsupported schema_version");
  }
}

Json systems_to_json(const Systems& systems) {
  Json arr = Json::array();
  for (const auto& s : systems) arr.push_back({{"label", s.label}, {"dim", s.dim}});
  return arr;
}

Systems systems_from_json(const Json& j) {
  Systems systems;
  for (const auto& s : j) {
    systems.push_back({s.at("label").get<std::string>(), s.at("dim").get<int>()});
  }
  return systems;
}

std::vector<Matrix> kraus_from_json(const Json& j) {
  std::vector<Matrix> kraus;
  for (const auto& k : j) kraus.push_back(matrix_from_json(k));
  return kraus;
}

Json kraus_to_json(const std::vector<Matrix>& kraus) {
  Json arr = Json::array();
  for (const auto& k : kraus) arr.push_back(matrix_to_json(k));
  return arr;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw DimensionError("matrix must be a non-empty array");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.at(0).size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j.at(r);
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw DimensionError("ragged matrix rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& z = row.at(c);
      if (!z.is_array() || z.size() != 2) {
        throw DimensionError("matrix entries must be [re, im] pairs");
      }
      m(r, c) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
    }
  }
  return m;
}

Json to_json(const DensityOperator& rho) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["type"] = "density_operator";
  j["systems"] = systems_to_json(rho.systems());
  j["matrix"] = matrix_to_json(rho.matrix());
  return j;
}

Json to_json(const CPMap& map) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["type"] = "channel";
  j["in_dim"] = map.in_dim();
  j["out_dim"] = map.out_dim();
  j["kraus"] = kraus_to_json(map.kraus());
  return j;
}

Json to_json(const Instrument& instrument) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["type"] = "instrument";
  j["in_dim"] = instrument.in_dim();
  j["out_dim"] = instrument.out_dim();
  Json outs = Json::array();
  for (const auto& o : instrument.outcomes()) {
    outs.push_back({{"label", o.label}, {"kraus", kraus_to_json(o.kraus)}});
  }
  j["outcomes"] = std::move(outs);
  return j;
}

DensityOperator density_from_json(const Json& j) {
  expect_type(j, "density_operator");
  return DensityOperator(systems_from_json(j.at("systems")),
                         matrix_from_json(j.at("matrix")));
}

CPMap map_from_json(const Json& j) {
  expect_type(j, "channel");
  return CPMap(j.at("in_dim").get<int>(), j.at("out_dim").get<int>(),
               kraus_from_json(j.at("kraus")));
}

Channel channel_from_json(const Json& j) { return Channel(map_from_json(j)); }

Instrument instrument_from_json(const Json& j) {
  expect_type(j, "instrument");
  std::vector<Outcome> outcomes;
  for (const auto& o : j.at("outcomes")) {
    outcomes.push_back({o.at("label").get<std::string>(), kraus_from_json(o.at("kraus"))});
  }
  return Instrument(j.at("in_dim").get<int>(), j.at("out_dim").get<int>(),
                    std::move(outcomes));
}

}  // namespace qrev
