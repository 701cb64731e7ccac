#pragma once

#include <string>

#include <json.hpp>

#include "ffr/estimator.hpp"
#include "ffr/grid.hpp"
#include "ffr/incidence.hpp"
#include "ffr/paraboloid.hpp"
#include "ffr/regular.hpp"
#include "ffr/structure.hpp"

namespace ffr {

using json = nlohmann::ordered_json;

json grid_to_json(const GridFn& f);
GridFn grid_from_json(const json& j);

json surface_to_json(const SurfaceFn& g);
SurfaceFn surface_from_json(const json& j);

json config_to_json(const PointLineConfig& cfg);
PointLineConfig config_from_json(const json& j);

json piece_to_json(const RegularPiece& piece);
RegularPiece piece_from_json(const json& j);

json witness_to_json(const Field& f, const GridWitness& w);
json subfield_witness_to_json(const SubfieldWitness& w);
json pipeline_to_json(const Field& f, const PipelineReport& rep);
json ratio_report_to_json(const RatioReport& rep);
json validator_to_json(const ValidatorReport& rep);

// Reads a JSON file, or a flat "key=value" file promoted into a JSON object
// (numbers parsed when they look numeric, fractions kept as strings).
json load_config_file(const std::string& path);

}  // namespace ffr
