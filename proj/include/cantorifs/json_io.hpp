#pragma once

#include <json.hpp>

#include "cantorifs/intervals.hpp"
#include "cantorifs/maps.hpp"

namespace cantorifs {

using Json = nlohmann::ordered_json;

Json to_json_value(const MapSpec& m);
MapSpec map_from_json_value(const Json& j, Tolerance tol = {});

Json to_json_value(const Interval& i);
Interval interval_from_json_value(const Json& j);

Json to_json_value(const IntervalSet& s);

}  // namespace cantorifs
