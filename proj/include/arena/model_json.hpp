#pragma once

#include "arena/global_ar.hpp"
#include "arena/prophet_lite.hpp"

#include <nlohmann/json.hpp>

namespace arena {

nlohmann::ordered_json to_json(const ProphetLiteParams& params);
nlohmann::ordered_json to_json(const GlobalARParams& params);
nlohmann::ordered_json to_json(const ForecasterSpec& spec);

}  // namespace arena
