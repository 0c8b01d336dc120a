#pragma once

// Internal: nlohmann-based encoders shared by the artifact codec and the
// HTTP server. Not installed.

#include <cstddef>
#include <string>

#include <json.hpp>

#include "paretolens/model.hpp"

namespace paretolens::codec {

using OrderedJson = nlohmann::ordered_json;

OrderedJson density_to_json(const DensityField& field);
DensityField density_from_json(const nlohmann::json& j, const std::string& path,
                               std::size_t n_references);

nlohmann::json parse_json_text(std::string_view text);

}  // namespace paretolens::codec
