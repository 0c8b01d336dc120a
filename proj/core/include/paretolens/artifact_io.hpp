#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "paretolens/model.hpp"

namespace paretolens {

/// Compact UTF-8 JSON with a fixed key order and shortest round-trip
/// float formatting, so equal artifacts always produce equal bytes.
std::string serialize_artifact(const AnalysisArtifact& artifact);

/// Parses and fully validates an artifact document.
/// Throws MalformedJson, SchemaViolation, DimensionMismatch or NonFiniteValue.
AnalysisArtifact parse_artifact(std::string_view json);

/// The "density" object of the artifact schema on its own (used by the
/// lasso endpoint for patches).
std::string serialize_density(const DensityField& field);
DensityField parse_density(std::string_view json, std::size_t n_references);

}  // namespace paretolens
