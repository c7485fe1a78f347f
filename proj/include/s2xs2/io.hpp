#pragma once

// Serialization: grids to and from JSON, field tables to CSV, factor
// meshes to OBJ. The JSON schema is documented in the README; stored
// surface data are the pointwise fields, derivative entries are always
// recomputed by the reader pipelines.

#include <map>
#include <string>
#include <vector>

#include "s2xs2/extraction.hpp"
#include "s2xs2/residuals.hpp"
#include "s2xs2/surfaces.hpp"

namespace s2xs2 {

std::string grid_to_json(const SurfaceGrid& g, bool with_data);
SurfaceGrid grid_from_json(const std::string& text);

void write_grid_json(const std::string& path, const SurfaceGrid& g,
                     bool with_data);
SurfaceGrid read_grid_json(const std::string& path);

// node table: coordinates, position, extracted fields, derived
// quantities and residual magnitudes, one row per node
void write_fields_csv(const std::string& path, const SurfaceGrid& g,
                      const ExtractedData& e, const ResidualFields& r,
                      const std::map<std::string, std::vector<double>>& drv);

// one mesh per factor; quads split into triangles, periodic seams closed
void write_factor_objs(const std::string& path1, const std::string& path2,
                       const SurfaceGrid& g);

}  // namespace s2xs2
