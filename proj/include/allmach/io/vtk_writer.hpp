#pragma once

#include <string>

#include "allmach/fields.hpp"

namespace allmach {

// VTK legacy ASCII unstructured grid: each dual cell is written as its one or
// two barycentric sub-triangles, all carrying the cell values of rho, u, p and
// Mach. Output is byte-stable for identical inputs.
void write_vtk(const FieldSet& f, const PrimalMesh& primal, const DualMesh& dual,
               const FluidParams& par, const std::string& path);

// CSV with one row per dual cell: x,y,rho,u,v,p
void write_csv(const FieldSet& f, const PrimalMesh& primal, const DualMesh& dual,
               const std::string& path);

} // namespace allmach
