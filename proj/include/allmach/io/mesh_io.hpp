#pragma once

#include <string>

#include "allmach/mesh.hpp"

namespace allmach {

// ASCII mesh format:
//   line 1: nver nel nbedges
//   nver lines: x y
//   nel lines:  v1 v2 v3        (1-based)
//   nbedges lines: v1 v2 tag    (1-based)
PrimalMesh read_primal_mesh(const std::string& path);
void write_primal_mesh(const PrimalMesh& mesh, const std::string& path);

} // namespace allmach
