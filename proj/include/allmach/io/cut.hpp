#pragma once

#include <string>
#include <vector>

#include "allmach/fields.hpp"

namespace allmach {

struct CutSample {
    double s = 0.0;  // abscissa along the cut
    Primitive q;
};

// 1D cut through the cell data: dual cells whose node lies within half a local
// cell height of the line y = c (axis = 1) or x = c (axis = 0), sorted by the
// coordinate along the line.
std::vector<CutSample> extract_cut(const FieldSet& f, const PrimalMesh& primal,
                                   const DualMesh& dual, int axis, double c);

void write_cut_csv(const std::vector<CutSample>& cut, const std::string& path);

} // namespace allmach
