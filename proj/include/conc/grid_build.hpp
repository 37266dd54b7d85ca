#pragma once

#include "conc/kernels.hpp"
#include "conc/space.hpp"

namespace conc::gridbuild {

std::vector<int> radices(const ProductSpace& space, const CoordSet& coords);

// Row-major strides for a radix list: last position has stride 1.
std::vector<std::uint64_t> rowmajor_strides(const std::vector<int>& radix);

// Full-space row-major stride per coordinate, indexed 1..n (entry 0 unused).
std::vector<std::uint64_t> full_strides(const ProductSpace& space);

std::vector<std::uint64_t> strides_at(const std::vector<std::uint64_t>& per_coord,
                                      const CoordSet& coords);

// Grid over `coords`: probability weights unless weighted = false; strides
// default to the grid's own row-major layout.
kernels::WeightedGrid coord_grid(const ProductSpace& space, const CoordSet& coords, bool weighted,
                                 std::vector<std::uint64_t> stride = {});

}  // namespace conc::gridbuild
