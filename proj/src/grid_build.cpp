#include "conc/grid_build.hpp"

namespace conc::gridbuild {

std::vector<int> radices(const ProductSpace& space, const CoordSet& coords) {
  std::vector<int> r;
  r.reserve(static_cast<size_t>(coords.size()));
  for (int c : coords) r.push_back(space.factor(c).atom_count());
  return r;
}

std::vector<std::uint64_t> rowmajor_strides(const std::vector<int>& radix) {
  std::vector<std::uint64_t> s(radix.size(), 1);
  for (size_t t = radix.size(); t-- > 1;)
    s[t - 1] = s[t] * static_cast<std::uint64_t>(radix[t]);
  return s;
}

std::vector<std::uint64_t> full_strides(const ProductSpace& space) {
  const int n = space.coord_count();
  std::vector<std::uint64_t> s(static_cast<size_t>(n) + 1, 1);
  for (int c = n - 1; c >= 1; --c)
    s[static_cast<size_t>(c)] =
        s[static_cast<size_t>(c) + 1] * static_cast<std::uint64_t>(space.factor(c + 1).atom_count());
  return s;
}

std::vector<std::uint64_t> strides_at(const std::vector<std::uint64_t>& per_coord,
                                      const CoordSet& coords) {
  std::vector<std::uint64_t> s;
  s.reserve(static_cast<size_t>(coords.size()));
  for (int c : coords) s.push_back(per_coord[static_cast<size_t>(c)]);
  return s;
}

kernels::WeightedGrid coord_grid(const ProductSpace& space, const CoordSet& coords, bool weighted,
                                 std::vector<std::uint64_t> stride) {
  kernels::WeightedGrid g;
  g.radix = radices(space, coords);
  g.weight.reserve(g.radix.size());
  for (int c : coords) {
    if (weighted) {
      g.weight.push_back(space.factor(c).weights());
    } else {
      g.weight.emplace_back(static_cast<size_t>(space.factor(c).atom_count()), 1.0);
    }
  }
  g.stride = stride.empty() ? rowmajor_strides(g.radix) : std::move(stride);
  return g;
}

}  // namespace conc::gridbuild
