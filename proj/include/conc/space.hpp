#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "conc/error.hpp"

namespace conc {

// Ceiling on the number of outcomes any dense table or enumeration may touch.
// Defaults to 2^24; override with the CONC_ENUM_CAP environment variable.
std::uint64_t enumeration_cap();

// Largest junta support accepted from input files and instance generators.
// Defaults to 16; override with CONC_JUNTA_CAP.
int junta_cap();

/// One finite probability space: strictly positive atom weights summing to 1
/// (within 1e-12 absolute).
class FiniteSpace {
 public:
  explicit FiniteSpace(std::vector<double> atom_weights);

  int atom_count() const { return static_cast<int>(weights_.size()); }
  double weight(int atom) const { return weights_[static_cast<size_t>(atom)]; }
  const std::vector<double>& weights() const { return weights_; }

  // Σ_a w_a table[a]; `table` must have one entry per atom.
  double mean(const std::vector<double>& table) const;

  bool operator==(const FiniteSpace&) const = default;

 private:
  std::vector<double> weights_;
};

FiniteSpace make_finite_space(const std::vector<double>& weights);

/// Sorted set of 1-based coordinate indices.
class CoordSet {
 public:
  CoordSet() = default;
  explicit CoordSet(std::vector<int> members);

  static CoordSet range(int lo, int hi);  // {lo,...,hi}; empty if lo > hi
  static CoordSet full(int n) { return range(1, n); }
  static CoordSet single(int coord) { return CoordSet({coord}); }

  bool empty() const { return members_.empty(); }
  int size() const { return static_cast<int>(members_.size()); }
  int at(int position) const { return members_[static_cast<size_t>(position)]; }
  bool contains(int coord) const;
  int min() const { return members_.front(); }
  int max() const { return members_.back(); }

  CoordSet complement(int n) const;
  CoordSet intersect(const CoordSet& other) const;
  CoordSet unite(const CoordSet& other) const;
  CoordSet setminus(const CoordSet& other) const;

  const std::vector<int>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool operator==(const CoordSet&) const = default;

 private:
  std::vector<int> members_;
};

/// Contiguous 1-based coordinate interval {lo,...,hi}, both ends inclusive.
struct IndexInterval {
  int lo = 0;
  int hi = 0;

  int size() const { return hi - lo + 1; }
  CoordSet coords() const { return CoordSet::range(lo, hi); }
  bool operator==(const IndexInterval&) const = default;
};

/// Assignment of atoms (0-based) to a subset of coordinates. A full outcome
/// has coords == {1,...,n}; coords == {} is the empty outcome of weight 1.
class Outcome {
 public:
  Outcome() = default;
  Outcome(CoordSet coords, std::vector<int> atoms);

  const CoordSet& coords() const { return coords_; }
  const std::vector<int>& atoms() const { return atoms_; }
  int atom_at_position(int position) const { return atoms_[static_cast<size_t>(position)]; }
  int atom_at_coord(int coord) const;  // IndexOutOfRange if coord absent

 private:
  CoordSet coords_;
  std::vector<int> atoms_;
};

/// Ordered product of finite probability spaces. Coordinates are 1-based.
class ProductSpace {
 public:
  explicit ProductSpace(std::vector<FiniteSpace> factors);

  static ProductSpace uniform(int k, int n);

  int coord_count() const { return static_cast<int>(factors_.size()); }
  const FiniteSpace& factor(int coord) const;

  // Number of outcomes over I (or over all coordinates); nullopt on overflow.
  std::optional<std::uint64_t> outcome_count(const CoordSet& I) const;
  std::optional<std::uint64_t> outcome_count() const;

  ProductSpace restricted(const CoordSet& I) const;  // EmptyCoordSet if I = {}

  // Product of atom weights over the outcome's coords; 1 for the empty outcome.
  double outcome_weight(const Outcome& x) const;

  void check_coords(const CoordSet& I) const;  // IndexOutOfRange on bad coords

  bool operator==(const ProductSpace&) const = default;

 private:
  std::vector<FiniteSpace> factors_;
};

using SpacePtr = std::shared_ptr<const ProductSpace>;

SpacePtr make_space(std::vector<FiniteSpace> factors);
SpacePtr uniform_product(int k, int n);

// Visits every outcome over I exactly once, paired with its P_I weight.
// Row-major order: the smallest coordinate in I varies slowest. Throws
// EmptyCoordSet if I = {} and TooLargeToEnumerate past the cap
// (cap = 0 means enumeration_cap()).
void for_each_outcome(const ProductSpace& space, const CoordSet& I,
                      const std::function<void(const Outcome&, double)>& visit,
                      std::uint64_t cap = 0);

}  // namespace conc
