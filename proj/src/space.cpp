#include "conc/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace conc {

namespace {

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
  if (const char* s = std::getenv(name)) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
  }
  return fallback;
}

}  // namespace

std::uint64_t enumeration_cap() {
  static const std::uint64_t cap = env_u64("CONC_ENUM_CAP", std::uint64_t{1} << 24);
  return cap;
}

int junta_cap() {
  static const int cap = static_cast<int>(env_u64("CONC_JUNTA_CAP", 16));
  return cap;
}

FiniteSpace::FiniteSpace(std::vector<double> atom_weights) : weights_(std::move(atom_weights)) {
  require(!weights_.empty(), Err::NotAProbability, "a finite space needs at least one atom");
  double sum = 0.0;
  for (double w : weights_) {
    require(std::isfinite(w) && w > 0.0, Err::NotAProbability,
            "atom weights must be strictly positive");
    sum += w;
  }
  require(std::fabs(sum - 1.0) <= 1e-12, Err::NotAProbability,
          "atom weights sum to " + std::to_string(sum) + ", expected 1");
}

double FiniteSpace::mean(const std::vector<double>& table) const {
  double acc = 0.0;
  for (size_t a = 0; a < weights_.size(); ++a) acc += weights_[a] * table[a];
  return acc;
}

FiniteSpace make_finite_space(const std::vector<double>& weights) { return FiniteSpace(weights); }

CoordSet::CoordSet(std::vector<int> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  for (size_t t = 0; t + 1 < members_.size(); ++t)
    require(members_[t] != members_[t + 1], Err::InvalidParameter,
            "coordinate set has a repeated index");
  if (!members_.empty())
    require(members_.front() >= 1, Err::IndexOutOfRange, "coordinates are 1-based");
}

CoordSet CoordSet::range(int lo, int hi) {
  std::vector<int> m;
  for (int c = lo; c <= hi; ++c) m.push_back(c);
  return CoordSet(std::move(m));
}

bool CoordSet::contains(int coord) const {
  return std::binary_search(members_.begin(), members_.end(), coord);
}

CoordSet CoordSet::complement(int n) const {
  std::vector<int> out;
  size_t t = 0;
  for (int c = 1; c <= n; ++c) {
    if (t < members_.size() && members_[t] == c) {
      ++t;
    } else {
      out.push_back(c);
    }
  }
  return CoordSet(std::move(out));
}

CoordSet CoordSet::intersect(const CoordSet& other) const {
  std::vector<int> out;
  std::set_intersection(members_.begin(), members_.end(), other.members_.begin(),
                        other.members_.end(), std::back_inserter(out));
  return CoordSet(std::move(out));
}

CoordSet CoordSet::unite(const CoordSet& other) const {
  std::vector<int> out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                 std::back_inserter(out));
  return CoordSet(std::move(out));
}

CoordSet CoordSet::setminus(const CoordSet& other) const {
  std::vector<int> out;
  std::set_difference(members_.begin(), members_.end(), other.members_.begin(),
                      other.members_.end(), std::back_inserter(out));
  return CoordSet(std::move(out));
}

Outcome::Outcome(CoordSet coords, std::vector<int> atoms)
    : coords_(std::move(coords)), atoms_(std::move(atoms)) {
  require(coords_.size() == static_cast<int>(atoms_.size()), Err::InvalidParameter,
          "outcome needs one atom per coordinate");
}

int Outcome::atom_at_coord(int coord) const {
  const auto& m = coords_.members();
  auto it = std::lower_bound(m.begin(), m.end(), coord);
  require(it != m.end() && *it == coord, Err::IndexOutOfRange,
          "coordinate " + std::to_string(coord) + " is not part of this outcome");
  return atoms_[static_cast<size_t>(it - m.begin())];
}

ProductSpace::ProductSpace(std::vector<FiniteSpace> factors) : factors_(std::move(factors)) {
  require(!factors_.empty(), Err::InvalidParameter, "a product space needs at least one factor");
}

ProductSpace ProductSpace::uniform(int k, int n) {
  require(k >= 2, Err::InvalidParameter, "uniform product needs at least 2 atoms per factor");
  require(n >= 1, Err::InvalidParameter, "uniform product needs at least 1 factor");
  std::vector<double> w(static_cast<size_t>(k), 1.0 / k);
  std::vector<FiniteSpace> factors(static_cast<size_t>(n), FiniteSpace(w));
  return ProductSpace(std::move(factors));
}

const FiniteSpace& ProductSpace::factor(int coord) const {
  require(coord >= 1 && coord <= coord_count(), Err::IndexOutOfRange,
          "coordinate " + std::to_string(coord) + " out of range");
  return factors_[static_cast<size_t>(coord - 1)];
}

void ProductSpace::check_coords(const CoordSet& I) const {
  if (!I.empty())
    require(I.max() <= coord_count(), Err::IndexOutOfRange,
            "coordinate " + std::to_string(I.max()) + " out of range");
}

std::optional<std::uint64_t> ProductSpace::outcome_count(const CoordSet& I) const {
  check_coords(I);
  std::uint64_t count = 1;
  for (int c : I) {
    auto k = static_cast<std::uint64_t>(factor(c).atom_count());
    if (count > (std::uint64_t{1} << 62) / k) return std::nullopt;
    count *= k;
  }
  return count;
}

std::optional<std::uint64_t> ProductSpace::outcome_count() const {
  return outcome_count(CoordSet::full(coord_count()));
}

ProductSpace ProductSpace::restricted(const CoordSet& I) const {
  require(!I.empty(), Err::EmptyCoordSet, "cannot restrict to the empty coordinate set");
  check_coords(I);
  std::vector<FiniteSpace> kept;
  kept.reserve(static_cast<size_t>(I.size()));
  for (int c : I) kept.push_back(factor(c));
  return ProductSpace(std::move(kept));
}

double ProductSpace::outcome_weight(const Outcome& x) const {
  check_coords(x.coords());
  double w = 1.0;
  for (int t = 0; t < x.coords().size(); ++t) {
    const FiniteSpace& f = factor(x.coords().at(t));
    int atom = x.atom_at_position(t);
    require(atom >= 0 && atom < f.atom_count(), Err::IndexOutOfRange,
            "atom index " + std::to_string(atom) + " out of range");
    w *= f.weight(atom);
  }
  return w;
}

SpacePtr make_space(std::vector<FiniteSpace> factors) {
  return std::make_shared<const ProductSpace>(std::move(factors));
}

SpacePtr uniform_product(int k, int n) {
  return std::make_shared<const ProductSpace>(ProductSpace::uniform(k, n));
}

void for_each_outcome(const ProductSpace& space, const CoordSet& I,
                      const std::function<void(const Outcome&, double)>& visit,
                      std::uint64_t cap) {
  require(!I.empty(), Err::EmptyCoordSet, "cannot enumerate outcomes over the empty set");
  space.check_coords(I);
  if (cap == 0) cap = enumeration_cap();
  auto count = space.outcome_count(I);
  require(count.has_value() && *count <= cap, Err::TooLargeToEnumerate,
          "outcome count over I exceeds the enumeration cap");

  const int m = I.size();
  std::vector<int> atoms(static_cast<size_t>(m), 0);
  // prefix products of atom weights; weights[t] is the running weight of atoms[0..t]
  std::vector<double> prefix(static_cast<size_t>(m) + 1, 1.0);
  auto refresh = [&](int from) {
    for (int t = from; t < m; ++t)
      prefix[static_cast<size_t>(t) + 1] =
          prefix[static_cast<size_t>(t)] * space.factor(I.at(t)).weight(atoms[static_cast<size_t>(t)]);
  };
  refresh(0);
  for (std::uint64_t i = 0; i < *count; ++i) {
    visit(Outcome(I, atoms), prefix[static_cast<size_t>(m)]);
    int t = m - 1;
    for (; t >= 0; --t) {
      if (++atoms[static_cast<size_t>(t)] < space.factor(I.at(t)).atom_count()) break;
      atoms[static_cast<size_t>(t)] = 0;
    }
    refresh(t < 0 ? 0 : t);
  }
}

}  // namespace conc
