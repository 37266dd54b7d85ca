#include "conc/randvar.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "conc/grid_build.hpp"
#include "conc/kernels.hpp"

namespace conc {

namespace {

using gridbuild::coord_grid;
using gridbuild::full_strides;
using gridbuild::radices;
using gridbuild::rowmajor_strides;
using gridbuild::strides_at;
using kernels::GridCursor;
using kernels::WeightedGrid;

std::vector<double> ones(int k) { return std::vector<double>(static_cast<size_t>(k), 1.0); }

std::uint64_t checked_table_size(const ProductSpace& space, const CoordSet& coords,
                                 const char* what) {
  auto count = space.outcome_count(coords);
  require(count.has_value() && *count <= enumeration_cap(), Err::TooLargeToEnumerate,
          std::string(what) + " would exceed the enumeration cap");
  return *count;
}

// Position of each `sub` coordinate within `all` (both sorted).
std::vector<size_t> positions_in(const CoordSet& all, const CoordSet& sub) {
  std::vector<size_t> pos;
  pos.reserve(static_cast<size_t>(sub.size()));
  size_t t = 0;
  for (int c : sub) {
    while (t < static_cast<size_t>(all.size()) && all.at(static_cast<int>(t)) != c) ++t;
    require(t < static_cast<size_t>(all.size()), Err::InvalidParameter,
            "coordinate set is not contained in the support");
    pos.push_back(t);
  }
  return pos;
}

// Sums the support coordinates outside `keep` out of a junta table; returns
// the table over `keep` (row-major). keep must be a subset of support.
std::vector<double> junta_marginal(const ProductSpace& space, const CoordSet& support,
                                   std::span<const double> table, const CoordSet& keep,
                                   bool absolute = false) {
  WeightedGrid keep_grid = coord_grid(space, keep, false);
  const std::vector<std::uint64_t> keep_strides = rowmajor_strides(keep_grid.radix);
  const std::vector<size_t> keep_pos = positions_in(support, keep);

  WeightedGrid g;
  g.radix = radices(space, support);
  g.weight.resize(g.radix.size());
  g.stride.assign(g.radix.size(), 0);
  for (size_t t = 0; t < g.radix.size(); ++t)
    g.weight[t] = space.factor(support.at(static_cast<int>(t))).weights();
  for (size_t j = 0; j < keep_pos.size(); ++j) {
    g.weight[keep_pos[j]] = ones(g.radix[keep_pos[j]]);
    g.stride[keep_pos[j]] = keep_strides[j];
  }

  std::vector<double> out(keep_grid.size(), 0.0);
  GridCursor cur(g);
  const std::uint64_t n = g.size();
  for (std::uint64_t i = 0; i < n; ++i, cur.step())
    out[cur.offset()] += cur.weight() * (absolute ? std::fabs(table[i]) : table[i]);
  return out;
}

// Fixes atoms on `fixed` ⊆ support; returns the table over support ∖ fixed.
std::vector<double> junta_fixed(const ProductSpace& space, const CoordSet& support,
                                std::span<const double> table, const CoordSet& fixed,
                                const std::vector<int>& fixed_atoms) {
  const CoordSet varying = support.setminus(fixed);
  const std::vector<std::uint64_t> sup_strides = rowmajor_strides(radices(space, support));
  const std::vector<size_t> fixed_pos = positions_in(support, fixed);
  std::uint64_t base = 0;
  for (size_t j = 0; j < fixed_pos.size(); ++j)
    base += static_cast<std::uint64_t>(fixed_atoms[j]) * sup_strides[fixed_pos[j]];

  const std::vector<size_t> var_pos = positions_in(support, varying);
  std::vector<std::uint64_t> var_strides;
  var_strides.reserve(var_pos.size());
  for (size_t p : var_pos) var_strides.push_back(sup_strides[p]);

  WeightedGrid g = coord_grid(space, varying, false, std::move(var_strides));
  std::vector<double> out(g.size(), 0.0);
  GridCursor cur(g);
  const std::uint64_t n = g.size();
  for (std::uint64_t i = 0; i < n; ++i, cur.step()) out[i] = table[base + cur.offset()];
  return out;
}

// Atoms of x restricted to `coords` (which must be ⊆ x.coords()).
std::vector<int> atoms_at(const Outcome& x, const CoordSet& coords) {
  std::vector<int> a;
  a.reserve(static_cast<size_t>(coords.size()));
  for (int c : coords) a.push_back(x.atom_at_coord(c));
  return a;
}

double root(double sum, double p) {
  if (p == 1.0) return sum;
  if (p == 2.0) return std::sqrt(sum);
  return std::pow(sum, 1.0 / p);
}

}  // namespace

RandomVariable RandomVariable::dense(SpacePtr space, std::vector<double> values) {
  const std::uint64_t count = checked_table_size(*space, CoordSet::full(space->coord_count()),
                                                 "a dense table");
  require(values.size() == count, Err::InvalidParameter,
          "dense table has " + std::to_string(values.size()) + " entries, expected " +
              std::to_string(count));
  return RandomVariable(std::move(space), DenseRepr{std::move(values)});
}

RandomVariable RandomVariable::rank1(SpacePtr space, std::vector<std::vector<double>> factors) {
  require(static_cast<int>(factors.size()) == space->coord_count(), Err::InvalidParameter,
          "rank-1 representation needs one table per coordinate");
  for (int c = 1; c <= space->coord_count(); ++c)
    require(static_cast<int>(factors[static_cast<size_t>(c - 1)].size()) ==
                space->factor(c).atom_count(),
            Err::InvalidParameter, "rank-1 table size mismatch at coordinate " + std::to_string(c));
  return RandomVariable(std::move(space), Rank1Repr{std::move(factors)});
}

RandomVariable RandomVariable::junta(SpacePtr space, CoordSet support,
                                     std::vector<double> values) {
  space->check_coords(support);
  const std::uint64_t count = checked_table_size(*space, support, "a junta table");
  require(values.size() == count, Err::InvalidParameter,
          "junta table has " + std::to_string(values.size()) + " entries, expected " +
              std::to_string(count));
  return RandomVariable(std::move(space), JuntaRepr{std::move(support), std::move(values)});
}

RandomVariable RandomVariable::constant(SpacePtr space, double value) {
  return RandomVariable(std::move(space), JuntaRepr{CoordSet{}, {value}});
}

RandomVariable RandomVariable::indicator_product(SpacePtr space,
                                                 const std::vector<std::vector<int>>& sets) {
  require(static_cast<int>(sets.size()) == space->coord_count(), Err::InvalidParameter,
          "indicator product needs one atom set per coordinate");
  std::vector<std::vector<double>> factors;
  factors.reserve(sets.size());
  for (int c = 1; c <= space->coord_count(); ++c) {
    std::vector<double> table(static_cast<size_t>(space->factor(c).atom_count()), 0.0);
    for (int atom : sets[static_cast<size_t>(c - 1)]) {
      require(atom >= 0 && atom < space->factor(c).atom_count(), Err::IndexOutOfRange,
              "atom index out of range at coordinate " + std::to_string(c));
      table[static_cast<size_t>(atom)] = 1.0;
    }
    factors.push_back(std::move(table));
  }
  return rank1(std::move(space), std::move(factors));
}

double RandomVariable::eval(const Outcome& x) const {
  require(x.coords() == CoordSet::full(space_->coord_count()), Err::IndexOutOfRange,
          "eval needs a full outcome");
  for (int t = 0; t < x.coords().size(); ++t) {
    const int atom = x.atom_at_position(t);
    require(atom >= 0 && atom < space_->factor(x.coords().at(t)).atom_count(),
            Err::IndexOutOfRange, "atom index out of range");
  }
  if (const auto* d = std::get_if<DenseRepr>(&repr_)) {
    const auto strides = full_strides(*space_);
    std::uint64_t idx = 0;
    for (int t = 0; t < x.coords().size(); ++t)
      idx += static_cast<std::uint64_t>(x.atom_at_position(t)) *
             strides[static_cast<size_t>(x.coords().at(t))];
    return d->values[idx];
  }
  if (const auto* r = std::get_if<Rank1Repr>(&repr_)) {
    double v = 1.0;
    for (int t = 0; t < x.coords().size(); ++t)
      v *= r->factors[static_cast<size_t>(t)][static_cast<size_t>(x.atom_at_position(t))];
    return v;
  }
  const auto& j = std::get<JuntaRepr>(repr_);
  const auto strides = rowmajor_strides(radices(*space_, j.support));
  std::uint64_t idx = 0;
  for (int t = 0; t < j.support.size(); ++t)
    idx += static_cast<std::uint64_t>(x.atom_at_coord(j.support.at(t))) * strides[static_cast<size_t>(t)];
  return j.values[idx];
}

double RandomVariable::expectation() const {
  if (const auto* d = std::get_if<DenseRepr>(&repr_)) {
    WeightedGrid g = coord_grid(*space_, CoordSet::full(space_->coord_count()), true);
    return kernels::weighted_sum(g, d->values);
  }
  if (const auto* r = std::get_if<Rank1Repr>(&repr_)) {
    double prod = 1.0;
    for (int c = 1; c <= space_->coord_count(); ++c)
      prod *= space_->factor(c).mean(r->factors[static_cast<size_t>(c - 1)]);
    return prod;
  }
  const auto& j = std::get<JuntaRepr>(repr_);
  WeightedGrid g = coord_grid(*space_, j.support, true);
  return kernels::weighted_sum(g, j.values);
}

double RandomVariable::abs_moment(double p) const {
  require(p >= 1.0, Err::InvalidP, "moments need p >= 1");
  if (const auto* d = std::get_if<DenseRepr>(&repr_)) {
    WeightedGrid g = coord_grid(*space_, CoordSet::full(space_->coord_count()), true);
    return kernels::weighted_abs_pow_sum(g, d->values, p);
  }
  if (const auto* r = std::get_if<Rank1Repr>(&repr_)) {
    double prod = 1.0;
    for (int c = 1; c <= space_->coord_count(); ++c) {
      const FiniteSpace& f = space_->factor(c);
      double acc = 0.0;
      for (int a = 0; a < f.atom_count(); ++a)
        acc += f.weight(a) *
               kernels::pow_abs(r->factors[static_cast<size_t>(c - 1)][static_cast<size_t>(a)], p);
      prod *= acc;
    }
    return prod;
  }
  const auto& j = std::get<JuntaRepr>(repr_);
  WeightedGrid g = coord_grid(*space_, j.support, true);
  return kernels::weighted_abs_pow_sum(g, j.values, p);
}

double RandomVariable::lp_norm(double p) const { return root(abs_moment(p), p); }

RandomVariable RandomVariable::section(const CoordSet& I, const Outcome& x) const {
  const int n = space_->coord_count();
  space_->check_coords(I);
  require(!I.empty(), Err::EmptyCoordSet, "section needs a nonempty coordinate set");
  const CoordSet Ic = I.complement(n);
  require(!Ic.empty(), Err::EmptyCoordSet, "section needs a nonempty complement");
  require(x.coords() == I, Err::InvalidParameter, "outcome must be over exactly the section set");
  SpacePtr sub_space = std::make_shared<const ProductSpace>(space_->restricted(Ic));

  if (const auto* d = std::get_if<DenseRepr>(&repr_)) {
    const auto strides = full_strides(*space_);
    std::uint64_t base = 0;
    for (int t = 0; t < I.size(); ++t)
      base += static_cast<std::uint64_t>(x.atom_at_position(t)) *
              strides[static_cast<size_t>(I.at(t))];
    WeightedGrid g = coord_grid(*space_, Ic, false, strides_at(strides, Ic));
    std::vector<double> out(g.size(), 0.0);
    GridCursor cur(g);
    for (std::uint64_t i = 0; i < out.size(); ++i, cur.step())
      out[i] = d->values[base + cur.offset()];
    return RandomVariable::dense(std::move(sub_space), std::move(out));
  }
  if (const auto* r = std::get_if<Rank1Repr>(&repr_)) {
    double scale = 1.0;
    for (int t = 0; t < I.size(); ++t)
      scale *= r->factors[static_cast<size_t>(I.at(t) - 1)]
                         [static_cast<size_t>(x.atom_at_position(t))];
    std::vector<std::vector<double>> kept;
    kept.reserve(static_cast<size_t>(Ic.size()));
    for (int c : Ic) kept.push_back(r->factors[static_cast<size_t>(c - 1)]);
    for (double& v : kept.front()) v *= scale;
    return RandomVariable::rank1(std::move(sub_space), std::move(kept));
  }
  const auto& j = std::get<JuntaRepr>(repr_);
  const CoordSet fixed = j.support.intersect(I);
  const CoordSet varying = j.support.setminus(I);
  std::vector<double> table = junta_fixed(*space_, j.support, j.values, fixed, atoms_at(x, fixed));
  // renumber the remaining support into the restricted space's coordinates
  std::vector<int> new_support;
  new_support.reserve(static_cast<size_t>(varying.size()));
  for (int c : varying) {
    const auto& members = Ic.members();
    auto it = std::lower_bound(members.begin(), members.end(), c);
    new_support.push_back(static_cast<int>(it - members.begin()) + 1);
  }
  return RandomVariable::junta(std::move(sub_space), CoordSet(std::move(new_support)),
                               std::move(table));
}

double RandomVariable::section_mean(const CoordSet& I, const Outcome& x) const {
  const int n = space_->coord_count();
  space_->check_coords(I);
  require(!I.empty(), Err::EmptyCoordSet, "section mean needs a nonempty coordinate set");
  const CoordSet Ic = I.complement(n);
  require(!Ic.empty(), Err::EmptyCoordSet, "section mean needs a nonempty complement");
  require(x.coords() == I, Err::InvalidParameter, "outcome must be over exactly the section set");

  if (const auto* d = std::get_if<DenseRepr>(&repr_)) {
    const auto strides = full_strides(*space_);
    std::uint64_t base = 0;
    for (int t = 0; t < I.size(); ++t)
      base += static_cast<std::uint64_t>(x.atom_at_position(t)) *
              strides[static_cast<size_t>(I.at(t))];
    WeightedGrid g = coord_grid(*space_, Ic, true, strides_at(strides, Ic));
    return kernels::weighted_sum(g, std::span<const double>(d->values).subspan(base));
  }
  if (const auto* r = std::get_if<Rank1Repr>(&repr_)) {
    double prod = 1.0;
    for (int t = 0; t < I.size(); ++t)
      prod *= r->factors[static_cast<size_t>(I.at(t) - 1)]
                        [static_cast<size_t>(x.atom_at_position(t))];
    for (int c : Ic) prod *= space_->factor(c).mean(r->factors[static_cast<size_t>(c - 1)]);
    return prod;
  }
  const auto& j = std::get<JuntaRepr>(repr_);
  const CoordSet fixed = j.support.intersect(I);
  const CoordSet varying = j.support.setminus(I);
  const auto sup_strides = rowmajor_strides(radices(*space_, j.support));
  const auto fixed_pos = positions_in(j.support, fixed);
  const auto fixed_atoms = atoms_at(x, fixed);
  std::uint64_t base = 0;
  for (size_t t = 0; t < fixed_pos.size(); ++t)
    base += static_cast<std::uint64_t>(fixed_atoms[t]) * sup_strides[fixed_pos[t]];
  std::vector<std::uint64_t> var_strides;
  for (size_t p : positions_in(j.support, varying)) var_strides.push_back(sup_strides[p]);
  WeightedGrid g = coord_grid(*space_, varying, true, std::move(var_strides));
  return kernels::weighted_sum(g, std::span<const double>(j.values).subspan(base));
}

FilteredRV RandomVariable::conditional_expectation(int m) const {
  const int n = space_->coord_count();
  require(m >= 0 && m <= n, Err::IndexOutOfRange,
          "filtration level must lie in 0.." + std::to_string(n));
  if (m == n) return FilteredRV{*this, n};
  if (m == 0) return FilteredRV{constant(space_, expectation()), 0};

  if (const auto* d = std::get_if<DenseRepr>(&repr_)) {
    const CoordSet head = CoordSet::range(1, m);
    const CoordSet tail = CoordSet::range(m + 1, n);
    WeightedGrid tail_grid = coord_grid(*space_, tail, true);
    const std::uint64_t head_count = *space_->outcome_count(head);
    std::vector<double> table = kernels::block_tail_means(tail_grid, d->values, head_count);
    return FilteredRV{RandomVariable::junta(space_, head, std::move(table)), m};
  }
  if (const auto* r = std::get_if<Rank1Repr>(&repr_)) {
    std::vector<std::vector<double>> factors = r->factors;
    for (int c = m + 1; c <= n; ++c) {
      const double mean = space_->factor(c).mean(factors[static_cast<size_t>(c - 1)]);
      std::fill(factors[static_cast<size_t>(c - 1)].begin(),
                factors[static_cast<size_t>(c - 1)].end(), mean);
    }
    return FilteredRV{RandomVariable::rank1(space_, std::move(factors)), m};
  }
  const auto& j = std::get<JuntaRepr>(repr_);
  // the kept support coordinates are a prefix of the sorted support, so the
  // averaged-out tail is contiguous in the table layout
  std::vector<int> keep_members;
  for (int c : j.support)
    if (c <= m) keep_members.push_back(c);
  const CoordSet keep(std::move(keep_members));
  const CoordSet drop = j.support.setminus(keep);
  WeightedGrid tail_grid = coord_grid(*space_, drop, true);
  const std::uint64_t head_count = *space_->outcome_count(keep);
  std::vector<double> table = kernels::block_tail_means(tail_grid, j.values, head_count);
  return FilteredRV{RandomVariable::junta(space_, keep, std::move(table)), m};
}

RandomVariable RandomVariable::densify() const {
  const CoordSet all = CoordSet::full(space_->coord_count());
  checked_table_size(*space_, all, "densifying");
  if (const auto* d = std::get_if<DenseRepr>(&repr_)) {
    return RandomVariable::dense(space_, d->values);
  }
  if (const auto* r = std::get_if<Rank1Repr>(&repr_)) {
    WeightedGrid g;
    g.radix = radices(*space_, all);
    g.weight = r->factors;  // cursor "weight" doubles as the running product of values
    g.stride.assign(g.radix.size(), 0);
    std::vector<double> out(g.size(), 0.0);
    GridCursor cur(g);
    for (std::uint64_t i = 0; i < out.size(); ++i, cur.step()) out[i] = cur.weight();
    return RandomVariable::dense(space_, std::move(out));
  }
  const auto& j = std::get<JuntaRepr>(repr_);
  const auto sup_strides = rowmajor_strides(radices(*space_, j.support));
  std::vector<std::uint64_t> strides(static_cast<size_t>(space_->coord_count()), 0);
  for (int t = 0; t < j.support.size(); ++t)
    strides[static_cast<size_t>(j.support.at(t) - 1)] = sup_strides[static_cast<size_t>(t)];
  WeightedGrid g = coord_grid(*space_, all, false, std::move(strides));
  std::vector<double> out(g.size(), 0.0);
  GridCursor cur(g);
  for (std::uint64_t i = 0; i < out.size(); ++i, cur.step()) out[i] = j.values[cur.offset()];
  return RandomVariable::dense(space_, std::move(out));
}

bool RandomVariable::is_indicator() const {
  auto zero_one = [](std::span<const double> vals) {
    return std::all_of(vals.begin(), vals.end(), [](double v) { return v == 0.0 || v == 1.0; });
  };
  if (const auto* d = std::get_if<DenseRepr>(&repr_)) return zero_one(d->values);
  if (const auto* j = std::get_if<JuntaRepr>(&repr_)) return zero_one(j->values);
  const auto& r = std::get<Rank1Repr>(repr_);
  auto count = space_->outcome_count();
  if (count.has_value() && *count <= enumeration_cap()) {
    const auto& dense = std::get<DenseRepr>(densify().repr());
    return zero_one(dense.values);
  }
  return std::all_of(r.factors.begin(), r.factors.end(),
                     [&](const std::vector<double>& t) { return zero_one(t); });
}

MartingaleDiffs martingale_differences(const RandomVariable& f, const std::vector<int>& cuts) {
  require(!cuts.empty(), Err::InvalidParameter, "at least one cut is required");
  const int n = f.space()->coord_count();
  for (size_t t = 0; t < cuts.size(); ++t) {
    require(cuts[t] >= 1 && cuts[t] <= n, Err::IndexOutOfRange, "cut outside 1..n");
    if (t > 0)
      require(cuts[t] > cuts[t - 1], Err::NonIncreasingCuts, "cuts must be strictly increasing");
  }
  MartingaleDiffs out;
  out.levels = cuts;
  RandomVariable prev = f.conditional_expectation(cuts[0]).base;
  out.diffs.push_back(prev);
  for (size_t t = 1; t < cuts.size(); ++t) {
    RandomVariable cur = f.conditional_expectation(cuts[t]).base;
    out.diffs.push_back(sub(cur, prev));
    prev = std::move(cur);
  }
  return out;
}

RandomVariable lincomb(double a, const RandomVariable& x, double b, const RandomVariable& y) {
  require(*x.space() == *y.space(), Err::SpaceMismatch,
          "operands live on different product spaces");
  const auto* jx = std::get_if<JuntaRepr>(&x.repr());
  const auto* jy = std::get_if<JuntaRepr>(&y.repr());
  if (jx && jy) {
    const CoordSet support = jx->support.unite(jy->support);
    checked_table_size(*x.space(), support, "combining juntas");
    const auto ux = positions_in(support, jx->support);
    const auto uy = positions_in(support, jy->support);
    const auto sx = rowmajor_strides(radices(*x.space(), jx->support));
    const auto sy = rowmajor_strides(radices(*x.space(), jy->support));
    WeightedGrid gx = coord_grid(*x.space(), support, false);
    WeightedGrid gy = gx;
    gx.stride.assign(gx.radix.size(), 0);
    gy.stride.assign(gy.radix.size(), 0);
    for (size_t t = 0; t < ux.size(); ++t) gx.stride[ux[t]] = sx[t];
    for (size_t t = 0; t < uy.size(); ++t) gy.stride[uy[t]] = sy[t];
    std::vector<double> out(gx.size(), 0.0);
    GridCursor cx(gx), cy(gy);
    for (std::uint64_t i = 0; i < out.size(); ++i, cx.step(), cy.step())
      out[i] = a * jx->values[cx.offset()] + b * jy->values[cy.offset()];
    return RandomVariable::junta(x.space(), support, std::move(out));
  }
  std::optional<RandomVariable> xtmp, ytmp;
  const auto& dx = x.is_dense() ? std::get<DenseRepr>(x.repr())
                                : std::get<DenseRepr>((xtmp = x.densify())->repr());
  const auto& dy = y.is_dense() ? std::get<DenseRepr>(y.repr())
                                : std::get<DenseRepr>((ytmp = y.densify())->repr());
  std::vector<double> out(dx.values.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = a * dx.values[i] + b * dy.values[i];
  return RandomVariable::dense(x.space(), std::move(out));
}

RandomVariable add(const RandomVariable& x, const RandomVariable& y) {
  return lincomb(1.0, x, 1.0, y);
}

RandomVariable sub(const RandomVariable& x, const RandomVariable& y) {
  return lincomb(1.0, x, -1.0, y);
}

RandomVariable scale(const RandomVariable& x, double s) {
  if (const auto* d = std::get_if<DenseRepr>(&x.repr())) {
    std::vector<double> out = d->values;
    for (double& v : out) v *= s;
    return RandomVariable::dense(x.space(), std::move(out));
  }
  if (const auto* j = std::get_if<JuntaRepr>(&x.repr())) {
    std::vector<double> out = j->values;
    for (double& v : out) v *= s;
    return RandomVariable::junta(x.space(), j->support, std::move(out));
  }
  auto factors = std::get<Rank1Repr>(x.repr()).factors;
  for (double& v : factors.front()) v *= s;
  return RandomVariable::rank1(x.space(), std::move(factors));
}

RandomVariable sum(const MartingaleDiffs& md) {
  require(!md.diffs.empty(), Err::InvalidParameter, "empty difference sequence");
  RandomVariable acc = md.diffs.front();
  for (size_t t = 1; t < md.diffs.size(); ++t) acc = add(acc, md.diffs[t]);
  return acc;
}

}  // namespace conc
