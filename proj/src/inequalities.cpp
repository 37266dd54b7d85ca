#include "conc/inequalities.hpp"

#include <cmath>

#include "conc/grid_build.hpp"
#include "conc/kernels.hpp"
#include "conc/rng.hpp"

namespace conc {

IneqReport make_ineq_report(double lhs, double rhs, double tol, std::string context) {
  IneqReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.tol = tol;
  r.holds = lhs <= rhs + tol * std::max(std::fabs(lhs), std::fabs(rhs));
  r.context = std::move(context);
  return r;
}

IneqReport check_ricard_xu(const MartingaleDiffs& diffs, double p) {
  require(p > 1.0 && p <= 2.0, Err::InvalidP, "the square-function bound needs 1 < p <= 2");
  require(!diffs.diffs.empty(), Err::InvalidParameter, "empty difference sequence");
  double square_sum = 0.0;
  for (const RandomVariable& d : diffs.diffs) {
    const double nd = d.lp_norm(p);
    square_sum += nd * nd;
  }
  const double lhs = std::sqrt(square_sum);
  const double rhs = std::sqrt(1.0 / (p - 1.0)) * sum(diffs).lp_norm(p);
  return make_ineq_report(lhs, rhs, kIneqTol,
                          "square function vs martingale norm, p=" + std::to_string(p) +
                              ", k=" + std::to_string(diffs.diffs.size()));
}

IneqReport check_bcl(const RandomVariable& x, const RandomVariable& y, double p) {
  require(p > 1.0 && p <= 2.0, Err::InvalidP, "uniform convexity needs 1 < p <= 2");
  require(*x.space() == *y.space(), Err::SpaceMismatch,
          "operands live on different product spaces");
  const double nx = x.lp_norm(p);
  const double ny = y.lp_norm(p);
  const double nsum = add(x, y).lp_norm(p);
  const double ndiff = sub(x, y).lp_norm(p);
  const double lhs = nx * nx + (p - 1.0) * ny * ny;
  const double rhs = 0.5 * (nsum * nsum + ndiff * ndiff);
  return make_ineq_report(lhs, rhs, kIneqTol, "two-point convexity, p=" + std::to_string(p));
}

IneqReport check_lemma6(const RandomVariable& g, const RandomVariable& h, const CoordSet& I,
                        double p) {
  require(p >= 1.0, Err::InvalidP, "the sections inequality needs p >= 1");
  require(*g.space() == *h.space(), Err::SpaceMismatch,
          "operands live on different product spaces");
  const ProductSpace& space = *g.space();
  const int n = space.coord_count();
  space.check_coords(I);
  require(!I.empty() && !I.complement(n).empty(), Err::EmptyCoordSet,
          "both I and its complement must be nonempty");

  const RandomVariable d = sub(g, h);
  const double rhs = d.abs_moment(p);
  const std::string context =
      "sections inequality, p=" + std::to_string(p) + ", |I|=" + std::to_string(I.size());

  if (const auto* j = std::get_if<JuntaRepr>(&d.repr())) {
    // E|d_x| depends on x only through the support coordinates inside I
    std::vector<double> abs_table(j->values.size());
    for (size_t i = 0; i < abs_table.size(); ++i) abs_table[i] = std::fabs(j->values[i]);
    const RandomVariable abs_d = RandomVariable::junta(d.space(), j->support, std::move(abs_table));
    const CoordSet T = j->support.intersect(I);
    if (T.empty())
      return make_ineq_report(kernels::pow_abs(abs_d.expectation(), p), rhs, kIneqTol, context);
    double lhs = 0.0;
    for_each_outcome(space, T, [&](const Outcome& t, double wt) {
      lhs += wt * kernels::pow_abs(abs_d.section_mean(T, t), p);
    });
    return make_ineq_report(lhs, rhs, kIneqTol, context);
  }

  const auto& dense = std::get<DenseRepr>((d.is_dense() ? d : d.densify()).repr());
  // outer grid over I and inner grid over its complement, interleaved into
  // the full row-major table
  const CoordSet Ic = I.complement(n);
  const auto strides = gridbuild::full_strides(space);
  const double lhs = kernels::section_abs_mean_pow(
      gridbuild::coord_grid(space, I, true, gridbuild::strides_at(strides, I)),
      gridbuild::coord_grid(space, Ic, true, gridbuild::strides_at(strides, Ic)), dense.values, p);
  return make_ineq_report(lhs, rhs, kIneqTol, context);
}

MartingaleDiffs random_martingale(const SpacePtr& space, int cut_count, std::uint64_t seed,
                                  double bound) {
  const int n = space->coord_count();
  require(cut_count >= 1 && cut_count <= n, Err::InvalidParameter,
          "cut count must lie in 1..n");
  require(bound > 0.0, Err::InvalidParameter, "bound must be positive");
  RngStream stream = RngStream::seeded(seed);

  auto draw_table = [&](std::uint64_t count) {
    std::vector<double> v(count);
    double peak = 0.0;
    for (double& x : v) {
      x = stream.uniform(-1.0, 1.0);
      peak = std::max(peak, std::fabs(x));
    }
    // sup-norm rescale: every L_p norm of the result is ≤ bound
    const double s = peak > 0.0 ? bound / peak : 1.0;
    for (double& x : v) x *= s;
    return v;
  };

  RandomVariable f = [&] {
    const auto count = space->outcome_count();
    if (count.has_value() && *count <= 4096) {
      return RandomVariable::dense(space, draw_table(*count));
    }
    const int support_size = static_cast<int>(
        stream.uniform_int(1, std::min({n, junta_cap(), 10})));
    const CoordSet support(stream.sample_distinct(support_size, 1, n));
    return RandomVariable::junta(space, support, draw_table(*space->outcome_count(support)));
  }();

  const std::vector<int> cuts = stream.sample_distinct(cut_count, 1, n);
  return martingale_differences(f, cuts);
}

}  // namespace conc
