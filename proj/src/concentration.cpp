#include "conc/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <set>

#include "conc/grid_build.hpp"
#include "conc/kernels.hpp"
#include "conc/montecarlo.hpp"
#include "conc/rng.hpp"

namespace conc {

namespace {

constexpr double kNormSlack = 1e-10;

double root(double sum, double p) {
  if (p == 1.0) return sum;
  if (p == 2.0) return std::sqrt(sum);
  return std::pow(sum, 1.0 / p);
}

SearchParams make_params(double epsilon, double p, SearchParams::Mode mode) {
  require(epsilon > 0.0 && epsilon <= 1.0, Err::InvalidParameter, "epsilon must lie in (0, 1]");
  require(p > 1.0 && p <= 2.0, Err::InvalidP, "derived constants need 1 < p <= 2");
  SearchParams sp;
  sp.epsilon = epsilon;
  sp.p = p;
  sp.mode = mode;
  const double exponent =
      mode == SearchParams::Mode::plain ? (p + 1.0) / p : (2.0 * p + 1.0) / p;
  sp.theta = std::pow(epsilon, exponent);
  sp.c = 0.25 * sp.theta * sp.theta * (p - 1.0);
  sp.ell = static_cast<long long>(std::floor(1.0 / (sp.theta * sp.theta * (p - 1.0)))) + 1;
  return sp;
}

struct BlockPlan {
  long long ell = 0;
  int step = 0;
  std::vector<int> points;  // i_1 < ... < i_{ell+1}, all within 1..n−1
};

BlockPlan make_block_plan(int n, double theta, double p) {
  const double denom = theta * theta * (p - 1.0);
  const double minimal = 8.0 / denom;
  require(static_cast<double>(n) >= minimal, Err::PreconditionViolated,
          "n=" + std::to_string(n) + " is below the minimal admissible n = " +
              std::to_string(static_cast<long long>(std::ceil(minimal))));
  BlockPlan plan;
  plan.ell = static_cast<long long>(std::floor(1.0 / denom)) + 1;
  plan.step = static_cast<int>((n - 2) / plan.ell);
  for (long long k = 1; k <= plan.ell + 1; ++k)
    plan.points.push_back(static_cast<int>((k - 1) * plan.step + 1));
  return plan;
}

std::uint64_t mc_seed_for(std::uint64_t base, std::uint64_t salt, std::uint64_t idx) {
  return mix64(base ^ mix64(salt * 0x9E3779B97F4A7C15ull + idx + 1));
}

CoordSet mask_subset(const IndexInterval& J, std::uint64_t mask) {
  std::vector<int> coords;
  for (int b = 0; b < J.size(); ++b)
    if ((mask >> b) & 1) coords.push_back(J.lo + b);
  return CoordSet(std::move(coords));
}

CoordSet random_nonempty_subset(const IndexInterval& J, RngStream& stream) {
  const int w = J.size();
  if (w <= 62) {
    const std::uint64_t top = (std::uint64_t{1} << w) - 1;
    return mask_subset(J, static_cast<std::uint64_t>(stream.uniform_int(1, static_cast<std::int64_t>(top))));
  }
  for (;;) {
    std::vector<int> coords;
    for (int c = J.lo; c <= J.hi; ++c)
      if (stream.next_u64() & 1) coords.push_back(c);
    if (!coords.empty()) return CoordSet(std::move(coords));
  }
}

std::vector<CoordSet> build_subsets(const IndexInterval& J, const SubsetPolicy& policy,
                                    std::string* description) {
  const int w = J.size();
  std::vector<CoordSet> out;
  if (w <= 62 && (std::uint64_t{1} << w) <= policy.exhaustive_limit) {
    const std::uint64_t total = std::uint64_t{1} << w;
    for (std::uint64_t mask = 1; mask < total; ++mask) out.push_back(mask_subset(J, mask));
    *description = "exhaustive(" + std::to_string(out.size()) + " subsets)";
    return out;
  }
  std::set<std::vector<int>> seen;
  auto push = [&](CoordSet cs) {
    if (seen.insert(cs.members()).second) out.push_back(std::move(cs));
  };
  // subintervals cover all singletons and J itself
  for (int a = J.lo; a <= J.hi; ++a)
    for (int b = a; b <= J.hi; ++b) push(CoordSet::range(a, b));
  const size_t structured = out.size();
  RngStream base = RngStream::seeded(policy.seed);
  for (int r = 0; r < policy.random_subsets; ++r) {
    RngStream stream = base.split(static_cast<std::uint64_t>(r));
    for (int attempt = 0; attempt < 1000; ++attempt) {
      CoordSet cs = random_nonempty_subset(J, stream);
      if (seen.insert(cs.members()).second) {
        out.push_back(std::move(cs));
        break;
      }
    }
  }
  *description = "subintervals(" + std::to_string(structured) + ")+random(" +
                 std::to_string(out.size() - structured) + ")";
  return out;
}

// Exact check of one subset, with the seeded sampling fallback when exact
// enumeration is impossible.
SubsetResult check_subset(const RandomVariable& f, double epsilon, const CoordSet& I,
                          const SubsetPolicy& policy, std::uint64_t salt, std::uint64_t idx) {
  SubsetResult r;
  r.I = I;
  try {
    r.prob = concentration_probability(f, I, epsilon);
  } catch (const Error& e) {
    if (e.code() != Err::TooLargeToEnumerate) throw;
    const Estimate est = estimate_concentration(f, I, epsilon, policy.mc_samples,
                                                policy.mc_confidence,
                                                mc_seed_for(policy.seed, salt, idx));
    r.prob = est.value;
    r.estimated = true;
    r.half_width = est.half_width;
  }
  r.pass = r.prob >= 1.0 - epsilon;
  return r;
}

std::vector<SubsetResult> check_subsets(const RandomVariable& f, double epsilon,
                                        const std::vector<CoordSet>& subsets,
                                        const SubsetPolicy& policy, std::uint64_t salt) {
  std::vector<SubsetResult> results(subsets.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(subsets.size()); ++idx) {
    try {
      results[static_cast<size_t>(idx)] =
          check_subset(f, epsilon, subsets[static_cast<size_t>(idx)], policy, salt,
                       static_cast<std::uint64_t>(idx));
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return results;
}

bool all_pass(const std::vector<SubsetResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const SubsetResult& r) { return r.pass; });
}

}  // namespace

SearchParams SearchParams::plain_mode(double epsilon, double p) {
  return make_params(epsilon, p, Mode::plain);
}

SearchParams SearchParams::family_mode(double epsilon, double p) {
  return make_params(epsilon, p, Mode::family);
}

long long SearchParams::min_n() const { return static_cast<long long>(std::ceil(2.0 / c)); }

EnergyIncrement energy_increment_search(const RandomVariable& f, double theta, double p) {
  require(theta > 0.0 && theta <= 1.0, Err::PreconditionViolated, "theta must lie in (0, 1]");
  require(p > 1.0 && p <= 2.0, Err::PreconditionViolated, "the search needs 1 < p <= 2");
  require(f.lp_norm(p) <= 1.0 + kNormSlack, Err::PreconditionViolated,
          "the L_p norm must be at most 1");
  const int n = f.space()->coord_count();
  const BlockPlan plan = make_block_plan(n, theta, p);
  const double guaranteed = 0.25 * theta * theta * (p - 1.0) * n;

  RandomVariable prev = f.conditional_expectation(plan.points.front()).base;
  for (long long k = 0; k < plan.ell; ++k) {
    RandomVariable cur =
        f.conditional_expectation(plan.points[static_cast<size_t>(k) + 1]).base;
    const double gap = sub(cur, prev).lp_norm(p);
    if (gap <= theta) {
      const int i = plan.points[static_cast<size_t>(k)];
      const int j = plan.points[static_cast<size_t>(k) + 1];
      require(static_cast<double>(j - i) >= guaranteed, Err::InternalContradiction,
              "block spacing fell below the guaranteed bound");
      return EnergyIncrement{i, j, gap};
    }
    prev = std::move(cur);
  }
  fail(Err::InternalContradiction,
       "no block pair within theta; this cannot happen under the preconditions");
}

Location locate_interval(const RandomVariable& f, double epsilon, double p) {
  require(epsilon > 0.0 && epsilon <= 1.0, Err::PreconditionViolated,
          "epsilon must lie in (0, 1]");
  require(p > 1.0, Err::PreconditionViolated, "p must exceed 1");
  if (p > 2.0) {
    // ‖f‖_{L_p} ≤ 1 forces ‖f‖_{L_2} ≤ 1 on a probability space
    require(f.lp_norm(p) <= 1.0 + kNormSlack, Err::PreconditionViolated,
            "the L_p norm must be at most 1");
    p = 2.0;
  }
  const SearchParams params = SearchParams::plain_mode(epsilon, p);
  const int n = f.space()->coord_count();
  require(static_cast<double>(n) >= 2.0 / params.c, Err::PreconditionViolated,
          "n=" + std::to_string(n) + " is below the minimal admissible n = " +
              std::to_string(params.min_n()));
  const EnergyIncrement e = energy_increment_search(f, params.theta, p);
  const IndexInterval J{e.i + 1, e.j};
  require(static_cast<double>(J.size()) >= params.c * n, Err::InternalContradiction,
          "located interval is shorter than the guarantee");
  return Location{J, params, e.gap};
}

double concentration_probability(const RandomVariable& f, const CoordSet& I, double eps) {
  require(eps >= 0.0, Err::InvalidParameter, "epsilon must be nonnegative");
  const ProductSpace& space = *f.space();
  const int n = space.coord_count();
  space.check_coords(I);
  require(!I.empty() && !I.complement(n).empty(), Err::EmptyCoordSet,
          "both I and its complement must be nonempty");
  const double mu = f.expectation();

  if (const auto* j = std::get_if<JuntaRepr>(&f.repr())) {
    // the section mean depends on x only through the support coords inside I
    const CoordSet T = j->support.intersect(I);
    if (T.empty()) return 1.0;  // constant section mean equal to E(f)
    double prob = 0.0;
    for_each_outcome(space, T, [&](const Outcome& t, double wt) {
      std::vector<int> atoms(static_cast<size_t>(I.size()), 0);
      for (int pos = 0; pos < I.size(); ++pos)
        if (T.contains(I.at(pos))) atoms[static_cast<size_t>(pos)] = t.atom_at_coord(I.at(pos));
      const Outcome x(I, std::move(atoms));
      if (std::fabs(f.section_mean(I, x) - mu) <= eps) prob += wt;
    });
    return prob;
  }
  if (const auto* d = std::get_if<DenseRepr>(&f.repr())) {
    const CoordSet Ic = I.complement(n);
    const auto strides = gridbuild::full_strides(space);
    return kernels::section_band_measure(
        gridbuild::coord_grid(space, I, true, gridbuild::strides_at(strides, I)),
        gridbuild::coord_grid(space, Ic, true, gridbuild::strides_at(strides, Ic)), d->values, mu,
        eps);
  }
  const auto& r = std::get<Rank1Repr>(f.repr());
  const auto count = space.outcome_count(I);
  require(count.has_value() && *count <= enumeration_cap(), Err::TooLargeToEnumerate,
          "cannot enumerate the section domain of a rank-1 variable over this I");
  double tail_mean = 1.0;
  for (int c : I.complement(n)) tail_mean *= space.factor(c).mean(r.factors[static_cast<size_t>(c - 1)]);
  // lockstep cursors: one carries the probability weight, one the product of values
  kernels::WeightedGrid prob_grid = gridbuild::coord_grid(space, I, true);
  kernels::WeightedGrid value_grid = prob_grid;
  for (int t = 0; t < I.size(); ++t)
    value_grid.weight[static_cast<size_t>(t)] = r.factors[static_cast<size_t>(I.at(t) - 1)];
  kernels::GridCursor pc(prob_grid), vc(value_grid);
  double prob = 0.0;
  for (std::uint64_t i = 0; i < *count; ++i, pc.step(), vc.step())
    if (std::fabs(vc.weight() * tail_mean - mu) <= eps) prob += pc.weight();
  return prob;
}

ConcentrationReport verify_theorem1(const RandomVariable& f, double epsilon, double p,
                                    const SubsetPolicy& policy) {
  const Location loc = locate_interval(f, epsilon, p);
  ConcentrationReport rep;
  rep.n = f.space()->coord_count();
  rep.interval = loc.J;
  rep.params = loc.params;
  rep.gap = loc.gap;
  const std::vector<CoordSet> subsets = build_subsets(loc.J, policy, &rep.policy);
  rep.subsets = check_subsets(f, epsilon, subsets, policy, 0);
  rep.pass = all_pass(rep.subsets);
  return rep;
}

ConcentrationReport verify_corollary2(const RandomVariable& A, double epsilon, double p,
                                      const SubsetPolicy& policy) {
  require(A.is_indicator(), Err::NotAnIndicator, "the event must be 0/1-valued");
  const double pa = A.expectation();
  if (pa == 0.0) {
    ConcentrationReport rep;
    rep.n = A.space()->coord_count();
    rep.policy = "trivial(zero-measure event)";
    rep.pass = true;
    rep.trivial = true;
    return rep;
  }
  const RandomVariable f = scale(A, std::pow(pa, -1.0 / p));
  return verify_theorem1(f, epsilon, p, policy);
}

std::pair<SpacePtr, RandomVariable> p1_counterexample(int n) {
  require(n >= 2, Err::InvalidParameter, "the construction needs at least 2 coordinates");
  SpacePtr space = uniform_product(2, n);
  const std::vector<std::vector<int>> sets(static_cast<size_t>(n), std::vector<int>{0});
  RandomVariable A = RandomVariable::indicator_product(space, sets);
  return {std::move(space), std::move(A)};
}

Lemma8Report lemma8_interval(const RandomVariable& D, int k, int m, double eta) {
  require(k >= 2, Err::InvalidParameter, "alphabet size must be at least 2");
  require(m >= 1, Err::InvalidParameter, "interval width must be at least 1");
  require(eta > 0.0 && eta <= 1.0, Err::InvalidParameter, "eta must lie in (0, 1]");
  const ProductSpace& space = *D.space();
  const int n = space.coord_count();
  for (int c = 1; c <= n; ++c) {
    require(space.factor(c).atom_count() == k, Err::PreconditionViolated,
            "the space must be the uniform k-ary cube");
    for (double w : space.factor(c).weights())
      require(std::fabs(w - 1.0 / k) <= 1e-12, Err::PreconditionViolated,
              "the space must carry the uniform measure");
  }
  const double minimal = 16.0 * m * std::pow(static_cast<double>(k), 3.0 * m) / (eta * eta * eta);
  const long long n_min = static_cast<long long>(std::ceil(minimal));
  require(static_cast<double>(n) >= minimal, Err::PreconditionViolated,
          "n=" + std::to_string(n) + " is below the minimal admissible n = " +
              std::to_string(n_min));
  require(D.is_indicator(), Err::NotAnIndicator, "the event must be 0/1-valued");

  Lemma8Report rep;
  rep.n = n;
  rep.k = k;
  rep.m = m;
  rep.eta = eta;
  rep.n_min = n_min;
  rep.eps = eta * std::pow(static_cast<double>(k), -static_cast<double>(m)) *
            std::pow(2.0, -1.0 / 3.0);
  const double pd = D.expectation();
  rep.event_probability = pd;

  if (pd > 0.0) {
    const RandomVariable f = scale(D, std::pow(pd, -0.5));
    const Location loc = locate_interval(f, rep.eps, 2.0);
    require(loc.J.size() >= 2 * m, Err::InternalContradiction,
            "located interval is shorter than 2m");
    rep.J = loc.J;
    rep.params = loc.params;
    rep.gap = loc.gap;
    rep.I = IndexInterval{loc.J.lo, loc.J.lo + m - 1};
  } else {
    // every section of a zero-measure event is itself zero-measure
    rep.I = IndexInterval{1, m};
    rep.J = rep.I;
  }

  const CoordSet section_coords = rep.I.coords();
  for_each_outcome(space, section_coords, [&](const Outcome& t, double) {
    SectionCheck sc;
    sc.atoms = t.atoms();
    sc.prob = D.section_mean(section_coords, t);
    sc.deviation = std::fabs(sc.prob - pd);
    sc.pass = sc.deviation <= eta;
    rep.sections.push_back(std::move(sc));
  });
  for (const SectionCheck& sc : rep.sections)
    require(sc.pass, Err::UniversalityFailed,
            "a section deviates from the event probability by more than eta");
  rep.pass = true;
  return rep;
}

double mixed_lp_norm(const ProcessFamily& family, double p) {
  require(p >= 1.0, Err::InvalidP, "mixed norms need p >= 1");
  double acc = 0.0;
  for (size_t t = 0; t < family.members.size(); ++t)
    acc += family.t_weights.weight(static_cast<int>(t)) * family.members[t].abs_moment(p);
  return root(acc, p);
}

Theorem9Report theorem9_locate(const ProcessFamily& family, double epsilon, double p,
                               const SubsetPolicy& policy) {
  require(!family.members.empty(), Err::InvalidParameter, "the family has no members");
  require(family.t_weights.atom_count() == static_cast<int>(family.members.size()),
          Err::InvalidParameter, "index weights and member count disagree");
  for (const RandomVariable& member : family.members)
    require(*member.space() == *family.members.front().space(), Err::SpaceMismatch,
            "family members live on different product spaces");
  require(epsilon > 0.0 && epsilon <= 1.0, Err::PreconditionViolated,
          "epsilon must lie in (0, 1]");
  require(p > 1.0 && p <= 2.0, Err::PreconditionViolated, "the family version needs 1 < p <= 2");
  require(mixed_lp_norm(family, p) <= 1.0 + kNormSlack, Err::PreconditionViolated,
          "the mixed L_p norm must be at most 1");

  const SearchParams params = SearchParams::family_mode(epsilon, p);
  const int n = family.members.front().space()->coord_count();
  require(static_cast<double>(n) >= 2.0 / params.c, Err::PreconditionViolated,
          "n=" + std::to_string(n) + " is below the minimal admissible n = " +
              std::to_string(params.min_n()));
  const BlockPlan plan = make_block_plan(n, params.theta, p);
  const size_t count = family.members.size();

  auto conditionals = [&](int level) {
    std::vector<RandomVariable> out;
    out.reserve(count);
    for (const RandomVariable& member : family.members)
      out.push_back(member.conditional_expectation(level).base);
    return out;
  };
  auto mixed_gap = [&](const std::vector<RandomVariable>& hi,
                       const std::vector<RandomVariable>& lo) {
    double acc = 0.0;
    for (size_t t = 0; t < count; ++t)
      acc += family.t_weights.weight(static_cast<int>(t)) * sub(hi[t], lo[t]).abs_moment(p);
    return root(acc, p);
  };

  Theorem9Report rep;
  rep.n = n;
  rep.params = params;

  std::vector<RandomVariable> low = conditionals(plan.points.front());
  std::vector<RandomVariable> high;
  int i = 0, j = 0;
  bool found = false;
  for (long long k = 0; k < plan.ell && !found; ++k) {
    high = conditionals(plan.points[static_cast<size_t>(k) + 1]);
    const double gap = mixed_gap(high, low);
    if (gap <= params.theta) {
      i = plan.points[static_cast<size_t>(k)];
      j = plan.points[static_cast<size_t>(k) + 1];
      rep.gap = gap;
      found = true;
    } else {
      low = std::move(high);
    }
  }
  require(found, Err::InternalContradiction,
          "no block pair within theta; this cannot happen under the preconditions");
  rep.J = IndexInterval{i + 1, j};

  const double good_threshold = epsilon * epsilon;
  std::vector<bool> in_good(count, false);
  std::vector<double> l1_gaps(count, 0.0);
  double good_measure = 0.0;
  for (size_t t = 0; t < count; ++t) {
    l1_gaps[t] = sub(high[t], low[t]).lp_norm(1.0);
    in_good[t] = l1_gaps[t] <= good_threshold;
    if (in_good[t]) good_measure += family.t_weights.weight(static_cast<int>(t));
  }
  rep.good_measure = good_measure;
  require(good_measure >= 1.0 - epsilon, Err::InternalContradiction,
          "the good set is smaller than guaranteed");

  const std::vector<CoordSet> subsets = build_subsets(rep.J, policy, &rep.policy);
  rep.members.resize(count);
  for (size_t t = 0; t < count; ++t) {
    MemberVerdict verdict;
    verdict.t = static_cast<int>(t);
    verdict.in_good_set = in_good[t];
    verdict.l1_gap = l1_gaps[t];
    if (in_good[t]) {
      verdict.subsets =
          check_subsets(family.members[t], epsilon, subsets, policy, static_cast<std::uint64_t>(t) + 1);
      verdict.pass = all_pass(verdict.subsets);
    } else {
      verdict.pass = true;  // the guarantee only covers the good set
    }
    rep.members[t] = std::move(verdict);
  }
  rep.pass = std::all_of(rep.members.begin(), rep.members.end(),
                         [](const MemberVerdict& v) { return v.pass; });
  return rep;
}

}  // namespace conc
