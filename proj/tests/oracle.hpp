#pragma once

// Brute-force reference computations for tests. These walk raw atom tuples
// with plain nested loops and factor weights only; they never touch the table
// marginalisation or kernel paths they are used to check.

#include <cmath>
#include <functional>
#include <vector>

#include "conc/randvar.hpp"
#include "conc/rng.hpp"
#include "conc/space.hpp"

namespace conc::testing {

// full atom tuple: index c-1 holds the atom of coordinate c
using EvalFn = std::function<double(const std::vector<int>&)>;

inline void oracle_for_each_full(const ProductSpace& space,
                                 const std::function<void(const std::vector<int>&, double)>& visit) {
  const int n = space.coord_count();
  std::vector<int> atoms(static_cast<size_t>(n), 0);
  std::function<void(int, double)> rec = [&](int c, double w) {
    if (c > n) {
      visit(atoms, w);
      return;
    }
    for (int a = 0; a < space.factor(c).atom_count(); ++a) {
      atoms[static_cast<size_t>(c - 1)] = a;
      rec(c + 1, w * space.factor(c).weight(a));
    }
  };
  rec(1, 1.0);
}

inline double oracle_expectation(const ProductSpace& space, const EvalFn& f) {
  double acc = 0.0;
  oracle_for_each_full(space, [&](const std::vector<int>& x, double w) { acc += w * f(x); });
  return acc;
}

inline double oracle_abs_moment(const ProductSpace& space, const EvalFn& f, double p) {
  double acc = 0.0;
  oracle_for_each_full(space,
                       [&](const std::vector<int>& x, double w) { acc += w * std::pow(std::fabs(f(x)), p); });
  return acc;
}

inline double oracle_lp_norm(const ProductSpace& space, const EvalFn& f, double p) {
  return std::pow(oracle_abs_moment(space, f, p), 1.0 / p);
}

// E(f_x) for x given as atoms over I (aligned with I's sorted order).
inline double oracle_section_mean(const ProductSpace& space, const CoordSet& I,
                                  const std::vector<int>& atoms_over_I, const EvalFn& f) {
  const int n = space.coord_count();
  const CoordSet Ic = I.complement(n);
  std::vector<int> full(static_cast<size_t>(n), 0);
  for (int t = 0; t < I.size(); ++t)
    full[static_cast<size_t>(I.at(t) - 1)] = atoms_over_I[static_cast<size_t>(t)];
  double acc = 0.0;
  std::function<void(int, double)> rec = [&](int pos, double w) {
    if (pos == Ic.size()) {
      acc += w * f(full);
      return;
    }
    const int c = Ic.at(pos);
    for (int a = 0; a < space.factor(c).atom_count(); ++a) {
      full[static_cast<size_t>(c - 1)] = a;
      rec(pos + 1, w * space.factor(c).weight(a));
    }
  };
  rec(0, 1.0);
  return acc;
}

inline void oracle_for_each_over(const ProductSpace& space, const CoordSet& I,
                                 const std::function<void(const std::vector<int>&, double)>& visit) {
  std::vector<int> atoms(static_cast<size_t>(I.size()), 0);
  std::function<void(int, double)> rec = [&](int pos, double w) {
    if (pos == I.size()) {
      visit(atoms, w);
      return;
    }
    const int c = I.at(pos);
    for (int a = 0; a < space.factor(c).atom_count(); ++a) {
      atoms[static_cast<size_t>(pos)] = a;
      rec(pos + 1, w * space.factor(c).weight(a));
    }
  };
  rec(0, 1.0);
}

inline double oracle_concentration_probability(const ProductSpace& space, const EvalFn& f,
                                               const CoordSet& I, double eps) {
  const double mu = oracle_expectation(space, f);
  double prob = 0.0;
  oracle_for_each_over(space, I, [&](const std::vector<int>& x, double w) {
    if (std::fabs(oracle_section_mean(space, I, x, f) - mu) <= eps) prob += w;
  });
  return prob;
}

inline EvalFn eval_of(const RandomVariable& rv) {
  return [&rv](const std::vector<int>& atoms) {
    const int n = rv.space()->coord_count();
    return rv.eval(Outcome(CoordSet::full(n), atoms));
  };
}

// L_p distance of two variables recomputed from pointwise evaluations over
// the given support coordinates only (both must ignore the others).
inline double oracle_support_lp_gap(const ProductSpace& space, const CoordSet& support,
                                    const RandomVariable& a, const RandomVariable& b, double p) {
  const int n = space.coord_count();
  double acc = 0.0;
  oracle_for_each_over(space, support, [&](const std::vector<int>& atoms, double w) {
    std::vector<int> full(static_cast<size_t>(n), 0);
    for (int t = 0; t < support.size(); ++t)
      full[static_cast<size_t>(support.at(t) - 1)] = atoms[static_cast<size_t>(t)];
    const Outcome x(CoordSet::full(n), full);
    acc += w * std::pow(std::fabs(a.eval(x) - b.eval(x)), p);
  });
  return std::pow(acc, 1.0 / p);
}

// Seeded generators shared by tests.
inline RandomVariable random_dense(const SpacePtr& space, RngStream& stream) {
  std::vector<double> v(*space->outcome_count());
  for (double& x : v) x = stream.uniform(-1.0, 1.0);
  return RandomVariable::dense(space, std::move(v));
}

inline RandomVariable random_junta(const SpacePtr& space, RngStream& stream, int max_support) {
  const int n = space->coord_count();
  const int size = static_cast<int>(stream.uniform_int(1, std::min(n, max_support)));
  const CoordSet support(stream.sample_distinct(size, 1, n));
  std::vector<double> v(*space->outcome_count(support));
  for (double& x : v) x = stream.uniform(-1.0, 1.0);
  return RandomVariable::junta(space, support, std::move(v));
}

// Junta rescaled to unit L_p norm.
inline RandomVariable random_junta_unit(const SpacePtr& space, RngStream& stream, int max_support,
                                        double p) {
  RandomVariable f = random_junta(space, stream, max_support);
  const double norm = f.lp_norm(p);
  return norm > 0.0 ? scale(f, 1.0 / norm) : f;
}

// Random 0/1 junta event with at least one atom inside.
inline RandomVariable random_junta_event(const SpacePtr& space, RngStream& stream,
                                         int max_support) {
  const int n = space->coord_count();
  const int size = static_cast<int>(stream.uniform_int(1, std::min(n, max_support)));
  const CoordSet support(stream.sample_distinct(size, 1, n));
  std::vector<double> v(*space->outcome_count(support), 0.0);
  bool any = false;
  for (double& x : v) {
    x = stream.uniform01() < 0.5 ? 1.0 : 0.0;
    any = any || x == 1.0;
  }
  if (!any) v[static_cast<size_t>(stream.uniform_int(0, static_cast<std::int64_t>(v.size()) - 1))] = 1.0;
  return RandomVariable::junta(space, support, std::move(v));
}

template <class Fn>
bool throws_code(Fn&& fn, Err expected) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == expected;
  } catch (...) {
    return false;
  }
  return false;
}

}  // namespace conc::testing
