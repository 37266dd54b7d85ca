#pragma once

#include "conc/randvar.hpp"
#include "conc/rng.hpp"

namespace conc {

/// Sampled probability with a two-sided Hoeffding confidence half-width.
struct Estimate {
  double value = 0.0;
  double half_width = 0.0;
  double confidence = 0.0;
  long long samples = 0;
  std::uint64_t seed = 0;
};

// sqrt(ln(2/(1−confidence)) / (2·samples)): the half-width that brackets the
// mean of a [0,1]-bounded indicator at the stated confidence.
double hoeffding_half_width(long long samples, double confidence);

// Draws each coordinate's atom independently per its factor weights.
Outcome sample_outcome(const ProductSpace& space, const CoordSet& I, RngStream& stream);

// Empirical frequency of { |E(f_x) − E(f)| ≤ eps } over seeded draws of x;
// each section mean is computed exactly.
Estimate estimate_concentration(const RandomVariable& f, const CoordSet& I, double eps,
                                long long samples, double confidence, std::uint64_t seed);

}  // namespace conc
