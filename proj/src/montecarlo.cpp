#include "conc/montecarlo.hpp"

#include <cmath>

namespace conc {

double hoeffding_half_width(long long samples, double confidence) {
  require(samples >= 1, Err::InvalidParameter, "need at least one sample");
  require(confidence > 0.0 && confidence < 1.0, Err::InvalidParameter,
          "confidence must lie in (0, 1)");
  return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(samples)));
}

Outcome sample_outcome(const ProductSpace& space, const CoordSet& I, RngStream& stream) {
  require(!I.empty(), Err::EmptyCoordSet, "cannot sample an outcome over the empty set");
  space.check_coords(I);
  std::vector<int> atoms;
  atoms.reserve(static_cast<size_t>(I.size()));
  for (int c : I) atoms.push_back(stream.pick_atom(space.factor(c)));
  return Outcome(I, std::move(atoms));
}

Estimate estimate_concentration(const RandomVariable& f, const CoordSet& I, double eps,
                                long long samples, double confidence, std::uint64_t seed) {
  const double half_width = hoeffding_half_width(samples, confidence);
  const double mu = f.expectation();
  RngStream stream = RngStream::seeded(seed);
  long long hits = 0;
  for (long long s = 0; s < samples; ++s) {
    const Outcome x = sample_outcome(*f.space(), I, stream);
    if (std::fabs(f.section_mean(I, x) - mu) <= eps) ++hits;
  }
  Estimate est;
  est.value = static_cast<double>(hits) / static_cast<double>(samples);
  est.half_width = half_width;
  est.confidence = confidence;
  est.samples = samples;
  est.seed = seed;
  return est;
}

}  // namespace conc
