#include <doctest.h>

#include <cmath>

#include "conc/concentration.hpp"
#include "conc/montecarlo.hpp"
#include "oracle.hpp"

using namespace conc;
using namespace conc::testing;

TEST_CASE("hoeffding half-width") {
  CHECK(hoeffding_half_width(1000, 0.99) ==
        doctest::Approx(std::sqrt(std::log(200.0) / 2000.0)).epsilon(1e-15));
  // 0.05 at confidence 0.99 needs 1060 samples
  CHECK(hoeffding_half_width(1060, 0.99) <= 0.05);
  CHECK(hoeffding_half_width(1059, 0.99) > 0.05);
  CHECK(throws_code([] { hoeffding_half_width(0, 0.99); }, Err::InvalidParameter));
  CHECK(throws_code([] { hoeffding_half_width(10, 1.0); }, Err::InvalidParameter));
}

TEST_CASE("outcome sampling") {
  const auto degenerate = make_space({FiniteSpace({1.0}), FiniteSpace({1.0})});
  RngStream stream = RngStream::seeded(3);
  for (int i = 0; i < 10; ++i) {
    const Outcome x = sample_outcome(*degenerate, CoordSet::full(2), stream);
    CHECK(x.atoms() == std::vector<int>{0, 0});
  }

  RngStream a = RngStream::seeded(42);
  RngStream b = RngStream::seeded(42);
  const auto space = uniform_product(3, 4);
  for (int i = 0; i < 100; ++i) {
    CHECK(sample_outcome(*space, CoordSet::full(4), a).atoms() ==
          sample_outcome(*space, CoordSet::full(4), b).atoms());
  }

  const auto bit = uniform_product(2, 1);
  RngStream freq_stream = RngStream::seeded(7);
  long long zeros = 0;
  const long long draws = 100000;
  for (long long i = 0; i < draws; ++i)
    if (sample_outcome(*bit, CoordSet::single(1), freq_stream).atom_at_coord(1) == 0) ++zeros;
  CHECK(std::fabs(static_cast<double>(zeros) / draws - 0.5) <= 0.01);

  CHECK(throws_code([&] { sample_outcome(*space, CoordSet{}, a); }, Err::EmptyCoordSet));
}

TEST_CASE("concentration estimates") {
  const auto space = uniform_product(2, 6);
  const RandomVariable c = RandomVariable::constant(space, 0.4);
  const Estimate sure = estimate_concentration(c, CoordSet::range(1, 3), 0.1, 500, 0.99, 9);
  CHECK(sure.value == 1.0);
  CHECK(sure.samples == 500);

  // bit-identical reproduction
  RngStream stream = RngStream::seeded(11);
  const RandomVariable f = random_junta(space, stream, 4);
  const Estimate e1 = estimate_concentration(f, CoordSet({1, 4}), 0.3, 400, 0.95, 77);
  const Estimate e2 = estimate_concentration(f, CoordSet({1, 4}), 0.3, 400, 0.95, 77);
  CHECK(e1.value == e2.value);
  CHECK(e1.half_width == e2.half_width);
  CHECK(e1.value >= 0.0);
  CHECK(e1.value <= 1.0);
}

TEST_CASE("estimate brackets the exact junta probability at scale") {
  const auto space = uniform_product(2, 176);
  RngStream stream = RngStream::seeded(13);
  const RandomVariable f = random_junta(space, stream, 8);
  const CoordSet I = CoordSet::range(1, 88);
  const double eps = 0.25;
  const double exact = concentration_probability(f, I, eps);
  const Estimate est = estimate_concentration(f, I, eps, 2000, 0.99, 5);
  CHECK(std::fabs(est.value - exact) <= est.half_width);
}
