#include <doctest.h>

#include <cmath>
#include <functional>

#include "conc/grid_build.hpp"
#include "conc/kernels.hpp"
#include "conc/rng.hpp"
#include "conc/space.hpp"

using namespace conc;
using kernels::GridCursor;
using kernels::WeightedGrid;

namespace {

// naive recomputation of Σ w(i)·op(v[off(i)]) by explicit digit recursion
double naive_reduce(const WeightedGrid& g, const std::vector<double>& v,
                    const std::function<double(double)>& op) {
  double acc = 0.0;
  std::function<void(size_t, double, std::uint64_t)> rec = [&](size_t pos, double w,
                                                               std::uint64_t off) {
    if (pos == g.radix.size()) {
      acc += w * op(v[off]);
      return;
    }
    for (int a = 0; a < g.radix[pos]; ++a)
      rec(pos + 1, w * g.weight[pos][static_cast<size_t>(a)],
          off + static_cast<std::uint64_t>(a) * g.stride[pos]);
  };
  rec(0, 1.0, 0);
  return acc;
}

WeightedGrid random_grid(RngStream& stream, int positions, std::uint64_t* size) {
  WeightedGrid g;
  *size = 1;
  for (int t = 0; t < positions; ++t) {
    const int r = static_cast<int>(stream.uniform_int(2, 3));
    g.radix.push_back(r);
    std::vector<double> w(static_cast<size_t>(r));
    for (double& x : w) x = stream.uniform(0.1, 1.0);
    g.weight.push_back(std::move(w));
    *size *= static_cast<std::uint64_t>(r);
  }
  g.stride.assign(g.radix.size(), 1);
  // own row-major strides
  for (size_t t = g.radix.size(); t-- > 1;)
    g.stride[t - 1] = g.stride[t] * static_cast<std::uint64_t>(g.radix[t]);
  return g;
}

}  // namespace

TEST_CASE("cursor start offsets match stepping") {
  RngStream stream = RngStream::seeded(5);
  std::uint64_t size = 0;
  const WeightedGrid g = random_grid(stream, 6, &size);
  GridCursor walked(g);
  for (std::uint64_t i = 0; i < size; ++i, walked.step()) {
    GridCursor jumped(g, i);
    CHECK(jumped.offset() == walked.offset());
    CHECK(jumped.weight() == walked.weight());
  }
}

TEST_CASE("weighted sums match the naive recursion and the serial reference") {
  RngStream stream = RngStream::seeded(17);
  for (int trial = 0; trial < 10; ++trial) {
    std::uint64_t size = 0;
    const WeightedGrid g = random_grid(stream, static_cast<int>(stream.uniform_int(0, 8)), &size);
    std::vector<double> v(size);
    for (double& x : v) x = stream.uniform(-1.0, 1.0);

    const double naive = naive_reduce(g, v, [](double x) { return x; });
    const double serial = kernels::weighted_sum_serial(g, v);
    const double parallel = kernels::weighted_sum(g, v);
    CHECK(serial == doctest::Approx(naive).epsilon(1e-13));
    CHECK(parallel == serial);  // single chunk at this size

    const double p = 1.7;
    const double naive_pow = naive_reduce(g, v, [&](double x) { return std::pow(std::fabs(x), p); });
    CHECK(kernels::weighted_abs_pow_sum_serial(g, v, p) == doctest::Approx(naive_pow).epsilon(1e-13));
    CHECK(kernels::weighted_abs_pow_sum(g, v, p) ==
          doctest::Approx(naive_pow).epsilon(1e-13));
  }
}

TEST_CASE("parallel reduction equals serial within rounding on large tables") {
  const auto space = uniform_product(2, 18);
  const WeightedGrid g = gridbuild::coord_grid(*space, CoordSet::full(18), true);
  std::vector<double> v(*space->outcome_count());
  RngStream stream = RngStream::seeded(23);
  for (double& x : v) x = stream.uniform(-1.0, 1.0);
  const double serial = kernels::weighted_sum_serial(g, v);
  const double parallel = kernels::weighted_sum(g, v);
  CHECK(parallel == doctest::Approx(serial).epsilon(1e-12));
  // deterministic across repeated calls
  CHECK(parallel == kernels::weighted_sum(g, v));
}

TEST_CASE("block tail means") {
  const auto space = uniform_product(2, 6);
  RngStream stream = RngStream::seeded(31);
  std::vector<double> v(64);
  for (double& x : v) x = stream.uniform(-1.0, 1.0);
  const WeightedGrid tail = gridbuild::coord_grid(*space, CoordSet::range(4, 6), true);
  const auto serial = kernels::block_tail_means_serial(tail, v, 8);
  const auto parallel = kernels::block_tail_means(tail, v, 8);
  REQUIRE(serial.size() == 8);
  for (std::uint64_t h = 0; h < 8; ++h) {
    double expect = 0.0;
    for (std::uint64_t t = 0; t < 8; ++t) expect += 0.125 * v[h * 8 + t];
    CHECK(serial[h] == doctest::Approx(expect).epsilon(1e-13));
    CHECK(parallel[h] == serial[h]);
  }
}

TEST_CASE("section scans against the naive double loop") {
  const auto space = uniform_product(2, 8);
  RngStream stream = RngStream::seeded(41);
  std::vector<double> v(256);
  for (double& x : v) x = stream.uniform(-1.0, 1.0);
  const CoordSet I({1, 3, 6});
  const CoordSet Ic = I.complement(8);
  const auto strides = gridbuild::full_strides(*space);
  const WeightedGrid outer = gridbuild::coord_grid(*space, I, true, gridbuild::strides_at(strides, I));
  const WeightedGrid inner =
      gridbuild::coord_grid(*space, Ic, true, gridbuild::strides_at(strides, Ic));

  double naive_band = 0.0;
  double naive_pow = 0.0;
  const double mu = 0.05, eps = 0.2, p = 1.5;
  GridCursor ox(outer);
  for (std::uint64_t x = 0; x < outer.size(); ++x, ox.step()) {
    double mean = 0.0, abs_mean = 0.0;
    GridCursor iy(inner);
    for (std::uint64_t y = 0; y < inner.size(); ++y, iy.step()) {
      mean += iy.weight() * v[ox.offset() + iy.offset()];
      abs_mean += iy.weight() * std::fabs(v[ox.offset() + iy.offset()]);
    }
    if (std::fabs(mean - mu) <= eps) naive_band += ox.weight();
    naive_pow += ox.weight() * std::pow(abs_mean, p);
  }

  CHECK(kernels::section_band_measure_serial(outer, inner, v, mu, eps) ==
        doctest::Approx(naive_band).epsilon(1e-13));
  CHECK(kernels::section_band_measure(outer, inner, v, mu, eps) ==
        doctest::Approx(naive_band).epsilon(1e-13));
  CHECK(kernels::section_abs_mean_pow_serial(outer, inner, v, p) ==
        doctest::Approx(naive_pow).epsilon(1e-13));
  CHECK(kernels::section_abs_mean_pow(outer, inner, v, p) ==
        doctest::Approx(naive_pow).epsilon(1e-13));
}
