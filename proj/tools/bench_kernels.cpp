// Wall-clock comparison of the serial reference kernels against the
// OpenMP-chunked ones on dense product-space workloads.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "conc/grid_build.hpp"
#include "conc/kernels.hpp"
#include "conc/rng.hpp"
#include "conc/space.hpp"

namespace {

using conc::CoordSet;
using conc::kernels::WeightedGrid;

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <class Fn>
double time_best_of(int reps, Fn&& fn, double* result) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = now_ms();
    *result = fn();
    best = std::min(best, now_ms() - t0);
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms, double serial_val,
            double parallel_val) {
  std::printf("%-24s %10.2f ms %10.2f ms %8.2fx   |serial-parallel| = %.3g\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms, std::fabs(serial_val - parallel_val));
}

}  // namespace

int main(int argc, char** argv) {
  int bits = 22;
  int reps = 3;
  for (int a = 1; a + 1 < argc; a += 2) {
    const std::string flag = argv[a];
    if (flag == "--bits") bits = std::stoi(argv[a + 1]);
    if (flag == "--reps") reps = std::stoi(argv[a + 1]);
  }

  const auto space = conc::uniform_product(2, bits);
  const std::uint64_t total = *space->outcome_count();
  std::vector<double> values(total);
  conc::RngStream stream = conc::RngStream::seeded(7);
  for (double& v : values) v = stream.uniform(-1.0, 1.0);

#ifdef _OPENMP
  std::printf("n = %d fair bits (%llu outcomes), %d thread(s)\n", bits,
              static_cast<unsigned long long>(total), omp_get_max_threads());
#else
  std::printf("n = %d fair bits (%llu outcomes), OpenMP disabled\n", bits,
              static_cast<unsigned long long>(total));
#endif
  std::printf("%-24s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  const CoordSet all = CoordSet::full(bits);
  const WeightedGrid full = conc::gridbuild::coord_grid(*space, all, true);

  double s_val = 0, p_val = 0;
  double s_ms = time_best_of(reps, [&] { return conc::kernels::weighted_sum_serial(full, values); },
                             &s_val);
  double p_ms =
      time_best_of(reps, [&] { return conc::kernels::weighted_sum(full, values); }, &p_val);
  report("weighted_sum", s_ms, p_ms, s_val, p_val);

  s_ms = time_best_of(
      reps, [&] { return conc::kernels::weighted_abs_pow_sum_serial(full, values, 1.5); }, &s_val);
  p_ms = time_best_of(reps, [&] { return conc::kernels::weighted_abs_pow_sum(full, values, 1.5); },
                      &p_val);
  report("weighted_abs_pow_sum", s_ms, p_ms, s_val, p_val);

  {
    const CoordSet tail_coords = CoordSet::range(bits / 2 + 1, bits);
    const WeightedGrid tail = conc::gridbuild::coord_grid(*space, tail_coords, true);
    const std::uint64_t head = total / tail.size();
    std::vector<double> s_out, p_out;
    s_ms = time_best_of(
        reps,
        [&] {
          s_out = conc::kernels::block_tail_means_serial(tail, values, head);
          return s_out.front();
        },
        &s_val);
    p_ms = time_best_of(
        reps,
        [&] {
          p_out = conc::kernels::block_tail_means(tail, values, head);
          return p_out.front();
        },
        &p_val);
    report("block_tail_means", s_ms, p_ms, s_val, p_val);
  }

  {
    // odd coordinates outside, even inside: a deliberately interleaved split
    std::vector<int> odd, even;
    for (int c = 1; c <= bits; ++c) (c % 2 ? odd : even).push_back(c);
    const auto strides = conc::gridbuild::full_strides(*space);
    const WeightedGrid outer = conc::gridbuild::coord_grid(
        *space, CoordSet(odd), true, conc::gridbuild::strides_at(strides, CoordSet(odd)));
    const WeightedGrid inner = conc::gridbuild::coord_grid(
        *space, CoordSet(even), true, conc::gridbuild::strides_at(strides, CoordSet(even)));
    s_ms = time_best_of(
        reps,
        [&] { return conc::kernels::section_band_measure_serial(outer, inner, values, 0.0, 0.01); },
        &s_val);
    p_ms = time_best_of(
        reps, [&] { return conc::kernels::section_band_measure(outer, inner, values, 0.0, 0.01); },
        &p_val);
    report("section_band_measure", s_ms, p_ms, s_val, p_val);
  }

  return 0;
}
