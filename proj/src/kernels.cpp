#include "conc/kernels.hpp"

#include <algorithm>

namespace conc::kernels {

namespace {

// Fixed chunking so parallel reductions merge partial sums in a fixed order:
// results are bit-identical for any thread count, including one.
constexpr std::uint64_t kChunk = 1 << 15;

std::uint64_t outer_chunk(std::uint64_t inner_size) {
  return std::clamp<std::uint64_t>(kChunk / std::max<std::uint64_t>(1, inner_size), 1, kChunk);
}

template <class PerElement>
double chunked_reduce(const WeightedGrid& g, std::uint64_t chunk, PerElement&& body) {
  const std::uint64_t n = g.size();
  const std::uint64_t nchunks = (n + chunk - 1) / chunk;
  std::vector<double> partial(nchunks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(nchunks); ++c) {
    const std::uint64_t lo = static_cast<std::uint64_t>(c) * chunk;
    const std::uint64_t hi = std::min(n, lo + chunk);
    GridCursor cur(g, lo);
    double acc = 0.0;
    for (std::uint64_t i = lo; i < hi; ++i, cur.step()) acc += body(cur);
    partial[static_cast<std::uint64_t>(c)] = acc;
  }
  double total = 0.0;
  for (double x : partial) total += x;
  return total;
}

template <class PerElement>
double serial_reduce(const WeightedGrid& g, PerElement&& body) {
  const std::uint64_t n = g.size();
  GridCursor cur(g);
  double acc = 0.0;
  for (std::uint64_t i = 0; i < n; ++i, cur.step()) acc += body(cur);
  return acc;
}

double inner_mean(const WeightedGrid& inner, const double* base) {
  GridCursor cur(inner);
  const std::uint64_t n = inner.size();
  double acc = 0.0;
  for (std::uint64_t i = 0; i < n; ++i, cur.step()) acc += cur.weight() * base[cur.offset()];
  return acc;
}

double inner_abs_mean(const WeightedGrid& inner, const double* base) {
  GridCursor cur(inner);
  const std::uint64_t n = inner.size();
  double acc = 0.0;
  for (std::uint64_t i = 0; i < n; ++i, cur.step())
    acc += cur.weight() * std::fabs(base[cur.offset()]);
  return acc;
}

}  // namespace

double weighted_sum_serial(const WeightedGrid& g, std::span<const double> v) {
  return serial_reduce(g, [&](const GridCursor& c) { return c.weight() * v[c.offset()]; });
}

double weighted_sum(const WeightedGrid& g, std::span<const double> v) {
  return chunked_reduce(g, kChunk,
                        [&](const GridCursor& c) { return c.weight() * v[c.offset()]; });
}

double weighted_abs_pow_sum_serial(const WeightedGrid& g, std::span<const double> v, double p) {
  return serial_reduce(g, [&](const GridCursor& c) { return c.weight() * pow_abs(v[c.offset()], p); });
}

double weighted_abs_pow_sum(const WeightedGrid& g, std::span<const double> v, double p) {
  return chunked_reduce(
      g, kChunk, [&](const GridCursor& c) { return c.weight() * pow_abs(v[c.offset()], p); });
}

std::vector<double> block_tail_means_serial(const WeightedGrid& tail, std::span<const double> v,
                                            std::uint64_t head) {
  const std::uint64_t tsz = tail.size();
  std::vector<double> out(head, 0.0);
  for (std::uint64_t h = 0; h < head; ++h) out[h] = inner_mean(tail, v.data() + h * tsz);
  return out;
}

std::vector<double> block_tail_means(const WeightedGrid& tail, std::span<const double> v,
                                     std::uint64_t head) {
  const std::uint64_t tsz = tail.size();
  std::vector<double> out(head, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t h = 0; h < static_cast<std::int64_t>(head); ++h)
    out[static_cast<std::uint64_t>(h)] =
        inner_mean(tail, v.data() + static_cast<std::uint64_t>(h) * tsz);
  return out;
}

double section_band_measure_serial(const WeightedGrid& outer, const WeightedGrid& inner,
                                   std::span<const double> v, double mu, double eps) {
  return serial_reduce(outer, [&](const GridCursor& c) {
    const double a = inner_mean(inner, v.data() + c.offset());
    return std::fabs(a - mu) <= eps ? c.weight() : 0.0;
  });
}

double section_band_measure(const WeightedGrid& outer, const WeightedGrid& inner,
                            std::span<const double> v, double mu, double eps) {
  return chunked_reduce(outer, outer_chunk(inner.size()), [&](const GridCursor& c) {
    const double a = inner_mean(inner, v.data() + c.offset());
    return std::fabs(a - mu) <= eps ? c.weight() : 0.0;
  });
}

double section_abs_mean_pow_serial(const WeightedGrid& outer, const WeightedGrid& inner,
                                   std::span<const double> v, double p) {
  return serial_reduce(outer, [&](const GridCursor& c) {
    return c.weight() * pow_abs(inner_abs_mean(inner, v.data() + c.offset()), p);
  });
}

double section_abs_mean_pow(const WeightedGrid& outer, const WeightedGrid& inner,
                            std::span<const double> v, double p) {
  return chunked_reduce(outer, outer_chunk(inner.size()), [&](const GridCursor& c) {
    return c.weight() * pow_abs(inner_abs_mean(inner, v.data() + c.offset()), p);
  });
}

}  // namespace conc::kernels
