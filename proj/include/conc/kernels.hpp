#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace conc::kernels {

// Mixed-radix grid with per-position atom weights and per-position strides
// into a flat table. Positions are row-major: position 0 varies slowest.
struct WeightedGrid {
  std::vector<int> radix;
  std::vector<std::vector<double>> weight;  // one table per position
  std::vector<std::uint64_t> stride;        // contribution of each atom step

  std::uint64_t size() const {
    std::uint64_t s = 1;
    for (int r : radix) s *= static_cast<std::uint64_t>(r);
    return s;
  }
};

/// Row-major cursor over a WeightedGrid carrying the running atom tuple,
/// product weight, and flat offset. Amortised O(1) per step.
class GridCursor {
 public:
  explicit GridCursor(const WeightedGrid& g, std::uint64_t start = 0) : g_(&g) {
    const size_t m = g.radix.size();
    atoms_.assign(m, 0);
    wpre_.assign(m + 1, 1.0);
    opre_.assign(m + 1, 0);
    std::uint64_t rem = start;
    for (size_t t = m; t-- > 0;) {
      atoms_[t] = static_cast<int>(rem % static_cast<std::uint64_t>(g.radix[t]));
      rem /= static_cast<std::uint64_t>(g.radix[t]);
    }
    refresh(0);
  }

  double weight() const { return wpre_.back(); }
  std::uint64_t offset() const { return opre_.back(); }
  const std::vector<int>& atoms() const { return atoms_; }

  // Advances row-major; returns false when wrapping past the end.
  bool step() {
    size_t t = atoms_.size();
    while (t-- > 0) {
      if (++atoms_[t] < g_->radix[t]) {
        refresh(t);
        return true;
      }
      atoms_[t] = 0;
    }
    refresh(0);
    return false;
  }

 private:
  void refresh(size_t from) {
    for (size_t t = from; t < atoms_.size(); ++t) {
      wpre_[t + 1] = wpre_[t] * g_->weight[t][static_cast<size_t>(atoms_[t])];
      opre_[t + 1] = opre_[t] + static_cast<std::uint64_t>(atoms_[t]) * g_->stride[t];
    }
  }

  const WeightedGrid* g_;
  std::vector<int> atoms_;
  std::vector<double> wpre_;
  std::vector<std::uint64_t> opre_;
};

inline double pow_abs(double x, double p) {
  const double a = std::fabs(x);
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  return std::pow(a, p);
}

// Σ_i w(i) · v[off(i)] over the whole grid.
double weighted_sum_serial(const WeightedGrid& g, std::span<const double> v);
double weighted_sum(const WeightedGrid& g, std::span<const double> v);

// Σ_i w(i) · |v[off(i)]|^p.
double weighted_abs_pow_sum_serial(const WeightedGrid& g, std::span<const double> v, double p);
double weighted_abs_pow_sum(const WeightedGrid& g, std::span<const double> v, double p);

// Per-block tail means: out[h] = Σ_t w(t) · v[h · tail.size() + off(t)].
std::vector<double> block_tail_means_serial(const WeightedGrid& tail, std::span<const double> v,
                                            std::uint64_t head);
std::vector<double> block_tail_means(const WeightedGrid& tail, std::span<const double> v,
                                     std::uint64_t head);

// Section scans over an outer/inner split of one flat table:
//   a(x) = Σ_y w_in(y) · v[off(x) + off(y)]
// band measure:  Σ_x w_out(x) · [ |a(x) − mu| ≤ eps ]
double section_band_measure_serial(const WeightedGrid& outer, const WeightedGrid& inner,
                                   std::span<const double> v, double mu, double eps);
double section_band_measure(const WeightedGrid& outer, const WeightedGrid& inner,
                            std::span<const double> v, double mu, double eps);

//   b(x) = Σ_y w_in(y) · |v[off(x) + off(y)]|
// power mean:    Σ_x w_out(x) · b(x)^p
double section_abs_mean_pow_serial(const WeightedGrid& outer, const WeightedGrid& inner,
                                   std::span<const double> v, double p);
double section_abs_mean_pow(const WeightedGrid& outer, const WeightedGrid& inner,
                            std::span<const double> v, double p);

}  // namespace conc::kernels
