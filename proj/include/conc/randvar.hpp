#pragma once

#include <span>
#include <variant>
#include <vector>

#include "conc/space.hpp"

namespace conc {

// Dense table over all full outcomes, row-major with coordinate 1 slowest.
struct DenseRepr {
  std::vector<double> values;
};

// Product of per-coordinate tables: f(x) = Π_i table_i[x_i].
struct Rank1Repr {
  std::vector<std::vector<double>> factors;
};

// Function of the support coordinates only; table is row-major over the
// support in increasing coordinate order. Empty support encodes a constant.
struct JuntaRepr {
  CoordSet support;
  std::vector<double> values;
};

class RandomVariable;

/// A random variable known to depend only on coordinates 1..level.
struct FilteredRV;

/// Differences of successive conditional expectations along the coordinate
/// filtration at the given cut levels.
struct MartingaleDiffs;

/// Real random variable on a product space, in one of three representations.
/// Values are immutable after construction.
class RandomVariable {
 public:
  static RandomVariable dense(SpacePtr space, std::vector<double> values);
  static RandomVariable rank1(SpacePtr space, std::vector<std::vector<double>> factors);
  static RandomVariable junta(SpacePtr space, CoordSet support, std::vector<double> values);
  static RandomVariable constant(SpacePtr space, double value);
  // Indicator of A_1 × ... × A_n; one atom-index set per coordinate (0-based).
  static RandomVariable indicator_product(SpacePtr space,
                                          const std::vector<std::vector<int>>& sets);

  const SpacePtr& space() const { return space_; }
  const std::variant<DenseRepr, Rank1Repr, JuntaRepr>& repr() const { return repr_; }
  bool is_dense() const { return std::holds_alternative<DenseRepr>(repr_); }
  bool is_rank1() const { return std::holds_alternative<Rank1Repr>(repr_); }
  bool is_junta() const { return std::holds_alternative<JuntaRepr>(repr_); }

  double eval(const Outcome& x) const;  // x must be a full outcome

  double expectation() const;
  double abs_moment(double p) const;  // E|f|^p, p ≥ 1
  double lp_norm(double p) const;     // (E|f|^p)^(1/p)

  // f_x on the complementary coordinates; I and its complement nonempty.
  RandomVariable section(const CoordSet& I, const Outcome& x) const;
  // E(f_x) without materialising the section.
  double section_mean(const CoordSet& I, const Outcome& x) const;

  // E(f | first m coordinates); m = 0 gives the constant E(f), m = n gives f.
  FilteredRV conditional_expectation(int m) const;

  RandomVariable densify() const;  // dense copy, enumeration cap permitting
  bool is_indicator() const;       // every value exactly 0 or 1

 private:
  RandomVariable(SpacePtr space, std::variant<DenseRepr, Rank1Repr, JuntaRepr> repr)
      : space_(std::move(space)), repr_(std::move(repr)) {}

  SpacePtr space_;
  std::variant<DenseRepr, Rank1Repr, JuntaRepr> repr_;
};

struct FilteredRV {
  RandomVariable base;
  int level = 0;
};

struct MartingaleDiffs {
  std::vector<RandomVariable> diffs;
  std::vector<int> levels;
};

// d_1 = E(f|S_{i_1}), d_{t+1} = E(f|S_{i_{t+1}}) − E(f|S_{i_t}); cuts must be
// strictly increasing within 1..n (NonIncreasingCuts otherwise).
MartingaleDiffs martingale_differences(const RandomVariable& f, const std::vector<int>& cuts);

// a·x + b·y. Junta/Junta stays a junta on the union support; anything else is
// densified first (enumeration cap permitting). Spaces must match.
RandomVariable lincomb(double a, const RandomVariable& x, double b, const RandomVariable& y);
RandomVariable add(const RandomVariable& x, const RandomVariable& y);
RandomVariable sub(const RandomVariable& x, const RandomVariable& y);
RandomVariable scale(const RandomVariable& x, double s);

RandomVariable sum(const MartingaleDiffs& md);

}  // namespace conc
