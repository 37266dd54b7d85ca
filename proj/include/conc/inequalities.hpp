#pragma once

#include <string>

#include "conc/randvar.hpp"

namespace conc {

/// Outcome of one numerical inequality check: lhs ≤ rhs up to a relative
/// tolerance.
struct IneqReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs − lhs
  double tol = 0.0;
  bool holds = false;  // lhs ≤ rhs + tol·max(|lhs|, |rhs|)
  std::string context;
};

inline constexpr double kIneqTol = 1e-9;

IneqReport make_ineq_report(double lhs, double rhs, double tol, std::string context);

// Square-function bound for martingale difference sequences in L_p, 1 < p ≤ 2:
//   (Σ ‖d_i‖²_{L_p})^{1/2}  ≤  (1/(p−1))^{1/2} · ‖Σ d_i‖_{L_p}
IneqReport check_ricard_xu(const MartingaleDiffs& diffs, double p);

// Sharp uniform convexity two-point inequality for L_p, 1 < p ≤ 2:
//   ‖x‖² + (p−1)‖y‖²  ≤  (‖x+y‖² + ‖x−y‖²) / 2
IneqReport check_bcl(const RandomVariable& x, const RandomVariable& y, double p);

// Sections inequality, p ≥ 1:
//   Σ_x P_I(x) · ‖g_x − h_x‖^p_{L_1}  ≤  ‖g − h‖^p_{L_p}
IneqReport check_lemma6(const RandomVariable& g, const RandomVariable& h, const CoordSet& I,
                        double p);

// Seeded test-instance generator: draws a dense or junta variable with
// entries i.i.d. uniform on [−1, 1], rescales so every L_p norm is ≤ bound,
// picks cut_count sorted random cuts and differences along them.
MartingaleDiffs random_martingale(const SpacePtr& space, int cut_count, std::uint64_t seed,
                                  double bound);

}  // namespace conc
