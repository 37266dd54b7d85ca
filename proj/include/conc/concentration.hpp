#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conc/randvar.hpp"

namespace conc {

/// Derived constants of the interval-location guarantee. The two modes differ
/// only in the exponent that turns the deviation bound into the search
/// threshold theta; c = theta²(p−1)/4 holds exactly in both by construction.
struct SearchParams {
  enum class Mode { plain, family };

  double epsilon = 0.0;
  double p = 0.0;
  double theta = 0.0;
  double c = 0.0;
  long long ell = 0;
  Mode mode = Mode::plain;

  static SearchParams plain_mode(double epsilon, double p);   // theta = eps^((p+1)/p)
  static SearchParams family_mode(double epsilon, double p);  // theta = eps^((2p+1)/p)

  long long min_n() const;  // smallest admissible coordinate count, ceil(2/c)
};

struct EnergyIncrement {
  int i = 0;
  int j = 0;
  double gap = 0.0;  // ‖E(f|S_j) − E(f|S_i)‖_{L_p}
};

// Block scan over the coordinate filtration: returns the first consecutive
// block pair whose conditional expectations are within theta in L_p. Requires
// ‖f‖_{L_p} ≤ 1 + 1e-10 and n ≥ 8·theta^{−2}(p−1)^{−1}.
EnergyIncrement energy_increment_search(const RandomVariable& f, double theta, double p);

struct Location {
  IndexInterval J;
  SearchParams params;
  double gap = 0.0;
};

// Finds the interval J = {i+1,...,j} with |J| ≥ c(eps,p)·n and nonempty
// complement; p > 2 is clamped to 2 after checking ‖f‖_{L_p} ≤ 1.
Location locate_interval(const RandomVariable& f, double epsilon, double p);

// Exact P_I-measure of { x : |E(f_x) − E(f)| ≤ eps }. Closed comparison, no
// tolerance widening. Throws TooLargeToEnumerate when the effective
// section-mean domain cannot be enumerated (rank-1 f over a huge I).
double concentration_probability(const RandomVariable& f, const CoordSet& I, double eps);

/// Which subsets of J get checked, plus the Monte Carlo fallback knobs used
/// when a subset cannot be evaluated exactly.
struct SubsetPolicy {
  std::uint64_t exhaustive_limit = 4096;  // check all subsets if 2^|J| ≤ this
  int random_subsets = 256;
  std::uint64_t seed = 0;
  long long mc_samples = 2000;
  double mc_confidence = 0.99;
};

struct SubsetResult {
  CoordSet I;
  double prob = 0.0;
  bool pass = false;
  bool estimated = false;
  double half_width = 0.0;
};

struct ConcentrationReport {
  int n = 0;
  IndexInterval interval;
  SearchParams params;
  double gap = 0.0;
  std::string policy;
  std::vector<SubsetResult> subsets;
  bool pass = false;
  bool trivial = false;  // zero-measure event shortcut
};

// Locates J and checks, for each subset I per policy, that the section-mean
// map concentrates: P_I(|E(f_x) − E(f)| ≤ eps) ≥ 1 − eps.
ConcentrationReport verify_theorem1(const RandomVariable& f, double epsilon, double p,
                                    const SubsetPolicy& policy = {});

// Same check for an indicator event A via the normalised variable
// f = A / P(A)^{1/p}; P(A) = 0 yields a trivially passing report.
ConcentrationReport verify_corollary2(const RandomVariable& A, double epsilon, double p,
                                      const SubsetPolicy& policy = {});

// Fair-bit product space with the event A = A_1 × ... × A_n, P_i(A_i) = 1/2.
// Every section mean then misses P(A) by at least P(A) itself.
std::pair<SpacePtr, RandomVariable> p1_counterexample(int n);

struct SectionCheck {
  std::vector<int> atoms;  // one atom per coordinate of the selected interval
  double prob = 0.0;
  double deviation = 0.0;
  bool pass = false;
};

struct Lemma8Report {
  int n = 0;
  int k = 0;
  int m = 0;
  double eta = 0.0;
  double eps = 0.0;  // derived: eta · k^{−m} · 2^{−1/3}
  long long n_min = 0;
  double event_probability = 0.0;
  IndexInterval J;
  IndexInterval I;
  std::optional<SearchParams> params;  // absent for the zero-measure event
  double gap = 0.0;
  std::vector<SectionCheck> sections;
  bool pass = false;
};

// On the uniform k-ary cube with n ≥ 16·m·k^{3m}/eta³: locates J, takes the
// leftmost width-m subinterval I, and checks every section of the event D
// along I against P(D) within eta. A breach throws UniversalityFailed.
Lemma8Report lemma8_interval(const RandomVariable& D, int k, int m, double eta);

/// Finite family of random variables on one common product space, weighted by
/// a finite index space.
struct ProcessFamily {
  FiniteSpace t_weights;
  std::vector<RandomVariable> members;
};

double mixed_lp_norm(const ProcessFamily& family, double p);

struct MemberVerdict {
  int t = 0;  // 0-based member index
  bool in_good_set = false;
  double l1_gap = 0.0;  // ‖g_t − h_t‖_{L_1}
  std::vector<SubsetResult> subsets;
  bool pass = false;
};

struct Theorem9Report {
  int n = 0;
  SearchParams params;
  double gap = 0.0;
  IndexInterval J;
  double good_measure = 0.0;  // μ(G)
  std::string policy;
  std::vector<MemberVerdict> members;
  bool pass = false;
};

// Family version: the block scan runs against the mixed norm
// (Σ_t μ(t)·‖·‖^p_{L_p})^{1/p}; G = {t : ‖g_t − h_t‖_{L_1} ≤ eps²} has
// μ(G) ≥ 1 − eps, and every member of G passes the subset checks over J.
Theorem9Report theorem9_locate(const ProcessFamily& family, double epsilon, double p,
                               const SubsetPolicy& policy = {});

}  // namespace conc
