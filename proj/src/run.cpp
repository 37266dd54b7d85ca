#include "conc/run.hpp"

#include <cmath>
#include <iostream>
#include <limits>

#include "conc/concentration.hpp"
#include "conc/inequalities.hpp"
#include "conc/json_io.hpp"
#include "conc/montecarlo.hpp"
#include "conc/rng.hpp"

namespace conc {

namespace {

using nlohmann::json;
using Command = RunConfig::Command;

int exit_code_for(Err code) {
  switch (code) {
    case Err::InternalContradiction:
    case Err::UniversalityFailed:
      return 1;  // a mathematically guaranteed check failed numerically
    default:
      return 2;
  }
}

bool needs_input(Command c) {
  return c != Command::ineq && c != Command::counterexample;
}

void validate(const RunConfig& c) {
  if (needs_input(c.command))
    require(!c.input_path.empty(), Err::InvalidParameter, "an --input file is required");
  switch (c.command) {
    case Command::locate:
    case Command::verify:
    case Command::corollary2:
    case Command::theorem9:
      require(c.epsilon > 0.0 && c.epsilon <= 1.0, Err::InvalidParameter,
              "--epsilon must lie in (0, 1]");
      require(c.p > 1.0, Err::InvalidParameter, "--p must exceed 1");
      break;
    case Command::lemma8:
      require(c.k >= 2, Err::InvalidParameter, "--k must be at least 2");
      require(c.m >= 1, Err::InvalidParameter, "--m must be at least 1");
      require(c.eta > 0.0 && c.eta <= 1.0, Err::InvalidParameter, "--eta must lie in (0, 1]");
      break;
    case Command::ineq:
      require(c.suite == "rx" || c.suite == "bcl" || c.suite == "lemma6", Err::InvalidParameter,
              "--suite must be rx, bcl or lemma6");
      require(c.trials >= 1, Err::InvalidParameter, "--trials must be at least 1");
      for (double p : c.p_grid)
        require(p >= 1.0, Err::InvalidParameter, "every p in the grid must be at least 1");
      break;
    case Command::counterexample:
      require(c.n >= 2, Err::InvalidParameter, "--n must be at least 2");
      require(c.n <= 16, Err::InvalidParameter,
              "--n above 16 makes the exhaustive subset scan intractable");
      break;
  }
  require(c.mc_confidence > 0.0 && c.mc_confidence < 1.0, Err::InvalidParameter,
          "--mc-confidence must lie in (0, 1)");
  require(c.mc_samples >= 1, Err::InvalidParameter, "--mc-samples must be at least 1");
  require(c.random_subsets >= 0, Err::InvalidParameter, "--random-subsets must be nonnegative");
}

SubsetPolicy policy_from(const RunConfig& c) {
  SubsetPolicy policy;
  policy.exhaustive_limit = c.subset_cap;
  policy.random_subsets = c.random_subsets;
  policy.seed = c.seed;
  policy.mc_samples = c.mc_samples;
  policy.mc_confidence = c.mc_confidence;
  return policy;
}

std::pair<SpacePtr, RandomVariable> load_space_and_rv(const RunConfig& c) {
  const json doc = load_json_file(c.input_path);
  require(doc.contains("space") && doc.contains("f"), Err::ParseError,
          "input document needs \"space\" and \"f\"");
  SpacePtr space = parse_space(doc["space"]);
  RandomVariable f = parse_rv(doc["f"], space);
  return {std::move(space), std::move(f)};
}

int run_locate(const RunConfig& c) {
  auto [space, f] = load_space_and_rv(c);
  const Location loc = locate_interval(f, c.epsilon, c.p);
  json rep = to_json(loc.params);
  rep["n"] = space->coord_count();
  rep["interval"] = json{{"lo", loc.J.lo}, {"hi", loc.J.hi}};
  rep["gap"] = loc.gap;
  rep["pass"] = true;
  emit_report(rep, c.out_path);
  std::cerr << "located [" << loc.J.lo << ", " << loc.J.hi << "] with gap " << loc.gap << "\n";
  return 0;
}

int run_verify(const RunConfig& c) {
  auto [space, f] = load_space_and_rv(c);
  const ConcentrationReport rep = c.command == Command::verify
                                      ? verify_theorem1(f, c.epsilon, c.p, policy_from(c))
                                      : verify_corollary2(f, c.epsilon, c.p, policy_from(c));
  emit_report(to_json(rep), c.out_path);
  std::cerr << (rep.pass ? "all " : "FAILED: ") << rep.subsets.size()
            << " subset checks, policy " << rep.policy << "\n";
  return rep.pass ? 0 : 1;
}

int run_lemma8(const RunConfig& c) {
  auto [space, d] = load_space_and_rv(c);
  const Lemma8Report rep = lemma8_interval(d, c.k, c.m, c.eta);
  emit_report(to_json(rep), c.out_path);
  std::cerr << "interval [" << rep.I.lo << ", " << rep.I.hi << "], " << rep.sections.size()
            << " sections within eta\n";
  return rep.pass ? 0 : 1;
}

int run_theorem9(const RunConfig& c) {
  const json doc = load_json_file(c.input_path);
  require(doc.contains("space"), Err::ParseError, "input document needs \"space\"");
  SpacePtr space = parse_space(doc["space"]);
  const ProcessFamily family = parse_family(doc, space);
  const Theorem9Report rep = theorem9_locate(family, c.epsilon, c.p, policy_from(c));
  emit_report(to_json(rep), c.out_path);
  std::cerr << (rep.pass ? "passed" : "FAILED") << ", mu(G) = " << rep.good_measure << "\n";
  return rep.pass ? 0 : 1;
}

int run_counterexample(const RunConfig& c) {
  auto [space, A] = p1_counterexample(c.n);
  const double pa = A.expectation();
  json subsets = json::array();
  bool pass = true;
  const std::uint64_t full = (std::uint64_t{1} << c.n) - 1;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    std::vector<int> coords;
    for (int b = 0; b < c.n; ++b)
      if ((mask >> b) & 1) coords.push_back(b + 1);
    const CoordSet I(std::move(coords));
    double min_dev = std::numeric_limits<double>::infinity();
    for_each_outcome(*space, I, [&](const Outcome& x, double) {
      min_dev = std::min(min_dev, std::fabs(A.section_mean(I, x) - pa));
    });
    const bool ok = min_dev >= pa;
    pass = pass && ok;
    subsets.push_back(json{{"I", I.members()}, {"min_deviation", min_dev}, {"pass", ok}});
  }
  json rep{{"n", c.n}, {"p_A", pa}, {"subsets", std::move(subsets)}, {"pass", pass}};
  emit_report(rep, c.out_path);
  std::cerr << (pass ? "every" : "NOT every")
            << " section mean misses the event probability by at least P(A)\n";
  return pass ? 0 : 1;
}

std::vector<double> grid_for_suite(const RunConfig& c) {
  if (!c.p_grid.empty()) return c.p_grid;
  if (c.suite == "lemma6") return {1.0, 1.5, 2.0};
  return {1.1, 1.25, 1.5, 1.75, 2.0};
}

int run_ineq(const RunConfig& c) {
  const std::vector<double> grid = grid_for_suite(c);
  json records = json::array();
  bool all_hold = true;
  double sharpness = 0.0;
  RngStream master = RngStream::seeded(c.seed);

  auto draw_dense = [](const SpacePtr& space, RngStream& stream) {
    std::vector<double> v(*space->outcome_count());
    for (double& x : v) x = stream.uniform(-1.0, 1.0);
    return RandomVariable::dense(space, std::move(v));
  };

  auto push = [&](const IneqReport& r) {
    records.push_back(to_json(r));
    all_hold = all_hold && r.holds;
    if (r.rhs > 0.0) sharpness = std::max(sharpness, r.lhs / r.rhs);
  };

  if (c.suite == "rx") {
    const SpacePtr space = uniform_product(2, 8);
    for (long long i = 0; i < c.trials; ++i) {
      RngStream inst = master.split(static_cast<std::uint64_t>(i));
      const int cut_count = static_cast<int>(inst.uniform_int(1, space->coord_count()));
      const MartingaleDiffs md = random_martingale(space, cut_count, inst.next_u64(), 1.0);
      for (double p : grid) {
        require(p > 1.0, Err::InvalidParameter, "the rx suite needs p > 1");
        push(check_ricard_xu(md, p));
      }
    }
  } else if (c.suite == "bcl") {
    const SpacePtr space = uniform_product(2, 3);
    for (long long i = 0; i < c.trials; ++i) {
      RngStream inst = master.split(static_cast<std::uint64_t>(i));
      const RandomVariable x = draw_dense(space, inst);
      const RandomVariable y = draw_dense(space, inst);
      for (double p : grid) {
        require(p > 1.0, Err::InvalidParameter, "the bcl suite needs p > 1");
        push(check_bcl(x, y, p));
      }
    }
  } else {
    const SpacePtr space = uniform_product(2, 8);
    const int n = space->coord_count();
    for (long long i = 0; i < c.trials; ++i) {
      RngStream inst = master.split(static_cast<std::uint64_t>(i));
      const RandomVariable g = draw_dense(space, inst);
      const RandomVariable h = draw_dense(space, inst);
      const int size = static_cast<int>(inst.uniform_int(1, n - 1));
      const CoordSet I(inst.sample_distinct(size, 1, n));
      for (double p : grid) push(check_lemma6(g, h, I, p));
    }
  }

  emit_report(records, c.out_path);
  std::cerr << c.suite << ": " << records.size() << " checks, "
            << (all_hold ? "no violations" : "VIOLATIONS FOUND")
            << ", sharpness max lhs/rhs = " << sharpness << "\n";
  return all_hold ? 0 : 1;
}

}  // namespace

int run(const RunConfig& config) {
  try {
    validate(config);
    switch (config.command) {
      case Command::locate:
        return run_locate(config);
      case Command::verify:
      case Command::corollary2:
        return run_verify(config);
      case Command::lemma8:
        return run_lemma8(config);
      case Command::theorem9:
        return run_theorem9(config);
      case Command::ineq:
        return run_ineq(config);
      case Command::counterexample:
        return run_counterexample(config);
    }
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace conc
