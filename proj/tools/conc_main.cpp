#include <CLI11.hpp>

#include "conc/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"exact concentration checks on finite product probability spaces"};
  app.require_subcommand(1);

  conc::RunConfig cfg;
  using Command = conc::RunConfig::Command;

  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_path, "report path ('-' writes to stdout)");
  };
  auto add_eps_p = [&](CLI::App* sub) {
    sub->add_option("--epsilon", cfg.epsilon, "deviation bound, in (0, 1]")->required();
    sub->add_option("--p", cfg.p, "moment exponent, > 1")->required();
  };
  auto add_policy = [&](CLI::App* sub) {
    sub->add_option("--subset-cap", cfg.subset_cap,
                    "check all subsets of J when 2^|J| is at most this (default 4096)");
    sub->add_option("--random-subsets", cfg.random_subsets,
                    "random subsets added beyond the structured ones (default 256)");
    sub->add_option("--seed", cfg.seed, "seed for subset sampling and estimates");
    sub->add_option("--mc-samples", cfg.mc_samples,
                    "samples per estimated subset when exact enumeration is impossible");
    sub->add_option("--mc-confidence", cfg.mc_confidence,
                    "confidence level of the Hoeffding half-width (default 0.99)");
  };
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input_path, "JSON document with the space and the variable")
        ->required();
  };

  auto* locate = app.add_subcommand("locate", "locate a concentration interval");
  add_input(locate);
  add_eps_p(locate);
  add_out(locate);

  auto* verify = app.add_subcommand("verify", "locate an interval and check every subset policy entry");
  add_input(verify);
  add_eps_p(verify);
  add_policy(verify);
  add_out(verify);

  auto* corollary2 = app.add_subcommand("corollary2", "indicator-event variant of verify");
  add_input(corollary2);
  add_eps_p(corollary2);
  add_policy(corollary2);
  add_out(corollary2);

  auto* lemma8 = app.add_subcommand("lemma8", "universal-section interval on the uniform cube");
  add_input(lemma8);
  lemma8->add_option("--k", cfg.k, "alphabet size, at least 2")->required();
  lemma8->add_option("--m", cfg.m, "interval width, at least 1")->required();
  lemma8->add_option("--eta", cfg.eta, "section deviation bound, in (0, 1]")->required();
  add_out(lemma8);

  auto* theorem9 = app.add_subcommand("theorem9", "family version over a finite index space");
  add_input(theorem9);
  add_eps_p(theorem9);
  add_policy(theorem9);
  add_out(theorem9);

  auto* ineq = app.add_subcommand("ineq", "run a seeded inequality suite");
  ineq->add_option("--suite", cfg.suite, "rx | bcl | lemma6")->required();
  ineq->add_option("--trials", cfg.trials, "instances to generate (default 100)");
  ineq->add_option("--seed", cfg.seed, "master seed");
  auto* p_single = ineq->add_option("--p", cfg.p, "check a single exponent");
  ineq->add_option("--p-grid", cfg.p_grid, "comma-separated exponent grid")
      ->delimiter(',')
      ->excludes(p_single);
  add_out(ineq);

  auto* counterexample =
      app.add_subcommand("counterexample", "product event whose sections never concentrate at p = 1");
  counterexample->add_option("--n", cfg.n, "number of fair-bit coordinates, 2..16")->required();
  add_out(counterexample);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (app.got_subcommand(locate)) cfg.command = Command::locate;
  if (app.got_subcommand(verify)) cfg.command = Command::verify;
  if (app.got_subcommand(corollary2)) cfg.command = Command::corollary2;
  if (app.got_subcommand(lemma8)) cfg.command = Command::lemma8;
  if (app.got_subcommand(theorem9)) cfg.command = Command::theorem9;
  if (app.got_subcommand(ineq)) {
    cfg.command = Command::ineq;
    if (p_single->count() > 0) cfg.p_grid = {cfg.p};
  }
  if (app.got_subcommand(counterexample)) cfg.command = Command::counterexample;

  return conc::run(cfg);
}
