#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "conc/json_io.hpp"
#include "oracle.hpp"

using namespace conc;
using namespace conc::testing;
using nlohmann::json;

TEST_CASE("space parsing") {
  const auto uniform = parse_space(json::parse(R"({"uniform":{"k":2,"n":5}})"));
  CHECK(uniform->coord_count() == 5);
  CHECK(uniform->factor(3).atom_count() == 2);

  const auto listed =
      parse_space(json::parse(R"({"factors":[{"weights":[0.5,0.5]},{"weights":[0.2,0.3,0.5]}]})"));
  CHECK(listed->coord_count() == 2);
  CHECK(listed->factor(2).weight(2) == 0.5);

  CHECK(throws_code([] { parse_space(json::parse(R"({"factors":[]})")); }, Err::ParseError));
  CHECK(throws_code([] { parse_space(json::parse(R"({})")); }, Err::ParseError));
  CHECK(throws_code([] { parse_space(json::parse(R"({"factors":[{"weights":[0.5,0.6]}]})")); },
                    Err::NotAProbability));
}

TEST_CASE("random-variable parsing") {
  const auto space = parse_space(json::parse(R"({"uniform":{"k":2,"n":3}})"));

  const RandomVariable d =
      parse_rv(json::parse(R"({"type":"dense","values":[0,1,2,3,4,5,6,7]})"), space);
  CHECK(d.eval(Outcome(CoordSet::full(3), {0, 0, 1})) == 1.0);
  CHECK(d.eval(Outcome(CoordSet::full(3), {1, 0, 0})) == 4.0);  // coordinate 1 is slowest

  const RandomVariable r =
      parse_rv(json::parse(R"({"type":"rank1","factors":[[1,2],[1,1],[0.5,0.5]]})"), space);
  CHECK(r.eval(Outcome(CoordSet::full(3), {1, 0, 0})) == 1.0);

  const RandomVariable j =
      parse_rv(json::parse(R"({"type":"junta","coords":[1,3],"values":[0,1,1,0]})"), space);
  CHECK(j.eval(Outcome(CoordSet::full(3), {0, 1, 1})) == 1.0);
  CHECK(j.eval(Outcome(CoordSet::full(3), {0, 0, 0})) == 0.0);

  // atom indices on the wire are 1-based
  const RandomVariable ind =
      parse_rv(json::parse(R"({"type":"indicator_product","sets":[[1],[1,2],[2]]})"), space);
  CHECK(ind.eval(Outcome(CoordSet::full(3), {0, 1, 1})) == 1.0);
  CHECK(ind.eval(Outcome(CoordSet::full(3), {1, 1, 1})) == 0.0);

  CHECK(throws_code([&] { parse_rv(json::parse(R"({"type":"mystery"})"), space); },
                    Err::ParseError));
  CHECK(throws_code([&] { parse_rv(json::parse(R"({"values":[1]})"), space); }, Err::ParseError));

  const auto wide = parse_space(json::parse(R"({"uniform":{"k":2,"n":40}})"));
  json too_wide{{"type", "junta"}, {"coords", json::array()}, {"values", json::array()}};
  for (int c = 1; c <= 17; ++c) too_wide["coords"].push_back(c);
  for (int i = 0; i < (1 << 17); ++i) too_wide["values"].push_back(0.0);
  CHECK(throws_code([&] { parse_rv(too_wide, wide); }, Err::TooLargeToEnumerate));
}

TEST_CASE("family parsing") {
  const auto space = parse_space(json::parse(R"({"uniform":{"k":2,"n":3}})"));
  const ProcessFamily fam = parse_family(
      json::parse(
          R"({"members":[{"type":"dense","values":[0,0,0,0,1,1,1,1]},{"type":"junta","coords":[2],"values":[0,1]}]})"),
      space);
  CHECK(fam.members.size() == 2);
  CHECK(fam.t_weights.atom_count() == 2);
  CHECK(fam.t_weights.weight(0) == 0.5);
}

TEST_CASE("canonical dump") {
  json doc;
  doc["beta"] = 0.1;
  doc["alpha"] = 1.0;
  doc["list"] = json::array({1, true, "x"});
  const std::string text = canonical_dump(doc);
  CHECK(text == canonical_dump(doc));
  CHECK(text.find("0.10000000000000001") != std::string::npos);  // 17 significant digits
  CHECK(text.find("\"alpha\"") < text.find("\"beta\""));         // sorted keys
  CHECK(text.back() == '\n');
  CHECK(canonical_dump(json(1.0)) == "1\n");
  CHECK(canonical_dump(json::object()) == "{}\n");
}

TEST_CASE("report emission") {
  const auto dir = std::filesystem::temp_directory_path() / "conc_json_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "report.json").string();
  emit_report(json{{"pass", true}}, path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "{");
  CHECK(throws_code([&] { emit_report(json{{"pass", true}}, (dir / "missing" / "x.json").string()); },
                    Err::IoError));
  std::filesystem::remove_all(dir);
}

TEST_CASE("reports serialise their verdicts") {
  ConcentrationReport rep;
  rep.n = 8;
  rep.interval = IndexInterval{2, 5};
  rep.params = SearchParams::plain_mode(0.9, 2.0);
  rep.gap = 0.125;
  rep.policy = "exhaustive(15 subsets)";
  SubsetResult ok;
  ok.I = CoordSet({2, 3});
  ok.prob = 1.0;
  ok.pass = true;
  SubsetResult bad;
  bad.I = CoordSet({4});
  bad.prob = 0.05;
  bad.pass = false;
  rep.subsets = {ok, bad};
  rep.pass = false;

  const json j = to_json(rep);
  CHECK(j["pass"] == false);
  CHECK(j["interval"]["lo"] == 2);
  CHECK(j["subsets"].size() == 2);
  CHECK(j["subsets"][1]["pass"] == false);
  CHECK(j["subsets"][0]["I"] == json::array({2, 3}));
}
