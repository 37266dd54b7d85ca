#include "conc/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

namespace conc {

namespace {

using nlohmann::json;

std::vector<double> as_double_vector(const json& arr) {
  require(arr.is_array(), Err::ParseError, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    require(v.is_number(), Err::ParseError, "expected a number");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<int> as_int_vector(const json& arr) {
  require(arr.is_array(), Err::ParseError, "expected an array of integers");
  std::vector<int> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    require(v.is_number_integer(), Err::ParseError, "expected an integer");
    out.push_back(v.get<int>());
  }
  return out;
}

json interval_json(const IndexInterval& iv) { return json{{"lo", iv.lo}, {"hi", iv.hi}}; }

json coords_json(const CoordSet& cs) { return json(cs.members()); }

void format_number(const json& v, std::string& out) {
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    out += buf;
  } else {
    out += v.dump();
  }
}

void write_canonical(const json& v, std::string& out, int depth) {
  const std::string pad(static_cast<size_t>(depth) * 2, ' ');
  const std::string pad_in(static_cast<size_t>(depth + 1) * 2, ' ');
  if (v.is_object()) {
    if (v.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = v.begin(); it != v.end(); ++it) {  // nlohmann objects iterate sorted by key
      if (!first) out += ",\n";
      first = false;
      out += pad_in + json(it.key()).dump() + ": ";
      write_canonical(it.value(), out, depth + 1);
    }
    out += "\n" + pad + "}";
  } else if (v.is_array()) {
    if (v.empty()) {
      out += "[]";
      return;
    }
    out += "[\n";
    bool first = true;
    for (const auto& item : v) {
      if (!first) out += ",\n";
      first = false;
      out += pad_in;
      write_canonical(item, out, depth + 1);
    }
    out += "\n" + pad + "]";
  } else {
    format_number(v, out);
  }
}

}  // namespace

SpacePtr parse_space(const nlohmann::json& doc) {
  require(doc.is_object(), Err::ParseError, "space specification must be an object");
  if (doc.contains("uniform")) {
    const auto& u = doc["uniform"];
    require(u.is_object() && u.contains("k") && u.contains("n"), Err::ParseError,
            "uniform space needs integer fields k and n");
    require(u["k"].is_number_integer() && u["n"].is_number_integer(), Err::ParseError,
            "uniform space needs integer fields k and n");
    return uniform_product(u["k"].get<int>(), u["n"].get<int>());
  }
  if (doc.contains("factors")) {
    const auto& factors = doc["factors"];
    require(factors.is_array() && !factors.empty(), Err::ParseError,
            "factors must be a nonempty array");
    std::vector<FiniteSpace> spaces;
    spaces.reserve(factors.size());
    for (const auto& f : factors) {
      require(f.is_object() && f.contains("weights"), Err::ParseError,
              "each factor needs a weights array");
      spaces.push_back(FiniteSpace(as_double_vector(f["weights"])));
    }
    return make_space(std::move(spaces));
  }
  fail(Err::ParseError, "space specification needs either \"factors\" or \"uniform\"");
}

RandomVariable parse_rv(const nlohmann::json& doc, const SpacePtr& space) {
  require(doc.is_object() && doc.contains("type"), Err::ParseError,
          "random-variable specification needs a type field");
  const std::string type = doc["type"].get<std::string>();
  if (type == "dense") {
    require(doc.contains("values"), Err::ParseError, "dense variable needs values");
    return RandomVariable::dense(space, as_double_vector(doc["values"]));
  }
  if (type == "rank1") {
    require(doc.contains("factors"), Err::ParseError, "rank1 variable needs factors");
    const auto& factors = doc["factors"];
    require(factors.is_array(), Err::ParseError, "rank1 factors must be an array of arrays");
    std::vector<std::vector<double>> tables;
    tables.reserve(factors.size());
    for (const auto& t : factors) tables.push_back(as_double_vector(t));
    return RandomVariable::rank1(space, std::move(tables));
  }
  if (type == "junta") {
    require(doc.contains("coords") && doc.contains("values"), Err::ParseError,
            "junta variable needs coords and values");
    std::vector<int> coords = as_int_vector(doc["coords"]);
    require(static_cast<int>(coords.size()) <= junta_cap(), Err::TooLargeToEnumerate,
            "junta support exceeds the junta cap (" + std::to_string(junta_cap()) + ")");
    return RandomVariable::junta(space, CoordSet(std::move(coords)),
                                 as_double_vector(doc["values"]));
  }
  if (type == "indicator_product") {
    require(doc.contains("sets"), Err::ParseError, "indicator_product needs sets");
    const auto& sets = doc["sets"];
    require(sets.is_array(), Err::ParseError, "sets must be an array of atom-index arrays");
    std::vector<std::vector<int>> atom_sets;
    atom_sets.reserve(sets.size());
    for (const auto& s : sets) {
      std::vector<int> atoms = as_int_vector(s);
      for (int& a : atoms) a -= 1;  // wire format is 1-based
      atom_sets.push_back(std::move(atoms));
    }
    return RandomVariable::indicator_product(space, atom_sets);
  }
  fail(Err::ParseError, "unknown random-variable type \"" + type + "\"");
}

ProcessFamily parse_family(const nlohmann::json& doc, const SpacePtr& space) {
  require(doc.is_object() && doc.contains("members"), Err::ParseError,
          "family specification needs a members array");
  const auto& members = doc["members"];
  require(members.is_array() && !members.empty(), Err::ParseError,
          "members must be a nonempty array");
  std::vector<RandomVariable> parsed;
  parsed.reserve(members.size());
  for (const auto& m : members) parsed.push_back(parse_rv(m, space));
  FiniteSpace t_weights =
      doc.contains("t_weights")
          ? FiniteSpace(as_double_vector(doc["t_weights"]))
          : FiniteSpace(std::vector<double>(members.size(), 1.0 / static_cast<double>(members.size())));
  return ProcessFamily{std::move(t_weights), std::move(parsed)};
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Err::IoError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(Err::ParseError, path + ": " + e.what());
  }
}

nlohmann::json to_json(const SearchParams& params) {
  return json{{"epsilon", params.epsilon},
              {"p", params.p},
              {"theta", params.theta},
              {"c", params.c},
              {"ell", params.ell},
              {"min_n", params.min_n()},
              {"mode", params.mode == SearchParams::Mode::plain ? "plain" : "family"}};
}

nlohmann::json to_json(const SubsetResult& result) {
  json j{{"I", coords_json(result.I)}, {"prob", result.prob}, {"pass", result.pass}};
  if (result.estimated) {
    j["estimated"] = true;
    j["half_width"] = result.half_width;
  }
  return j;
}

nlohmann::json to_json(const ConcentrationReport& report) {
  json j{{"n", report.n},
         {"pass", report.pass},
         {"policy", report.policy},
         {"gap", report.gap}};
  if (report.trivial) {
    j["trivial"] = true;
    j["subsets"] = json::array();
    return j;
  }
  j["interval"] = interval_json(report.interval);
  j["c"] = report.params.c;
  j["theta"] = report.params.theta;
  j["ell"] = report.params.ell;
  j["epsilon"] = report.params.epsilon;
  j["p"] = report.params.p;
  j["min_n"] = report.params.min_n();
  json subsets = json::array();
  for (const SubsetResult& r : report.subsets) subsets.push_back(to_json(r));
  j["subsets"] = std::move(subsets);
  return j;
}

nlohmann::json to_json(const Lemma8Report& report) {
  json sections = json::array();
  for (const SectionCheck& sc : report.sections) {
    std::vector<int> atoms = sc.atoms;
    for (int& a : atoms) a += 1;  // wire format is 1-based
    sections.push_back(json{{"t", atoms},
                            {"prob", sc.prob},
                            {"deviation", sc.deviation},
                            {"pass", sc.pass}});
  }
  json j{{"n", report.n},
         {"k", report.k},
         {"m", report.m},
         {"eta", report.eta},
         {"eps", report.eps},
         {"n_min", report.n_min},
         {"event_probability", report.event_probability},
         {"interval", interval_json(report.I)},
         {"J", interval_json(report.J)},
         {"gap", report.gap},
         {"sections", std::move(sections)},
         {"pass", report.pass}};
  if (report.params.has_value()) {
    j["c"] = report.params->c;
    j["theta"] = report.params->theta;
    j["ell"] = report.params->ell;
  }
  return j;
}

nlohmann::json to_json(const Theorem9Report& report) {
  json members = json::array();
  for (const MemberVerdict& v : report.members) {
    json subsets = json::array();
    for (const SubsetResult& r : v.subsets) subsets.push_back(to_json(r));
    members.push_back(json{{"t", v.t + 1},  // wire format is 1-based
                           {"in_G", v.in_good_set},
                           {"l1_gap", v.l1_gap},
                           {"subsets", std::move(subsets)},
                           {"pass", v.pass}});
  }
  return json{{"n", report.n},
              {"interval", interval_json(report.J)},
              {"c", report.params.c},
              {"theta", report.params.theta},
              {"ell", report.params.ell},
              {"epsilon", report.params.epsilon},
              {"p", report.params.p},
              {"min_n", report.params.min_n()},
              {"gap", report.gap},
              {"mu_G", report.good_measure},
              {"policy", report.policy},
              {"members", std::move(members)},
              {"pass", report.pass}};
}

nlohmann::json to_json(const IneqReport& report) {
  return json{{"lhs", report.lhs},
              {"rhs", report.rhs},
              {"slack", report.slack},
              {"tol", report.tol},
              {"holds", report.holds},
              {"context", report.context}};
}

std::string canonical_dump(const nlohmann::json& doc) {
  std::string out;
  write_canonical(doc, out, 0);
  out += "\n";
  return out;
}

void emit_report(const nlohmann::json& doc, const std::string& path) {
  const std::string text = canonical_dump(doc);
  if (path == "-" || path.empty()) {
    std::cout << text;
    require(std::cout.good(), Err::IoError, "failed to write the report to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  require(out.good(), Err::IoError, "cannot open " + path + " for writing");
  out << text;
  out.flush();
  require(out.good(), Err::IoError, "failed to write " + path);
}

}  // namespace conc
