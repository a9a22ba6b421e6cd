#include "cifc/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cifc {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::ParseError, "field '" + field + "': " + why);
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) bad(name, "expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) bad(name, "missing");
  return *it;
}

int int_field(const Json& j, const char* name) {
  const auto& v = field(j, name);
  if (!v.is_number_integer()) bad(name, "expected an integer");
  return v.get<int>();
}

std::vector<double> number_array(const Json& j, const char* name) {
  const auto& v = field(j, name);
  if (!v.is_array()) bad(name, "expected an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) bad(name, "expected numbers only");
    out.push_back(x.get<double>());
  }
  return out;
}

Json names_json(const NameList& n) { return Json(n); }

Json expr_json(const MIExpr& e) {
  Json terms = Json::array();
  for (const auto& t : e.terms) {
    terms.push_back({{"sign", t.sign},
                     {"left", names_json(t.term.left)},
                     {"right", names_json(t.term.right)},
                     {"given", names_json(t.term.given)}});
  }
  return {{"terms", terms}, {"constant", e.constant}};
}

Json combination_json(const RateCombination& c) {
  Json j = Json::object();
  for (const auto& [k, v] : c) j[k] = v;
  return j;
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

Json channel_to_json(const Channel& c) {
  return {{"x1", c.x1().size}, {"x2", c.x2().size}, {"y1", c.y1().size},
          {"y2", c.y2().size}, {"p", c.tensor()}};
}

Channel channel_from_json(const Json& j) {
  const int x1 = int_field(j, "x1"), x2 = int_field(j, "x2");
  const int y1 = int_field(j, "y1"), y2 = int_field(j, "y2");
  auto p = number_array(j, "p");
  if (auto defect = validate_channel(x1, x2, y1, y2, p)) throw Error(defect->code, defect->message);
  return Channel({"X1", x1}, {"X2", x2}, {"Y1", y1}, {"Y2", y2}, std::move(p));
}

Json distribution_to_json(const JointDistribution& d) {
  return {{"names", d.rvs().names()}, {"sizes", d.rvs().sizes()}, {"p", d.p()}};
}

JointDistribution distribution_from_json(const Json& j) {
  const auto& names = field(j, "names");
  const auto& sizes = field(j, "sizes");
  if (!names.is_array() || !std::all_of(names.begin(), names.end(), [](const Json& x) { return x.is_string(); }))
    bad("names", "expected an array of strings");
  if (!sizes.is_array() ||
      !std::all_of(sizes.begin(), sizes.end(), [](const Json& x) { return x.is_number_integer(); }))
    bad("sizes", "expected an array of integers");
  if (names.size() != sizes.size()) bad("sizes", "length differs from 'names'");
  RandomVariableSet rvs(names.get<NameList>(), sizes.get<std::vector<int>>());
  auto p = number_array(j, "p");
  if (p.size() != rvs.states()) {
    bad("p", "has " + std::to_string(p.size()) + " entries, expected " + std::to_string(rvs.states()));
  }
  return JointDistribution(std::move(rvs), std::move(p));
}

Json polytope_to_json(const Polytope2D& p) {
  Json v = Json::array(), h = Json::array();
  for (const auto& x : p.vertices) v.push_back({x.r1, x.r2});
  for (const auto& x : p.halfplanes) h.push_back({x.a1, x.a2, x.b});
  return {{"vertices", v}, {"halfplanes", h}};
}

Polytope2D polytope_from_json(const Json& j) {
  Polytope2D p;
  for (const auto& v : field(j, "vertices")) {
    if (!v.is_array() || v.size() != 2) bad("vertices", "expected [r1, r2] pairs");
    p.vertices.push_back({v[0].get<double>(), v[1].get<double>()});
  }
  for (const auto& h : field(j, "halfplanes")) {
    if (!h.is_array() || h.size() != 3) bad("halfplanes", "expected [a1, a2, b] triples");
    p.halfplanes.push_back({h[0].get<double>(), h[1].get<double>(), h[2].get<double>()});
  }
  return p;
}

std::string polytope_csv(const Polytope2D& p) {
  std::ostringstream out;
  out << "r1,r2\n";
  for (const auto& v : p.vertices) out << format_number(v.r1) << ',' << format_number(v.r2) << '\n';
  return out.str();
}

Json report_to_json(const CheckReport& r) {
  Json j = {{"id", r.id},
            {"seeds_run", r.seeds_run},
            {"max_violation", std::isfinite(r.max_violation) ? Json(r.max_violation) : Json("inf")},
            {"worst_seed", r.worst_seed},
            {"failures", r.failures},
            {"passed", r.passed()}};
  if (!r.stats.empty()) {
    Json s = Json::object();
    for (const auto& [k, v] : r.stats) s[k] = v;
    j["stats"] = s;
  }
  if (!r.messages.empty()) j["messages"] = r.messages;
  return j;
}

Json report_to_json(const SuiteReport& s) {
  Json checks = Json::array();
  for (const auto& c : s.checks) checks.push_back(report_to_json(c));
  return {{"suite", s.suite}, {"passed", s.passed()}, {"checks", checks}};
}

std::string frontier_csv(const FrontierResult& f) {
  std::ostringstream out;
  out << "lambda,R1,R2,seed\n";
  for (const auto& p : f.pareto) {
    out << format_number(p.lambda) << ',' << format_number(p.rate.r1) << ','
        << format_number(p.rate.r2) << ',' << p.seed << '\n';
  }
  return out.str();
}

Json schema_to_json(const RegionSchema& s) {
  Json rvs = Json::array();
  for (std::size_t i = 0; i < s.rvs.count(); ++i)
    rvs.push_back({{"name", s.rvs.names()[i]}, {"size", s.rvs.sizes()[i]}});
  Json factors = Json::array();
  for (const auto& f : s.factorization.factors) {
    factors.push_back({{"targets", f.targets}, {"given", f.given}, {"deterministic", f.deterministic}});
  }
  Json rates = Json::array();
  for (const auto& r : s.rate_vars)
    rates.push_back({{"name", r.name}, {"role", r.role == RateRole::Message ? "message" : "binning"}});
  Json constraints = Json::array();
  for (const auto& c : s.constraints) {
    constraints.push_back({{"label", c.label},
                           {"source", c.source},
                           {"sense", c.sense == Sense::LE ? "<=" : ">="},
                           {"coeffs", combination_json(RateCombination(c.coeffs.begin(), c.coeffs.end()))},
                           {"rhs", expr_json(c.rhs)}});
  }
  Json j = {{"id", to_string(s.id)},
            {"rvs", rvs},
            {"factorization", factors},
            {"rate_vars", rates},
            {"constraints", constraints},
            {"projection", {{"R1", combination_json(s.r1)}, {"R2", combination_json(s.r2)}}},
            {"fixed_zero", s.fixed_zero}};
  if (!s.note.empty()) j["note"] = s.note;
  return j;
}

Json table_to_json(const std::string& name, const CorrespondenceTable& t) {
  Json rvs = Json::object(), rates = Json::object(), notes = Json::object();
  for (const auto& [k, v] : t.rvs) rvs[k] = v;
  for (const auto& [k, v] : t.rates) rates[k] = v;
  for (const auto& [k, v] : t.notes) notes[k] = v;
  return {{"name", name}, {"rvs", rvs}, {"rates", rates}, {"notes", notes}};
}

Json schema_manifest() {
  Json schemas = Json::array();
  for (auto id : all_schemas()) schemas.push_back(schema_to_json(builtin_schema(id)));
  Json tables = Json::array();
  tables.push_back(table_to_json("cao_chen", cao_chen_table()));
  tables.push_back(table_to_json("cao_chen_merged", cao_chen_merged_table()));
  tables.push_back(table_to_json("jiang", jiang_table()));
  tables.push_back(table_to_json("maric", maric_table()));
  tables.push_back(table_to_json("maric_merged", maric_merged_table()));
  return {{"schemas", schemas}, {"tables", tables}};
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, path.string() + ": cannot open");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidParameter, path.string() + ": cannot write");
  out << text;
}

}  // namespace cifc
