#include "cifc/region.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace cifc {

namespace {

using Rows = std::vector<std::pair<const char*, const char*>>;

std::vector<LinearRateConstraint> parse_rows(const Rows& rows) {
  std::vector<LinearRateConstraint> out;
  out.reserve(rows.size());
  for (const auto& [label, text] : rows) out.push_back(parse_constraint(label, text));
  return out;
}

RandomVariableSet binary(std::initializer_list<const char*> names) {
  RandomVariableSet rvs;
  for (const char* n : names) rvs.add(n, 2);
  return rvs;
}

std::vector<RateVariable> rates(std::initializer_list<const char*> message,
                                std::initializer_list<const char*> binning) {
  std::vector<RateVariable> out;
  for (const char* n : message) out.push_back({n, RateRole::Message});
  for (const char* n : binning) out.push_back({n, RateRole::Binning});
  return out;
}

const Factor kChannelFactor{{"Y1", "Y2"}, {"X1", "X2"}, false};

RegionSchema rtd() {
  RegionSchema s{SchemaId::RTD, {}, {}, {}, {}, {}, {}, {}, {}};
  s.rvs = binary({"U1c", "U2c", "U1pb", "U2pb", "X1", "X2", "Y1", "Y2"});
  s.factorization.factors = {
      {{"U1c", "U2c", "U1pb", "U2pb"}, {}, false},
      {{"X1", "X2"}, {"U1c", "U2c", "U1pb", "U2pb"}, false},
      kChannelFactor,
  };
  s.rate_vars = rates({"R1c", "R1pb", "R2c", "R2pa", "R2pb"}, {"R1c'", "R1pb'", "R2pb'"});
  s.constraints = parse_rows({
      {"(1a)", "R1c' >= I(U1c;X2|U2c)"},
      {"(1b)", "R1c' + R1pb' >= I(U1pb,U1c;X2|U2c)"},
      {"(1c)", "R1c' + R1pb' + R2pb' >= I(U1pb,U1c;X2|U2c) + I(U2pb;U1pb|U1c,U2c,X2)"},
      {"(1d)",
       "R2c + R2pa + R1c + R1c' + R2pb + R2pb' <= I(Y2;U2pb,U1c,X2,U2c) + I(U1c;X2|U2c)"},
      {"(1e)", "R2pa + R1c + R1c' + R2pb + R2pb' <= I(Y2;U2pb,U1c,X2|U2c) + I(U1c;X2|U2c)"},
      {"(1f)", "R2pa + R2pb + R2pb' <= I(Y2;U2pb,X2|U1c,U2c) + I(U1c;X2|U2c)"},
      {"(1g)", "R1c + R1c' + R2pb + R2pb' <= I(Y2;U2pb,U1c|X2,U2c) + I(U1c;X2|U2c)"},
      {"(1h)", "R2pb + R2pb' <= I(Y2;U2pb|U1c,X2,U2c)"},
      {"(1i)", "R2c + R1c + R1c' + R1pb + R1pb' <= I(Y1;U1pb,U1c,U2c)"},
      {"(1j)", "R1c + R1c' + R1pb + R1pb' <= I(Y1;U1pb,U1c|U2c)"},
      {"(1k)", "R1pb + R1pb' <= I(Y1;U1pb|U1c,U2c)"},
  });
  s.r1 = {{"R1c", 1}, {"R1pb", 1}};
  s.r2 = {{"R2c", 1}, {"R2pa", 1}, {"R2pb", 1}};
  return s;
}

// p(U2c,X2) p(U1c|X2) p(U1pb|X2) p(X1|X2,U1c,U1pb)
FactorizationSpec devroye_factorization() {
  return {{
      {{"U2c", "X2"}, {}, false},
      {{"U1c"}, {"X2"}, false},
      {{"U1pb"}, {"X2"}, false},
      {{"X1"}, {"X2", "U1c", "U1pb"}, false},
      kChannelFactor,
  }};
}

RegionSchema rtd_in() {
  RegionSchema s{SchemaId::RTD_IN, {}, {}, {}, {}, {}, {}, {}, {}};
  s.rvs = binary({"U2c", "X2", "U1c", "U1pb", "X1", "Y1", "Y2"});
  s.factorization = devroye_factorization();
  s.rate_vars = rates({"R1c", "R1pb", "R2c", "R2pa"}, {"R1c'", "R1pb'"});
  s.constraints = parse_rows({
      {"(e10)", "R1c' >= I(U1c;X2|U2c)"},
      {"(e12)", "R1c' + R1pb' >= I(X2;U1c,U1pb|U2c)"},
      {"(e13)", "R2c + R1c + R2pa + R1c' <= I(Y2;U2c,U1c,X2) + I(U1c;X2|U2c)"},
      {"(e14)", "R2pa + R1c + R1c' <= I(Y2;U1c,X2|U2c) + I(U1c;X2|U2c)"},
      {"(e15)", "R1c + R1c' <= I(Y2;U1c|U2c,X2) + I(U1c;X2|U2c)"},
      {"(e16)", "R2pa <= I(Y2;X2|U2c,U1c) + I(U1c;X2|U2c)"},
      {"(e17)", "R1pb + R1pb' + R1c + R1c' + R2c <= I(Y1;U2c,U1c,U1pb)"},
      {"(e18)", "R1c + R1pb + R1c' + R1pb' <= I(Y1;U1c,U1pb|U2c)"},
      {"(e19)", "R1pb + R1pb' <= I(Y1;U1pb|U2c,U1c)"},
  });
  s.r1 = {{"R1c", 1}, {"R1pb", 1}};
  s.r2 = {{"R2c", 1}, {"R2pa", 1}};
  s.note = "U2pb is constant and R2pb = R2pb' = 0 under this restriction.";
  return s;
}

RegionSchema dmt_out() {
  RegionSchema s{SchemaId::DMT_OUT, {}, {}, {}, {}, {}, {}, {}, {}};
  s.rvs = binary({"U2c", "X2", "U1c", "U1pb", "X1", "Y1", "Y2"});
  s.factorization.factors = {
      {{"U2c"}, {}, false},
      {{"X2"}, {"U2c"}, false},
      {{"U1c"}, {"X2"}, false},
      {{"U1pb"}, {"X2"}, false},
      {{"X1"}, {"X2", "U1c", "U1pb"}, false},
      kChannelFactor,
  };
  s.rate_vars = rates({"R1c", "R1pb", "R2c", "R2pa"}, {"R1c'", "R1pb'"});
  s.constraints = parse_rows({
      {"(e20)", "R1c' >= I(U1c;X2,U2c)"},
      {"(e21)", "R1pb' >= I(U1pb;X2,U2c)"},
      {"(e23)", "R2pa + R1c + R1c' + R2c <= I(Y2;U1c,U2c,X2) + I(X2,U2c;U1c)"},
      {"(e24)", "R2pa + R1c + R1c' <= I(Y2;X2,U1c|U2c) + I(X2;U1c)"},
      {"(e25)", "R1c + R1c' <= I(Y2,X2,U2c;U1c)"},
      {"(e26)", "R2pa <= I(Y2;X2|U2c,U1c) + I(U1c;X2|U2c)"},
      {"(e27)", "R1pb + R1pb' + R1c + R1c' + R2c <= I(Y1;U1pb,U1c,U2c) + I(U1pb,U1c;U2c)"},
      {"(e28)", "R1c + R1pb + R1c' + R1pb' <= I(Y1,U2c;U1pb,U1c) + I(U1pb;U1c)"},
      {"(e29)", "R1pb + R1pb' <= I(Y1,U2c,U1c;U1pb)"},
  });
  s.r1 = {{"R1c", 1}, {"R1pb", 1}};
  s.r2 = {{"R2c", 1}, {"R2pa", 1}};
  s.note =
      "Binning equalities are stored as lower bounds. Variables are already renamed "
      "into the unified notation (V12->U2c, V21->U1c, V22->U1pb, X1'->X2, X2->X1). The "
      "pre-insertion list (binning rates against V11,V12 without X1) is not evaluated.";
  return s;
}

FactorizationSpec cao_chen_factorization() {
  return {{
      {{"U10", "U11", "V11", "V20", "V22", "X1", "X2"}, {}, false},
      kChannelFactor,
  }};
}

RegionSchema cc() {
  RegionSchema s{SchemaId::CC, {}, {}, {}, {}, {}, {}, {}, {}};
  s.rvs = binary({"U10", "U11", "V11", "V20", "V22", "X1", "X2", "Y1", "Y2"});
  s.factorization = cao_chen_factorization();
  // Native indices: user 1 is the primary, user 2 the cognitive.
  s.rate_vars = rates({"R1", "R2"}, {});
  s.constraints = parse_rows({
      {"(37)", "R1 <= I(Y1;V11,U11,V20,U10)"},
      {"(38)", "R2 <= I(Y2;V20,V22|U10) - I(V22,V20;U11|U10)"},
      {"(39)",
       "R1 + R2 <= I(Y1;V11,U11|V20,U10) + I(Y2;V22,V20,U10) - I(V22;U11,V11|V20,U10)"},
      {"(40)",
       "R1 + R2 <= I(Y1;V11,U11,V20,U10) + I(Y2;V22|V20,U10) - I(V22;U11,V11|V20,U10)"},
      {"(41)",
       "R1 + 2 R2 <= I(Y1;V11,U11,V20|U10) + I(Y2;V22|V20,U10) + I(Y2;V20,V22,U10)"
       " - I(V22;U11,V11|V20,U10) - I(V22,V20;U11|U10)"},
  });
  s.r1 = {{"R2", 1}};
  s.r2 = {{"R1", 1}};
  return s;
}

RegionSchema ccp() {
  RegionSchema s{SchemaId::CCP, {}, {}, {}, {}, {}, {}, {}, {}};
  s.rvs = binary({"U10", "V11p", "V20", "V22", "X1", "X2", "Y1", "Y2"});
  s.factorization.factors = {
      {{"U10", "V11p", "V20", "V22", "X1", "X2"}, {}, false},
      kChannelFactor,
  };
  s.rate_vars = rates({"R1", "R2"}, {});
  s.constraints = parse_rows({
      {"(37p)", "R1 <= I(Y1;V11p,V20,U10)"},
      {"(38p)", "R2 <= I(Y2;V20,V22|U10)"},
      {"(39p)", "R1 + R2 <= I(Y1;V11p|V20,U10) + I(Y2;V22,V20,U10) - I(V22;V11p|V20,U10)"},
      {"(40p)", "R1 + R2 <= I(Y1;V11p,V20,U10) + I(Y2;V22|V20,U10) - I(V22;V11p|V20,U10)"},
      {"(41p)",
       "R1 + 2 R2 <= I(Y1;V11p,V20|U10) + I(Y2;V22|V20,U10) + I(Y2;V20,V22,U10)"
       " - I(V22;V11p|V20,U10)"},
  });
  s.r1 = {{"R2", 1}};
  s.r2 = {{"R1", 1}};
  s.note = "V11p stands for the pair (V11, U11); U11 is constant.";
  return s;
}

FactorizationSpec general_split_factorization() {
  return {{
      {{"U2c", "U1c", "U1pb", "U2pb", "X1", "X2"}, {}, false},
      kChannelFactor,
  }};
}

RegionSchema ccp_split() {
  RegionSchema s{SchemaId::CCP_SPLIT, {}, {}, {}, {}, {}, {}, {}, {}};
  s.rvs = binary({"U2c", "U1c", "U1pb", "U2pb", "X1", "X2", "Y1", "Y2"});
  s.factorization = general_split_factorization();
  s.rate_vars = rates({"R1c", "R1pb", "R2c", "R2pb"}, {"R1c'", "R1pb'", "R2pb'"});
  s.constraints = parse_rows({
      {"(C'1)", "R1c' >= 0"},
      {"(C'2)", "R1pb' + R2pb' >= I(U1pb;U2pb|U2c,U1c)"},
      {"(C'3)", "R2pb + R2pb' <= I(Y2;U2pb|U2c,U1c)"},
      {"(C'4)", "R2pb + R2pb' + R1c + R1c' <= I(Y2;U1c,U2pb|U2c)"},
      {"(C'5)", "R2pb + R2pb' + R1c + R1c' + R2c <= I(Y2;U1c,U2c,U2pb)"},
      {"(C'6)", "R1pb + R1pb' <= I(Y1;U1pb|U2c,U1c)"},
      {"(C'7)", "R1pb + R1pb' + R1c + R1c' <= I(Y1;U1pb,U1c|U2c)"},
      {"(C'8)", "R1pb + R1pb' + R1c + R1c' + R2c <= I(Y1;U1pb,U1c,U2c)"},
  });
  s.r1 = {{"R1c", 1}, {"R1pb", 1}};
  s.r2 = {{"R2c", 1}, {"R2pb", 1}};
  s.note = "Merged Cao-Chen region evaluated with U10->U2c, V20->U1c, V22->U1pb, V11->U2pb.";
  return s;
}

RegionSchema rtd_cc() {
  RegionSchema s{SchemaId::RTD_CC, {}, {}, {}, {}, {}, {}, {}, {}};
  s.rvs = binary({"U2c", "U1c", "U1pb", "U2pb", "X1", "X2", "Y1", "Y2"});
  s.factorization = general_split_factorization();
  s.rate_vars = rates({"R1c", "R1pb", "R2c", "R2pb"}, {"R1c'", "R1pb'", "R2pb'"});
  s.constraints = parse_rows({
      {"(RC1)", "R1c' >= 0"},
      {"(RC2)", "R1c' + R1pb' >= 0"},
      {"(RC3)", "R1c' + R1pb' + R2pb' >= I(U1pb;U2pb|U2c,U1c)"},
      {"(RC4)", "R2pb + R2pb' <= I(Y2;U2pb|U2c,U1c)"},
      {"(RC5)", "R2pb + R2pb' + R1c + R1c' <= I(Y2;U1c,U2pb|U2c)"},
      {"(RC6)", "R2pb + R2pb' + R1c + R1c' + R2c <= I(Y2;U1c,U2c,U2pb)"},
      {"(RC7)", "R1pb + R1pb' <= I(Y1;U1pb|U2c,U1c)"},
      {"(RC8)", "R1pb + R1pb' + R1c + R1c' <= I(Y1;U1pb,U1c|U2c)"},
      {"(RC9)", "R1pb + R1pb' + R1c + R1c' + R2c <= I(Y1;U1pb,U1c,U2c)"},
  });
  s.r1 = {{"R1c", 1}, {"R1pb", 1}};
  s.r2 = {{"R2c", 1}, {"R2pb", 1}};
  s.note = "Unified region with R2pa = 0 and X2 = U2c; duplicate bounds removed.";
  return s;
}

RegionSchema jiang() {
  RegionSchema s{SchemaId::JIANG, {}, {}, {}, {}, {}, {}, {}, {}};
  // X0 is the cognitive input; V1p = (V1, X1) carries the primary input.
  s.rvs = binary({"U1", "V1p", "U2", "W1", "W2", "X0", "Y1", "Y2"});
  s.factorization.factors = {
      {{"U1"}, {}, false},
      {{"V1p"}, {"U1"}, false},
      {{"U2"}, {}, false},
      {{"W1", "W2"}, {"V1p", "U1", "U2"}, false},
      {{"X0"}, {"W1", "W2", "V1p", "U1", "U2"}, false},
      {{"Y1", "Y2"}, {"V1p", "X0"}, false},
  };
  s.rate_vars = rates({"R11", "R12", "R21", "R22"}, {"R11'", "R22'"});
  s.constraints = parse_rows({
      {"(J1-0)", "R22' >= I(W2;V1p|U1,U2)"},
      {"(J1-1)", "R11' + R22' >= I(W2;W1,V1p|U1,U2)"},
      {"(J1-2)", "R11 + R11' <= I(V1p,W1;Y1|U1,U2)"},
      {"(J1-3)", "R12 + R11 + R11' <= I(U1,V1p,W1;Y1|U2)"},
      {"(J1-4)", "R21 + R11 + R11' <= I(U2,V1p,W1;Y1|U1)"},
      {"(J1-5)", "R12 + R21 + R11 + R11' <= I(U1,V1p,W1,U2;Y1)"},
      {"(J1-6)", "R22 + R22' <= I(W2;Y2|U1,U2)"},
      {"(J1-7)", "R21 + R22 + R22' <= I(U2,W2;Y2|U1)"},
      {"(J1-8)", "R12 + R22 + R22' <= I(U1,W2;Y2|U2)"},
      {"(J1-9)", "R12 + R21 + R22 + R22' <= I(U1,U2,W2;Y2)"},
  });
  s.r1 = {{"R21", 1}, {"R22", 1}};
  s.r2 = {{"R11", 1}, {"R12", 1}};
  s.note = "Native indices: user 1 is the primary. Labels follow the translated list.";
  return s;
}

RegionSchema rtd_jiang() {
  RegionSchema s{SchemaId::RTD_JIANG, {}, {}, {}, {}, {}, {}, {}, {}};
  s.rvs = binary({"U1c", "U2c", "X2", "U1pb", "U2pb", "X1", "Y1", "Y2"});
  s.factorization.factors = {
      {{"U1c"}, {}, false},
      {{"U2c"}, {}, false},
      {{"X2"}, {"U2c"}, false},
      {{"U1pb", "U2pb"}, {"U1c", "U2c", "X2"}, false},
      {{"X1"}, {"U2c", "U1c", "U1pb", "U2pb", "X2"}, false},
      kChannelFactor,
  };
  s.rate_vars = rates({"R1c", "R1pb", "R2c", "R2pa", "R2pb"}, {"R1c'", "R1pb'", "R2pb'"});
  s.constraints = parse_rows({
      {"(us-pin-lo)", "R1c' >= I(U1c;X2|U2c)"},
      {"(us-pin-hi)", "R1c' <= I(U1c;X2|U2c)"},
      {"(us1-0)", "R1pb' >= I(U1pb;X2|U2c,U1c)"},
      {"(us1-1)", "R1pb' + R2pb' >= I(U1pb;X2,U2pb|U2c,U1c)"},
      {"(us1-2)", "R2pa + R2pb' <= I(Y2;X2,U2pb|U2c,U1c) + I(U1c;X2|U2c)"},
      {"(us1-3)", "R1c + R2pa + R2pb' <= I(Y2;U1c,X2,U2pb|U2c)"},
      {"(us1-4)", "R2c + R1c + R2pa + R2pb' <= I(Y2;U2pb,U1c,U2c,X2)"},
      {"(us1-5)", "R1pb + R1pb' <= I(Y1;U1pb|U2c,U1c)"},
      {"(us1-6)", "R1c + R1pb + R1pb' <= I(Y1;U1c,U1pb|U2c)"},
      {"(us1-7)", "R2c + R1c + R1pb + R1pb' <= I(Y1;U2c,U1c,U1pb)"},
  });
  s.r1 = {{"R1c", 1}, {"R1pb", 1}};
  s.r2 = {{"R2c", 1}, {"R2pa", 1}, {"R2pb", 1}};
  s.fixed_zero = {"R2pb"};
  return s;
}

RegionSchema maric() {
  RegionSchema s{SchemaId::MARIC, {}, {}, {}, {}, {}, {}, {}, {}};
  s.rvs = binary({"Q", "U1c", "U1a", "X2a", "X2b", "X1", "X2", "Y1", "Y2"});
  s.factorization.factors = {
      {{"Q", "U1c", "U1a", "X2a", "X2b", "X1", "X2"}, {}, false},
      kChannelFactor,
  };
  s.rate_vars = rates({"R1", "R2"}, {});
  s.constraints = parse_rows({
      {"(M1)",
       "R1 <= I(U1a;Y1|U1c,Q) - I(U1a;X2a,X2b|U1c,Q) + I(X2b,U1c;Y2|X2a,Q)"},
      {"(M2)", "R1 <= I(U1a,U1c;Y1|Q) - I(U1a,U1c;X2a,X2b|Q)"},
      {"(M3)", "R2 <= I(X2,U1c;Y2|Q)"},
      {"(M4)", "R2 <= I(X2;Y2,U1c|Q)"},
      {"(M5)",
       "R1 + R2 <= I(U1a;Y1|U1c,Q) - I(U1a;X2a,X2b|U1c,Q) + I(X2,U1c;Y2|Q)"},
  });
  s.r1 = {{"R1", 1}};
  s.r2 = {{"R2", 1}};
  s.note = "The merged form (X2b' = (X2a,X2b), X2a' constant) is maric_merged_table().";
  return s;
}

}  // namespace

std::string to_string(SchemaId id) {
  switch (id) {
    case SchemaId::RTD: return "RTD";
    case SchemaId::RTD_IN: return "RTD_IN";
    case SchemaId::DMT_OUT: return "DMT_OUT";
    case SchemaId::CC: return "CC";
    case SchemaId::CCP: return "CCP";
    case SchemaId::CCP_SPLIT: return "CCP_SPLIT";
    case SchemaId::RTD_CC: return "RTD_CC";
    case SchemaId::JIANG: return "JIANG";
    case SchemaId::RTD_JIANG: return "RTD_JIANG";
    case SchemaId::MARIC: return "MARIC";
  }
  return "?";
}

const std::vector<SchemaId>& all_schemas() {
  static const std::vector<SchemaId> ids = {
      SchemaId::RTD,    SchemaId::RTD_IN, SchemaId::DMT_OUT,   SchemaId::CC,
      SchemaId::CCP,    SchemaId::CCP_SPLIT, SchemaId::RTD_CC, SchemaId::JIANG,
      SchemaId::RTD_JIANG, SchemaId::MARIC,
  };
  return ids;
}

SchemaId schema_from_string(const std::string& name) {
  for (SchemaId id : all_schemas())
    if (to_string(id) == name) return id;
  throw Error(ErrorCode::UnknownSchema, name);
}

RegionSchema builtin_schema(SchemaId id) {
  switch (id) {
    case SchemaId::RTD: return rtd();
    case SchemaId::RTD_IN: return rtd_in();
    case SchemaId::DMT_OUT: return dmt_out();
    case SchemaId::CC: return cc();
    case SchemaId::CCP: return ccp();
    case SchemaId::CCP_SPLIT: return ccp_split();
    case SchemaId::RTD_CC: return rtd_cc();
    case SchemaId::JIANG: return jiang();
    case SchemaId::RTD_JIANG: return rtd_jiang();
    case SchemaId::MARIC: return maric();
  }
  throw Error(ErrorCode::UnknownSchema, "unrecognised schema id");
}

const LinearRateConstraint& RegionSchema::constraint(const std::string& label) const {
  if (auto i = constraint_index(label)) return constraints[*i];
  throw Error(ErrorCode::UnknownVariable, "no constraint labelled " + label);
}

std::optional<std::size_t> RegionSchema::constraint_index(const std::string& label) const {
  for (std::size_t i = 0; i < constraints.size(); ++i)
    if (constraints[i].label == label) return i;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Correspondences

NameList CorrespondenceTable::map_rvs(const NameList& names) const {
  NameList out;
  for (const auto& n : names) {
    auto it = rvs.find(n);
    if (it == rvs.end()) {
      out.push_back(n);
    } else {
      out.insert(out.end(), it->second.begin(), it->second.end());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MITerm CorrespondenceTable::map(const MITerm& t) const {
  return {map_rvs(t.left), map_rvs(t.right), map_rvs(t.given)};
}

MIExpr CorrespondenceTable::map(const MIExpr& e) const {
  MIExpr out;
  out.constant = e.constant;
  for (const auto& t : e.terms) out.add(t.sign, map(t.term));
  return out;
}

std::string CorrespondenceTable::map_rate(const std::string& r) const {
  auto it = rates.find(r);
  return it == rates.end() ? r : it->second;
}

CorrespondenceTable identity_table() { return {}; }

CorrespondenceTable cao_chen_table() {
  CorrespondenceTable t;
  t.rvs = {{"U10", {"U2c"}}, {"U11", {"U11"}}, {"V11", {"U2pb"}}, {"V20", {"U1c"}},
           {"V22", {"U1pb"}}, {"X1", {"X2"}},   {"X2", {"X1"}},    {"Y1", {"Y2"}},
           {"Y2", {"Y1"}}};
  t.rates = {{"R1", "R2"}, {"R2", "R1"}};
  t.notes = {{"U10", "TX 2 -> RX 1, RX 2"},
             {"V20", "TX 1 -> RX 1, RX 2"},
             {"V22", "TX 1 -> RX 1"},
             {"V11", "TX 1 -> RX 2"},
             {"U11", "primary private layer, constant after merging"}};
  return t;
}

CorrespondenceTable cao_chen_merged_table() {
  CorrespondenceTable t = cao_chen_table();
  t.rvs.erase("U11");
  t.rvs.erase("V11");
  t.rvs["V11p"] = {"U2pb", "U11"};
  t.notes["V11p"] = "V11' = (V11, U11)";
  return t;
}

CorrespondenceTable jiang_table() {
  CorrespondenceTable t;
  t.rvs = {{"U1", {"U2c"}}, {"V1p", {"X2"}}, {"U2", {"U1c"}}, {"W1", {"U2pb"}},
           {"W2", {"U1pb"}}, {"X0", {"X1"}}, {"Y1", {"Y2"}},  {"Y2", {"Y1"}}};
  t.rates = {{"R11", "R2pa"}, {"R12", "R2c"},    {"R21", "R1c"},
             {"R22", "R1pb"}, {"R11'", "R2pb'"}, {"R22'", "R1pb'"}};
  t.notes = {{"U1", "TX 2 -> RX 1, RX 2"}, {"V1p", "TX 2 -> RX 2"},
             {"U2", "TX 1 -> RX 1, RX 2"}, {"W2", "TX 1 -> RX 1"},
             {"W1", "TX 1 -> RX 2 (R2pb = 0)"}};
  return t;
}

CorrespondenceTable maric_table() { return {}; }

CorrespondenceTable maric_merged_table() {
  CorrespondenceTable t;
  t.rvs = {{"X2b", {"X2a", "X2b"}}, {"X2a", {}}};
  t.notes = {{"X2b", "X2b' = (X2a, X2b)"}, {"X2a", "X2a' constant"}};
  return t;
}

CorrespondenceTable default_table(SchemaId id) {
  switch (id) {
    case SchemaId::CC: return cao_chen_table();
    case SchemaId::CCP: return cao_chen_merged_table();
    case SchemaId::JIANG: return jiang_table();
    default: return identity_table();
  }
}

// ---------------------------------------------------------------------------
// Instantiation

std::size_t LinearSystem::var_index(const std::string& name) const {
  auto it = std::find(vars.begin(), vars.end(), name);
  if (it == vars.end()) throw Error(ErrorCode::UnknownVariable, "rate " + name);
  return static_cast<std::size_t>(it - vars.begin());
}

void LinearSystem::fix_zero(const std::string& name) { zero[var_index(name)] = true; }

void LinearSystem::drop(const std::string& label) {
  auto it = std::find_if(rows.begin(), rows.end(),
                         [&](const NumericConstraint& r) { return r.label == label; });
  if (it == rows.end()) throw Error(ErrorCode::UnknownVariable, "no row labelled " + label);
  rows.erase(it);
}

LinearSystem instantiate(const RegionSchema& schema, const JointDistribution& d,
                         const CorrespondenceTable& table, double tol) {
  FactorizationSpec mapped;
  for (const auto& f : schema.factorization.factors) {
    Factor g{table.map_rvs(f.targets), table.map_rvs(f.given), f.deterministic};
    if (!g.targets.empty()) mapped.factors.push_back(std::move(g));
  }
  if (auto why = factorization_violation(d, mapped, tol)) {
    throw Error(ErrorCode::FactorizationViolation, to_string(schema.id) + ": " + *why);
  }

  LinearSystem sys;
  for (const auto& v : schema.rate_vars) sys.vars.push_back(v.name);
  sys.zero.assign(sys.vars.size(), false);
  for (const auto& z : schema.fixed_zero) sys.fix_zero(z);

  InfoEvaluator info(d);
  for (const auto& c : schema.constraints) {
    NumericConstraint row{c.label, std::vector<std::int64_t>(sys.vars.size(), 0), c.sense, 0.0};
    for (const auto& [name, k] : c.coeffs) row.coeffs[sys.var_index(name)] = k;
    row.rhs = info.evaluate(table.map(c.rhs));
    sys.rows.push_back(std::move(row));
  }
  sys.r1.assign(sys.vars.size(), 0);
  sys.r2.assign(sys.vars.size(), 0);
  for (const auto& [name, k] : schema.r1) sys.r1[sys.var_index(name)] = k;
  for (const auto& [name, k] : schema.r2) sys.r2[sys.var_index(name)] = k;
  return sys;
}

LinearSystem instantiate(const RegionSchema& schema, const JointDistribution& d) {
  return instantiate(schema, d, default_table(schema.id));
}

std::vector<std::string> droppable_constraints(const RegionSchema& schema,
                                               const std::set<std::string>& zeroed) {
  if (schema.id != SchemaId::RTD) {
    throw Error(ErrorCode::NotApplicable, "droppability is defined for RTD only");
  }
  static const std::array<std::pair<const char*, std::array<const char*, 4>>, 4> droppable = {{
      {"(1d)", {"R2c", "R2pa", "R2pb", "R2pb'"}},
      {"(1e)", {"R2pa", "R2pb", "R2pb'", nullptr}},
      {"(1g)", {"R2pb", "R2pb'", nullptr, nullptr}},
      {"(1i)", {"R1c", "R1c'", "R1pb", "R1pb'"}},
  }};
  std::vector<std::string> out;
  for (const auto& [label, needed] : droppable) {
    bool all = true;
    for (const char* r : needed)
      if (r && !zeroed.count(r)) all = false;
    if (all) out.push_back(label);
  }
  return out;
}

}  // namespace cifc
