#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cifc/probability.hpp"

namespace cifc {

/// Built-in regions. R1 always denotes the cognitive user's rate after projection.
enum class SchemaId {
  RTD,        // unified region with joint Marton-style binning at the cognitive encoder
  RTD_IN,     // RTD restricted to the Devroye-style factorization
  DMT_OUT,    // enlarged Devroye-Mitran-Tarokh region, written in RTD variables
  CC,         // Cao-Chen region, native (post-elimination) form
  CCP,        // Cao-Chen region with U11 merged into V11
  CCP_SPLIT,  // CCP in rate-split form under the Cao-Chen correspondence
  RTD_CC,     // RTD with R2pa = 0 and X2 = U2c
  JIANG,      // Jiang-Xin-Garg region with V1' = (V1, X1), native form
  RTD_JIANG,  // RTD with R2pb = 0 and R1c' pinned, Jiang factorization
  MARIC,      // Maric-Goldsmith-Kramer-Shamai region after elimination
};

std::string to_string(SchemaId id);
/// Throws Error(UnknownSchema).
SchemaId schema_from_string(const std::string& name);
const std::vector<SchemaId>& all_schemas();

enum class RateRole { Message, Binning };
enum class Sense { LE, GE };

struct RateVariable {
  std::string name;
  RateRole role = RateRole::Message;
};

struct LinearRateConstraint {
  std::string label;
  std::map<std::string, int> coeffs;  // rate variable -> integer coefficient
  Sense sense = Sense::LE;
  MIExpr rhs;
  std::string source;  // the constraint as transcribed

  std::string to_string() const;
};

/// Integer combination of rate variables.
using RateCombination = std::map<std::string, int>;

struct RegionSchema {
  SchemaId id;
  RandomVariableSet rvs;  // the schema's own (possibly comparator-native) variables
  FactorizationSpec factorization;
  std::vector<RateVariable> rate_vars;
  std::vector<LinearRateConstraint> constraints;
  RateCombination r1, r2;  // projection onto (cognitive, primary) rates
  std::vector<std::string> fixed_zero;
  std::string note;

  const LinearRateConstraint& constraint(const std::string& label) const;
  std::optional<std::size_t> constraint_index(const std::string& label) const;
};

/// Parses "R1c + 2 R2 <= I(A;B|C) - I(D;E)" (also ">=").
LinearRateConstraint parse_constraint(const std::string& label, const std::string& text);
MIExpr parse_expr(const std::string& text);

RegionSchema builtin_schema(SchemaId id);

/// Maps a schema's variable and rate names onto names of an evaluation
/// distribution / a target rate space. A variable mapped to the empty set is
/// degenerate. Unlisted names map to themselves.
struct CorrespondenceTable {
  std::map<std::string, NameList> rvs;
  std::map<std::string, std::string> rates;
  std::map<std::string, std::string> notes;

  NameList map_rvs(const NameList& names) const;
  MITerm map(const MITerm& t) const;
  MIExpr map(const MIExpr& e) const;
  std::string map_rate(const std::string& r) const;
};

CorrespondenceTable identity_table();
/// Cao-Chen names -> RTD names (primary/cognitive indices swapped).
CorrespondenceTable cao_chen_table();
/// As cao_chen_table, with V11' = (V11, U11) for the merged region CCP.
CorrespondenceTable cao_chen_merged_table();
/// Jiang-Xin-Garg names -> RTD names.
CorrespondenceTable jiang_table();
/// Maric names evaluated as written.
CorrespondenceTable maric_table();
/// Maric names with X2b' = (X2a, X2b), X2a' = constant.
CorrespondenceTable maric_merged_table();

/// Table used by `instantiate` when none is given (maps into RTD-named distributions).
CorrespondenceTable default_table(SchemaId id);

struct NumericConstraint {
  std::string label;
  std::vector<std::int64_t> coeffs;  // aligned with LinearSystem::vars
  Sense sense = Sense::LE;
  double rhs = 0.0;
};

/// A schema evaluated at one distribution: integer LHS, real RHS in bits.
struct LinearSystem {
  std::vector<std::string> vars;
  std::vector<NumericConstraint> rows;
  std::vector<std::int64_t> r1, r2;
  std::vector<bool> zero;  // variables pinned to 0

  std::size_t var_index(const std::string& name) const;
  void fix_zero(const std::string& name);
  /// Removes the row with this label; throws Error(UnknownVariable) if absent.
  void drop(const std::string& label);
};

/// Evaluates every right-hand side. Throws Error(FactorizationViolation) when `d`
/// (seen through `table`) does not factor as the schema requires.
LinearSystem instantiate(const RegionSchema& schema, const JointDistribution& d,
                         const CorrespondenceTable& table, double tol = 1e-9);
LinearSystem instantiate(const RegionSchema& schema, const JointDistribution& d);

/// Labels of RTD constraints that may be dropped when `zeroed` rates are all zero.
/// Throws Error(NotApplicable) for other schemas.
std::vector<std::string> droppable_constraints(const RegionSchema& schema,
                                               const std::set<std::string>& zeroed);

}  // namespace cifc
