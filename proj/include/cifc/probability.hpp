#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cifc/channel.hpp"
#include "cifc/random.hpp"

namespace cifc {

inline constexpr double kDistributionTolerance = 1e-12;
inline constexpr double kMiClamp = 1e-12;

using NameList = std::vector<std::string>;

/// Ordered, uniquely named random variables with finite cardinalities.
class RandomVariableSet {
 public:
  RandomVariableSet() = default;
  RandomVariableSet(NameList names, std::vector<int> sizes);

  void add(const std::string& name, int size);

  std::size_t count() const { return names_.size(); }
  const NameList& names() const { return names_; }
  const std::vector<int>& sizes() const { return sizes_; }
  std::optional<std::size_t> find(const std::string& name) const;
  /// Throws Error(UnknownVariable).
  std::size_t index_of(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name).has_value(); }
  int size_of(const std::string& name) const { return sizes_[index_of(name)]; }
  std::size_t states() const;

  friend bool operator==(const RandomVariableSet&, const RandomVariableSet&) = default;

 private:
  NameList names_;
  std::vector<int> sizes_;
};

/// Dense joint pmf, row-major over the variable order (first variable slowest).
class JointDistribution {
 public:
  JointDistribution() = default;
  /// Validates nonnegativity and unit mass (Error(InvalidParameter)).
  JointDistribution(RandomVariableSet rvs, std::vector<double> p);

  const RandomVariableSet& rvs() const { return rvs_; }
  const std::vector<double>& p() const { return p_; }

  /// Bitmask over variable positions; throws Error(UnknownVariable).
  std::uint32_t mask_of(std::span<const std::string> names) const;

  /// Pmf of the variables in `mask`, in this distribution's variable order.
  std::vector<double> marginal_table(std::uint32_t mask) const;

 private:
  RandomVariableSet rvs_;
  std::vector<double> p_;
};

/// One factor p(targets | given) of a chain-rule factorization.
struct Factor {
  NameList targets;
  NameList given;
  /// Every conditioning cell maps to a single target state.
  bool deterministic = false;
};

struct FactorizationSpec {
  std::vector<Factor> factors;

  /// Targets covered so far, in order.
  NameList covered() const;
};

/// Conditional tables for a factorization; the parameter space of a sampled input distribution.
class FactoredDistribution {
 public:
  /// Draws every conditional row from Dirichlet(1) (or a uniform pick when deterministic).
  /// Throws Error(SpecCoverage) when the factorization and the variable set disagree.
  FactoredDistribution(RandomVariableSet rvs, FactorizationSpec spec, Rng& rng);

  const RandomVariableSet& rvs() const { return rvs_; }
  const FactorizationSpec& spec() const { return spec_; }

  JointDistribution joint() const;

  /// Conditional row for factor `f` and conditioning cell `cell`.
  std::span<double> row(std::size_t f, std::size_t cell);
  std::size_t factor_count() const { return layout_.size(); }
  std::size_t cell_count(std::size_t f) const { return layout_[f].cells; }
  std::size_t row_size(std::size_t f) const { return layout_[f].outcomes; }

  /// Local move used by frontier search: mixes one random row with a fresh draw
  /// (weight `step`), or sharpens it to a point mass / flattens it to uniform.
  void perturb(Rng& rng, double step);

 private:
  struct Layout {
    std::vector<std::size_t> target_idx, given_idx;
    std::size_t cells = 1, outcomes = 1;
    bool deterministic = false;
  };

  RandomVariableSet rvs_;
  FactorizationSpec spec_;
  std::vector<Layout> layout_;
  std::vector<std::vector<double>> tables_;  // [factor][cell * outcomes + outcome]
};

JointDistribution sample_factored(const RandomVariableSet& rvs, const FactorizationSpec& spec,
                                  std::uint64_t seed);

struct ChannelPorts {
  std::string x1 = "X1", x2 = "X2", y1 = "Y1", y2 = "Y2";
};

/// Appends Y1, Y2 with p(all, y1, y2) = p(all) p(y1, y2 | x1, x2).
JointDistribution extend_through_channel(const JointDistribution& d, const Channel& c,
                                         const ChannelPorts& ports = {});

JointDistribution marginalize(const JointDistribution& d, const NameList& keep);

/// I(left; right | given). Sets may overlap; an empty left or right gives 0.
struct MITerm {
  NameList left, right, given;

  /// Well-formedness as written in a region: disjoint sets, nonempty left/right.
  bool well_formed() const;
  std::string to_string() const;
  friend bool operator==(const MITerm&, const MITerm&) = default;
};

struct SignedTerm {
  int sign = 1;
  MITerm term;
  friend bool operator==(const SignedTerm&, const SignedTerm&) = default;
};

struct MIExpr {
  std::vector<SignedTerm> terms;
  double constant = 0.0;

  MIExpr& add(int sign, MITerm t) {
    terms.push_back({sign, std::move(t)});
    return *this;
  }
  MIExpr& add(int sign, const MIExpr& other);
  std::string to_string() const;
};

/// Memoised entropy evaluator over one distribution. Not thread-safe; cheap to build.
class InfoEvaluator {
 public:
  explicit InfoEvaluator(const JointDistribution& d) : d_(&d) {}

  const JointDistribution& distribution() const { return *d_; }

  double entropy(std::uint32_t mask);
  double entropy(const NameList& names) { return entropy(d_->mask_of(names)); }
  /// Clamped conditional mutual information in bits.
  double mutual_information(std::uint32_t a, std::uint32_t b, std::uint32_t c);
  double mutual_information(const MITerm& t);
  double evaluate(const MIExpr& e);

 private:
  const JointDistribution* d_;
  std::unordered_map<std::uint32_t, double> cache_;
};

double entropy(const JointDistribution& d, const NameList& names);
double mutual_information(const JointDistribution& d, const MITerm& t);
double evaluate_expr(const JointDistribution& d, const MIExpr& e);
bool check_conditional_independence(const JointDistribution& d, const NameList& a,
                                    const NameList& b, const NameList& given, double tol);

/// The first conditional independence implied by `spec` that `d` violates, as text.
std::optional<std::string> factorization_violation(const JointDistribution& d,
                                                   const FactorizationSpec& spec, double tol);

}  // namespace cifc
