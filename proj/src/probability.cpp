#include "cifc/probability.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace cifc {

// ---------------------------------------------------------------------------
// RandomVariableSet

RandomVariableSet::RandomVariableSet(NameList names, std::vector<int> sizes) {
  if (names.size() != sizes.size()) {
    throw Error(ErrorCode::InvalidParameter, "names and sizes differ in length");
  }
  for (std::size_t i = 0; i < names.size(); ++i) add(names[i], sizes[i]);
}

void RandomVariableSet::add(const std::string& name, int size) {
  if (size < 1) throw Error(ErrorCode::InvalidParameter, "cardinality of " + name + " < 1");
  if (contains(name)) throw Error(ErrorCode::InvalidParameter, "duplicate variable " + name);
  if (names_.size() >= 32) throw Error(ErrorCode::InvalidParameter, "at most 32 variables");
  names_.push_back(name);
  sizes_.push_back(size);
}

std::optional<std::size_t> RandomVariableSet::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

std::size_t RandomVariableSet::index_of(const std::string& name) const {
  if (auto i = find(name)) return *i;
  throw Error(ErrorCode::UnknownVariable, name);
}

std::size_t RandomVariableSet::states() const {
  std::size_t n = 1;
  for (int s : sizes_) n *= static_cast<std::size_t>(s);
  return n;
}

// ---------------------------------------------------------------------------
// JointDistribution

JointDistribution::JointDistribution(RandomVariableSet rvs, std::vector<double> p)
    : rvs_(std::move(rvs)), p_(std::move(p)) {
  if (p_.size() != rvs_.states()) {
    std::ostringstream msg;
    msg << "pmf has " << p_.size() << " entries, expected " << rvs_.states();
    throw Error(ErrorCode::InvalidParameter, msg.str());
  }
  double total = 0.0;
  for (double v : p_) {
    if (!(v >= 0.0)) throw Error(ErrorCode::NegativeProbability, "negative pmf entry");
    total += v;
  }
  if (std::abs(total - 1.0) > kDistributionTolerance * std::max<double>(1.0, p_.size())) {
    std::ostringstream msg;
    msg << "pmf sums to " << total;
    throw Error(ErrorCode::RowSumMismatch, msg.str());
  }
}

std::uint32_t JointDistribution::mask_of(std::span<const std::string> names) const {
  std::uint32_t mask = 0;
  for (const auto& n : names) mask |= 1u << rvs_.index_of(n);
  return mask;
}

std::vector<double> JointDistribution::marginal_table(std::uint32_t mask) const {
  const auto& sizes = rvs_.sizes();
  const std::size_t n = sizes.size();
  // Stride of each variable inside the marginal (0 when summed out).
  std::vector<std::size_t> stride(n, 0);
  std::size_t out_size = 1;
  for (std::size_t i = n; i-- > 0;) {
    if (mask & (1u << i)) {
      stride[i] = out_size;
      out_size *= static_cast<std::size_t>(sizes[i]);
    }
  }
  std::vector<double> out(out_size, 0.0);
  std::vector<int> digit(n, 0);
  std::size_t sub = 0;
  for (std::size_t flat = 0; flat < p_.size(); ++flat) {
    out[sub] += p_[flat];
    // Odometer increment, last variable fastest.
    for (std::size_t i = n; i-- > 0;) {
      if (++digit[i] < sizes[i]) {
        sub += stride[i];
        break;
      }
      sub -= stride[i] * static_cast<std::size_t>(sizes[i] - 1);
      digit[i] = 0;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Factorizations

NameList FactorizationSpec::covered() const {
  NameList out;
  for (const auto& f : factors) out.insert(out.end(), f.targets.begin(), f.targets.end());
  return out;
}

FactoredDistribution::FactoredDistribution(RandomVariableSet rvs, FactorizationSpec spec,
                                           Rng& rng)
    : rvs_(std::move(rvs)), spec_(std::move(spec)) {
  std::set<std::string> seen;
  for (const auto& f : spec_.factors) {
    Layout lay;
    lay.deterministic = f.deterministic;
    for (const auto& g : f.given) {
      if (!seen.count(g)) {
        throw Error(ErrorCode::SpecCoverage, "conditioning variable " + g +
                                                 " is not a target of an earlier factor");
      }
      auto i = rvs_.find(g);
      if (!i) throw Error(ErrorCode::SpecCoverage, "unknown variable " + g);
      lay.given_idx.push_back(*i);
      lay.cells *= static_cast<std::size_t>(rvs_.sizes()[*i]);
    }
    for (const auto& t : f.targets) {
      auto i = rvs_.find(t);
      if (!i) throw Error(ErrorCode::SpecCoverage, "unknown variable " + t);
      if (!seen.insert(t).second) throw Error(ErrorCode::SpecCoverage, t + " targeted twice");
      lay.target_idx.push_back(*i);
      lay.outcomes *= static_cast<std::size_t>(rvs_.sizes()[*i]);
    }
    layout_.push_back(std::move(lay));
  }
  for (const auto& name : rvs_.names()) {
    if (!seen.count(name)) throw Error(ErrorCode::SpecCoverage, name + " is not covered");
  }
  for (const auto& lay : layout_) {
    std::vector<double> table(lay.cells * lay.outcomes, 0.0);
    for (std::size_t c = 0; c < lay.cells; ++c) {
      std::span<double> r(table.data() + c * lay.outcomes, lay.outcomes);
      if (lay.deterministic) {
        r[rng.below(lay.outcomes)] = 1.0;
      } else {
        rng.dirichlet(r);
      }
    }
    tables_.push_back(std::move(table));
  }
}

std::span<double> FactoredDistribution::row(std::size_t f, std::size_t cell) {
  return {tables_[f].data() + cell * layout_[f].outcomes, layout_[f].outcomes};
}

JointDistribution FactoredDistribution::joint() const {
  const auto& sizes = rvs_.sizes();
  const std::size_t n = sizes.size();
  const std::size_t total = rvs_.states();
  std::vector<double> p(total, 1.0);
  std::vector<int> digit(n, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    double v = 1.0;
    for (std::size_t f = 0; f < layout_.size() && v > 0.0; ++f) {
      const auto& lay = layout_[f];
      std::size_t cell = 0, outcome = 0;
      for (std::size_t g : lay.given_idx) cell = cell * sizes[g] + digit[g];
      for (std::size_t t : lay.target_idx) outcome = outcome * sizes[t] + digit[t];
      v *= tables_[f][cell * lay.outcomes + outcome];
    }
    p[flat] = v;
    for (std::size_t i = n; i-- > 0;) {
      if (++digit[i] < sizes[i]) break;
      digit[i] = 0;
    }
  }
  return JointDistribution(rvs_, std::move(p));
}

void FactoredDistribution::perturb(Rng& rng, double step) {
  std::vector<std::size_t> movable;
  for (std::size_t f = 0; f < layout_.size(); ++f)
    if (layout_[f].outcomes > 1) movable.push_back(f);
  if (movable.empty()) return;
  const std::size_t f = movable[rng.below(movable.size())];
  const auto& lay = layout_[f];
  auto r = row(f, rng.below(lay.cells));
  if (lay.deterministic) {
    std::fill(r.begin(), r.end(), 0.0);
    r[rng.below(lay.outcomes)] = 1.0;
    return;
  }
  const double u = rng.uniform();
  if (u < 0.1) {
    std::fill(r.begin(), r.end(), 0.0);
    r[rng.below(lay.outcomes)] = 1.0;
  } else if (u < 0.15) {
    std::fill(r.begin(), r.end(), 1.0 / static_cast<double>(lay.outcomes));
  } else {
    std::vector<double> fresh(lay.outcomes);
    rng.dirichlet(fresh);
    double total = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      r[i] = (1.0 - step) * r[i] + step * fresh[i];
      total += r[i];
    }
    for (double& v : r) v /= total;
  }
}

JointDistribution sample_factored(const RandomVariableSet& rvs, const FactorizationSpec& spec,
                                  std::uint64_t seed) {
  Rng rng(seed);
  return FactoredDistribution(rvs, spec, rng).joint();
}

// ---------------------------------------------------------------------------
// Channel extension and marginals

JointDistribution extend_through_channel(const JointDistribution& d, const Channel& c,
                                         const ChannelPorts& ports) {
  const auto& rvs = d.rvs();
  auto ix1 = rvs.find(ports.x1);
  auto ix2 = rvs.find(ports.x2);
  if (!ix1 || !ix2) throw Error(ErrorCode::AlphabetMismatch, "distribution lacks channel inputs");
  if (rvs.sizes()[*ix1] != c.x1().size || rvs.sizes()[*ix2] != c.x2().size) {
    throw Error(ErrorCode::AlphabetMismatch, "input cardinalities differ from channel alphabets");
  }
  RandomVariableSet out_rvs = rvs;
  out_rvs.add(ports.y1, c.y1().size);
  out_rvs.add(ports.y2, c.y2().size);

  const std::size_t n = rvs.count();
  const auto& sizes = rvs.sizes();
  const std::size_t ny = static_cast<std::size_t>(c.y1().size) * c.y2().size;
  std::vector<double> p(d.p().size() * ny, 0.0);
  std::vector<int> digit(n, 0);
  for (std::size_t flat = 0; flat < d.p().size(); ++flat) {
    const double base = d.p()[flat];
    const int a1 = digit[*ix1], a2 = digit[*ix2];
    for (int b1 = 0; b1 < c.y1().size; ++b1)
      for (int b2 = 0; b2 < c.y2().size; ++b2)
        p[flat * ny + static_cast<std::size_t>(b1) * c.y2().size + b2] = base * c(b1, b2, a1, a2);
    for (std::size_t i = n; i-- > 0;) {
      if (++digit[i] < sizes[i]) break;
      digit[i] = 0;
    }
  }
  return JointDistribution(std::move(out_rvs), std::move(p));
}

JointDistribution marginalize(const JointDistribution& d, const NameList& keep) {
  const std::uint32_t mask = d.mask_of(keep);
  RandomVariableSet kept;
  for (std::size_t i = 0; i < d.rvs().count(); ++i)
    if (mask & (1u << i)) kept.add(d.rvs().names()[i], d.rvs().sizes()[i]);
  return JointDistribution(std::move(kept), d.marginal_table(mask));
}

// ---------------------------------------------------------------------------
// Information measures

namespace {

std::string join(const NameList& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ',';
    out += names[i];
  }
  return out;
}

}  // namespace

bool MITerm::well_formed() const {
  if (left.empty() || right.empty()) return false;
  std::set<std::string> all;
  std::size_t total = 0;
  for (const NameList* s : {&left, &right, &given}) {
    all.insert(s->begin(), s->end());
    total += s->size();
  }
  return all.size() == total;
}

std::string MITerm::to_string() const {
  std::string out = "I(" + join(left) + ";" + join(right);
  if (!given.empty()) out += "|" + join(given);
  return out + ")";
}

MIExpr& MIExpr::add(int sign, const MIExpr& other) {
  for (const auto& t : other.terms) terms.push_back({sign * t.sign, t.term});
  constant += sign * other.constant;
  return *this;
}

std::string MIExpr::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms) {
    if (first) {
      out << (t.sign < 0 ? "-" : "");
    } else {
      out << (t.sign < 0 ? " - " : " + ");
    }
    out << t.term.to_string();
    first = false;
  }
  if (constant != 0.0 || first) {
    if (!first) out << (constant < 0 ? " - " : " + ");
    out << (first ? constant : std::abs(constant));
  }
  return out.str();
}

double InfoEvaluator::entropy(std::uint32_t mask) {
  if (mask == 0) return 0.0;
  if (auto it = cache_.find(mask); it != cache_.end()) return it->second;
  double h = 0.0;
  for (double v : d_->marginal_table(mask))
    if (v > 0.0) h -= v * std::log2(v);
  cache_.emplace(mask, h);
  return h;
}

double InfoEvaluator::mutual_information(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  a &= ~c;
  b &= ~c;
  if (a == 0 || b == 0) return 0.0;
  const double v = entropy(a | c) + entropy(b | c) - entropy(a | b | c) - entropy(c);
  return (v < 0.0 && v >= -kMiClamp) ? 0.0 : v;
}

double InfoEvaluator::mutual_information(const MITerm& t) {
  return mutual_information(d_->mask_of(t.left), d_->mask_of(t.right), d_->mask_of(t.given));
}

double InfoEvaluator::evaluate(const MIExpr& e) {
  double v = e.constant;
  for (const auto& t : e.terms) v += t.sign * mutual_information(t.term);
  return v;
}

double entropy(const JointDistribution& d, const NameList& names) {
  return InfoEvaluator(d).entropy(names);
}

double mutual_information(const JointDistribution& d, const MITerm& t) {
  return InfoEvaluator(d).mutual_information(t);
}

double evaluate_expr(const JointDistribution& d, const MIExpr& e) {
  return InfoEvaluator(d).evaluate(e);
}

bool check_conditional_independence(const JointDistribution& d, const NameList& a,
                                    const NameList& b, const NameList& given, double tol) {
  return mutual_information(d, MITerm{a, b, given}) <= tol;
}

std::optional<std::string> factorization_violation(const JointDistribution& d,
                                                   const FactorizationSpec& spec, double tol) {
  InfoEvaluator info(d);
  NameList earlier;
  for (const auto& f : spec.factors) {
    NameList others;
    for (const auto& e : earlier)
      if (std::find(f.given.begin(), f.given.end(), e) == f.given.end()) others.push_back(e);
    if (!others.empty()) {
      MITerm ci{f.targets, others, f.given};
      const double v = info.mutual_information(ci);
      if (v > tol) {
        std::ostringstream msg;
        msg << ci.to_string() << " = " << v << " > " << tol;
        return msg.str();
      }
    }
    earlier.insert(earlier.end(), f.targets.begin(), f.targets.end());
  }
  return std::nullopt;
}

}  // namespace cifc
