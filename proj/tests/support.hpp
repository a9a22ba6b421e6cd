#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "cifc/probability.hpp"

namespace testing {

// Brute-force conditional mutual information straight from the joint table.
// Shares no code with the library: decodes every joint index and accumulates
// p log p(abc)p(c) / p(ac)p(bc) over the full support.
inline double oracle_cmi(const cifc::JointDistribution& d, const std::vector<std::string>& a,
                         const std::vector<std::string>& b, const std::vector<std::string>& c) {
  const auto& names = d.rvs().names();
  const auto& sizes = d.rvs().sizes();
  const std::size_t n = names.size();
  auto pos = [&](const std::string& s) {
    for (std::size_t i = 0; i < n; ++i)
      if (names[i] == s) return i;
    return n;
  };
  auto key = [&](const std::vector<int>& digits, const std::vector<std::string>& set) {
    std::string k;
    for (const auto& s : set) k += std::to_string(digits[pos(s)]) + ",";
    return k;
  };
  std::map<std::string, double> pac, pbc, pc, pabc;
  std::vector<int> digits(n, 0);
  for (std::size_t idx = 0; idx < d.p().size(); ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = n; i-- > 0;) {
      digits[i] = static_cast<int>(rest % static_cast<std::size_t>(sizes[i]));
      rest /= static_cast<std::size_t>(sizes[i]);
    }
    const double p = d.p()[idx];
    const auto kc = key(digits, c);
    const auto ka = key(digits, a);
    const auto kb = key(digits, b);
    pac[ka + "|" + kc] += p;
    pbc[kb + "|" + kc] += p;
    pc[kc] += p;
    pabc[ka + "|" + kb + "|" + kc] += p;
  }
  double total = 0.0;
  for (const auto& [k, p] : pabc) {
    if (p <= 0.0) continue;
    const auto first = k.find('|');
    const auto second = k.find('|', first + 1);
    const auto ka = k.substr(0, first);
    const auto kb = k.substr(first + 1, second - first - 1);
    const auto kc = k.substr(second + 1);
    total += p * std::log2(p * pc[kc] / (pac[ka + "|" + kc] * pbc[kb + "|" + kc]));
  }
  return total;
}

inline double h2(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

// RTD variables with U2c, U1c, U2pb constant, X2 uniform, U1pb = X1 uniform and independent of X2.
inline cifc::JointDistribution noiseless_square_inputs() {
  cifc::RandomVariableSet rvs({"U1c", "U2c", "U1pb", "U2pb", "X1", "X2"}, {1, 1, 2, 1, 2, 2});
  std::vector<double> p(rvs.states(), 0.0);
  // Order: U1pb, X1, X2 (the constants contribute a single digit 0).
  for (int u = 0; u < 2; ++u)
    for (int x2 = 0; x2 < 2; ++x2) p[(u * 2 + u) * 2 + x2] = 0.25;
  return cifc::JointDistribution(rvs, p);
}

// Every RTD variable constant; the inputs keep binary alphabets with all mass on 0.
inline cifc::JointDistribution all_constant_inputs() {
  cifc::RandomVariableSet rvs({"U1c", "U2c", "U1pb", "U2pb", "X1", "X2"}, {1, 1, 1, 1, 2, 2});
  return cifc::JointDistribution(rvs, {1.0, 0.0, 0.0, 0.0});
}

}  // namespace testing
