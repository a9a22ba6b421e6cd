#include "cifc/channel.hpp"

#include <cmath>
#include <sstream>

#include "cifc/random.hpp"

namespace cifc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NegativeProbability: return "NegativeProbability";
    case ErrorCode::RowSumMismatch: return "RowSumMismatch";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::SpecCoverage: return "SpecCoverageError";
    case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::UnknownSchema: return "UnknownSchema";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::FactorizationViolation: return "FactorizationViolation";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::IdentityViolation: return "IdentityViolation";
    case ErrorCode::ContainmentViolation: return "ContainmentViolation";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::optional<ChannelDefect> validate_channel(int x1, int x2, int y1, int y2,
                                              const std::vector<double>& p,
                                              ChannelLimits limits) {
  for (int n : {x1, x2, y1, y2}) {
    if (n < 1 || n > limits.max_alphabet) {
      std::ostringstream msg;
      msg << "alphabet size " << n << " outside [1, " << limits.max_alphabet << "]";
      return ChannelDefect{ErrorCode::InvalidParameter, 0, 0, 0.0, msg.str()};
    }
  }
  const std::size_t expected = static_cast<std::size_t>(x1) * x2 * y1 * y2;
  if (p.size() != expected) {
    std::ostringstream msg;
    msg << "tensor has " << p.size() << " entries, expected " << expected;
    return ChannelDefect{ErrorCode::InvalidParameter, 0, 0, 0.0, msg.str()};
  }
  auto at = [&](int b1, int b2, int a1, int a2) {
    return p[((static_cast<std::size_t>(b1) * y2 + b2) * x1 + a1) * x2 + a2];
  };
  for (int a1 = 0; a1 < x1; ++a1) {
    for (int a2 = 0; a2 < x2; ++a2) {
      double sum = 0.0;
      for (int b1 = 0; b1 < y1; ++b1) {
        for (int b2 = 0; b2 < y2; ++b2) {
          const double v = at(b1, b2, a1, a2);
          if (!(v >= 0.0)) {
            std::ostringstream msg;
            msg << "p(y1=" << b1 << ",y2=" << b2 << "|x1=" << a1 << ",x2=" << a2 << ") = " << v;
            return ChannelDefect{ErrorCode::NegativeProbability, a1, a2, v, msg.str()};
          }
          sum += v;
        }
      }
      const double residual = std::abs(sum - 1.0);
      if (residual > kChannelTolerance) {
        std::ostringstream msg;
        msg << "slice (x1=" << a1 << ",x2=" << a2 << ") sums to " << sum << ", residual "
            << residual;
        return ChannelDefect{ErrorCode::RowSumMismatch, a1, a2, residual, msg.str()};
      }
    }
  }
  return std::nullopt;
}

std::optional<ChannelDefect> validate_channel(const Channel& c, ChannelLimits limits) {
  return validate_channel(c.x1().size, c.x2().size, c.y1().size, c.y2().size, c.tensor(),
                          limits);
}

Channel::Channel(Alphabet x1, Alphabet x2, Alphabet y1, Alphabet y2, std::vector<double> p)
    : x1_(std::move(x1)), x2_(std::move(x2)), y1_(std::move(y1)), y2_(std::move(y2)),
      p_(std::move(p)) {
  if (auto defect = validate_channel(x1_.size, x2_.size, y1_.size, y2_.size, p_)) {
    throw Error(defect->code, defect->message);
  }
}

Channel orthogonal_noiseless(int alphabet) {
  const int n = alphabet;
  std::vector<double> p(static_cast<std::size_t>(n) * n * n * n, 0.0);
  for (int a1 = 0; a1 < n; ++a1)
    for (int a2 = 0; a2 < n; ++a2)
      p[((static_cast<std::size_t>(a1) * n + a2) * n + a1) * n + a2] = 1.0;
  return Channel({"X1", n}, {"X2", n}, {"Y1", n}, {"Y2", n}, std::move(p));
}

Channel bsc_pair(double eps1, double eps2) {
  for (double e : {eps1, eps2}) {
    if (!(e >= 0.0 && e <= 0.5)) {
      throw Error(ErrorCode::InvalidParameter, "crossover probability must lie in [0, 1/2]");
    }
  }
  std::vector<double> p(16, 0.0);
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2) {
          const double f1 = b1 == a1 ? 1.0 - eps1 : eps1;
          const double f2 = b2 == a2 ? 1.0 - eps2 : eps2;
          p[((b1 * 2 + b2) * 2 + a1) * 2 + a2] = f1 * f2;
        }
  return Channel({"X1", 2}, {"X2", 2}, {"Y1", 2}, {"Y2", 2}, std::move(p));
}

Channel random_channel(std::uint64_t seed, int alphabet) {
  const int n = alphabet;
  if (n < 1) throw Error(ErrorCode::InvalidParameter, "alphabet size must be positive");
  Rng rng(seed);
  std::vector<double> p(static_cast<std::size_t>(n) * n * n * n, 0.0);
  std::vector<double> row(static_cast<std::size_t>(n) * n);
  for (int a1 = 0; a1 < n; ++a1)
    for (int a2 = 0; a2 < n; ++a2) {
      rng.dirichlet(row);
      for (int b1 = 0; b1 < n; ++b1)
        for (int b2 = 0; b2 < n; ++b2)
          p[((static_cast<std::size_t>(b1) * n + b2) * n + a1) * n + a2] = row[b1 * n + b2];
    }
  return Channel({"X1", n}, {"X2", n}, {"Y1", n}, {"Y2", n}, std::move(p));
}

}  // namespace cifc
