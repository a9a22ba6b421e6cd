#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cifc/error.hpp"

namespace cifc {

inline constexpr double kChannelTolerance = 1e-12;

struct Alphabet {
  std::string name;
  int size = 1;
};

/// Why a transition tensor failed validation. `x1`/`x2` name the first bad input slice.
struct ChannelDefect {
  ErrorCode code;
  int x1 = 0;
  int x2 = 0;
  double residual = 0.0;  // |row sum - 1| or the offending negative entry
  std::string message;
};

/// Discrete memoryless cognitive interference channel p(y1,y2|x1,x2).
///
/// Transmitter 1 is the cognitive one. The tensor is stored flat in row-major
/// order over (y1, y2, x1, x2), which is also the on-disk layout.
class Channel {
 public:
  /// Throws Error(InvalidParameter) on size mismatch and the defect code on
  /// invalid probabilities.
  Channel(Alphabet x1, Alphabet x2, Alphabet y1, Alphabet y2, std::vector<double> p);

  const Alphabet& x1() const { return x1_; }
  const Alphabet& x2() const { return x2_; }
  const Alphabet& y1() const { return y1_; }
  const Alphabet& y2() const { return y2_; }
  const std::vector<double>& tensor() const { return p_; }

  double operator()(int y1, int y2, int x1, int x2) const { return p_[index(y1, y2, x1, x2)]; }

  std::size_t index(int y1, int y2, int x1, int x2) const {
    return ((static_cast<std::size_t>(y1) * y2_.size + y2) * x1_.size + x1) * x2_.size + x2;
  }

  friend bool operator==(const Channel& a, const Channel& b) {
    return a.x1_.size == b.x1_.size && a.x2_.size == b.x2_.size && a.y1_.size == b.y1_.size &&
           a.y2_.size == b.y2_.size && a.p_ == b.p_;
  }

 private:
  Alphabet x1_, x2_, y1_, y2_;
  std::vector<double> p_;
};

struct ChannelLimits {
  int max_alphabet = 8;
};

/// Checks sizes, nonnegativity and per-(x1,x2) normalisation. Returns nullopt when valid.
std::optional<ChannelDefect> validate_channel(int x1, int x2, int y1, int y2,
                                              const std::vector<double>& p,
                                              ChannelLimits limits = {});
std::optional<ChannelDefect> validate_channel(const Channel& c, ChannelLimits limits = {});

// Canonical fixtures.
Channel orthogonal_noiseless(int alphabet = 2);
Channel bsc_pair(double eps1, double eps2);
Channel random_channel(std::uint64_t seed, int alphabet = 2);

}  // namespace cifc
