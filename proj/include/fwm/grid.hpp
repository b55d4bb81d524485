#pragma once

#include <vector>

namespace fwm {

/// `count` equally spaced points from `start` to `stop` inclusive.
struct UniformAxis {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;

  /// Throws ValidationError unless count >= 2 and stop > start.
  void validate() const;

  double step() const { return (stop - start) / (count - 1); }
  double at(int i) const { return i == count - 1 ? stop : start + step() * i; }
  std::vector<double> values() const;

  /// Axis of `count` points centred on `center` with half-width `half_width`.
  static UniformAxis centred(double center, double half_width, int count) {
    return {center - half_width, center + half_width, count};
  }
};

}  // namespace fwm
