#include "fwm/grid.hpp"

#include "fwm/errors.hpp"

namespace fwm {

void UniformAxis::validate() const {
  if (count < 2) throw ValidationError("axis needs at least 2 points");
  if (!(stop > start)) throw ValidationError("axis must be strictly increasing");
}

std::vector<double> UniformAxis::values() const {
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) v[i] = at(i);
  return v;
}

}  // namespace fwm
