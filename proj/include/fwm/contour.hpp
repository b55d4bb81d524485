#pragma once

#include <span>
#include <vector>

#include "fwm/grid.hpp"
#include "fwm/phasematching.hpp"

namespace fwm {

struct ContourVertex {
  double x;  // omega_p for phasematching maps
  double y;  // Delta
};

/// One connected iso-line. Closed loops repeat their first vertex at the end.
struct Contour {
  double level = 0.0;
  std::vector<ContourVertex> vertices;
  bool closed = false;
};

/// Marching-squares extraction of field == level on a regular grid.
///
/// `field` is stored y-major: field[j * x_axis.count + i]. Crossings are
/// linearly interpolated along cell edges; saddle cells are resolved by the
/// cell-centre average. Output order is deterministic (row-major by the
/// first cell visited).
std::vector<Contour> trace_isolines(std::span<const double> field, const UniformAxis& x_axis,
                                    const UniformAxis& y_axis, double level);

std::vector<Contour> trace_contours(const PmMap& map, double level);

/// Even-odd point-in-polygon test against a closed contour.
bool contains_point(const Contour& loop, double x, double y);

}  // namespace fwm
