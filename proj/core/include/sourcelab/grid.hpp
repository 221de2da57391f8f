#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sourcelab {

// Uniform 1-D grid on [-L, L]. The point count is odd so that x = 0 is a
// grid node.
struct Grid {
  double half_width = 40.0;
  int points = 4001;

  double dx() const { return 2.0 * half_width / (points - 1); }
  double x(int i) const { return -half_width + i * dx(); }

  std::vector<double> coordinates() const {
    std::vector<double> xs(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) xs[static_cast<std::size_t>(i)] = x(i);
    return xs;
  }

  bool operator==(const Grid&) const = default;

  void validate() const {
    if (!std::isfinite(half_width) || half_width <= 0.0)
      throw std::invalid_argument("Grid: half_width must be finite and > 0");
    if (points < 3 || points % 2 == 0)
      throw std::invalid_argument("Grid: points must be odd and >= 3");
  }
};

// Real-valued samples on a Grid.
struct Field {
  Grid grid;
  std::vector<double> values;

  static Field zeros(const Grid& g) {
    return Field{g, std::vector<double>(static_cast<std::size_t>(g.points), 0.0)};
  }

  void validate() const {
    grid.validate();
    if (values.size() != static_cast<std::size_t>(grid.points))
      throw std::invalid_argument("Field: values size does not match grid");
    for (double v : values)
      if (!std::isfinite(v)) throw std::invalid_argument("Field: non-finite value");
  }
};

}  // namespace sourcelab
