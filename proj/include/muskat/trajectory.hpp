#pragma once

#include <cstddef>
#include <vector>

#include "muskat/grid.hpp"

namespace muskat {

/// Recorded states of a run; times strictly increasing from 0.
struct Trajectory {
  std::vector<double> times;
  std::vector<std::size_t> steps;
  std::vector<GridFunction> states;

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }

  /// Throws std::invalid_argument if the times are not strictly increasing,
  /// the first time is not 0, or the states do not share one grid.
  void append(double t, std::size_t step, GridFunction state);
};

}  // namespace muskat
