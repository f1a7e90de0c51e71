#include "muskat/trajectory.hpp"

#include <stdexcept>

namespace muskat {

void Trajectory::append(double t, std::size_t step, GridFunction state) {
  if (times.empty()) {
    if (t != 0.0) throw std::invalid_argument("Trajectory: the first record must be at t = 0");
  } else {
    if (!(t > times.back())) throw std::invalid_argument("Trajectory: times must be strictly increasing");
    if (!(state.spec() == states.front().spec())) throw std::invalid_argument("Trajectory: grid mismatch");
  }
  times.push_back(t);
  steps.push_back(step);
  states.push_back(std::move(state));
}

}  // namespace muskat
