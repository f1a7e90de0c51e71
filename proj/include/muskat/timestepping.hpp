#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "muskat/contour.hpp"
#include "muskat/diagnostics.hpp"
#include "muskat/grid.hpp"
#include "muskat/trajectory.hpp"

namespace muskat {

enum class Scheme { integrating_factor_rk4, explicit_rk4 };

/// split: -rho (Lambda f + T(f)); arctan: (rho / pi) d/dx A; regularized:
/// the eps model (requires RegularizationParams).
enum class RhsForm { split, arctan, regularized };

struct StepperConfig {
  Scheme scheme = Scheme::integrating_factor_rk4;
  double cfl = 0.5;
  double dt_max = 0.05;
  double t_final = 1.0;
  /// Overrides the adaptive choice (the last step still lands on t_final).
  std::optional<double> dt_fixed;

  void validate() const;
};

/// Fourier-diagonal linear symbol: -rho |xi_k|, or for the regularized model
/// -(rho_eps + eps C) |xi_k|^{1-eps} - eps xi_k^2 where rho_eps |xi|^{1-eps}
/// is the linearization of the transport term (omitted when `transport` is
/// off). Always <= 0.
double linear_symbol(std::ptrdiff_t k, const PhysParams& p, const std::optional<RegularizationParams>& r,
                     const GridSpec& spec, bool transport = true);

/// Right-hand side of one model, split into its linear symbol and the rest.
class Dynamics {
 public:
  Dynamics(const GridSpec& spec, const PhysParams& p, const QuadratureConfig& quad, RhsForm form = RhsForm::split,
           std::optional<RegularizationParams> r = std::nullopt, bool transport = true);

  const GridSpec& spec() const { return evaluator_.spec(); }
  const PhysParams& phys() const { return phys_; }
  const std::optional<RegularizationParams>& regularization() const { return reg_; }
  RhsForm form() const { return form_; }
  const ContourEvaluator& evaluator() const { return evaluator_; }

  double symbol(std::ptrdiff_t k) const;
  GridFunction linear(const GridFunction& g) const;
  /// rhs(g) - linear(g).
  GridFunction nonlinear(const GridFunction& g) const;
  GridFunction rhs(const GridFunction& g) const;

  /// exp(tau * symbol) applied to g.
  GridFunction propagate(const GridFunction& g, double tau) const;

 private:
  PhysParams phys_;
  std::optional<RegularizationParams> reg_;
  RhsForm form_;
  bool transport_;
  ContourEvaluator evaluator_;
};

/// One RK4 step; the integrating-factor variant integrates the linear part
/// exactly. Throws NonFiniteError when the step produces NaN or Inf.
GridFunction step(const GridFunction& g, double dt, const Dynamics& dyn, Scheme scheme);

/// Time step from the slope sup |g_x| (the cfl factor scales every bound).
double choose_dt(const GridFunction& g, const Dynamics& dyn, const StepperConfig& cfg);

struct SimulationOptions {
  /// Record every `cadence` steps, plus t = 0 and t_final.
  std::size_t cadence = 16;
  MeasureOptions measure;
  /// Abort if sup |f_x| reaches 1.
  bool slope_subcritical = false;
};

struct SimulationResult {
  Trajectory trajectory;
  std::vector<DiagnosticsRecord> diagnostics;
};

/// Raised by simulate; carries the last state reached.
class SimulationAborted : public std::runtime_error {
 public:
  SimulationAborted(const std::string& what, GridFunction state, double t, std::size_t step,
                    SimulationResult partial)
      : std::runtime_error(what), state(std::move(state)), t(t), step(step), partial(std::move(partial)) {}

  GridFunction state;
  double t;
  std::size_t step;
  SimulationResult partial;
};

SimulationResult simulate(const GridFunction& f0, const Dynamics& dyn, const StepperConfig& cfg,
                          const SimulationOptions& opts = {});

}  // namespace muskat
