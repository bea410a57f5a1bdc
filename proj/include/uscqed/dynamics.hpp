#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "uscqed/dissipation.hpp"

namespace uscqed {

enum class InitialStateKind { dressed_ground, bare };

// Density matrices live in the dressed basis from here on; bare-basis
// quantities are obtained through DressedBasis transforms.

// dressed_ground: |0~><0~|; bare: |s..s, 0><s..s, 0|.
CMat initial_state(InitialStateKind kind, const DressedBasis& basis);

// Custom pure state from bare-basis amplitudes (normalized internally).
CMat initial_state_custom(const std::vector<cd>& bare_amplitudes,
                          const DressedBasis& basis);

struct ObservableFn {
  std::string name;
  std::function<double(const CMat&)> fn;  // returns NaN where undefined
};

struct EvolveOptions {
  double dt = 2e-3;
  double t_start = 0.0;
  double t_end = 400.0;
  int record_every = 1;     // observable sampling cadence in steps
  int store_every = 50;     // state cadence: positivity checks + optional storage
  bool keep_states = true;  // retain the cadence states in the trajectory
  // Convergence guard: re-integrate [t_start, t_start + guard_window] at dt/2
  // and require the first observable to agree within guard_tol (absolute).
  bool convergence_guard = true;
  double guard_window = 20.0;
  double guard_tol = 1e-6;
  double trace_tol = 1e-7;
  double positivity_tol = 1e-7;
};

struct TrajectoryDiagnostics {
  double max_trace_drift = 0.0;
  double min_eigenvalue = 1.0;   // most negative eigenvalue seen at the cadence
  double guard_max_delta = 0.0;  // largest |dt vs dt/2| observable difference
};

struct Trajectory {
  std::vector<double> times;  // recorded steps (every record_every-th, plus the last)
  std::vector<std::string> observable_names;
  std::vector<std::vector<double>> observables;  // [observable][step]
  std::vector<double> stored_times;
  std::vector<std::size_t> stored_steps;
  std::vector<CMat> stored_states;  // dressed basis; empty if !keep_states
  TrajectoryDiagnostics diag;

  // Column lookup by name; throws if absent.
  const std::vector<double>& series(const std::string& name) const;
};

// Largest stable step for the fixed-step integrator.
double max_stable_dt(const DressedBasis& basis, const LindbladGenerator& gen);

// Fixed-step classical RK4 on rho_dot = generator(rho). The step count is
// round(span/dt) and the step actually used is span rescaled onto that grid.
// Throws on: dt above the stability bound, trace drift or positivity defect
// beyond tolerance (diagnostic names the invariant), guard breach.
Trajectory evolve(const CMat& rho0, const DressedBasis& basis,
                  const LindbladGenerator& gen,
                  std::span<const ObservableFn> observables,
                  const EvolveOptions& opt);

// Fills unresolved pulse fields: omega_drive <= 0 becomes the dressed-ground
// to bare-s transition frequency; amplitude_scale <= 0 becomes 1/|<0~|P|s..s,0>|,
// the area that inverts that transition under a resonant Gaussian pulse.
PulseParams resolve_pulse(const PulseParams& pulse, const DressedBasis& basis,
                          const CMat& pulse_op_dressed);

// Adds i*f(t)[rho, P] with f = pulse_envelope and P the pulse operator in the
// dressed basis; f is evaluated at the RK4 stage times (midpoint within each
// step). Requires t_start <= -4 sigma (pulse centered at t = 0).
Trajectory evolve_driven(const CMat& rho0, const DressedBasis& basis,
                         const LindbladGenerator& gen, const PulseParams& pulse,
                         const CMat& pulse_op_dressed,
                         std::span<const ObservableFn> observables,
                         const EvolveOptions& opt);

}  // namespace uscqed
