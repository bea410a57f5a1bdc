#pragma once

#include <span>
#include <vector>

#include "uscqed/dissipation.hpp"

namespace uscqed {

struct TwoTimeResult {
  std::vector<double> t_grid;
  std::vector<std::vector<cd>> c;  // c[i][j] = C(t_i, t_j)
};

// C(t, t') = <A(t) B(t')> by the quantum regression theorem: for t' >= t,
// C = tr[B e^{L(t'-t)}(rho(t) A)]; the lower triangle is the conjugate fill,
// which is why B must equal adjoint(A). All operators in the dressed basis.
// rho0 is the state at time zero; the grid must be uniform, ascending, and
// start at or after zero. dt_sub bounds the internal RK4 step.
TwoTimeResult two_time_correlation(const CMat& rho0, const CMat& a_dressed,
                                   const CMat& b_dressed,
                                   std::span<const double> t_grid,
                                   const DressedBasis& basis,
                                   const LindbladGenerator& gen,
                                   double dt_sub = 0.05);

struct SpectrumPeak {
  double omega = 0.0;   // parabolically refined position
  double height = 0.0;  // refined height, units of the normalized spectrum
};

struct SpectrumResult {
  std::vector<double> frequencies;
  std::vector<double> values;  // max-normalized, nonnegative
  std::vector<SpectrumPeak> peaks;
  double t_end = 0.0;
  double dt_grid = 0.0;      // kernel time-grid spacing
  double resolution = 0.0;   // max(frequency grid step, 2*pi/t_end)
  double raw_max = 0.0;      // normalization constant
};

// S(omega) = (1/2pi) * double integral of <s-(t) s+(t')> e^{-i omega (t-t')}
// over [0, t_end]^2, evaluated on a uniform grid with spacing dt_grid and
// factorized over anti-diagonals t - t' = const (exact for the finite sum).
// sigma_minus_dressed is the negative-frequency polarization component.
// Throws if the transient is incomplete at t_end (population outside the
// all-s sector at or above 1e-4) or on gross negativity of the raw spectrum.
SpectrumResult emission_spectrum(const CMat& rho0, const DressedBasis& basis,
                                 const LindbladGenerator& gen,
                                 const CMat& sigma_minus_dressed, double t_end,
                                 double dt_grid,
                                 std::span<const double> omega_grid,
                                 double dt_sub = 0.05);

}  // namespace uscqed
