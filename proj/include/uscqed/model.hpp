#pragma once

#include "uscqed/hilbert.hpp"

namespace uscqed {

// All frequencies and rates in units of omega0; time in units of 1/omega0.
struct ModelParams {
  double omega0 = 1.0;
  double omega_s = 0.0;
  double omega_g = 3.5;
  double omega_e = 4.5;  // zero detuning: omega_e - omega_g = omega0
  double omega_r = 0.6;  // coupling rate Omega_R

  double omega_gs() const { return omega_g - omega_s; }
  bool zero_detuning(double tol = 1e-12) const;
  void validate() const;
};

// H = omega0 a†a + sum_atoms sum_alpha omega_alpha sigma_alpha_alpha
//     + sum_atoms omega_r (a + a†)(sigma_eg + sigma_ge)
Operator build_hamiltonian(const ModelParams& params, const HilbertSpace& space);

// Counter-rotating terms dropped: coupling omega_r (a sigma_eg + a† sigma_ge).
Operator build_rwa_hamiltonian(const ModelParams& params, const HilbertSpace& space);

// sum_atoms (sigma_gs + sigma_sg); multiplied by pulse_envelope(t) during drive.
Operator build_pulse_operator(const HilbertSpace& space);

// Parity (-1)^{a†a} tensor prod_atoms (sigma_gg - sigma_ee + sigma_ss);
// commutes with H, so every eigenvector of a pure emitter-occupation block
// carries a definite parity.
Operator make_parity(const HilbertSpace& space);

struct PulseParams {
  double sigma = 5.0;           // Gaussian width, units 1/omega0
  double omega_drive = -1.0;    // carrier; <= 0 means "resolve to omega_0s tilde"
  double amplitude_scale = 1.0; // dimensionless calibration factor
};

// amplitude_scale * sqrt(pi/(2 sigma^2)) * exp(-t^2/(2 sigma^2)) * cos(omega_drive t).
// With amplitude_scale = 1 the envelope (cosine excluded) has area pi.
double pulse_envelope(double t, const PulseParams& pulse);

}  // namespace uscqed
