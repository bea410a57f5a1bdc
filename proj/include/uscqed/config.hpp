#pragma once

#include <string>

#include "uscqed/model.hpp"

namespace uscqed {

struct SpectrumConfig {
  double t_end = 400.0;
  double dt_grid = 0.2;  // two-time kernel grid spacing
  double dt_sub = 0.05;  // regression substep target
  double omega_min = 0.0;
  double omega_max = 5.5;  // omega_gs + 2 omega0 at default detuning
  int n_omega = 2001;
};

struct SweepConfig {
  double omega_r_min = 0.0;
  double omega_r_max = 1.0;
  double omega_r_step = 0.02;
  int n_levels = 8;  // energies exported per grid point
};

// Everything is in units of omega0 except omega0_hz. Negative pulse fields
// mean "resolve from the dressed basis at run time" ("auto" in config files).
struct RunConfig {
  std::string preset;
  ModelParams model;
  double gamma0 = 0.02;
  double gamma_eg = 0.02;
  double gamma_gs = 0.02;
  int n_fock = 16;
  int n_atoms = 1;
  std::string initial_kind = "dressed_ground";  // or "bare"
  bool pulse_enabled = false;
  PulseParams pulse;
  double pulse_t_start = 1.0;  // positive sentinel: auto (-4 sigma)
  double dt = 2e-3;
  double t_end = 400.0;
  int store_every = 50;
  SpectrumConfig spectrum;
  SweepConfig sweep;
  std::string out_dir = ".";
  double omega0_hz = 0.0;  // 0: report flux in units of omega0 only

  void validate() const;  // throws std::invalid_argument
};

// Frozen parameter tables for the figure presets: fig2, fig3a, fig3b, fig3c,
// fig3d, fig4a, fig4bcd. Unknown names throw.
RunConfig preset_config(const std::string& name);

// INI-style overlay: [section] headers, key = value lines, '#' or ';'
// comments. Unknown sections or keys throw (no silent defaults).
void apply_ini_file(RunConfig& cfg, const std::string& path);
void apply_ini_text(RunConfig& cfg, const std::string& text);

// photons/s from a flux in units of omega0; omega0_hz is an ordinary
// frequency, so the angular conversion factor is 2 pi.
double physical_flux_hz(double flux_omega0_units, double omega0_hz);

}  // namespace uscqed
