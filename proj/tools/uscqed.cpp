// Command-line front end: figure presets, INI configs, per-parameter
// overrides, CSV artifacts. Exit codes: 0 success, 1 invariant breach,
// 2 usage or configuration error.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "uscqed/kernels.hpp"
#include "uscqed/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Ultrastrong-coupling cavity QED simulator: dressed-state "
               "Lindblad dynamics of a three-level cascade emitter"};
  app.require_subcommand(1);

  std::string preset;
  std::string config_file;
  std::string out_dir;
  std::string isa = "auto";
  std::optional<double> omega_r, gamma0, gamma_gs, gamma_eg, dt, t_end, sigma_pulse;
  std::optional<double> omega0_hz;
  std::optional<int> n_fock, n_atoms;

  app.add_option("--preset", preset, "figure preset: fig2, fig3a, fig3b, fig3c, fig3d, fig4a, fig4bcd");
  app.add_option("--config", config_file, "INI config overlay (unknown keys rejected)");
  app.add_option("--out-dir", out_dir, "output directory for CSV artifacts");
  app.add_option("--omega-r", omega_r, "coupling Omega_R in units of omega0");
  app.add_option("--gamma0", gamma0, "cavity loss rate in units of omega0");
  app.add_option("--gamma-gs", gamma_gs, "g->s emission rate in units of omega0");
  app.add_option("--gamma-eg", gamma_eg, "e->g emission rate in units of omega0");
  app.add_option("--n-fock", n_fock, "Fock cutoff (photon states 0..n_fock)");
  app.add_option("--n-atoms", n_atoms, "number of identical emitters");
  app.add_option("--dt", dt, "integrator step in units of 1/omega0");
  app.add_option("--t-end", t_end, "evolution end time in units of 1/omega0");
  app.add_option("--sigma-pulse", sigma_pulse, "pulse width sigma in units of 1/omega0");
  app.add_option("--omega0-hz", omega0_hz, "physical cavity frequency in Hz for photons/s reporting");
  app.add_option("--isa", isa, "kernel selection: auto, scalar, avx2");

  const char* names[] = {"levels", "evolve", "statistics", "spectrum",
                         "converge", "audit-dissipators"};
  const char* descs[] = {
      "dressed level sweep over Omega_R (fig 2)",
      "time evolution of photon number, flux, populations (fig 3)",
      "equal-time photon statistics g2, G2, g3 (fig 4b-d)",
      "emission spectrum into external modes (fig 4a)",
      "n_fock doubling and dt halving self-convergence report",
      "jump operator transition table"};
  for (int i = 0; i < 6; ++i) app.add_subcommand(names[i], descs[i])->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!uscqed::kernels::select_isa(isa.c_str()))
      throw std::invalid_argument("unsupported --isa value " + isa);
    uscqed::RunConfig cfg =
        preset.empty() ? uscqed::RunConfig{} : uscqed::preset_config(preset);
    if (!config_file.empty()) uscqed::apply_ini_file(cfg, config_file);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (omega_r) cfg.model.omega_r = *omega_r;
    if (gamma0) cfg.gamma0 = *gamma0;
    if (gamma_gs) cfg.gamma_gs = *gamma_gs;
    if (gamma_eg) cfg.gamma_eg = *gamma_eg;
    if (n_fock) cfg.n_fock = *n_fock;
    if (n_atoms) cfg.n_atoms = *n_atoms;
    if (dt) cfg.dt = *dt;
    if (t_end) cfg.t_end = *t_end;
    if (sigma_pulse) cfg.pulse.sigma = *sigma_pulse;
    if (omega0_hz) cfg.omega0_hz = *omega0_hz;
    const std::string cmd = app.get_subcommands().front()->get_name();
    return uscqed::run_subcommand(cmd, cfg, std::cout);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "invariant breach: " << e.what() << "\n";
    return 1;
  }
}
