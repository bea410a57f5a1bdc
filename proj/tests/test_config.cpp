#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "uscqed/config.hpp"
#include "uscqed/csv.hpp"

using namespace uscqed;

TEST_CASE("preset tables") {
  auto a = preset_config("fig3a");
  CHECK(a.model.omega_r == 0.6);
  CHECK(a.model.omega_s == 0.0);
  CHECK(a.model.omega_g == 3.5);
  CHECK(a.model.omega_e == 4.5);
  CHECK(a.gamma0 == 0.02);
  CHECK(a.gamma_eg == 0.02);
  CHECK(a.gamma_gs == 0.02);
  CHECK(a.n_fock == 16);
  CHECK(a.n_atoms == 1);
  CHECK(a.dt == 2e-3);
  CHECK(a.t_end == 400.0);
  CHECK(a.initial_kind == "dressed_ground");
  CHECK_FALSE(a.pulse_enabled);
  a.validate();

  auto b = preset_config("fig3b");
  CHECK(b.gamma0 == 0.0);
  CHECK(b.gamma_gs == 1e-2);
  CHECK(b.gamma_eg == 0.02);

  auto c = preset_config("fig3c");
  CHECK(c.n_atoms == 2);
  CHECK(c.model.omega_r == 0.65);
  CHECK(c.gamma0 == 1e-2);
  CHECK(c.gamma_eg == 0.02);
  CHECK(c.gamma_gs == 0.02);
  CHECK(c.n_fock == 12);

  auto d = preset_config("fig3d");
  CHECK(d.initial_kind == "bare");
  CHECK(d.pulse_enabled);
  CHECK(d.pulse.sigma == 5.0);
  CHECK(d.pulse.omega_drive < 0.0);       // resolved at run time
  CHECK(d.pulse.amplitude_scale == 1.0);  // pi pulse for the bare dipole
  CHECK(d.pulse_t_start > 0.0);           // sentinel: -4 sigma

  auto e = preset_config("fig4a");
  CHECK(e.spectrum.t_end == 600.0);
  CHECK(e.spectrum.dt_grid == 0.3);
  CHECK(e.spectrum.omega_min == 0.0);
  CHECK(e.spectrum.omega_max == 5.5);
  CHECK(e.spectrum.n_omega == 2001);

  auto f = preset_config("fig4bcd");
  CHECK(f.model.omega_r == 0.6);
  CHECK(f.t_end == 400.0);

  auto g = preset_config("fig2");
  CHECK(g.sweep.omega_r_min == 0.0);
  CHECK(g.sweep.omega_r_max == 1.0);
  CHECK(g.sweep.omega_r_step == 0.02);
  CHECK(g.sweep.n_levels == 8);

  CHECK_THROWS_AS(preset_config("fig9"), std::invalid_argument);
}

TEST_CASE("ini overlay") {
  RunConfig cfg = preset_config("fig3a");
  apply_ini_text(cfg, R"(
# comment line
[model]
omega_r = 0.45   ; trailing comment
n_fock = 20

[rates]
gamma0 = 0.005
gamma_gs = 0.001

[grid]
dt = 0.001
t_end = 123.5

[initial]
kind = bare

[pulse]
enabled = true
sigma = 2.5
omega_drive = auto
amplitude_scale = auto
t_start = auto

[spectrum]
t_end = 300
n_omega = 501

[sweep]
omega_r_step = 0.1

[output]
out_dir = /tmp/somewhere

[physical]
omega0_hz = 1e10
)");
  CHECK(cfg.model.omega_r == 0.45);
  CHECK(cfg.n_fock == 20);
  CHECK(cfg.gamma0 == 0.005);
  CHECK(cfg.gamma_gs == 0.001);
  CHECK(cfg.gamma_eg == 0.02);  // untouched
  CHECK(cfg.dt == 0.001);
  CHECK(cfg.t_end == 123.5);
  CHECK(cfg.initial_kind == "bare");
  CHECK(cfg.pulse_enabled);
  CHECK(cfg.pulse.sigma == 2.5);
  CHECK(cfg.pulse.omega_drive < 0.0);
  CHECK(cfg.pulse.amplitude_scale < 0.0);
  CHECK(cfg.pulse_t_start > 0.0);  // auto sentinel stays positive
  CHECK(cfg.spectrum.t_end == 300.0);
  CHECK(cfg.spectrum.n_omega == 501);
  CHECK(cfg.sweep.omega_r_step == 0.1);
  CHECK(cfg.out_dir == "/tmp/somewhere");
  CHECK(cfg.omega0_hz == 1e10);
  cfg.validate();

  RunConfig bad = preset_config("fig3a");
  CHECK_THROWS_AS(apply_ini_text(bad, "[model]\nomega_q = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(apply_ini_text(bad, "[nosuch]\nx = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(apply_ini_text(bad, "[model\nomega_r = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(apply_ini_text(bad, "[model]\nomega_r 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(apply_ini_text(bad, "[model]\nomega_r = abc\n"), std::invalid_argument);
}

TEST_CASE("validation rejects out-of-contract settings") {
  auto base = preset_config("fig3a");

  auto mutate = [&](auto f) {
    RunConfig c = base;
    f(c);
    return c;
  };
  CHECK_THROWS_AS(mutate([](RunConfig& c) { c.gamma0 = -1e-3; }).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(mutate([](RunConfig& c) { c.n_fock = 3; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(mutate([](RunConfig& c) { c.n_fock = 65; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(mutate([](RunConfig& c) { c.n_atoms = 0; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(mutate([](RunConfig& c) { c.n_atoms = 5; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(mutate([](RunConfig& c) { c.initial_kind = "thermal"; }).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(mutate([](RunConfig& c) { c.dt = 0.0; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(mutate([](RunConfig& c) { c.t_end = -1.0; }).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(mutate([](RunConfig& c) { c.spectrum.n_omega = 2; }).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(mutate([](RunConfig& c) {
                    c.spectrum.omega_max = c.spectrum.omega_min;
                  }).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(mutate([](RunConfig& c) { c.sweep.omega_r_step = 0.0; }).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(mutate([](RunConfig& c) { c.model.omega_g = -1.0; }).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(mutate([](RunConfig& c) { c.omega0_hz = -5.0; }).validate(),
                  std::invalid_argument);
}

TEST_CASE("physical flux conversion uses the angular factor") {
  CHECK(physical_flux_hz(2e-4, 1e10) == doctest::Approx(2e-4 * 2.0 * M_PI * 1e10));
  CHECK(physical_flux_hz(0.0, 1e10) == 0.0);
  // The criterion anchor: a peak flux of order gamma0 * 1e-2 lands at ~1e7/s.
  const double hz = physical_flux_hz(0.02 * 1.4e-2, 1e10);
  CHECK(hz > 0.5e7);
  CHECK(hz < 2.0e7);
}

TEST_CASE("csv formatting is deterministic with empty fields for nan") {
  CHECK(format_field(1.25) == "1.25");
  CHECK(format_field(std::nan("")) == "");
  CHECK(format_field(1.0 / 3.0) == "0.333333333333333");

  Trajectory traj;
  traj.times = {0.0, 0.1, 0.2, 0.3};
  traj.observable_names = {"a", "b"};
  traj.observables = {{1.0, 2.0, 3.0, 4.0},
                      {0.5, std::nan(""), 0.25, 0.125}};

  const std::string path1 = "/tmp/uscqed_csv_test_1.csv";
  const std::string path2 = "/tmp/uscqed_csv_test_2.csv";
  CsvMeta meta;
  meta.lines = {"preset=test"};
  write_series_csv(path1, "statistics", traj, 2, meta);
  write_series_csv(path2, "statistics", traj, 2, meta);

  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string text = slurp(path1);
  CHECK(text == slurp(path2));

  // Thinned to steps 0 and 2, plus the forced final row; nan printed empty.
  CHECK(text == "# schema: statistics v1\n# preset=test\nt,a,b\n0,1,0.5\n0.2,3,0.25\n0.3,4,0.125\n");

  std::remove(path1.c_str());
  std::remove(path2.c_str());
}
