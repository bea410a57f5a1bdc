#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "uscqed/model.hpp"

using namespace uscqed;
using cd = std::complex<double>;

namespace {
ModelParams params(double omega_r) {
  ModelParams p;
  p.omega_r = omega_r;
  return p;
}
}  // namespace

TEST_CASE("decoupled hamiltonian is the diagonal ladder") {
  auto sp = HilbertSpace::make(6, 1);
  auto H = build_hamiltonian(params(0.0), sp);
  const double level[3] = {0.0, 3.5, 4.5};  // omega_s, omega_g, omega_e
  for (int n = 0; n <= 6; ++n)
    for (int em = 0; em < 3; ++em) {
      const int i = sp.index(n, em);
      CHECK(std::abs(H.m(i, i) - cd(n + level[em], 0.0)) <= 1e-14);
    }
  CMat diag_removed = H.m;
  for (int i = 0; i < sp.dim; ++i) diag_removed(i, i) = 0.0;
  CHECK(diag_removed.max_abs() == 0.0);
}

TEST_CASE("coupling structure") {
  auto sp = HilbertSpace::make(5, 1);
  auto H = build_hamiltonian(params(0.6), sp);

  CHECK(H.m.hermiticity_defect() <= 1e-14);

  // Coupling only via (a + adag)(sigma_eg + sigma_ge): explicit reconstruction.
  auto a = make_destroy(sp);
  auto x = a + a.adjoint();
  auto flip = make_transition(sp, Level::e, Level::g) + make_transition(sp, Level::g, Level::e);
  auto expect = build_hamiltonian(params(0.0), sp) + 0.6 * (x * flip);
  CHECK(H.m.max_abs_diff(expect.m) <= 1e-13);

  // The s level is a spectator: rows/columns touching s are purely diagonal.
  for (int n = 0; n <= 5; ++n) {
    const int i = sp.index(n, int(Level::s));
    for (int j = 0; j < sp.dim; ++j)
      if (j != i) {
        CHECK(std::abs(H.m(i, j)) == 0.0);
        CHECK(std::abs(H.m(j, i)) == 0.0);
      }
  }
}

TEST_CASE("rwa hamiltonian conserves excitation number") {
  auto sp = HilbertSpace::make(5, 1);
  auto Hrwa = build_rwa_hamiltonian(params(0.8), sp);

  // N = a†a + sigma_ee commutes with the RWA form only.
  auto a = make_destroy(sp);
  auto N = a.adjoint() * a + make_transition(sp, Level::e, Level::e);
  CHECK((Hrwa * N - N * Hrwa).m.max_abs() <= 1e-13);

  auto Hfull = build_hamiltonian(params(0.8), sp);
  CHECK((Hfull * N - N * Hfull).m.max_abs() > 0.1);

  // Difference from the full model is exactly the counter-rotating part.
  auto cr = make_destroy(sp) * make_transition(sp, Level::g, Level::e);
  auto diff = Hfull - Hrwa;
  auto expect = 0.8 * (cr + cr.adjoint());
  CHECK(diff.m.max_abs_diff(expect.m) <= 1e-13);

  CHECK(Hrwa.m.max_abs_diff(build_hamiltonian(params(0.0), sp).m) == 0.0);
}

TEST_CASE("parity commutes with the full hamiltonian") {
  for (int atoms = 1; atoms <= 2; ++atoms) {
    auto sp = HilbertSpace::make(4, atoms);
    auto P = make_parity(sp);
    // Diagonal, (-1)^n times -1 per atom in e.
    for (int i = 0; i < sp.dim; ++i) {
      int em = i % sp.emitter_dim();
      int sign = (i / sp.emitter_dim()) % 2 ? -1 : 1;
      for (int a = 0; a < atoms; ++a) {
        int div = 1;  // 3^(atoms-1-a), atom 0 most significant
        for (int k = a; k < atoms - 1; ++k) div *= 3;
        if ((em / div) % 3 == int(Level::e)) sign = -sign;
      }
      CHECK(P.m(i, i) == cd(sign, 0.0));
    }
    for (double wr : {0.0, 0.3, 0.9}) {
      auto H = build_hamiltonian(params(wr), sp);
      CHECK((H * P - P * H).m.max_abs() <= 1e-13);
    }
  }
}

TEST_CASE("pulse operator couples s and g on every atom") {
  auto sp = HilbertSpace::make(2, 2);
  auto P = build_pulse_operator(sp);
  auto expect = make_transition(sp, Level::g, Level::s, 0) +
                make_transition(sp, Level::s, Level::g, 0) +
                make_transition(sp, Level::g, Level::s, 1) +
                make_transition(sp, Level::s, Level::g, 1);
  CHECK(P.m.max_abs_diff(expect.m) == 0.0);
  CHECK(P.m.hermiticity_defect() == 0.0);
}

TEST_CASE("pulse envelope: gaussian of area pi times the carrier") {
  PulseParams p;
  p.sigma = 3.0;
  p.omega_drive = 0.0;  // carrier factor 1 everywhere
  p.amplitude_scale = 1.0;

  CHECK(pulse_envelope(0.0, p) == doctest::Approx(std::sqrt(M_PI / (2.0 * 9.0))).epsilon(1e-12));

  // Simpson integral of the carrier-free envelope over +-8 sigma.
  const double half = 8.0 * p.sigma;
  const int n = 4000;
  const double h = 2.0 * half / n;
  double area = pulse_envelope(-half, p) + pulse_envelope(half, p);
  for (int i = 1; i < n; ++i)
    area += pulse_envelope(-half + i * h, p) * (i % 2 ? 4.0 : 2.0);
  area *= h / 3.0;
  CHECK(area == doctest::Approx(M_PI).epsilon(1e-8));

  // amplitude_scale is a plain prefactor.
  PulseParams q = p;
  q.amplitude_scale = 2.5;
  CHECK(pulse_envelope(1.3, q) == doctest::Approx(2.5 * pulse_envelope(1.3, p)).epsilon(1e-12));

  // Carrier multiplies pointwise.
  PulseParams c = p;
  c.omega_drive = 3.3;
  CHECK(pulse_envelope(0.7, c) ==
        doctest::Approx(pulse_envelope(0.7, p) * std::cos(3.3 * 0.7)).epsilon(1e-12));
}

TEST_CASE("model validation") {
  ModelParams p;
  CHECK(p.zero_detuning());
  CHECK(p.omega_gs() == 3.5);
  p.omega_e = 4.6;
  CHECK_FALSE(p.zero_detuning());
  p.omega_r = -0.1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
