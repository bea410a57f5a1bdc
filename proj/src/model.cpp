#include "uscqed/model.hpp"

#include <cmath>
#include <numbers>

namespace uscqed {

bool ModelParams::zero_detuning(double tol) const {
  return std::abs((omega_e - omega_g) - omega0) <= tol;
}

void ModelParams::validate() const {
  if (!(omega0 > 0.0)) throw std::invalid_argument("omega0 must be positive");
  if (!(omega_s < omega_g && omega_g < omega_e))
    throw std::invalid_argument("level ordering omega_s < omega_g < omega_e violated");
  if (omega_r < 0.0) throw std::invalid_argument("omega_r must be >= 0");
}

namespace {

Operator emitter_terms(const ModelParams& p, const HilbertSpace& space) {
  Operator h(space);
  for (int a = 0; a < space.n_atoms; ++a) {
    h += p.omega_s * make_transition(space, Level::s, Level::s, a);
    h += p.omega_g * make_transition(space, Level::g, Level::g, a);
    h += p.omega_e * make_transition(space, Level::e, Level::e, a);
  }
  return h;
}

}  // namespace

Operator build_hamiltonian(const ModelParams& params, const HilbertSpace& space) {
  params.validate();
  const Operator a = make_destroy(space);
  const Operator ad = a.adjoint();
  Operator h = params.omega0 * (ad * a) + emitter_terms(params, space);
  const Operator x = a + ad;
  for (int at = 0; at < space.n_atoms; ++at) {
    const Operator pol = make_transition(space, Level::e, Level::g, at) +
                         make_transition(space, Level::g, Level::e, at);
    h += params.omega_r * (x * pol);
  }
  return h;
}

Operator build_rwa_hamiltonian(const ModelParams& params, const HilbertSpace& space) {
  params.validate();
  const Operator a = make_destroy(space);
  const Operator ad = a.adjoint();
  Operator h = params.omega0 * (ad * a) + emitter_terms(params, space);
  for (int at = 0; at < space.n_atoms; ++at) {
    const Operator up = make_transition(space, Level::e, Level::g, at);
    const Operator dn = make_transition(space, Level::g, Level::e, at);
    h += params.omega_r * (a * up + ad * dn);
  }
  return h;
}

Operator build_pulse_operator(const HilbertSpace& space) {
  Operator p(space);
  for (int a = 0; a < space.n_atoms; ++a) {
    p += make_transition(space, Level::g, Level::s, a);
    p += make_transition(space, Level::s, Level::g, a);
  }
  return p;
}

Operator make_parity(const HilbertSpace& space) {
  CMat fock(space.fock_dim(), space.fock_dim());
  for (int n = 0; n <= space.n_fock; ++n) fock(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  Operator pi = tensor_embed(fock, space, 0);
  for (int a = 0; a < space.n_atoms; ++a) {
    const Operator atom = make_transition(space, Level::g, Level::g, a) -
                          make_transition(space, Level::e, Level::e, a) +
                          make_transition(space, Level::s, Level::s, a);
    pi = pi * atom;
  }
  return pi;
}

double pulse_envelope(double t, const PulseParams& pulse) {
  if (!(pulse.sigma > 0.0)) throw std::invalid_argument("pulse sigma must be positive");
  const double s2 = pulse.sigma * pulse.sigma;
  const double gauss = std::sqrt(std::numbers::pi / (2.0 * s2)) *
                       std::exp(-t * t / (2.0 * s2));
  return pulse.amplitude_scale * gauss * std::cos(pulse.omega_drive * t);
}

}  // namespace uscqed
