#include "uscqed/dynamics.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>

#include "uscqed/kernels.hpp"

namespace uscqed {

namespace {

CMat pure_state_from_dressed(const std::vector<cd>& w, const HilbertSpace& space) {
  CMat rho(space.dim, space.dim);
  for (int c = 0; c < space.dim; ++c)
    for (int r = 0; r < space.dim; ++r)
      rho(r, c) = w[static_cast<std::size_t>(r)] * std::conj(w[static_cast<std::size_t>(c)]);
  return rho;
}

// Sparse column view of the dressed pulse operator, for rho * P products.
struct SparseCols {
  int dim = 0;
  std::vector<std::vector<std::pair<int, cd>>> cols;

  explicit SparseCols(const CMat& p) : dim(static_cast<int>(p.rows())), cols(p.cols()) {
    for (std::size_t c = 0; c < p.cols(); ++c)
      for (std::size_t r = 0; r < p.rows(); ++r)
        if (std::abs(p(r, c)) > 1e-14) cols[c].emplace_back(static_cast<int>(r), p(r, c));
  }
};

struct Stepper {
  const LindbladGenerator* gen;
  const SparseCols* drive_op = nullptr;  // null for undriven evolution
  const PulseParams* pulse = nullptr;
  CMat k1, k2, k3, k4, tmp, m;

  explicit Stepper(int dim)
      : gen(nullptr), k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim),
        tmp(dim, dim), m(dim, dim) {}

  void deriv(const CMat& in, CMat& out, double t) {
    gen->apply(in, out);
    if (!drive_op) return;
    const double f = pulse_envelope(t, *pulse);
    if (f == 0.0) return;
    const int dim = drive_op->dim;
    m.set_zero();
    for (int c = 0; c < dim; ++c)
      for (const auto& [z, val] : drive_op->cols[static_cast<std::size_t>(c)])
        kernels::ops().axpy(m.col(c), val, in.col(z), static_cast<std::size_t>(dim));
    // i f [in, P] = i f (M - M^dag) for Hermitian in and P, with M = in P.
    const cd iff(0.0, f);
    for (int c = 0; c < dim; ++c)
      for (int r = 0; r < dim; ++r)
        out(r, c) += iff * (m(r, c) - std::conj(m(c, r)));
  }

  void step(CMat& rho, double t, double dt) {
    const auto& k = kernels::ops();
    const std::size_t n = static_cast<std::size_t>(rho.size());
    deriv(rho, k1, t);
    k.stage(tmp.data(), rho.data(), 0.5 * dt, k1.data(), n);
    deriv(tmp, k2, t + 0.5 * dt);
    k.stage(tmp.data(), rho.data(), 0.5 * dt, k2.data(), n);
    deriv(tmp, k3, t + 0.5 * dt);
    k.stage(tmp.data(), rho.data(), dt, k3.data(), n);
    deriv(tmp, k4, t + dt);
    k.rk4_update(rho.data(), dt, k1.data(), k2.data(), k3.data(), k4.data(), n);
  }
};

double min_eigenvalue(const CMat& rho) {
  Eigen::Map<const Eigen::MatrixXcd> map(rho.data(), rho.rows(), rho.cols());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(map, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Trajectory integrate(const CMat& rho0, Stepper& stepper,
                     std::span<const ObservableFn> observables,
                     const EvolveOptions& opt, bool run_guard) {
  const double span = opt.t_end - opt.t_start;
  if (!(span > 0.0)) throw std::invalid_argument("evolve: t_end must exceed t_start");
  if (!(opt.dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
  const auto n_steps = static_cast<std::size_t>(std::llround(span / opt.dt));
  if (n_steps < 1) throw std::invalid_argument("evolve: span shorter than one step");
  const double dt = span / static_cast<double>(n_steps);

  if (opt.record_every < 1)
    throw std::invalid_argument("evolve: record_every must be >= 1");
  const auto rec = static_cast<std::size_t>(opt.record_every);

  Trajectory out;
  out.observable_names.reserve(observables.size());
  for (const auto& o : observables) out.observable_names.push_back(o.name);
  out.observables.assign(observables.size(), {});
  for (auto& s : out.observables) s.reserve(n_steps / rec + 2);
  out.times.reserve(n_steps / rec + 2);

  CMat rho = rho0;
  for (std::size_t step = 0;; ++step) {
    const double t = opt.t_start + static_cast<double>(step) * dt;
    if (step % rec == 0 || step == n_steps) {
      out.times.push_back(t);
      for (std::size_t k = 0; k < observables.size(); ++k)
        out.observables[k].push_back(observables[k].fn(rho));
    }
    const bool cadence =
        (opt.store_every > 0 && step % static_cast<std::size_t>(opt.store_every) == 0);
    if (cadence || step == n_steps) {
      const double ev = min_eigenvalue(rho);
      out.diag.min_eigenvalue = std::min(out.diag.min_eigenvalue, ev);
      if (ev < -opt.positivity_tol)
        throw std::runtime_error("evolve: positivity violated at t=" + std::to_string(t) +
                                 " (min eigenvalue " + std::to_string(ev) + ")");
      out.stored_times.push_back(t);
      out.stored_steps.push_back(step);
      if (opt.keep_states) out.stored_states.push_back(rho);
    }
    if (step == n_steps) break;
    stepper.step(rho, t, dt);
    const double drift = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
    out.diag.max_trace_drift = std::max(out.diag.max_trace_drift, drift);
    if (drift > opt.trace_tol)
      throw std::runtime_error("evolve: trace drift " + std::to_string(drift) +
                               " beyond tolerance at t=" + std::to_string(t + dt));
  }

  if (run_guard && opt.convergence_guard && !observables.empty()) {
    const double window = std::min(opt.guard_window, span);
    EvolveOptions fine = opt;
    fine.t_end = opt.t_start + window;
    fine.dt = dt / 2.0;
    fine.record_every = opt.record_every * 2;  // same recorded times as the coarse run
    fine.keep_states = false;
    fine.store_every = 0;
    std::span<const ObservableFn> first(observables.data(), 1);
    Trajectory ref = integrate(rho0, stepper, first, fine, false);
    for (std::size_t k = 0; k < ref.times.size() && k < out.times.size(); ++k) {
      if (std::abs(out.times[k] - ref.times[k]) > 1e-9) break;  // ragged final point
      const double delta = std::abs(out.observables[0][k] - ref.observables[0][k]);
      out.diag.guard_max_delta = std::max(out.diag.guard_max_delta, delta);
    }
    if (out.diag.guard_max_delta > opt.guard_tol)
      throw std::runtime_error("evolve: step-halving check failed (delta " +
                               std::to_string(out.diag.guard_max_delta) + " for " +
                               observables[0].name + "); reduce dt");
  }
  return out;
}

}  // namespace

const std::vector<double>& Trajectory::series(const std::string& name) const {
  for (std::size_t k = 0; k < observable_names.size(); ++k)
    if (observable_names[k] == name) return observables[k];
  throw std::invalid_argument("trajectory: no observable named " + name);
}

CMat initial_state(InitialStateKind kind, const DressedBasis& basis) {
  const int dim = basis.dim();
  if (kind == InitialStateKind::dressed_ground) {
    CMat rho(dim, dim);
    rho(basis.ground_interacting, basis.ground_interacting) = 1.0;
    return rho;
  }
  // All atoms in s, zero photons: exact eigenstate, but transform anyway so
  // the construction is independent of eigenvector ordering.
  std::vector<Level> levels(static_cast<std::size_t>(basis.space.n_atoms), Level::s);
  const int bare = basis.space.index(0, basis.space.emitter_index(levels));
  return pure_state_from_dressed(basis.dressed_vector_of_bare(bare), basis.space);
}

CMat initial_state_custom(const std::vector<cd>& bare_amplitudes,
                          const DressedBasis& basis) {
  const int dim = basis.dim();
  if (bare_amplitudes.size() != static_cast<std::size_t>(dim))
    throw std::invalid_argument("initial_state_custom: amplitude count must match dimension");
  double norm2 = 0.0;
  for (const cd& a : bare_amplitudes) norm2 += std::norm(a);
  if (norm2 <= 0.0) throw std::invalid_argument("initial_state_custom: zero state");
  const double inv = 1.0 / std::sqrt(norm2);
  std::vector<cd> w(static_cast<std::size_t>(dim));
  for (int j = 0; j < dim; ++j) {
    cd acc = 0.0;
    for (int i = 0; i < dim; ++i) acc += std::conj(basis.states(i, j)) * bare_amplitudes[static_cast<std::size_t>(i)];
    w[static_cast<std::size_t>(j)] = acc * inv;
  }
  return pure_state_from_dressed(w, basis.space);
}

double max_stable_dt(const DressedBasis& basis, const LindbladGenerator& gen) {
  return 0.5 / (basis.hnorm + gen.total_jump_rate());
}

PulseParams resolve_pulse(const PulseParams& pulse, const DressedBasis& basis,
                          const CMat& pulse_op_dressed) {
  PulseParams out = pulse;
  if (out.omega_drive > 0.0 && out.amplitude_scale > 0.0) return out;
  // |s..s, 0> is an exact eigenstate; locate it by overlap.
  std::vector<Level> levels(static_cast<std::size_t>(basis.space.n_atoms), Level::s);
  const int bare = basis.space.index(0, basis.space.emitter_index(levels));
  int js = 0;
  double best = -1.0;
  for (int j = 0; j < basis.dim(); ++j) {
    const double w = std::norm(basis.states(bare, j));
    if (w > best) { best = w; js = j; }
  }
  if (best < 0.99)
    throw std::runtime_error("resolve_pulse: no dressed state matches the bare s ground");
  if (out.omega_drive <= 0.0)
    out.omega_drive = basis.energies[static_cast<std::size_t>(basis.ground_interacting)] -
                      basis.energies[static_cast<std::size_t>(js)];
  if (out.amplitude_scale <= 0.0) {
    const double m = std::abs(pulse_op_dressed(basis.ground_interacting, js));
    if (m < 1e-8) throw std::runtime_error("resolve_pulse: vanishing pulse matrix element");
    out.amplitude_scale = 1.0 / m;
  }
  return out;
}

Trajectory evolve(const CMat& rho0, const DressedBasis& basis,
                  const LindbladGenerator& gen,
                  std::span<const ObservableFn> observables,
                  const EvolveOptions& opt) {
  const auto bdim = static_cast<std::size_t>(basis.dim());
  if (rho0.rows() != bdim || rho0.cols() != bdim)
    throw std::invalid_argument("evolve: state dimension mismatch");
  if (opt.dt > max_stable_dt(basis, gen) * (1.0 + 1e-12))
    throw std::invalid_argument("evolve: dt exceeds the stability bound");
  Stepper stepper(basis.dim());
  stepper.gen = &gen;
  return integrate(rho0, stepper, observables, opt, true);
}

Trajectory evolve_driven(const CMat& rho0, const DressedBasis& basis,
                         const LindbladGenerator& gen, const PulseParams& pulse,
                         const CMat& pulse_op_dressed,
                         std::span<const ObservableFn> observables,
                         const EvolveOptions& opt) {
  const auto bdim = static_cast<std::size_t>(basis.dim());
  if (rho0.rows() != bdim || rho0.cols() != bdim)
    throw std::invalid_argument("evolve_driven: state dimension mismatch");
  if (pulse_op_dressed.rows() != bdim || pulse_op_dressed.cols() != bdim)
    throw std::invalid_argument("evolve_driven: pulse operator dimension mismatch");
  if (!(pulse.omega_drive > 0.0))
    throw std::invalid_argument("evolve_driven: drive frequency must be resolved and positive");
  if (opt.t_start > -4.0 * pulse.sigma + 1e-12)
    throw std::invalid_argument("evolve_driven: t_start must be at or before -4 sigma");
  if (opt.dt > max_stable_dt(basis, gen) * (1.0 + 1e-12))
    throw std::invalid_argument("evolve_driven: dt exceeds the stability bound");
  Stepper stepper(basis.dim());
  stepper.gen = &gen;
  SparseCols cols(pulse_op_dressed);
  stepper.drive_op = &cols;
  stepper.pulse = &pulse;
  return integrate(rho0, stepper, observables, opt, true);
}

}  // namespace uscqed
