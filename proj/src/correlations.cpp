#include "uscqed/correlations.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "uscqed/kernels.hpp"

namespace uscqed {

namespace {

// RK4 on the generator alone; valid for non-Hermitian regression inputs.
struct SegmentPropagator {
  const LindbladGenerator* gen;
  CMat k1, k2, k3, k4, tmp;

  explicit SegmentPropagator(const LindbladGenerator& g)
      : gen(&g), k1(g.dim(), g.dim()), k2(g.dim(), g.dim()), k3(g.dim(), g.dim()),
        k4(g.dim(), g.dim()), tmp(g.dim(), g.dim()) {}

  void advance(CMat& lam, double span, int n_sub) {
    const auto& k = kernels::ops();
    const std::size_t n = static_cast<std::size_t>(lam.size());
    const double dt = span / n_sub;
    for (int s = 0; s < n_sub; ++s) {
      gen->apply(lam, k1);
      k.stage(tmp.data(), lam.data(), 0.5 * dt, k1.data(), n);
      gen->apply(tmp, k2);
      k.stage(tmp.data(), lam.data(), 0.5 * dt, k2.data(), n);
      gen->apply(tmp, k3);
      k.stage(tmp.data(), lam.data(), dt, k3.data(), n);
      gen->apply(tmp, k4);
      k.rk4_update(lam.data(), dt, k1.data(), k2.data(), k3.data(), k4.data(), n);
    }
  }
};

// Substep count for one grid segment: target spacing capped by RK4 stability
// on the fastest coherence (|E_max - E_min| <= 2 hnorm plus decay).
int substeps_for(double delta, double dt_sub, const DressedBasis& basis,
                 const LindbladGenerator& gen) {
  const double limit = 2.5 / (2.0 * basis.hnorm + gen.total_jump_rate() + 1e-30);
  const double target = std::min(dt_sub, limit);
  return std::max(1, static_cast<int>(std::ceil(delta / target)));
}

void check_grid(std::span<const double> t_grid, double& delta) {
  if (t_grid.size() < 2)
    throw std::invalid_argument("two_time_correlation: need at least two grid points");
  if (t_grid[0] < 0.0)
    throw std::invalid_argument("two_time_correlation: grid must start at t >= 0");
  delta = t_grid[1] - t_grid[0];
  if (!(delta > 0.0))
    throw std::invalid_argument("two_time_correlation: grid must be ascending");
  for (std::size_t i = 1; i + 1 < t_grid.size(); ++i) {
    const double step = t_grid[i + 1] - t_grid[i];
    if (std::abs(step - delta) > 1e-9 * std::max(1.0, delta))
      throw std::invalid_argument("two_time_correlation: grid must be uniform");
  }
}

// Upper-triangle regression sweep: on_value(i, j, C(t_i, t_j)) for j >= i.
template <typename Fn>
void regression_sweep(const CMat& rho0, const CMat& a, const CMat& b_t, double t0,
                      std::size_t n_grid, double delta, int n_sub,
                      const LindbladGenerator& gen, const DressedBasis& basis,
                      double dt_sub, Fn&& on_value) {
  SegmentPropagator prop(gen);
  CMat rho = rho0;
  if (t0 > 0.0) prop.advance(rho, t0, substeps_for(t0, dt_sub, basis, gen));
  CMat lam(rho.rows(), rho.cols());
  const std::size_t n2 = static_cast<std::size_t>(rho.size());
  for (std::size_t i = 0; i < n_grid; ++i) {
    CMat::mul(rho, a, lam);
    for (std::size_t j = i;; ++j) {
      on_value(i, j, kernels::ops().dotu(b_t.data(), lam.data(), n2));
      if (j + 1 == n_grid) break;
      prop.advance(lam, delta, n_sub);
    }
    if (i + 1 == n_grid) break;
    prop.advance(rho, delta, n_sub);
  }
}

}  // namespace

TwoTimeResult two_time_correlation(const CMat& rho0, const CMat& a_dressed,
                                   const CMat& b_dressed,
                                   std::span<const double> t_grid,
                                   const DressedBasis& basis,
                                   const LindbladGenerator& gen, double dt_sub) {
  double delta = 0.0;
  check_grid(t_grid, delta);
  const auto dim = static_cast<std::size_t>(basis.dim());
  if (rho0.rows() != dim || rho0.cols() != dim || a_dressed.rows() != dim ||
      a_dressed.cols() != dim || b_dressed.rows() != dim || b_dressed.cols() != dim)
    throw std::invalid_argument("two_time_correlation: dimension mismatch");
  if (!(dt_sub > 0.0))
    throw std::invalid_argument("two_time_correlation: dt_sub must be positive");
  const CMat a_dag = a_dressed.adjoint();
  if (a_dag.max_abs_diff(b_dressed) > 1e-10 * std::max(1.0, a_dressed.max_abs()))
    throw std::invalid_argument(
        "two_time_correlation: conjugate fill requires B = adjoint(A)");

  const std::size_t n = t_grid.size();
  TwoTimeResult out;
  out.t_grid.assign(t_grid.begin(), t_grid.end());
  out.c.assign(n, std::vector<cd>(n, cd(0.0, 0.0)));
  const CMat b_t = b_dressed.transpose();
  const int n_sub = substeps_for(delta, dt_sub, basis, gen);
  regression_sweep(rho0, a_dressed, b_t, t_grid[0], n, delta, n_sub, gen, basis,
                   dt_sub, [&out](std::size_t i, std::size_t j, cd v) {
                     out.c[i][j] = v;
                     if (i != j) out.c[j][i] = std::conj(v);
                   });
  return out;
}

SpectrumResult emission_spectrum(const CMat& rho0, const DressedBasis& basis,
                                 const LindbladGenerator& gen,
                                 const CMat& sigma_minus_dressed, double t_end,
                                 double dt_grid,
                                 std::span<const double> omega_grid,
                                 double dt_sub) {
  const int dim = basis.dim();
  if (rho0.rows() != static_cast<std::size_t>(dim) || rho0.cols() != static_cast<std::size_t>(dim))
    throw std::invalid_argument("emission_spectrum: state dimension mismatch");
  if (!(t_end > 0.0) || !(dt_grid > 0.0) || !(dt_sub > 0.0))
    throw std::invalid_argument("emission_spectrum: t_end, dt_grid, dt_sub must be positive");
  if (omega_grid.size() < 3)
    throw std::invalid_argument("emission_spectrum: need at least three frequencies");
  const double omega_step = omega_grid[1] - omega_grid[0];
  if (!(omega_step > 0.0))
    throw std::invalid_argument("emission_spectrum: frequency grid must be ascending");
  for (std::size_t k = 1; k + 1 < omega_grid.size(); ++k)
    if (std::abs(omega_grid[k + 1] - omega_grid[k] - omega_step) > 1e-9 * omega_step)
      throw std::invalid_argument("emission_spectrum: frequency grid must be uniform");

  const auto n_seg = static_cast<std::size_t>(std::llround(t_end / dt_grid));
  if (n_seg < 2) throw std::invalid_argument("emission_spectrum: too few time points");
  const double delta = t_end / static_cast<double>(n_seg);
  const std::size_t n_t = n_seg + 1;
  const int n_sub = substeps_for(delta, dt_sub, basis, gen);

  // Transient completeness first, so a bad t_end fails before the O(N^2) work.
  {
    SegmentPropagator prop(gen);
    CMat rho = rho0;
    prop.advance(rho, t_end, static_cast<int>(n_seg) * n_sub);
    double outside = 0.0;
    for (int j = 0; j < dim; ++j)
      if (basis.s_count[static_cast<std::size_t>(j)] != basis.space.n_atoms)
        outside += rho(j, j).real();
    if (!(outside < 1e-4))
      throw std::runtime_error(
          "emission_spectrum: transient incomplete at t_end (population outside "
          "the s sector is " + std::to_string(outside) + "); increase t_end");
  }

  // G_m = sum over the upper anti-diagonal j - i = m of C(t_i, t_j); the
  // lower triangle enters through the conjugate, so
  // S(w) = (delta^2 / 2pi) [Re G_0 + 2 Re sum_m G_m e^{+i w m delta}].
  std::vector<cd> g(n_t, cd(0.0, 0.0));
  const CMat b_t = sigma_minus_dressed.adjoint().transpose();
  regression_sweep(rho0, sigma_minus_dressed, b_t, 0.0, n_t, delta, n_sub, gen,
                   basis, dt_sub,
                   [&g](std::size_t i, std::size_t j, cd v) { g[j - i] += v; });

  SpectrumResult out;
  out.t_end = t_end;
  out.dt_grid = delta;
  out.resolution = std::max(omega_step, 2.0 * std::numbers::pi / t_end);
  out.frequencies.assign(omega_grid.begin(), omega_grid.end());
  out.values.resize(omega_grid.size());
  const double prefactor = delta * delta / (2.0 * std::numbers::pi);
  for (std::size_t k = 0; k < omega_grid.size(); ++k) {
    const cd p(std::cos(omega_grid[k] * delta), std::sin(omega_grid[k] * delta));
    cd phase = p;
    cd acc(0.0, 0.0);
    for (std::size_t m = 1; m < n_t; ++m) {
      acc += g[m] * phase;
      phase *= p;
    }
    out.values[k] = prefactor * (g[0].real() + 2.0 * acc.real());
  }

  double raw_max = 0.0;
  double raw_min = 0.0;
  for (double v : out.values) {
    raw_max = std::max(raw_max, v);
    raw_min = std::min(raw_min, v);
  }
  if (!(raw_max > 0.0))
    throw std::runtime_error("emission_spectrum: spectrum vanished on the grid");
  if (raw_min < -1e-9 * raw_max)
    throw std::runtime_error("emission_spectrum: gross negativity in raw spectrum");
  out.raw_max = raw_max;
  for (double& v : out.values) v = std::max(v, 0.0) / raw_max;

  // Local maxima at or above 1% of max; ties resolve to the lower frequency
  // via the strict left / non-strict right comparison.
  for (std::size_t k = 1; k + 1 < out.values.size(); ++k) {
    const double vl = out.values[k - 1];
    const double vc = out.values[k];
    const double vr = out.values[k + 1];
    if (vc < 0.01 || !(vc > vl) || !(vc >= vr)) continue;
    const double denom = vl - 2.0 * vc + vr;
    double shift = 0.0;
    double height = vc;
    if (denom < -1e-300) {
      shift = 0.5 * (vl - vr) / denom;
      height = vc - 0.25 * (vl - vr) * shift;
    }
    out.peaks.push_back({out.frequencies[k] + shift * omega_step, height});
  }
  return out;
}

}  // namespace uscqed
