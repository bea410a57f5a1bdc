#include "uscqed/observables.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "uscqed/kernels.hpp"
#include "uscqed/model.hpp"

namespace uscqed {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

CMat transpose_of(const CMat& m) { return m.transpose(); }

}  // namespace

ObservableSet::ObservableSet(const DressedBasis& basis, double gamma0)
    : basis_(&basis), gamma0_(gamma0) {
  if (gamma0 < 0.0) throw std::invalid_argument("observables: gamma0 must be nonnegative");
  const HilbertSpace& space = basis.space;
  Operator a = make_destroy(space);
  Operator x = a + a.adjoint();
  Operator pol = make_transition(space, Level::g, Level::s, 0);
  for (int at = 1; at < space.n_atoms; ++at)
    pol += make_transition(space, Level::g, Level::s, at);
  pol += pol.adjoint();

  x_plus_ = positive_frequency_part_dressed(x, basis);
  x_minus_ = x_plus_.adjoint();
  sigma_plus_ = positive_frequency_part_dressed(pol, basis);
  sigma_minus_ = sigma_plus_.adjoint();

  CMat n_op(space.dim, space.dim);
  CMat::mul(x_minus_, x_plus_, n_op);
  n_t_ = transpose_of(n_op);

  // X-X-X+X+ as (X+X+)^dag (X+X+): Hermitian and positive by construction.
  CMat xx(space.dim, space.dim);
  CMat::mul(x_plus_, x_plus_, xx);
  CMat xx_num(space.dim, space.dim);
  CMat::mul(xx.adjoint(), xx, xx_num);
  xx_t_ = transpose_of(xx_num);

  CMat sig_num(space.dim, space.dim);
  CMat::mul(sigma_minus_, sigma_plus_, sig_num);
  sig_t_ = transpose_of(sig_num);

  CMat xxs(space.dim, space.dim);
  CMat::mul(xx, sigma_plus_, xxs);
  CMat g3_num(space.dim, space.dim);
  CMat::mul(xxs.adjoint(), xxs, g3_num);
  g3_t_ = transpose_of(g3_num);

  std::vector<Level> levels(static_cast<std::size_t>(space.n_atoms), Level::s);
  w_s0_ = basis.dressed_vector_of_bare(space.index(0, space.emitter_index(levels)));
}

double ObservableSet::expect_real(const CMat& op_t, const CMat& rho, const char* what) const {
  const auto bdim = static_cast<std::size_t>(basis_->dim());
  if (rho.rows() != bdim || rho.cols() != bdim)
    throw std::invalid_argument(std::string("observables: dimension mismatch in ") + what);
  const cd v = kernels::ops().dotu(op_t.data(), rho.data(),
                                   static_cast<std::size_t>(rho.size()));
  if (std::abs(v.imag()) > 1e-10)
    throw std::runtime_error(std::string("observables: imaginary residual in ") + what);
  return v.real();
}

double ObservableSet::mean_physical_photons(const CMat& rho) const {
  return expect_real(n_t_, rho, "mean_physical_photons");
}

double ObservableSet::output_flux(const CMat& rho) const {
  return gamma0_ * mean_physical_photons(rho);
}

double ObservableSet::g2(const CMat& rho) const {
  const double n = mean_physical_photons(rho);
  if (n <= kFloor) return kNaN;
  return expect_real(xx_t_, rho, "g2") / (n * n);
}

double ObservableSet::big_g2(const CMat& rho) const {
  const double n = mean_physical_photons(rho);
  if (n <= kFloor) return 0.0;
  return expect_real(xx_t_, rho, "big_g2") / n;
}

double ObservableSet::g3(const CMat& rho) const {
  const double n = mean_physical_photons(rho);
  const double ns = expect_real(sig_t_, rho, "g3 denominator");
  if (n <= kFloor || ns <= kFloor) return kNaN;
  return expect_real(g3_t_, rho, "g3") / (ns * n * n);
}

double ObservableSet::population_dressed(const CMat& rho, int j) const {
  if (j < 0 || j >= basis_->dim())
    throw std::invalid_argument("population: dressed index out of range");
  return rho(j, j).real();
}

double ObservableSet::population_bare(const CMat& rho, int bare_index) const {
  const int dim = basis_->dim();
  if (bare_index < 0 || bare_index >= dim)
    throw std::invalid_argument("population: bare index out of range");
  const std::vector<cd> w = basis_->dressed_vector_of_bare(bare_index);
  cd acc = 0.0;
  for (int j = 0; j < dim; ++j) {
    cd row = 0.0;
    for (int k = 0; k < dim; ++k) row += rho(j, k) * w[static_cast<std::size_t>(k)];
    acc += std::conj(w[static_cast<std::size_t>(j)]) * row;
  }
  return acc.real();
}

double ObservableSet::population(const CMat& rho, const std::string& spec) const {
  if (spec == "dressed_ground") return population_dressed(rho, basis_->ground_interacting);
  if (spec.rfind("dressed:", 0) == 0)
    return population_dressed(rho, std::stoi(spec.substr(8)));
  if (spec.rfind("bare:", 0) == 0) {
    const std::string rest = spec.substr(5);
    const auto comma = rest.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("population: bare spec needs <fock>,<levels>");
    const int fock = std::stoi(rest.substr(0, comma));
    const std::string lv = rest.substr(comma + 1);
    if (static_cast<int>(lv.size()) != basis_->space.n_atoms)
      throw std::invalid_argument("population: one level letter per atom required");
    std::vector<Level> levels;
    for (char c : lv) {
      if (c == 's') levels.push_back(Level::s);
      else if (c == 'g') levels.push_back(Level::g);
      else if (c == 'e') levels.push_back(Level::e);
      else throw std::invalid_argument("population: level letters are s, g, e");
    }
    return population_bare(rho, basis_->space.index(fock, basis_->space.emitter_index(levels)));
  }
  throw std::invalid_argument("population: unknown state spec " + spec);
}

std::vector<ObservableFn> ObservableSet::standard_observables() const {
  const ObservableSet* self = this;
  std::vector<ObservableFn> fns;
  fns.push_back({"mean_xx", [self](const CMat& r) { return self->mean_physical_photons(r); }});
  fns.push_back({"flux_out", [self](const CMat& r) { return self->output_flux(r); }});
  fns.push_back({"pop_dressed_ground",
                 [self](const CMat& r) { return self->population_dressed(r, self->basis_->ground_interacting); }});
  fns.push_back({"pop_s0", [self](const CMat& r) {
                   const int dim = self->basis_->dim();
                   cd acc = 0.0;
                   for (int j = 0; j < dim; ++j) {
                     cd row = 0.0;
                     for (int k = 0; k < dim; ++k)
                       row += r(j, k) * self->w_s0_[static_cast<std::size_t>(k)];
                     acc += std::conj(self->w_s0_[static_cast<std::size_t>(j)]) * row;
                   }
                   return acc.real();
                 }});
  return fns;
}

std::vector<ObservableFn> ObservableSet::statistics_observables() const {
  const ObservableSet* self = this;
  std::vector<ObservableFn> fns;
  fns.push_back({"mean_xx", [self](const CMat& r) { return self->mean_physical_photons(r); }});
  fns.push_back({"g2", [self](const CMat& r) { return self->g2(r); }});
  fns.push_back({"big_g2", [self](const CMat& r) { return self->big_g2(r); }});
  fns.push_back({"g3", [self](const CMat& r) { return self->g3(r); }});
  return fns;
}

}  // namespace uscqed
