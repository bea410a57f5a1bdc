#pragma once

#include <string>
#include <vector>

#include "uscqed/dressed.hpp"
#include "uscqed/dynamics.hpp"

namespace uscqed {

// Detection-level quantities over dressed-basis density matrices. Operators
// are cached at construction; the set must outlive any ObservableFn it hands
// out. All member functions are const and safe to call concurrently.
class ObservableSet {
 public:
  // Denominators at or below this are reported as undefined (NaN).
  static constexpr double kFloor = 1e-12;

  ObservableSet(const DressedBasis& basis, double gamma0);

  // <X- X+>; physical photons only, zero in the dressed ground state.
  double mean_physical_photons(const CMat& rho) const;
  // gamma0 * <X- X+> in units of omega0 (single-port output, vacuum input).
  double output_flux(const CMat& rho) const;
  // <X-X-X+X+> / <X-X+>^2; NaN below the floor.
  double g2(const CMat& rho) const;
  // g2 * <X-X+>; 0 when the cavity is empty.
  double big_g2(const CMat& rho) const;
  // <s- X-X- X+X+ s+> / (<s- s+> <X-X+>^2); NaN if either factor floors out.
  double g3(const CMat& rho) const;

  double population_dressed(const CMat& rho, int j) const;
  double population_bare(const CMat& rho, int bare_index) const;
  // spec: "dressed_ground", "dressed:<j>", or "bare:<fock>,<levels>" with one
  // of s/g/e per atom (e.g. "bare:0,s"). Unknown specs throw.
  double population(const CMat& rho, const std::string& spec) const;

  // Trajectory columns: mean_xx, flux_out, pop_dressed_ground, pop_s0.
  std::vector<ObservableFn> standard_observables() const;
  // Statistics columns: mean_xx, g2, big_g2, g3.
  std::vector<ObservableFn> statistics_observables() const;

  const DressedBasis& basis() const { return *basis_; }
  double gamma0() const { return gamma0_; }
  const CMat& x_plus() const { return x_plus_; }
  const CMat& x_minus() const { return x_minus_; }
  const CMat& sigma_plus() const { return sigma_plus_; }
  const CMat& sigma_minus() const { return sigma_minus_; }

 private:
  double expect_real(const CMat& op_t, const CMat& rho, const char* what) const;

  const DressedBasis* basis_;
  double gamma0_;
  CMat x_plus_, x_minus_, sigma_plus_, sigma_minus_;
  // Transposed product operators: tr(A rho) = dotu(flat(A^T), flat(rho)).
  CMat n_t_, xx_t_, sig_t_, g3_t_;
  std::vector<cd> w_s0_;  // dressed coordinates of |s..s, 0>
};

}  // namespace uscqed
