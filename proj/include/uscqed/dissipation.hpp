#pragma once

#include <functional>
#include <string>
#include <vector>

#include "uscqed/dressed.hpp"

namespace uscqed {

enum class ChannelKind { cavity, eg, gs };

const char* channel_name(ChannelKind kind);

struct ChannelRates {
  double cavity = 0.0;  // gamma_0
  double eg = 0.0;      // gamma_eg, per atom
  double gs = 0.0;      // gamma_gs, per atom
  // Optional spectral weight W(omega) multiplying each transition weight:
  // Gamma_jk = gamma_c * W(omega_k - omega_j) * |<j|s_c|k>|^2. Flat when unset.
  std::function<double(double)> spectral_weight;
};

// amp * |to><from| with omega_from > omega_to (T = 0: downward only).
struct JumpTerm {
  int to = 0;
  int from = 0;
  cd amp;
};

// One Lindblad operator: all transitions degenerate in frequency (within
// kDegenTol) summed coherently.
struct JumpGroup {
  double omega = 0.0;
  std::vector<JumpTerm> terms;
};

struct Channel {
  ChannelKind kind = ChannelKind::cavity;
  int atom = -1;  // -1 for the cavity channel
  double rate = 0.0;
  std::vector<JumpGroup> groups;
};

struct DissipatorSet {
  std::vector<Channel> channels;
  // Sum of all weights Gamma_jk; enters the step-size stability bound.
  double total_weight = 0.0;
};

// One cavity channel plus one eg- and one gs-channel per atom, built from the
// dressed matrix elements of a + a†, sigma_eg + sigma_ge, sigma_gs + sigma_sg.
// Weights below 1e-14 * gamma_c are pruned. Throws on negative rates.
DissipatorSet build_dissipators(const DressedBasis& basis, const ChannelRates& rates);

struct AuditRow {
  std::string channel;
  int atom = -1;
  int j = 0;  // final (lower) state
  int k = 0;  // initial (upper) state
  double omega = 0.0;
  double weight = 0.0;
};

std::vector<AuditRow> audit_rows(const DissipatorSet& set);

// Cached structured form of the generator in the dressed basis:
//   out_xy = [i(w_y - w_x) - (gout_x + gout_y)/2] in_xy    (elementwise)
//          + sum over jump pairs  amp_m conj(amp_m') in_{from_m, from_m'}
//            scattered to (to_m, to_m')                     (gain)
//          - 1/2 {off-diagonal part of sum L†L, in}         (cross damping)
// Exactly trace-preserving by construction; valid for arbitrary (including
// non-Hermitian) input, as the regression propagation requires.
class LindbladGenerator {
 public:
  LindbladGenerator(const DressedBasis& basis, const DissipatorSet& set);

  void apply(const CMat& in, CMat& out) const;

  int dim() const { return dim_; }
  double total_jump_rate() const { return total_rate_; }
  const std::vector<double>& outflow() const { return gamma_out_; }

 private:
  int dim_ = 0;
  double total_rate_ = 0.0;
  std::vector<double> gamma_out_;  // diag of sum L†L
  CMat lam_;                       // elementwise factor
  struct Gain {
    std::size_t dst = 0, src = 0;  // linear column-major indices
    cd coeff;
  };
  std::vector<Gain> gain_;
  struct Cross {
    int u = 0, v = 0;  // Q_uv entry of sum L†L, u != v
    cd q;
  };
  std::vector<Cross> cross_;
};

// One-shot rho_dot = i[rho, H] + sum_c L_c rho, with rho given in the dressed
// basis of the Hamiltonian the set was built from. Checks rho is a valid
// state (Hermitian, unit trace) and matches the basis dimension.
CMat liouvillian_apply(const CMat& rho_dressed, const DressedBasis& basis,
                       const DissipatorSet& set);

}  // namespace uscqed
