#pragma once

#include <vector>

#include "uscqed/model.hpp"

namespace uscqed {

// Transitions closer in energy than this (units omega0) are treated as
// degenerate everywhere: excluded from positive-frequency parts, merged into
// one coherently summed jump operator, and eigenvector-rotated to definite
// labels.
inline constexpr double kDegenTol = 1e-9;

enum class Sector { noninteracting, interacting };

struct DressedBasis {
  HilbertSpace space;
  std::vector<double> energies;  // ascending
  CMat states;                   // column j = eigenvector |j~> in the bare basis
  std::vector<Sector> sector;    // noninteracting <=> every atom in |s>
  std::vector<int> s_count;      // number of atoms in |s> in the state's block
  std::vector<int> parity;       // ±1 where definite, 0 otherwise
  int ground_interacting = -1;   // lowest fully coupled state (s_count == 0)
  double hnorm = 0.0;            // spectral norm of H (max |eigenvalue|)

  int dim() const { return space.dim; }

  CMat to_dressed(const CMat& bare) const;  // U† M U
  CMat to_dressed(const Operator& op) const { return to_dressed(op.m); }
  CMat to_bare(const CMat& dressed) const;  // U M U†

  // Dressed components of a bare basis vector: v_j = <j~|bare_index>.
  std::vector<cd> dressed_vector_of_bare(int bare_index) const;
};

// Requires H Hermitian within 1e-12 (relative to its largest entry).
// Eigenvectors inside energy clusters (gap <= kDegenTol) are rotated to
// definite emitter-occupation blocks and definite parity; column phases are
// fixed by making the largest-magnitude component real positive.
DressedBasis diagonalize(const Operator& H);

struct GroundExpansion {
  std::vector<cd> c_g;     // c^0_{g,2k}, k = 0, 1, ...
  std::vector<cd> c_e;     // c^0_{e,2k+1}
  double residual = 0.0;   // norm of |0~> components outside the even ansatz
};

// Single-atom only: expansion of the interacting ground over {|g,2k>, |e,2k+1>}.
GroundExpansion ground_expansion(const DressedBasis& basis);

// O+ keeps dressed matrix elements <j|op|k> with omega_k - omega_j > kDegenTol.
Operator positive_frequency_part(const Operator& op, const DressedBasis& basis);
CMat positive_frequency_part_dressed(const Operator& op, const DressedBasis& basis);

struct LevelSweepRow {
  double omega_r = 0.0;
  std::vector<double> energies;      // lowest m
  std::vector<Sector> sectors;
  double rwa_ground = 0.0;           // lowest interacting eigenvalue of H_RWA
};

// Grid must be sorted ascending and non-empty.
std::vector<LevelSweepRow> level_sweep(const std::vector<double>& omega_r_grid,
                                       const ModelParams& params,
                                       const HilbertSpace& space, int m = 8);

}  // namespace uscqed
