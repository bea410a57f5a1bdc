#include "uscqed/dressed.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace uscqed {

namespace {

using EMat = Eigen::MatrixXcd;
using EMap = Eigen::Map<const EMat>;

// Occupation pattern of a bare index: bit a set when atom a occupies |s>.
int pattern_of_bare(const HilbertSpace& space, int bare) {
  int e = bare % space.emitter_dim();
  int pattern = 0;
  for (int a = space.n_atoms - 1; a >= 0; --a) {
    if (e % 3 == static_cast<int>(Level::s)) pattern |= 1 << a;
    e /= 3;
  }
  return pattern;
}

// Bare-basis parity is diagonal: (-1)^fock, with every emitter level s, g
// contributing +1 and e contributing -1.
double parity_of_bare(const HilbertSpace& space, int bare) {
  const int fock = bare / space.emitter_dim();
  double p = (fock % 2 == 0) ? 1.0 : -1.0;
  int e = bare % space.emitter_dim();
  for (int a = 0; a < space.n_atoms; ++a) {
    if (e % 3 == static_cast<int>(Level::e)) p = -p;
    e /= 3;
  }
  return p;
}

// Rotate the columns [begin, end) of V by the eigenvectors of the small
// Hermitian matrix B† diag(d) B so each rotated column is an eigenvector of
// diag(d); returns the (rounded-integer) eigenvalue per rotated column.
std::vector<int> rotate_to_diagonal(EMat& v, int begin, int end,
                                    const std::vector<double>& d) {
  const int c = end - begin;
  const auto b = v.middleCols(begin, c);
  EMat small(c, c);
  for (int q = 0; q < c; ++q)
    for (int p = 0; p < c; ++p) {
      cd acc = 0.0;
      for (int i = 0; i < v.rows(); ++i)
        acc += std::conj(b(i, p)) * d[i] * b(i, q);
      small(p, q) = acc;
    }
  Eigen::SelfAdjointEigenSolver<EMat> es(small);
  v.middleCols(begin, c) = b * es.eigenvectors();
  std::vector<int> labels(c);
  for (int p = 0; p < c; ++p)
    labels[p] = static_cast<int>(std::lround(es.eigenvalues()(p)));
  return labels;
}

}  // namespace

CMat DressedBasis::to_dressed(const CMat& bare) const {
  const CMat tmp = bare * states;
  return states.adjoint() * tmp;
}

CMat DressedBasis::to_bare(const CMat& dressed) const {
  const CMat tmp = states * dressed;
  return tmp * states.adjoint();
}

std::vector<cd> DressedBasis::dressed_vector_of_bare(int bare_index) const {
  std::vector<cd> v(space.dim);
  for (int j = 0; j < space.dim; ++j)
    v[j] = std::conj(states(bare_index, j));
  return v;
}

DressedBasis diagonalize(const Operator& H) {
  const int dim = H.space.dim;
  const double scale = std::max(1.0, H.m.max_abs());
  if (H.m.hermiticity_defect() > 1e-12 * scale)
    throw std::invalid_argument("diagonalize: Hamiltonian is not Hermitian");

  EMap hm(H.m.data(), dim, dim);
  Eigen::SelfAdjointEigenSolver<EMat> es(hm);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("diagonalize: eigensolver failed");

  std::vector<double> energies(dim);
  for (int j = 0; j < dim; ++j) energies[j] = es.eigenvalues()(j);
  EMat v = es.eigenvectors();

  std::vector<double> pattern_d(dim), parity_d(dim);
  for (int i = 0; i < dim; ++i) {
    pattern_d[i] = pattern_of_bare(H.space, i);
    parity_d[i] = parity_of_bare(H.space, i);
  }

  std::vector<int> pattern_label(dim, -1);
  std::vector<int> parity_label(dim, 0);

  // Inside each degenerate cluster the solver's column mixture is arbitrary;
  // rotate to a definite occupation pattern, then to definite parity.
  int c0 = 0;
  while (c0 < dim) {
    int c1 = c0 + 1;
    while (c1 < dim && energies[c1] - energies[c1 - 1] <= kDegenTol) ++c1;
    if (c1 - c0 > 1) {
      const std::vector<int> pats = rotate_to_diagonal(v, c0, c1, pattern_d);
      int g0 = c0;
      while (g0 < c1) {
        int g1 = g0 + 1;
        while (g1 < c1 && pats[g1 - c0] == pats[g0 - c0]) ++g1;
        const std::vector<int> pars = rotate_to_diagonal(v, g0, g1, parity_d);
        for (int j = g0; j < g1; ++j) {
          pattern_label[j] = pats[j - c0];
          parity_label[j] = pars[j - g0];
        }
        g0 = g1;
      }
      // Tie-break inside the cluster: noninteracting (all-s pattern) first,
      // then higher parity first; stable and deterministic.
      std::vector<int> order(c1 - c0);
      std::iota(order.begin(), order.end(), c0);
      const int all_s = (1 << H.space.n_atoms) - 1;
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const bool na = pattern_label[a] == all_s, nb = pattern_label[b] == all_s;
        if (na != nb) return na;
        return parity_label[a] > parity_label[b];
      });
      EMat vperm(dim, c1 - c0);
      std::vector<int> pat2(c1 - c0), par2(c1 - c0);
      std::vector<double> en2(c1 - c0);
      for (int k = 0; k < c1 - c0; ++k) {
        vperm.col(k) = v.col(order[k]);
        pat2[k] = pattern_label[order[k]];
        par2[k] = parity_label[order[k]];
        en2[k] = energies[order[k]];
      }
      v.middleCols(c0, c1 - c0) = vperm;
      for (int k = 0; k < c1 - c0; ++k) {
        pattern_label[c0 + k] = pat2[k];
        parity_label[c0 + k] = par2[k];
        energies[c0 + k] = en2[k];
      }
    }
    c0 = c1;
  }

  // Labels for non-clustered columns from dominant weights; block structure
  // of H keeps them pure to solver accuracy.
  for (int j = 0; j < dim; ++j) {
    if (pattern_label[j] < 0) {
      std::vector<double> w(1 << H.space.n_atoms, 0.0);
      double par = 0.0;
      for (int i = 0; i < dim; ++i) {
        const double a2 = std::norm(v(i, j));
        w[static_cast<int>(pattern_d[i])] += a2;
        par += a2 * parity_d[i];
      }
      const int best =
          static_cast<int>(std::max_element(w.begin(), w.end()) - w.begin());
      pattern_label[j] = best;
      parity_label[j] = (std::abs(par) > 1.0 - 1e-8) ? (par > 0 ? 1 : -1) : 0;
    }
  }

  // Phase convention: largest-magnitude component real positive.
  for (int j = 0; j < dim; ++j) {
    int imax = 0;
    double amax = -1.0;
    for (int i = 0; i < dim; ++i) {
      const double a = std::abs(v(i, j));
      if (a > amax + 1e-15) {
        amax = a;
        imax = i;
      }
    }
    const cd z = v(imax, j);
    if (std::abs(z) > 0.0) v.col(j) *= std::conj(z) / std::abs(z);
  }

  DressedBasis basis;
  basis.space = H.space;
  basis.energies = std::move(energies);
  basis.states = CMat(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) basis.states(i, j) = v(i, j);
  basis.s_count.resize(dim);
  basis.sector.resize(dim);
  basis.parity = std::move(parity_label);
  for (int j = 0; j < dim; ++j) {
    basis.s_count[j] = std::popcount(static_cast<unsigned>(pattern_label[j]));
    basis.sector[j] = (basis.s_count[j] == H.space.n_atoms)
                          ? Sector::noninteracting
                          : Sector::interacting;
    if (basis.s_count[j] == 0 && basis.ground_interacting < 0)
      basis.ground_interacting = j;
  }
  basis.hnorm = std::max(std::abs(basis.energies.front()),
                         std::abs(basis.energies.back()));
  return basis;
}

GroundExpansion ground_expansion(const DressedBasis& basis) {
  if (basis.space.n_atoms != 1)
    throw std::invalid_argument("ground_expansion: single-atom expansion only");
  if (basis.ground_interacting < 0)
    throw std::runtime_error("ground_expansion: no interacting-sector state found");

  const int j0 = basis.ground_interacting;
  const HilbertSpace& sp = basis.space;
  GroundExpansion ge;
  double out2 = 0.0;
  ge.c_g.resize(sp.n_fock / 2 + 1);
  ge.c_e.resize((sp.n_fock + 1) / 2);
  std::vector<bool> used(sp.dim, false);
  for (int k = 0; 2 * k <= sp.n_fock; ++k) {
    const int i = sp.index_of(2 * k, {Level::g});
    ge.c_g[k] = basis.states(i, j0);
    used[i] = true;
  }
  for (int k = 0; 2 * k + 1 <= sp.n_fock; ++k) {
    const int i = sp.index_of(2 * k + 1, {Level::e});
    ge.c_e[k] = basis.states(i, j0);
    used[i] = true;
  }
  for (int i = 0; i < sp.dim; ++i)
    if (!used[i]) out2 += std::norm(basis.states(i, j0));
  ge.residual = std::sqrt(out2);
  return ge;
}

CMat positive_frequency_part_dressed(const Operator& op, const DressedBasis& basis) {
  const double scale = std::max(1.0, op.m.max_abs());
  if (op.m.hermiticity_defect() > 1e-12 * scale)
    throw std::invalid_argument("positive_frequency_part: operator is not Hermitian");
  CMat s = basis.to_dressed(op);
  const int dim = basis.dim();
  for (int k = 0; k < dim; ++k)
    for (int j = 0; j < dim; ++j)
      if (!(basis.energies[k] - basis.energies[j] > kDegenTol)) s(j, k) = 0.0;
  return s;
}

Operator positive_frequency_part(const Operator& op, const DressedBasis& basis) {
  return {op.space, basis.to_bare(positive_frequency_part_dressed(op, basis))};
}

std::vector<LevelSweepRow> level_sweep(const std::vector<double>& omega_r_grid,
                                       const ModelParams& params,
                                       const HilbertSpace& space, int m) {
  if (omega_r_grid.empty())
    throw std::invalid_argument("level_sweep: empty coupling grid");
  if (!std::is_sorted(omega_r_grid.begin(), omega_r_grid.end()))
    throw std::invalid_argument("level_sweep: grid must be sorted ascending");
  m = std::min(m, space.dim);

  std::vector<LevelSweepRow> rows;
  rows.reserve(omega_r_grid.size());
  for (const double wr : omega_r_grid) {
    ModelParams p = params;
    p.omega_r = wr;
    const DressedBasis b = diagonalize(build_hamiltonian(p, space));
    const DressedBasis brwa = diagonalize(build_rwa_hamiltonian(p, space));
    LevelSweepRow row;
    row.omega_r = wr;
    row.energies.assign(b.energies.begin(), b.energies.begin() + m);
    row.sectors.assign(b.sector.begin(), b.sector.begin() + m);
    row.rwa_ground = brwa.energies.at(brwa.ground_interacting);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace uscqed
