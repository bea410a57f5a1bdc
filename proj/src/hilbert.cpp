#include "uscqed/hilbert.hpp"

#include <cmath>

namespace uscqed {

HilbertSpace HilbertSpace::make(int n_fock, int n_atoms) {
  if (n_fock < 1) throw std::invalid_argument("n_fock must be >= 1");
  if (n_atoms < 1 || n_atoms > 4)
    throw std::invalid_argument("n_atoms out of supported range");
  HilbertSpace s;
  s.n_fock = n_fock;
  s.n_levels = 3;
  s.n_atoms = n_atoms;
  int edim = 1;
  for (int a = 0; a < n_atoms; ++a) edim *= 3;
  s.dim = (n_fock + 1) * edim;
  return s;
}

int HilbertSpace::emitter_index(std::span<const Level> levels) const {
  if (static_cast<int>(levels.size()) != n_atoms)
    throw std::invalid_argument("level list size != n_atoms");
  int idx = 0;
  for (const Level l : levels) idx = idx * 3 + static_cast<int>(l);
  return idx;
}

int HilbertSpace::index_of(int fock, std::initializer_list<Level> levels) const {
  if (fock < 0 || fock > n_fock) throw std::invalid_argument("fock index out of range");
  return index(fock, emitter_index(std::span<const Level>(levels.begin(), levels.size())));
}

Operator make_identity(const HilbertSpace& space) {
  return {space, CMat::identity(space.dim)};
}

Operator make_destroy(const HilbertSpace& space) {
  CMat a(space.fock_dim(), space.fock_dim());
  for (int n = 1; n <= space.n_fock; ++n) a(n - 1, n) = std::sqrt(double(n));
  return tensor_embed(a, space, 0);
}

Operator make_transition(const HilbertSpace& space, Level alpha, Level beta,
                         int atom_index) {
  const int ia = static_cast<int>(alpha), ib = static_cast<int>(beta);
  if (ia < 0 || ia > 2 || ib < 0 || ib > 2)
    throw std::invalid_argument("invalid level label");
  if (atom_index < 0 || atom_index >= space.n_atoms)
    throw std::invalid_argument("atom index out of range");
  CMat t(3, 3);
  t(ia, ib) = 1.0;
  return tensor_embed(t, space, 1 + atom_index);
}

Operator tensor_embed(const CMat& factor_op, const HilbertSpace& space, int factor) {
  if (factor < 0 || factor > space.n_atoms)
    throw std::invalid_argument("factor id out of range");
  const std::size_t fdim =
      factor == 0 ? static_cast<std::size_t>(space.fock_dim()) : 3u;
  if (factor_op.rows() != fdim || factor_op.cols() != fdim)
    throw std::invalid_argument("factor operator dimension mismatch");

  Operator out(space);
  const int edim = space.emitter_dim();

  if (factor == 0) {
    for (std::size_t fc = 0; fc < fdim; ++fc)
      for (std::size_t fr = 0; fr < fdim; ++fr) {
        const cd v = factor_op(fr, fc);
        if (v == cd{0.0, 0.0}) continue;
        for (int e = 0; e < edim; ++e)
          out.m(space.index(int(fr), e), space.index(int(fc), e)) = v;
      }
    return out;
  }

  const int atom = factor - 1;
  // Stride of this atom's base-3 digit inside the emitter index.
  int stride = 1;
  for (int a = space.n_atoms - 1; a > atom; --a) stride *= 3;

  for (int e_col = 0; e_col < edim; ++e_col) {
    const int digit = (e_col / stride) % 3;
    const int base = e_col - digit * stride;
    for (int lr = 0; lr < 3; ++lr) {
      const cd v = factor_op(lr, digit);
      if (v == cd{0.0, 0.0}) continue;
      const int e_row = base + lr * stride;
      for (int f = 0; f < space.fock_dim(); ++f)
        out.m(space.index(f, e_row), space.index(f, e_col)) = v;
    }
  }
  return out;
}

}  // namespace uscqed
