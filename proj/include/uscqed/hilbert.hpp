#pragma once

#include <initializer_list>
#include <span>
#include <stdexcept>

#include "uscqed/cmat.hpp"

namespace uscqed {

// Emitter levels of the three-level cascade: |s> below |g> below |e>.
enum class Level : int { s = 0, g = 1, e = 2 };

// Composite space: truncated Fock factor (photon numbers 0..n_fock) times one
// three-level factor per atom. Composite index convention, frozen so CSV
// output is reproducible byte-for-byte:
//   i = fock_index * 3^n_atoms + emitter_index,
//   emitter_index = sum_a level_a * 3^(n_atoms-1-a)   (atom 0 most significant).
struct HilbertSpace {
  int n_fock = 16;
  int n_levels = 3;
  int n_atoms = 1;
  int dim = 0;

  static HilbertSpace make(int n_fock, int n_atoms = 1);

  int fock_dim() const { return n_fock + 1; }
  int emitter_dim() const { return dim / fock_dim(); }

  int index(int fock, int emitter) const { return fock * emitter_dim() + emitter; }

  int emitter_index(std::span<const Level> levels) const;
  int index_of(int fock, std::initializer_list<Level> levels) const;

  bool operator==(const HilbertSpace&) const = default;
};

// Dense operator tied to a space; algebra between different spaces is an error.
struct Operator {
  HilbertSpace space;
  CMat m;

  Operator() = default;
  Operator(const HilbertSpace& s) : space(s), m(s.dim, s.dim) {}
  Operator(const HilbertSpace& s, CMat mat) : space(s), m(std::move(mat)) {
    if (m.rows() != static_cast<std::size_t>(s.dim) || m.cols() != m.rows())
      throw std::invalid_argument("operator matrix does not match space dimension");
  }

  Operator adjoint() const { return {space, m.adjoint()}; }

  Operator& operator+=(const Operator& o) {
    check_space(o);
    m += o.m;
    return *this;
  }
  Operator& operator-=(const Operator& o) {
    check_space(o);
    m -= o.m;
    return *this;
  }
  Operator& operator*=(cd s) {
    m *= s;
    return *this;
  }

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(cd s, Operator a) { return a *= s; }
  friend Operator operator*(Operator a, cd s) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b) {
    a.check_space(b);
    return {a.space, a.m * b.m};
  }

  void check_space(const Operator& o) const {
    if (!(space == o.space))
      throw std::invalid_argument("operator algebra across different spaces");
  }
};

Operator make_identity(const HilbertSpace& space);

// Truncated annihilation operator on the Fock factor: (n-1, n) entry sqrt(n).
Operator make_destroy(const HilbertSpace& space);

// |alpha><beta| on one atom, identity elsewhere.
Operator make_transition(const HilbertSpace& space, Level alpha, Level beta,
                         int atom_index = 0);

// Embed a factor-local matrix: factor 0 is the Fock factor, factor 1+a is atom a.
Operator tensor_embed(const CMat& factor_op, const HilbertSpace& space, int factor);

}  // namespace uscqed
