#pragma once

#include <complex>
#include <cstddef>

namespace uscqed::kernels {

using cd = std::complex<double>;

// Vectorizable primitives on contiguous interleaved complex-double arrays.
// Everything above this layer (matrix products, the master-equation
// generator, the RK4 stepper, trace evaluation) is composed from these.
struct Ops {
  // out[i] = a[i] * b[i]
  void (*mul_ew)(cd* out, const cd* a, const cd* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(cd* y, cd alpha, const cd* x, std::size_t n);
  // y[i] += alpha * x[i], alpha real
  void (*axpy_re)(cd* y, double alpha, const cd* x, std::size_t n);
  // out[i] = x[i] + h * k[i]
  void (*stage)(cd* out, const cd* x, double h, const cd* k, std::size_t n);
  // y[i] += (h/6) * (k1[i] + 2 k2[i] + 2 k3[i] + k4[i])
  void (*rk4_update)(cd* y, double h, const cd* k1, const cd* k2,
                     const cd* k3, const cd* k4, std::size_t n);
  // sum_i a[i] * b[i]
  cd (*dotu)(const cd* a, const cd* b, std::size_t n);
  // sum_i conj(a[i]) * b[i]
  cd (*dotc)(const cd* a, const cd* b, std::size_t n);
};

// Portable reference implementations; ground truth for equivalence tests.
const Ops& scalar_ops();

// Active implementation, selected once at first use from CPU capabilities.
const Ops& ops();

// Name of the active implementation: "scalar" or "avx2".
const char* active_isa();

// Force an implementation ("auto", "scalar", "avx2"). Returns false and
// leaves the selection unchanged if the requested one is unavailable.
bool select_isa(const char* name);

}  // namespace uscqed::kernels
