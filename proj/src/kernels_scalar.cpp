#include "uscqed/kernels.hpp"

namespace uscqed::kernels {
namespace {

// std::complex operator* routes through the NaN-recovering __muldc3 helper at
// default flags; spelling the arithmetic out on the interleaved doubles keeps
// the reference kernels fast without -ffast-math.

void s_mul_ew(cd* out, const cd* a, const cd* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  double* po = reinterpret_cast<double*>(out);
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = pa[2 * i], ai = pa[2 * i + 1];
    const double br = pb[2 * i], bi = pb[2 * i + 1];
    po[2 * i] = ar * br - ai * bi;
    po[2 * i + 1] = ar * bi + ai * br;
  }
}

void s_axpy(cd* y, cd alpha, const cd* x, std::size_t n) {
  const double ar = alpha.real(), ai = alpha.imag();
  const double* px = reinterpret_cast<const double*>(x);
  double* py = reinterpret_cast<double*>(y);
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = px[2 * i], xi = px[2 * i + 1];
    py[2 * i] += ar * xr - ai * xi;
    py[2 * i + 1] += ar * xi + ai * xr;
  }
}

void s_axpy_re(cd* y, double alpha, const cd* x, std::size_t n) {
  const double* px = reinterpret_cast<const double*>(x);
  double* py = reinterpret_cast<double*>(y);
  for (std::size_t i = 0; i < 2 * n; ++i) py[i] += alpha * px[i];
}

void s_stage(cd* out, const cd* x, double h, const cd* k, std::size_t n) {
  const double* px = reinterpret_cast<const double*>(x);
  const double* pk = reinterpret_cast<const double*>(k);
  double* po = reinterpret_cast<double*>(out);
  for (std::size_t i = 0; i < 2 * n; ++i) po[i] = px[i] + h * pk[i];
}

void s_rk4_update(cd* y, double h, const cd* k1, const cd* k2, const cd* k3,
                  const cd* k4, std::size_t n) {
  const double h6 = h / 6.0;
  const double* p1 = reinterpret_cast<const double*>(k1);
  const double* p2 = reinterpret_cast<const double*>(k2);
  const double* p3 = reinterpret_cast<const double*>(k3);
  const double* p4 = reinterpret_cast<const double*>(k4);
  double* py = reinterpret_cast<double*>(y);
  for (std::size_t i = 0; i < 2 * n; ++i)
    py[i] += h6 * (p1[i] + 2.0 * (p2[i] + p3[i]) + p4[i]);
}

cd s_dotu(const cd* a, const cd* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = pa[2 * i], ai = pa[2 * i + 1];
    const double br = pb[2 * i], bi = pb[2 * i + 1];
    re += ar * br - ai * bi;
    im += ar * bi + ai * br;
  }
  return {re, im};
}

cd s_dotc(const cd* a, const cd* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = pa[2 * i], ai = pa[2 * i + 1];
    const double br = pb[2 * i], bi = pb[2 * i + 1];
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops k = {s_mul_ew, s_axpy,       s_axpy_re, s_stage,
                        s_rk4_update, s_dotu, s_dotc};
  return k;
}

}  // namespace uscqed::kernels
