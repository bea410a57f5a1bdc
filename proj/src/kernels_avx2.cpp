#include "uscqed/kernels.hpp"

// Compiled with -mavx2 -mfma (see src/CMakeLists.txt); every entry point is
// reached only through the runtime dispatcher after a CPU-capability check.

#if defined(USCQED_BUILD_AVX2)

#include <immintrin.h>

namespace uscqed::kernels {
namespace {

// One __m256d holds two interleaved complex doubles [re0 im0 re1 im1].
// Complex product: with are = dup(real a), aim = dup(imag a),
// bsw = b with re/im swapped, result = fmaddsub(are, b, aim*bsw):
//   even lanes: ar*br - ai*bi, odd lanes: ar*bi + ai*br.

inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d are = _mm256_movedup_pd(a);
  const __m256d aim = _mm256_permute_pd(a, 0xF);
  const __m256d bsw = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(are, b, _mm256_mul_pd(aim, bsw));
}

void v_mul_ew(cd* out, const cd* a, const cd* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  double* po = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    _mm256_storeu_pd(po + 2 * i, cmul(va, vb));
  }
  for (; i < n; ++i) {
    const double ar = pa[2 * i], ai = pa[2 * i + 1];
    const double br = pb[2 * i], bi = pb[2 * i + 1];
    po[2 * i] = ar * br - ai * bi;
    po[2 * i + 1] = ar * bi + ai * br;
  }
}

void v_axpy(cd* y, cd alpha, const cd* x, std::size_t n) {
  const double ar = alpha.real(), ai = alpha.imag();
  const __m256d vre = _mm256_set1_pd(ar);
  const __m256d vim = _mm256_set1_pd(ai);
  const double* px = reinterpret_cast<const double*>(x);
  double* py = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(px + 2 * i);
    const __m256d vy = _mm256_loadu_pd(py + 2 * i);
    const __m256d xsw = _mm256_permute_pd(vx, 0x5);
    const __m256d prod = _mm256_fmaddsub_pd(vre, vx, _mm256_mul_pd(vim, xsw));
    _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(vy, prod));
  }
  for (; i < n; ++i) {
    const double xr = px[2 * i], xi = px[2 * i + 1];
    py[2 * i] += ar * xr - ai * xi;
    py[2 * i + 1] += ar * xi + ai * xr;
  }
}

void v_axpy_re(cd* y, double alpha, const cd* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  const double* px = reinterpret_cast<const double*>(x);
  double* py = reinterpret_cast<double*>(y);
  const std::size_t m = 2 * n;
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d vx = _mm256_loadu_pd(px + i);
    const __m256d vy = _mm256_loadu_pd(py + i);
    _mm256_storeu_pd(py + i, _mm256_fmadd_pd(va, vx, vy));
  }
  for (; i < m; ++i) py[i] += alpha * px[i];
}

void v_stage(cd* out, const cd* x, double h, const cd* k, std::size_t n) {
  const __m256d vh = _mm256_set1_pd(h);
  const double* px = reinterpret_cast<const double*>(x);
  const double* pk = reinterpret_cast<const double*>(k);
  double* po = reinterpret_cast<double*>(out);
  const std::size_t m = 2 * n;
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d vx = _mm256_loadu_pd(px + i);
    const __m256d vk = _mm256_loadu_pd(pk + i);
    _mm256_storeu_pd(po + i, _mm256_fmadd_pd(vh, vk, vx));
  }
  for (; i < m; ++i) po[i] = px[i] + h * pk[i];
}

void v_rk4_update(cd* y, double h, const cd* k1, const cd* k2, const cd* k3,
                  const cd* k4, std::size_t n) {
  const double h6 = h / 6.0;
  const __m256d vh6 = _mm256_set1_pd(h6);
  const __m256d v2 = _mm256_set1_pd(2.0);
  const double* p1 = reinterpret_cast<const double*>(k1);
  const double* p2 = reinterpret_cast<const double*>(k2);
  const double* p3 = reinterpret_cast<const double*>(k3);
  const double* p4 = reinterpret_cast<const double*>(k4);
  double* py = reinterpret_cast<double*>(y);
  const std::size_t m = 2 * n;
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d a = _mm256_add_pd(_mm256_loadu_pd(p1 + i), _mm256_loadu_pd(p4 + i));
    const __m256d b = _mm256_add_pd(_mm256_loadu_pd(p2 + i), _mm256_loadu_pd(p3 + i));
    const __m256d s = _mm256_fmadd_pd(v2, b, a);
    const __m256d vy = _mm256_loadu_pd(py + i);
    _mm256_storeu_pd(py + i, _mm256_fmadd_pd(vh6, s, vy));
  }
  for (; i < m; ++i)
    py[i] += h6 * (p1[i] + 2.0 * (p2[i] + p3[i]) + p4[i]);
}

cd v_dotu(const cd* a, const cd* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    acc = _mm256_add_pd(acc, cmul(va, vb));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double re = lanes[0] + lanes[2];
  double im = lanes[1] + lanes[3];
  for (; i < n; ++i) {
    const double ar = pa[2 * i], ai = pa[2 * i + 1];
    const double br = pb[2 * i], bi = pb[2 * i + 1];
    re += ar * br - ai * bi;
    im += ar * bi + ai * br;
  }
  return {re, im};
}

cd v_dotc(const cd* a, const cd* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    const __m256d are = _mm256_movedup_pd(va);
    const __m256d aim = _mm256_permute_pd(va, 0xF);
    const __m256d bsw = _mm256_permute_pd(vb, 0x5);
    // even lanes: ar*br + ai*bi, odd lanes: ar*bi - ai*br
    acc = _mm256_add_pd(acc, _mm256_fmsubadd_pd(are, vb, _mm256_mul_pd(aim, bsw)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double re = lanes[0] + lanes[2];
  double im = lanes[1] + lanes[3];
  for (; i < n; ++i) {
    const double ar = pa[2 * i], ai = pa[2 * i + 1];
    const double br = pb[2 * i], bi = pb[2 * i + 1];
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

}  // namespace

const Ops* avx2_ops_or_null() {
  static const Ops k = {v_mul_ew, v_axpy, v_axpy_re, v_stage,
                        v_rk4_update, v_dotu, v_dotc};
  return &k;
}

}  // namespace uscqed::kernels

#else

namespace uscqed::kernels {
const Ops* avx2_ops_or_null() { return nullptr; }
}  // namespace uscqed::kernels

#endif
