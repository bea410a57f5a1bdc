#include "uscqed/cmat.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace uscqed {

using kernels::ops;

CMat& CMat::operator+=(const CMat& o) {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  ops().axpy_re(v_.data(), 1.0, o.v_.data(), v_.size());
  return *this;
}

CMat& CMat::operator-=(const CMat& o) {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  ops().axpy_re(v_.data(), -1.0, o.v_.data(), v_.size());
  return *this;
}

CMat& CMat::operator*=(cd s) {
  for (auto& x : v_) x *= s;
  return *this;
}

CMat CMat::adjoint() const {
  CMat out(cols_, rows_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i)
      out(j, i) = std::conj((*this)(i, j));
  return out;
}

CMat CMat::transpose() const {
  CMat out(cols_, rows_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) out(j, i) = (*this)(i, j);
  return out;
}

CMat CMat::conj() const {
  CMat out(rows_, cols_);
  for (std::size_t i = 0; i < v_.size(); ++i) out.v_[i] = std::conj(v_[i]);
  return out;
}

cd CMat::trace() const {
  assert(rows_ == cols_);
  cd t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double CMat::max_abs() const {
  double m = 0.0;
  for (const auto& x : v_) m = std::max(m, std::abs(x));
  return m;
}

double CMat::max_abs_diff(const CMat& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  double m = 0.0;
  for (std::size_t i = 0; i < v_.size(); ++i)
    m = std::max(m, std::abs(v_[i] - o.v_[i]));
  return m;
}

double CMat::hermiticity_defect() const {
  assert(rows_ == cols_);
  double m = 0.0;
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i <= j; ++i)
      m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return m;
}

void CMat::mul(const CMat& a, const CMat& b, CMat& out) {
  assert(a.cols_ == b.rows_);
  assert(out.rows_ == a.rows_ && out.cols_ == b.cols_);
  assert(&out != &a && &out != &b);
  out.set_zero();
  mul_acc(a, b, out);
}

void CMat::mul_acc(const CMat& a, const CMat& b, CMat& out) {
  assert(a.cols_ == b.rows_);
  assert(out.rows_ == a.rows_ && out.cols_ == b.cols_);
  const std::size_t m = a.rows_, k = a.cols_, n = b.cols_;
  for (std::size_t j = 0; j < n; ++j) {
    cd* oc = out.col(j);
    for (std::size_t l = 0; l < k; ++l) {
      const cd s = b(l, j);
      if (s.real() == 0.0 && s.imag() == 0.0) continue;
      ops().axpy(oc, s, a.col(l), m);
    }
  }
}

}  // namespace uscqed
