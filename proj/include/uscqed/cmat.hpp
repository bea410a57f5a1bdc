#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "uscqed/kernels.hpp"

namespace uscqed {

using cd = std::complex<double>;

// Dense column-major complex matrix. Bulk arithmetic goes through the
// runtime-dispatched kernels; element access is unchecked.
class CMat {
 public:
  CMat() = default;
  CMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), v_(rows * cols) {}

  static CMat identity(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return v_.size(); }

  cd& operator()(std::size_t i, std::size_t j) { return v_[j * rows_ + i]; }
  const cd& operator()(std::size_t i, std::size_t j) const {
    return v_[j * rows_ + i];
  }

  cd* data() { return v_.data(); }
  const cd* data() const { return v_.data(); }
  cd* col(std::size_t j) { return v_.data() + j * rows_; }
  const cd* col(std::size_t j) const { return v_.data() + j * rows_; }

  void set_zero() { std::fill(v_.begin(), v_.end(), cd{0.0, 0.0}); }

  CMat& operator+=(const CMat& o);
  CMat& operator-=(const CMat& o);
  CMat& operator*=(cd s);

  friend CMat operator+(CMat a, const CMat& b) { return a += b; }
  friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
  friend CMat operator*(cd s, CMat a) { return a *= s; }
  friend CMat operator*(CMat a, cd s) { return a *= s; }
  friend CMat operator*(const CMat& a, const CMat& b) {
    CMat out(a.rows(), b.cols());
    mul(a, b, out);
    return out;
  }

  CMat adjoint() const;
  CMat transpose() const;
  CMat conj() const;
  cd trace() const;
  double max_abs() const;
  double max_abs_diff(const CMat& o) const;
  // max_ij |M_ij - conj(M_ji)|
  double hermiticity_defect() const;

  // out = a * b (out must not alias a or b)
  static void mul(const CMat& a, const CMat& b, CMat& out);
  // out += a * b
  static void mul_acc(const CMat& a, const CMat& b, CMat& out);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cd> v_;
};

}  // namespace uscqed
