#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "oscsync/errors.hpp"

namespace oscsync {

using cplx = std::complex<double>;
using rvec = std::vector<double>;
using cvec = std::vector<cplx>;

// Dense row-major real matrix. Value semantics, 0-based indexing.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  double frobenius() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

// Dense row-major complex matrix.
class CMat {
 public:
  CMat() = default;
  CMat(int rows, int cols, cplx fill = cplx(0.0, 0.0))
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}

  static CMat identity(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static CMat from_real(const Mat& r) {
    CMat m(r.rows(), r.cols());
    for (int i = 0; i < r.rows(); ++i)
      for (int j = 0; j < r.cols(); ++j) m(i, j) = r(i, j);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  cplx operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  CMat adjoint() const {
    CMat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
  }

  double frobenius() const {
    double s = 0.0;
    for (const cplx& v : a_) s += std::norm(v);
    return std::sqrt(s);
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<cplx> a_;
};

inline void check_same_shape(const Mat& a, const Mat& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw dimension_error(what);
}

inline Mat operator+(const Mat& a, const Mat& b) {
  check_same_shape(a, b, "matrix addition: shape mismatch");
  Mat c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

inline Mat operator-(const Mat& a, const Mat& b) {
  check_same_shape(a, b, "matrix subtraction: shape mismatch");
  Mat c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

inline Mat operator*(double s, const Mat& a) {
  Mat c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

inline Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw dimension_error("matrix product: inner dims differ");
  Mat c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

inline rvec operator*(const Mat& a, const rvec& x) {
  if (a.cols() != static_cast<int>(x.size()))
    throw dimension_error("matrix-vector product: size mismatch");
  rvec y(a.rows(), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

inline CMat operator+(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw dimension_error("matrix addition: shape mismatch");
  CMat c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

inline CMat operator-(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw dimension_error("matrix subtraction: shape mismatch");
  CMat c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

inline CMat operator*(cplx s, const CMat& a) {
  CMat c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

inline CMat operator*(const CMat& a, const CMat& b) {
  if (a.cols() != b.rows()) throw dimension_error("matrix product: inner dims differ");
  CMat c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

inline cvec operator*(const CMat& a, const cvec& x) {
  if (a.cols() != static_cast<int>(x.size()))
    throw dimension_error("matrix-vector product: size mismatch");
  cvec y(a.rows(), cplx(0.0, 0.0));
  for (int i = 0; i < a.rows(); ++i) {
    cplx s = 0.0;
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

inline double norm2(const rvec& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

inline double norm2(const cvec& x) {
  double s = 0.0;
  for (const cplx& v : x) s += std::norm(v);
  return std::sqrt(s);
}

inline double dot(const rvec& x, const rvec& y) {
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

// Conjugate-linear in the first argument.
inline cplx dot(const cvec& x, const cvec& y) {
  cplx s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

// Tolerances scale with max(1, ||A||_F) so they behave across unit systems.
inline double scale_of(const Mat& a) { return std::max(1.0, a.frobenius()); }
inline double scale_of(const CMat& a) { return std::max(1.0, a.frobenius()); }

}  // namespace oscsync
