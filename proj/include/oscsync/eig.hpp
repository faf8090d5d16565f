#pragma once

#include <optional>
#include <vector>

#include "oscsync/matrix.hpp"

namespace oscsync {

// Eigenvalues sorted ascending by (Re, |Im|, Im). For the ordering key only,
// real parts within zero_tol of the axis are snapped to 0 so that an exact-zero
// eigenvalue computed as 1e-16 still sorts ahead of a purely imaginary one.
// Stored values are the raw computed eigenvalues. Indices are 1-based.
class Spectrum {
 public:
  Spectrum() = default;
  Spectrum(std::vector<cplx> values, double zero_tol);

  int size() const { return static_cast<int>(values_.size()); }
  cplx at(int k) const;  // 1-based: at(1) is the smallest
  const std::vector<cplx>& values() const { return values_; }
  double zero_tol() const { return zero_tol_; }

 private:
  std::vector<cplx> values_;
  double zero_tol_ = 0.0;
};

struct SymEig {
  std::vector<double> values;  // ascending
  Mat vectors;                 // column k is the eigenvector of values[k]
};

// Cyclic Jacobi sweeps. Input must be symmetric to 1e-12*scale; it is
// symmetrized before iterating. Throws numerical_error if the off-diagonal
// mass has not dropped below 1e-14*scale after 100 sweeps.
SymEig sym_eig(const Mat& a);

// Inverse square root of a symmetric positive definite matrix, via sym_eig.
// Throws std::domain_error naming the offending eigenvalue when
// min eig <= 1e-12*scale.
Mat spd_inv_sqrt(const Mat& a);

struct ComplexEig {
  Spectrum spectrum;
  CMat vectors;  // column k-1 pairs with spectrum.at(k)
};

// Hessenberg reduction + Wilkinson-shift QR, Schur vectors accumulated,
// eigenvectors by back substitution on the triangular factor. Every
// eigenpair is residual-checked: ||A v - lambda v|| <= 1e-8*scale.
ComplexEig complex_eig(const CMat& a);
Spectrum complex_eigenvalues(const CMat& a);

// Columns are pairwise orthonormal (Gram matrix = I within 1e-10).
struct OrthonormalBasis {
  CMat vectors;
  int dim() const { return vectors.cols(); }
};

// Orthonormal basis of { v : A v = 0 } for a possibly rectangular matrix,
// by Householder QR with column pivoting of A^H. Rank cutoff
// |R_kk| <= rank_tol * scale.
OrthonormalBasis null_space(const CMat& a, double rank_tol = 1e-10);

// Real input: the basis is provably real, returned as such.
Mat real_null_space(const Mat& a, double rank_tol = 1e-10);

}  // namespace oscsync
