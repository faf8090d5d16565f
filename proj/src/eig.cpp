#include "oscsync/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace oscsync {

namespace {

constexpr double kUlp = std::numeric_limits<double>::epsilon();

bool all_finite(const CMat& a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
  return true;
}

}  // namespace

Spectrum::Spectrum(std::vector<cplx> values, double zero_tol)
    : values_(std::move(values)), zero_tol_(zero_tol) {
  auto key = [this](const cplx& e) {
    double re = (std::abs(e.real()) <= zero_tol_) ? 0.0 : e.real();
    return std::tuple<double, double, double>(re, std::abs(e.imag()), e.imag());
  };
  std::stable_sort(values_.begin(), values_.end(),
                   [&key](const cplx& a, const cplx& b) { return key(a) < key(b); });
}

cplx Spectrum::at(int k) const {
  if (k < 1 || k > size()) throw std::out_of_range("Spectrum::at: index outside 1..q");
  return values_[k - 1];
}

// ---------------------------------------------------------------------------
// Cyclic Jacobi for real symmetric matrices.
// ---------------------------------------------------------------------------

SymEig sym_eig(const Mat& a) {
  const int n = a.rows();
  if (n != a.cols()) throw dimension_error("sym_eig: matrix not square");
  const double scale = scale_of(a);

  double asym = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) asym = std::max(asym, std::abs(a(i, j) - a(j, i)));
  if (asym > 1e-12 * scale) throw dimension_error("sym_eig: input not symmetric");

  Mat A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = 0.5 * (a(i, j) + a(j, i));
  Mat V = Mat::identity(n);

  const double stop = 1e-14 * scale;
  const int max_sweeps = 100;
  bool converged = (n < 2);

  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += 2.0 * A(i, j) * A(i, j);
    if (std::sqrt(off) <= stop) {
      converged = true;
      break;
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = A(p, q);
        if (apq == 0.0) continue;
        const double theta = 0.5 * (A(q, q) - A(p, p)) / apq;
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;  // avoid theta^2 overflow
        } else {
          t = ((theta >= 0.0) ? 1.0 : -1.0) /
              (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double h = t * apq;

        A(p, p) -= h;
        A(q, q) += h;
        A(p, q) = A(q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = A(k, p), akq = A(k, q);
          A(k, p) = A(p, k) = akp - s * (akq + tau * akp);
          A(k, q) = A(q, k) = akq + s * (akp - tau * akq);
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = V(k, p), vkq = V(k, q);
          V(k, p) = vkp - s * (vkq + tau * vkp);
          V(k, q) = vkq + s * (vkp - tau * vkq);
        }
      }
    }
  }
  if (!converged) {
    // final check: the last sweep may have pushed it under the threshold
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += 2.0 * A(i, j) * A(i, j);
    if (std::sqrt(off) > stop)
      throw numerical_error("sym_eig: Jacobi did not converge in 100 sweeps");
  }

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&A](int i, int j) { return A(i, i) < A(j, j); });

  SymEig out;
  out.values.resize(n);
  out.vectors = Mat(n, n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = A(idx[k], idx[k]);
    for (int r = 0; r < n; ++r) out.vectors(r, k) = V(r, idx[k]);
  }
  return out;
}

Mat spd_inv_sqrt(const Mat& a) {
  const SymEig e = sym_eig(a);
  const double scale = scale_of(a);
  if (e.values.empty() || e.values.front() <= 1e-12 * scale) {
    std::ostringstream msg;
    msg << "spd_inv_sqrt: matrix not positive definite (min eigenvalue "
        << (e.values.empty() ? 0.0 : e.values.front()) << ")";
    throw std::domain_error(msg.str());
  }
  const int n = a.rows();
  Mat s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k)
        acc += e.vectors(i, k) * e.vectors(j, k) / std::sqrt(e.values[k]);
      s(i, j) = s(j, i) = acc;
    }
  return s;
}

// ---------------------------------------------------------------------------
// General complex eigenproblem: Householder Hessenberg reduction followed by
// implicit single-shift QR with Wilkinson shifts, accumulating Schur vectors.
// Eigenvectors are recovered by back substitution on the triangular factor.
// ---------------------------------------------------------------------------

namespace {

struct GivensRotation {
  double c;  // real by construction
  cplx s;
};

// G = [[c, s], [-conj(s), c]] maps (a, b) to (r, 0).
GivensRotation make_givens(cplx a, cplx b) {
  const double nb = std::abs(b);
  if (nb == 0.0) return {1.0, cplx(0.0, 0.0)};
  const double na = std::abs(a);
  const double h = std::hypot(na, nb);
  if (na == 0.0) return {0.0, std::conj(b) / nb};
  return {na / h, (a / na) * std::conj(b) / h};
}

// Wilkinson shift: eigenvalue of [[a, b], [c, d]] closer to d.
cplx wilkinson_shift(cplx a, cplx b, cplx c, cplx d) {
  const cplx p = 0.5 * (a - d);
  const cplx r = std::sqrt(p * p + b * c);
  const cplx l1 = d + p + r;
  const cplx l2 = d + p - r;
  return (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
}

void hessenberg_reduce(CMat& h, CMat& q) {
  const int n = h.rows();
  cvec u(n);
  for (int k = 0; k + 2 < n; ++k) {
    double xnorm = 0.0;
    for (int i = k + 1; i < n; ++i) xnorm += std::norm(h(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm <= 1e-300) continue;

    const cplx x0 = h(k + 1, k);
    const cplx alpha =
        (std::abs(x0) == 0.0) ? cplx(-xnorm, 0.0) : -(x0 / std::abs(x0)) * xnorm;

    double unorm = 0.0;
    for (int i = k + 1; i < n; ++i) {
      u[i] = h(i, k);
      if (i == k + 1) u[i] -= alpha;
      unorm += std::norm(u[i]);
    }
    unorm = std::sqrt(unorm);
    if (unorm <= 1e-300) continue;
    for (int i = k + 1; i < n; ++i) u[i] /= unorm;

    // left: rows k+1.. of all columns >= k
    for (int j = k; j < n; ++j) {
      cplx w = 0.0;
      for (int i = k + 1; i < n; ++i) w += std::conj(u[i]) * h(i, j);
      w *= 2.0;
      for (int i = k + 1; i < n; ++i) h(i, j) -= u[i] * w;
    }
    // right: columns k+1.. of all rows
    for (int i = 0; i < n; ++i) {
      cplx w = 0.0;
      for (int j = k + 1; j < n; ++j) w += h(i, j) * u[j];
      w *= 2.0;
      for (int j = k + 1; j < n; ++j) h(i, j) -= w * std::conj(u[j]);
    }
    // accumulate Q <- Q P
    for (int i = 0; i < n; ++i) {
      cplx w = 0.0;
      for (int j = k + 1; j < n; ++j) w += q(i, j) * u[j];
      w *= 2.0;
      for (int j = k + 1; j < n; ++j) q(i, j) -= w * std::conj(u[j]);
    }
    h(k + 1, k) = alpha;
    for (int i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

// Schur decomposition a = Q T Q^H with T upper triangular.
void complex_schur(const CMat& a, CMat& t, CMat& q) {
  const int n = a.rows();
  t = a;
  q = CMat::identity(n);
  if (n < 2) return;
  hessenberg_reduce(t, q);

  const double scale = scale_of(a);
  const double smlnum = std::numeric_limits<double>::min() * (n / kUlp);
  const long iter_cap = 40L * n * n + 200;
  long total_iter = 0;
  int hi = n - 1;
  int block_iter = 0;

  auto apply_rotation = [&](int k, const GivensRotation& g, int lo) {
    // rows k, k+1 (columns from the deflation boundary rightward)
    const int j0 = std::max(0, std::min(k - 1, lo));
    for (int j = j0; j < n; ++j) {
      const cplx hk = t(k, j), hk1 = t(k + 1, j);
      t(k, j) = g.c * hk + g.s * hk1;
      t(k + 1, j) = -std::conj(g.s) * hk + g.c * hk1;
    }
    // columns k, k+1 (rows down to the bulge row)
    const int imax = std::min(hi, k + 2);
    for (int i = 0; i <= imax; ++i) {
      const cplx hik = t(i, k), hik1 = t(i, k + 1);
      t(i, k) = hik * g.c + hik1 * std::conj(g.s);
      t(i, k + 1) = -hik * g.s + hik1 * g.c;
    }
    for (int i = 0; i < n; ++i) {
      const cplx qik = q(i, k), qik1 = q(i, k + 1);
      q(i, k) = qik * g.c + qik1 * std::conj(g.s);
      q(i, k + 1) = -qik * g.s + qik1 * g.c;
    }
  };

  while (hi > 0) {
    // deflation: find the start of the active block ending at hi
    int lo = hi;
    while (lo > 0) {
      double d = std::abs(t(lo - 1, lo - 1)) + std::abs(t(lo, lo));
      if (d == 0.0) d = scale;
      if (std::abs(t(lo, lo - 1)) <= kUlp * d + smlnum) {
        t(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      --hi;
      block_iter = 0;
      continue;
    }

    cplx sigma;
    if (block_iter > 0 && block_iter % 10 == 0) {
      // exceptional shift to break symmetric stagnation
      sigma = t(hi, hi) + 0.75 * std::abs(t(hi, hi - 1));
    } else {
      sigma = wilkinson_shift(t(hi - 1, hi - 1), t(hi - 1, hi), t(hi, hi - 1), t(hi, hi));
    }

    cplx x = t(lo, lo) - sigma;
    cplx y = t(lo + 1, lo);
    for (int k = lo; k < hi; ++k) {
      const GivensRotation g = make_givens(x, y);
      apply_rotation(k, g, lo);
      if (k > lo) t(k + 1, k - 1) = 0.0;  // bulge annihilated exactly
      if (k + 1 < hi) {
        x = t(k + 1, k);
        y = t(k + 2, k);
      }
    }

    ++block_iter;
    if (++total_iter > iter_cap)
      throw numerical_error("complex_eig: QR iteration did not converge");
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) t(i, j) = 0.0;
}

// Eigenvector of the triangular factor for the eigenvalue at diagonal index i.
cvec triangular_eigenvector(const CMat& t, int i) {
  const int n = t.rows();
  const double tnorm = std::max(t.frobenius(), 1.0);
  cvec z(n, cplx(0.0, 0.0));
  z[i] = 1.0;
  for (int k = i - 1; k >= 0; --k) {
    cplx acc = 0.0;
    for (int m = k + 1; m <= i; ++m) acc += t(k, m) * z[m];
    cplx den = t(k, k) - t(i, i);
    const double floor = kUlp * tnorm;
    if (std::abs(den) < floor) den = cplx(floor, 0.0);
    z[k] = -acc / den;
    const double zk = std::abs(z[k]);
    if (zk > 1e120) {
      for (int m = k; m <= i; ++m) z[m] /= zk;
    }
  }
  return z;
}

}  // namespace

ComplexEig complex_eig(const CMat& a) {
  const int n = a.rows();
  if (n != a.cols()) throw dimension_error("complex_eig: matrix not square");
  if (!all_finite(a)) throw std::invalid_argument("complex_eig: non-finite entries");
  const double scale = scale_of(a);

  CMat t, q;
  complex_schur(a, t, q);

  std::vector<cplx> vals(n);
  for (int i = 0; i < n; ++i) vals[i] = t(i, i);

  // eigenvectors in original coordinates, one per diagonal entry
  CMat vecs(n, n);
  for (int i = 0; i < n; ++i) {
    const cvec z = triangular_eigenvector(t, i);
    cvec v(n, cplx(0.0, 0.0));
    for (int r = 0; r < n; ++r) {
      cplx acc = 0.0;
      for (int m = 0; m <= i; ++m) acc += q(r, m) * z[m];
      v[r] = acc;
    }
    const double nv = norm2(v);
    for (int r = 0; r < n; ++r) vecs(r, i) = v[r] / nv;
  }

  // residual verification of every pair
  for (int i = 0; i < n; ++i) {
    cvec v(n);
    for (int r = 0; r < n; ++r) v[r] = vecs(r, i);
    const cvec av = a * v;
    double res = 0.0;
    for (int r = 0; r < n; ++r) res += std::norm(av[r] - vals[i] * v[r]);
    if (std::sqrt(res) > 1e-8 * scale)
      throw numerical_error("complex_eig: eigenpair residual exceeds 1e-8*scale");
  }

  // sort values and vectors together by the spectrum ordering
  const double zero_tol = 1e-8 * (1.0 + a.frobenius());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  auto key = [&](int i) {
    const cplx e = vals[i];
    const double re = (std::abs(e.real()) <= zero_tol) ? 0.0 : e.real();
    return std::tuple<double, double, double>(re, std::abs(e.imag()), e.imag());
  };
  std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) { return key(i) < key(j); });

  ComplexEig out;
  std::vector<cplx> sorted(n);
  CMat svecs(n, n);
  for (int k = 0; k < n; ++k) {
    sorted[k] = vals[idx[k]];
    for (int r = 0; r < n; ++r) svecs(r, k) = vecs(r, idx[k]);
  }
  out.spectrum = Spectrum(std::move(sorted), zero_tol);
  out.vectors = std::move(svecs);
  return out;
}

Spectrum complex_eigenvalues(const CMat& a) { return complex_eig(a).spectrum; }

// ---------------------------------------------------------------------------
// Null space via Householder QR with column pivoting of the adjoint.
// A^H P = Q R; the trailing columns of Q past the numerical rank span null(A).
// ---------------------------------------------------------------------------

OrthonormalBasis null_space(const CMat& a, double rank_tol) {
  const int m = a.rows(), n = a.cols();
  if (!all_finite(a)) throw std::invalid_argument("null_space: non-finite entries");
  const double scale = scale_of(a);

  CMat b = a.adjoint();  // n x m
  const int kmax = std::min(n, m);
  std::vector<cvec> reflectors;
  reflectors.reserve(kmax);

  int steps = 0;
  for (int k = 0; k < kmax; ++k) {
    // pivot: remaining column with the largest tail norm
    int jbest = k;
    double best = -1.0;
    for (int j = k; j < m; ++j) {
      double cn = 0.0;
      for (int i = k; i < n; ++i) cn += std::norm(b(i, j));
      if (cn > best) {
        best = cn;
        jbest = j;
      }
    }
    if (jbest != k)
      for (int i = 0; i < n; ++i) std::swap(b(i, k), b(i, jbest));

    double xnorm = 0.0;
    for (int i = k; i < n; ++i) xnorm += std::norm(b(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm <= 1e-300) break;  // remaining block is zero

    const cplx x0 = b(k, k);
    const cplx alpha =
        (std::abs(x0) == 0.0) ? cplx(-xnorm, 0.0) : -(x0 / std::abs(x0)) * xnorm;
    cvec u(n, cplx(0.0, 0.0));
    double unorm = 0.0;
    for (int i = k; i < n; ++i) {
      u[i] = b(i, k);
      if (i == k) u[i] -= alpha;
      unorm += std::norm(u[i]);
    }
    unorm = std::sqrt(unorm);
    if (unorm > 1e-300) {
      for (int i = k; i < n; ++i) u[i] /= unorm;
      for (int j = k; j < m; ++j) {
        cplx w = 0.0;
        for (int i = k; i < n; ++i) w += std::conj(u[i]) * b(i, j);
        w *= 2.0;
        for (int i = k; i < n; ++i) b(i, j) -= u[i] * w;
      }
      reflectors.push_back(std::move(u));
    } else {
      reflectors.emplace_back();  // identity step
    }
    b(k, k) = alpha;
    for (int i = k + 1; i < n; ++i) b(i, k) = 0.0;
    steps = k + 1;
  }

  int rank = steps;
  for (int k = 0; k < steps; ++k) {
    if (std::abs(b(k, k)) <= rank_tol * scale) {
      rank = k;
      break;
    }
  }

  const int dim = n - rank;
  OrthonormalBasis basis;
  basis.vectors = CMat(n, dim);
  if (dim == 0) return basis;

  // Q = H_1 H_2 ... H_r: apply reflectors to the identity from the last one
  CMat qfull = CMat::identity(n);
  for (int k = static_cast<int>(reflectors.size()) - 1; k >= 0; --k) {
    const cvec& u = reflectors[k];
    if (u.empty()) continue;
    for (int c = 0; c < n; ++c) {
      cplx w = 0.0;
      for (int i = k; i < n; ++i) w += std::conj(u[i]) * qfull(i, c);
      w *= 2.0;
      for (int i = k; i < n; ++i) qfull(i, c) -= u[i] * w;
    }
  }
  for (int c = 0; c < dim; ++c)
    for (int i = 0; i < n; ++i) basis.vectors(i, c) = qfull(i, rank + c);
  return basis;
}

Mat real_null_space(const Mat& a, double rank_tol) {
  // real data keeps every Householder step real, so the basis is real
  const OrthonormalBasis nb = null_space(CMat::from_real(a), rank_tol);
  Mat out(nb.vectors.rows(), nb.vectors.cols());
  for (int i = 0; i < out.rows(); ++i)
    for (int j = 0; j < out.cols(); ++j) out(i, j) = nb.vectors(i, j).real();
  return out;
}

}  // namespace oscsync
