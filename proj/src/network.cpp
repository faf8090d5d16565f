#include "oscsync/network.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace oscsync {

NetworkSpec::NetworkSpec(CouplingGraph inertial_, CouplingGraph dissipative_,
                         CouplingGraph restorative_, double m0_, double k0_)
    : q(inertial_.node_count()),
      inertial(std::move(inertial_)),
      dissipative(std::move(dissipative_)),
      restorative(std::move(restorative_)),
      m0(m0_),
      k0(k0_) {
  if (dissipative.node_count() != q || restorative.node_count() != q)
    throw dimension_error("NetworkSpec: coupling graphs have different node counts");
  if (!(m0 > 0.0) || !std::isfinite(m0) || !(k0 > 0.0) || !std::isfinite(k0))
    throw std::invalid_argument("NetworkSpec: m0 and k0 must be finite and > 0");
}

Mat NetworkSpec::ma() const {
  Mat m = laplacian(inertial);
  for (int i = 0; i < q; ++i) m(i, i) += m0;
  return m;
}

Mat NetworkSpec::ka() const {
  Mat k = laplacian(restorative);
  for (int i = 0; i < q; ++i) k(i, i) += k0;
  return k;
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::general: return "general";
    case Method::velocity_only: return "velocity_only";
    case Method::position_velocity: return "position_velocity";
    case Method::edge_isolated: return "edge_isolated";
    case Method::accel_velocity: return "accel_velocity";
    case Method::connected_B_sufficient: return "connected_B_sufficient";
  }
  return "?";
}

double sync_epsilon(const CMat& a) { return 1e-8 * (1.0 + a.frobenius()); }

namespace {

Mat symmetrized(const Mat& a) {
  Mat s(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
  return s;
}

// Verdict for a second-eigenvalue test on matrix a (dimension >= 2).
SyncVerdict verdict_from_matrix(const CMat& a, Method method, bool parameter_dependent) {
  Spectrum spec = complex_eigenvalues(a);
  const double eps = sync_epsilon(a);
  const cplx l2 = spec.at(2);
  const double margin = (std::abs(l2.real()) <= eps) ? 0.0 : l2.real();
  return {margin > 0.0, std::move(spec), l2, margin, method, parameter_dependent};
}

// q = 1: Definition quantifies over pairs, so the empty conjunction holds.
SyncVerdict trivial_verdict(const CMat& a, Method method) {
  Spectrum spec = complex_eigenvalues(a);
  return {true,
          std::move(spec),
          std::nullopt,
          std::numeric_limits<double>::infinity(),
          method,
          false};
}

CMat complex_combination(const Mat& re, const Mat& im) {
  CMat c(re.rows(), re.cols());
  for (int i = 0; i < re.rows(); ++i)
    for (int j = 0; j < re.cols(); ++j) c(i, j) = cplx(re(i, j), im(i, j));
  return c;
}

}  // namespace

ComplexLaplacian build_lambda(const NetworkSpec& net) {
  const int q = net.q;
  const Mat mis = spd_inv_sqrt(net.ma());
  const Mat b = laplacian(net.dissipative);
  const Mat d = symmetrized(mis * b * mis);
  const Mat r = symmetrized(mis * net.ka() * mis);
  const double w0sq = net.omega0_sq();

  CMat lambda(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      lambda(i, j) = cplx(d(i, j), r(i, j) - (i == j ? w0sq : 0.0));
  return {std::move(lambda), d, r, w0sq};
}

SyncVerdict test_general(const NetworkSpec& net) {
  const ComplexLaplacian cl = build_lambda(net);
  const bool pd = !are_edge_isolated(net.inertial, net.restorative);
  if (net.q == 1) return trivial_verdict(cl.lambda, Method::general);
  SyncVerdict v = verdict_from_matrix(cl.lambda, Method::general, pd);
  return v;
}

SyncVerdict test_velocity_only(const CouplingGraph& b, double m0, double k0) {
  if (!(m0 > 0.0) || !(k0 > 0.0))
    throw std::invalid_argument("test_velocity_only: m0, k0 must be > 0");
  const CMat lb = CMat::from_real(laplacian(b));
  if (b.node_count() == 1) return trivial_verdict(lb, Method::velocity_only);
  return verdict_from_matrix(lb, Method::velocity_only, false);
}

SyncVerdict test_position_velocity(const CouplingGraph& b, const CouplingGraph& k,
                                   double m0, double k0) {
  if (b.node_count() != k.node_count())
    throw dimension_error("test_position_velocity: graphs have different node counts");
  if (!(m0 > 0.0) || !(k0 > 0.0))
    throw std::invalid_argument("test_position_velocity: m0, k0 must be > 0");
  const CMat a = complex_combination(laplacian(b), laplacian(k));
  if (b.node_count() == 1) return trivial_verdict(a, Method::position_velocity);
  return verdict_from_matrix(a, Method::position_velocity, false);
}

std::optional<SyncVerdict> test_connected_B(const NetworkSpec& net) {
  if (!is_connected(net.dissipative)) return std::nullopt;
  const CMat lb = CMat::from_real(laplacian(net.dissipative));
  if (net.q == 1) return trivial_verdict(lb, Method::connected_B_sufficient);
  SyncVerdict v = verdict_from_matrix(lb, Method::connected_B_sufficient, false);
  v.synchronizes = true;  // by connectivity, decided combinatorially
  return v;
}

SyncVerdict test_edge_isolated(const NetworkSpec& net) {
  if (!are_edge_isolated(net.inertial, net.restorative))
    throw structural_error("test_edge_isolated: graphs not edge-isolated");
  const Mat km = laplacian(net.restorative) - laplacian(net.inertial);
  const CMat gamma = complex_combination(laplacian(net.dissipative), km);
  if (net.q == 1) return trivial_verdict(gamma, Method::edge_isolated);
  return verdict_from_matrix(gamma, Method::edge_isolated, false);
}

SyncVerdict test_accel_velocity(const CouplingGraph& m, const CouplingGraph& b,
                                double m0, double k0) {
  if (m.node_count() != b.node_count())
    throw dimension_error("test_accel_velocity: graphs have different node counts");
  if (!(m0 > 0.0) || !(k0 > 0.0))
    throw std::invalid_argument("test_accel_velocity: m0, k0 must be > 0");
  const Mat neg_m = -1.0 * laplacian(m);
  const CMat a = complex_combination(laplacian(b), neg_m);
  if (m.node_count() == 1) return trivial_verdict(a, Method::accel_velocity);
  return verdict_from_matrix(a, Method::accel_velocity, false);
}

// ---------------------------------------------------------------------------
// Kernel oracle: intersect pencil eigenspaces with null(B).
// ---------------------------------------------------------------------------

namespace {

// Two modified Gram-Schmidt passes; columns assumed linearly independent.
void orthonormalize_columns(Mat& x) {
  const int n = x.rows(), c = x.cols();
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < c; ++j) {
      for (int k = 0; k < j; ++k) {
        double d = 0.0;
        for (int i = 0; i < n; ++i) d += x(i, k) * x(i, j);
        for (int i = 0; i < n; ++i) x(i, j) -= d * x(i, k);
      }
      double nrm = 0.0;
      for (int i = 0; i < n; ++i) nrm += x(i, j) * x(i, j);
      nrm = std::sqrt(nrm);
      for (int i = 0; i < n; ++i) x(i, j) /= nrm;
    }
  }
}

// Intersection of two subspaces given orthonormal column bases: the joint
// null space of the stacked projector complements.
Mat intersect_subspaces(const Mat& u, const Mat& v) {
  const int n = u.rows();
  const Mat pu = Mat::identity(n) - u * u.transpose();
  const Mat pv = Mat::identity(n) - v * v.transpose();
  Mat stacked(2 * n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      stacked(i, j) = pu(i, j);
      stacked(n + i, j) = pv(i, j);
    }
  return real_null_space(stacked);
}

rvec column_of(const Mat& a, int j) {
  rvec c(a.rows());
  for (int i = 0; i < a.rows(); ++i) c[i] = a(i, j);
  return c;
}

}  // namespace

std::optional<KernelWitness> kernel_oracle(const NetworkSpec& net) {
  const int q = net.q;
  if (q == 1) return std::nullopt;

  const Mat ma = net.ma();
  const Mat ka = net.ka();
  const Mat b = laplacian(net.dissipative);
  const Mat nb = real_null_space(b);
  if (nb.cols() <= 1) return std::nullopt;  // null(B) = span{1}: connected B

  const Mat mis = spd_inv_sqrt(ma);
  const Mat msqrt = ma * mis;  // Ma^{1/2}
  const Mat r = symmetrized(mis * ka * mis);
  const SymEig pencil = sym_eig(r);
  const double cluster_tol = 1e-7 * scale_of(r);

  rvec ones_unit(q, 1.0 / std::sqrt(static_cast<double>(q)));

  int i = 0;
  while (i < q) {
    int j = i;
    while (j + 1 < q && pencil.values[j + 1] - pencil.values[i] <= cluster_tol) ++j;

    // candidate xi-space of this eigenvalue cluster
    Mat x(q, j - i + 1);
    for (int c = 0; c <= j - i; ++c) {
      const rvec eta = column_of(pencil.vectors, i + c);
      const rvec xi = mis * eta;
      for (int row = 0; row < q; ++row) x(row, c) = xi[row];
    }
    orthonormalize_columns(x);

    const Mat w = intersect_subspaces(x, nb);
    i = j + 1;
    if (w.cols() == 0) continue;

    // residual of the consensus direction against the intersection
    rvec coeff(w.cols());
    for (int c = 0; c < w.cols(); ++c) coeff[c] = dot(column_of(w, c), ones_unit);
    rvec proj(q, 0.0);
    for (int c = 0; c < w.cols(); ++c)
      for (int row = 0; row < q; ++row) proj[row] += w(row, c) * coeff[c];
    double rcons = 0.0;
    for (int row = 0; row < q; ++row) {
      const double dlt = ones_unit[row] - proj[row];
      rcons += dlt * dlt;
    }
    rcons = std::sqrt(rcons);

    rvec cand;
    if (rcons <= 1e-8) {
      // consensus sits inside the intersection: search its orthogonal
      // complement within the same subspace
      std::vector<rvec> kept;
      for (int c = 0; c < w.cols(); ++c) {
        rvec wc = column_of(w, c);
        const double along = dot(ones_unit, wc);
        for (int row = 0; row < q; ++row) wc[row] -= along * ones_unit[row];
        for (const rvec& u : kept) {
          const double d = dot(u, wc);
          for (int row = 0; row < q; ++row) wc[row] -= d * u[row];
        }
        const double nrm = norm2(wc);
        if (nrm > 1e-6) {
          for (double& v : wc) v /= nrm;
          kept.push_back(std::move(wc));
        }
      }
      if (!kept.empty()) cand = kept.front();
    } else {
      for (int c = 0; c < w.cols() && cand.empty(); ++c) {
        rvec wc = column_of(w, c);
        const double along = dot(ones_unit, wc);
        rvec perp = wc;
        for (int row = 0; row < q; ++row) perp[row] -= along * ones_unit[row];
        if (norm2(perp) > 1e-6) cand = wc;
      }
    }
    if (cand.empty()) continue;

    const double cn = norm2(cand);
    rvec xi = cand;
    for (double& v : xi) v /= cn;

    // frequency from the Rayleigh quotient in eta coordinates
    rvec eta = msqrt * xi;
    const double en = norm2(eta);
    for (double& v : eta) v /= en;
    const double om2 = dot(eta, r * eta);
    if (!(om2 > 0.0)) continue;
    const double omega = std::sqrt(om2);

    Mat pencil_mat = ka - om2 * ma;
    const double residual_pencil = norm2(pencil_mat * xi);
    const double residual_b = norm2(b * xi);
    rvec perp = xi;
    const double along = dot(ones_unit, xi);
    for (int row = 0; row < q; ++row) perp[row] -= along * ones_unit[row];
    const double dist = norm2(perp);

    if (residual_pencil > 1e-8 * scale_of(pencil_mat)) continue;
    if (residual_b > 1e-8 * scale_of(b)) continue;
    if (dist < 1e-6) continue;

    KernelWitness witness;
    witness.omega = omega;
    witness.xi.assign(xi.begin(), xi.end());
    witness.mu = om2 - net.omega0_sq();
    witness.residual_pencil = residual_pencil;
    witness.residual_b = residual_b;
    witness.distance_from_consensus = dist;
    return witness;
  }
  return std::nullopt;
}

StructureInfo structure_of(const NetworkSpec& net) {
  StructureInfo st;
  st.m_connected = is_connected(net.inertial);
  st.b_connected = is_connected(net.dissipative);
  st.k_connected = is_connected(net.restorative);
  st.union_connected =
      is_connected(graph_union(graph_union(net.inertial, net.dissipative), net.restorative));
  st.m_k_edge_isolated = are_edge_isolated(net.inertial, net.restorative);
  return st;
}

AnalysisReport analyze(const NetworkSpec& net) {
  const StructureInfo st = structure_of(net);
  std::vector<SyncVerdict> verdicts;
  verdicts.push_back(test_general(net));
  const bool general_sync = verdicts.front().synchronizes;

  if (st.b_connected) {
    std::optional<SyncVerdict> v = test_connected_B(net);
    if (!v) throw consistency_error("analyze: connectivity test disagreed with itself");
    if (!general_sync)
      throw consistency_error("analyze: connected B but general test reports nonsync");
    verdicts.push_back(std::move(*v));
  }
  if (st.m_k_edge_isolated) {
    SyncVerdict v = test_edge_isolated(net);
    if (v.synchronizes != general_sync)
      throw consistency_error("analyze: edge-isolated test disagrees with general test");
    verdicts.push_back(std::move(v));
  }
  if (!net.inertial.has_edges()) {
    SyncVerdict v =
        test_position_velocity(net.dissipative, net.restorative, net.m0, net.k0);
    if (v.synchronizes != general_sync)
      throw consistency_error("analyze: position-velocity test disagrees with general test");
    verdicts.push_back(std::move(v));
    if (!net.restorative.has_edges()) {
      SyncVerdict v1 = test_velocity_only(net.dissipative, net.m0, net.k0);
      if (v1.synchronizes != general_sync)
        throw consistency_error("analyze: velocity-only test disagrees with general test");
      verdicts.push_back(std::move(v1));
    }
  }
  if (!net.restorative.has_edges()) {
    SyncVerdict v = test_accel_velocity(net.inertial, net.dissipative, net.m0, net.k0);
    if (v.synchronizes != general_sync)
      throw consistency_error("analyze: accel-velocity test disagrees with general test");
    verdicts.push_back(std::move(v));
  }

  std::optional<KernelWitness> witness = kernel_oracle(net);
  if (witness.has_value() == general_sync)
    throw consistency_error("analyze: kernel oracle disagrees with general test");

  Spectrum spectrum = verdicts.front().spectrum;
  return {net, st, std::move(verdicts), std::move(spectrum), std::move(witness)};
}

std::pair<Mat, Mat> make_pq_split_instance(std::uint64_t seed, int q) {
  if (q < 2) throw std::invalid_argument("make_pq_split_instance: q must be >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_r(1, q - 1);
  const int r = pick_r(rng);  // P block covers indices [0, r)
  std::uniform_int_distribution<int> pick_s(r, q - 1);
  const int s = pick_s(rng);  // Q block covers indices [s, q)

  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  auto random_psd_block = [&](int size) {
    Mat a(size, size);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) a(i, j) = entry(rng);
    return a.transpose() * a;
  };

  Mat p(q, q), qq(q, q);
  const Mat pb = random_psd_block(r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) p(i, j) = pb(i, j);
  const int qsize = q - s;
  const Mat qb = random_psd_block(qsize);
  for (int i = 0; i < qsize; ++i)
    for (int j = 0; j < qsize; ++j) qq(s + i, s + j) = qb(i, j);
  return {std::move(p), std::move(qq)};
}

}  // namespace oscsync
