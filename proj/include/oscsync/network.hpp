#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "oscsync/eig.hpp"
#include "oscsync/graph.hpp"

namespace oscsync {

// A network of q identical harmonic oscillators (inertia m0, stiffness k0)
// coupled through relative acceleration, velocity, and position over three
// independent graphs.
struct NetworkSpec {
  int q;
  CouplingGraph inertial;     // m_ij
  CouplingGraph dissipative;  // b_ij
  CouplingGraph restorative;  // k_ij
  double m0;
  double k0;

  NetworkSpec(CouplingGraph inertial_, CouplingGraph dissipative_,
              CouplingGraph restorative_, double m0_, double k0_);

  Mat ma() const;  // lap(m_ij) + m0 I
  Mat ka() const;  // lap(k_ij) + k0 I
  double omega0_sq() const { return k0 / m0; }
};

// Lambda = Ma^{-1/2} (B + j(K + k0 I)) Ma^{-1/2} - j (k0/m0) I, together with
// its factors D = Ma^{-1/2} B Ma^{-1/2} and R = Ma^{-1/2} Ka Ma^{-1/2}.
// Zero row sums, complex symmetric, spectrum in the closed right half-plane.
struct ComplexLaplacian {
  CMat lambda;
  Mat d;
  Mat r;
  double omega0_sq;
};

ComplexLaplacian build_lambda(const NetworkSpec& net);

enum class Method {
  general,
  velocity_only,
  position_velocity,
  edge_isolated,
  accel_velocity,
  connected_B_sufficient,
};
std::string_view method_name(Method m);

// The margin is the real part of lambda_2 after zero classification: values
// within eps_sync of the imaginary axis are reported as exactly 0, so
// synchronizes <=> margin > 0 for the if-and-only-if methods. The raw value
// stays available in lambda2. q = 1 verdicts are vacuously synchronized and
// carry no lambda2.
struct SyncVerdict {
  bool synchronizes;
  Spectrum spectrum;
  std::optional<cplx> lambda2;
  double margin;
  Method method;
  bool parameter_dependent;
};

// eps_sync = 1e-8 * (1 + ||A||_F): the zero-classification band around the
// imaginary axis for second-eigenvalue tests.
double sync_epsilon(const CMat& a);

// Second-eigenvalue test on the full complex Laplacian; applies always.
SyncVerdict test_general(const NetworkSpec& net);

// Re lambda_2(lap(b)) > 0; the special case with no inertial or restorative
// coupling.
SyncVerdict test_velocity_only(const CouplingGraph& b, double m0, double k0);

// Re lambda_2(B + jK) > 0; the special case with no inertial coupling.
SyncVerdict test_position_velocity(const CouplingGraph& b, const CouplingGraph& k,
                                   double m0, double k0);

// Sufficient only: a connected dissipative graph forces synchronization.
// Disengaged (nullopt) when B is not connected; callers fall back to
// test_general.
std::optional<SyncVerdict> test_connected_B(const NetworkSpec& net);

// Re lambda_2(B + j(K - M)) > 0, valid when the inertial and restorative
// graphs are edge-isolated; the verdict is then independent of (m0, k0).
// Throws structural_error when the precondition fails.
SyncVerdict test_edge_isolated(const NetworkSpec& net);

// Re lambda_2(B - jM) > 0; the special case with no restorative coupling.
SyncVerdict test_accel_velocity(const CouplingGraph& m, const CouplingGraph& b,
                                double m0, double k0);

// A certified non-synchronous mode: x(t) = Re(e^{j omega t} xi) solves the
// network dynamics with xi outside the consensus line.
struct KernelWitness {
  double omega;  // rad/s, > 0
  cvec xi;       // unit norm
  double mu;     // omega^2 - omega0^2
  double residual_pencil;
  double residual_b;
  double distance_from_consensus;
};

// Searches the eigenspaces of the symmetric-definite pencil (Ka, Ma) for a
// vector that also lies in null(B) but not on the consensus line. Returns a
// witness iff one exists; emptiness is equivalent to the test_general verdict.
std::optional<KernelWitness> kernel_oracle(const NetworkSpec& net);

struct StructureInfo {
  bool m_connected;
  bool b_connected;
  bool k_connected;
  bool union_connected;
  bool m_k_edge_isolated;
};

StructureInfo structure_of(const NetworkSpec& net);

struct AnalysisReport {
  NetworkSpec network;
  StructureInfo structure;
  std::vector<SyncVerdict> verdicts;  // general always first
  Spectrum spectrum;                  // of Lambda
  std::optional<KernelWitness> witness;

  bool synchronizes() const { return verdicts.front().synchronizes; }
};

// Runs every applicable test plus the kernel oracle, asserting mutual
// consistency (throws consistency_error on disagreement, which indicates a
// kernel or tolerance bug).
AnalysisReport analyze(const NetworkSpec& net);

// Random PSD pair (P, Q) with PQ = 0, built from PSD blocks on disjoint index
// ranges. Generator for the eigenvalue-splitting property tests.
std::pair<Mat, Mat> make_pq_split_instance(std::uint64_t seed, int q);

}  // namespace oscsync
