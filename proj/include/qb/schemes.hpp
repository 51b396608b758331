#pragma once
// Charging-scheme constructors: SU(2) ladder schemes, fully parallel
// product schemes, tridiagonal transfer Hamiltonians (with the d=3 analytic
// family), and the hybrid k-body block schemes, plus the closed-form
// evolutions they admit.

#include "qb/numerics.hpp"

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qb {

// Spin-d/2 generators on the (d+1)-dimensional ladder, basis ordered from
// the all-down end (j=0) to the all-up end (j=d). Off-diagonals of jx are
// f_k/2 with f_k = sqrt(k(d-k+1)); jz is diag(-d/2 ... d/2).
struct SpinGenerators {
  int d = 0;
  ComplexMatrix jx, jy, jz;
};

SpinGenerators su2_generators(int d);

// ---- scheme specifications ------------------------------------------------

struct Su2Spec {
  int d = 1;
  double alpha1 = 1.0;
  double alpha2 = 0.0;
  double alpha3 = 0.0;
  int n = 0;  // battery cells; 0 means "same as d"
};

struct ParallelSpec {
  int n = 1;
  std::vector<int> k;  // winding integers, one per cell, k_j >= 0
  double alpha_base = 1.0;
  double theta = 0.0;
};

struct TridiagSpec {
  std::vector<double> b;  // couplings b_1..b_d, all positive
  int n = 0;
};

struct Tridiag3Spec {
  double lambda1 = 3.0;
  double lambda2 = 1.0;
  int n = 0;
};

struct HybridSpec {
  int n = 1;
  int d = 1;
  double theta = 0.0;
};

using SchemeSpec =
    std::variant<Su2Spec, ParallelSpec, TridiagSpec, Tridiag3Spec, HybridSpec>;

std::string descriptor(const SchemeSpec& spec);

// ---- realized schemes -------------------------------------------------------

// A charging Hamiltonian ready for metrics and depth certification.
//  - ladder schemes (SU(2), tridiagonal): h is the (d+1)x(d+1) matrix on the
//    charging subspace, u_0 = e_0, u_d = e_d;
//  - hybrid schemes: h is the full 2^n-register matrix and ladder_h the
//    equivalent restriction to the u'_j ladder;
//  - parallel schemes: product structure only, per-cell 2x2 factors in
//    local_h, never a 2^n matrix.
struct RealizedScheme {
  SchemeSpec spec;
  int n = 0;  // battery cells
  int d = 0;  // ladder length (u_0..u_d)
  ComplexMatrix h;
  std::optional<ComplexMatrix> ladder_h;
  std::optional<ComplexMatrix> embedding;  // 2^n x (d+1), columns u_0..u_d
  std::vector<Eigen::Matrix2cd> local_h;   // parallel only
  std::vector<double> alphas;              // parallel couplings
  double theta = 0.0;
  double alpha_norm = 0.0;  // |alpha| for SU(2)/hybrid ladders
  bool fully_charging_capable = false;
  bool mirror_symmetric = false;
  bool product_structure = false;

  // Ladder matrix driving u_0 -> u_d; throws for parallel schemes.
  const ComplexMatrix& ladder() const;
  ComplexVector initial_state() const;  // u_0 in the ladder representation
  ComplexVector target_state() const;   // u_d in the ladder representation
  std::string name() const { return descriptor(spec); }
};

RealizedScheme build_su2(const Su2Spec& spec);

// Ladder coefficients p_0..p_d of the SU(2) evolution, with the constant
// energy offset omitted (a global phase relative to the realized matrix).
std::vector<Complex> su2_coefficients(int d, double alpha_norm, double theta,
                                      double t);

RealizedScheme build_parallel(const ParallelSpec& spec);

// Per-cell amplitude pairs (a_j, b_j) with a_j = cos(alpha_j t / 2) and
// b_j = -i e^{-i theta} sin(alpha_j t / 2).
std::vector<std::pair<Complex, Complex>> parallel_amplitudes(
    const ParallelSpec& spec, double t);

RealizedScheme build_tridiag(const TridiagSpec& spec);
RealizedScheme build_tridiag3(double lambda1, double lambda2, int n = 0);

// Closed-form four-component state of the mirror-symmetric d=3 family.
Eigen::Vector4cd tridiag3_analytic_state(double lambda1, double lambda2,
                                         double t);

// One admissible (lambda1/lambda2, T) pair of the d=3 family. k is kept as
// an exact reduced fraction; lambda2 is canonically 1.
struct AdmissibleRatio {
  int case_id = 1;  // 1 = case (i), 2 = case (ii)
  int m = 0;
  int n = 0;
  long k_num = 0;
  long k_den = 1;
  double lambda1 = 0.0;
  double lambda2 = 1.0;
  double charge_time = 0.0;
  std::string case_tag() const { return case_id == 1 ? "i" : "ii"; }
  double ratio() const { return double(k_num) / double(k_den); }
};

std::vector<AdmissibleRatio> tridiag3_admissible_ratios(int m_max, int n_max);

struct SpectrumCondition {
  bool holds = false;
  std::vector<long> m;  // integers m_k, when the condition holds
  double phi0 = 0.0;
};

// E_k T = (2 m_k - k) pi + phi0 test with phi0 fixed by m_0 = 0.
SpectrumCondition spectrum_condition_check(const Eigen::VectorXd& eigs, double t,
                                           double tol = kTol.spectrum_integer);

// ---- hybrid (k-body block) schemes ------------------------------------------

// Contiguous block layout (start, size) used by the hybrid basis and
// Hamiltonian: d-1 blocks of size ceil(n/d) followed by the remainder block
// when that leaves a nonempty remainder; otherwise the balanced partition
// with the same maximal block size ceil(n/d).
std::vector<std::pair<int, int>> hybrid_blocks(int n, int d);

ComplexVector hybrid_basis(int n, int d, int j, int cap = kTol.oracle_cap);
ComplexVector hybrid_evolved(int n, int d, double theta, double alpha_norm,
                             double t, int cap = kTol.oracle_cap);
ComplexMatrix hybrid_hamiltonian(int n, int d, int cap = kTol.oracle_cap);

RealizedScheme build_hybrid(const HybridSpec& spec, int cap = kTol.oracle_cap);

// ---- shared utilities --------------------------------------------------------

bool check_full_charging(const RealizedScheme& scheme, double t,
                         double tol = kTol.full_charging);

// Attaches the symmetric (Dicke) register embedding u_j = |n, j ups>; only
// defined when the ladder spans the whole register (d == n).
void attach_dicke_embedding(RealizedScheme& scheme, int cap = kTol.oracle_cap);

// Full-register state of an embedded ladder scheme at time t.
ComplexVector embedded_state(const RealizedScheme& scheme,
                             const ComplexVector& ladder_state);

struct CoefficientTrace {
  std::vector<double> times;
  std::vector<std::vector<Complex>> coeffs;  // p_0..p_d at each time
};

CoefficientTrace coefficient_trace(const RealizedScheme& scheme,
                                   const std::vector<double>& times);

double binomial(int n, int k);

}  // namespace qb
