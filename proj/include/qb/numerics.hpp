#pragma once
// Dense complex Hermitian linear algebra: eigendecomposition, unitary
// propagation, overlaps. Everything here is a pure function of immutable
// inputs and safe to call concurrently.

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace qb {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotHermitian : Error { using Error::Error; };
struct DimMismatch : Error { using Error::Error; };
struct ZeroField : Error { using Error::Error; };
struct NonPositiveCoupling : Error { using Error::Error; };
struct BadOrdering : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct BadSubset : Error { using Error::Error; };
struct PairNotOrthonormal : Error { using Error::Error; };
struct Degenerate : Error { using Error::Error; };
struct QslViolation : Error { using Error::Error; };
struct NotFullyCharging : Error { using Error::Error; };
struct NoEmbedding : Error { using Error::Error; };

// Single knob for every numerical tolerance used across the library.
struct Tolerances {
  double hermitian = 1e-12;       // conjugate symmetry, relative to max |entry|
  double state_norm = 1e-10;      // quantum-state normalisation
  double eig_residual = 1e-10;    // ||H v - E v|| <= eig_residual * ||H||
  double orthonormality = 1e-10;  // eigenvector pairwise orthonormality
  double gauge_zero = 1e-9;       // "first nonzero" threshold for phase gauge
  double commutator = 1e-12;      // SU(2) algebra check
  double coeff_norm = 1e-9;       // sum_j |p_j(t)|^2 = 1
  double mirror = 1e-12;          // b_k = b_{d+1-k} coupling symmetry
  double full_charging = 1e-9;    // 1 - |<u_d|psi(T)>| acceptance
  double time_refine = 1e-12;     // charging-time refinement in t
  double qsl_slack = 1e-9;        // eta may not exceed 1 by more than this
  double degenerate = 1e-12;      // QSL denominators below this are degenerate
  double pair_orthonormal = 1e-12;
  double purity = 1e-9;           // reduced state counts as pure above 1 - purity
  double spectrum_integer = 1e-8; // spectrum-condition integer residue
  int oracle_cap = 14;            // largest N the exact oracle accepts
};
inline constexpr Tolerances kTol{};

bool is_hermitian(const ComplexMatrix& h, double tol = kTol.hermitian);

// Eigenvalues ascending; eigenvector columns carry the phase gauge that the
// first component above the gauge threshold is real positive.
struct EigenSystem {
  Eigen::VectorXd values;
  ComplexMatrix vectors;
};

EigenSystem hermitian_eig(const ComplexMatrix& h, const Tolerances& tol = kTol);

// exp(-iHt) applied through a cached eigendecomposition; build once, evaluate
// at many times.
class Propagator {
 public:
  explicit Propagator(const ComplexMatrix& h, const Tolerances& tol = kTol);

  ComplexVector state_at(const ComplexVector& psi0, double t) const;
  double min_energy() const { return es_.values(0); }
  double max_energy() const { return es_.values(es_.values.size() - 1); }
  double spectral_width() const { return max_energy() - min_energy(); }
  const EigenSystem& eigensystem() const { return es_; }

 private:
  EigenSystem es_;
};

ComplexVector evolve(const ComplexMatrix& h, const ComplexVector& psi, double t,
                     const Tolerances& tol = kTol);

// <a|b>, conjugate-linear in the first argument.
Complex overlap(const ComplexVector& a, const ComplexVector& b);

}  // namespace qb
