#pragma once
// Entanglement-depth certification: the locally-orthonormal-pair lower bound,
// its maximisation along charging trajectories, and an exact small-register
// oracle for depth and separability built on reduced-state purities.

#include "qb/metrics.hpp"
#include "qb/schemes.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qb {

// Depth lower bound from the pair-coefficient product |p0 pbar|:
// ceil(N / floor(log2(1 / product))), clamped so the result is always a
// valid bound in [1, N].
int thm1_bound(int n, double product);

struct PairCoefficients {
  Complex p0;
  Complex pbar;
  double product = 0.0;  // |p0 * pbar|
};

// A locally orthonormal pair: per-qubit orthonormal 2-vectors. The default
// z-pair (all-down vs all-up) matches the initial and target states of every
// fully charging scheme.
struct LocalPair {
  std::vector<Eigen::Vector2cd> v0;
  std::vector<Eigen::Vector2cd> vbar;
  static LocalPair z_pair(int n);
};

PairCoefficients pair_product(const ComplexVector& psi_full, const LocalPair& pair,
                              double tol = kTol.pair_orthonormal);

// Ladder representation shortcut: u_0 and u_d amplitudes.
PairCoefficients ladder_pair_product(const ComplexVector& psi_ladder);

struct DepthCertificate {
  int bound = 1;
  double product = 0.0;
  double t_star = 0.0;
  int n = 0;
};

// Maximises |p0(t) p_d(t)| over [0, T] (grid scan + golden refinement) and
// applies thm1_bound at the maximum; valid because the bound is
// nondecreasing in the product.
DepthCertificate max_pair_product(const RealizedScheme& scheme, int grid = 4096);

// Tr(rho_S^2) for the reduced state on the given qubit subset.
double reduced_purity(const ComplexVector& psi_full, const std::vector<int>& subset,
                      int cap = kTol.oracle_cap);

struct OracleResult {
  int depth = 1;
  int separability = 1;
  std::vector<uint32_t> witness;  // disjoint qubit masks covering the register

  std::vector<std::vector<int>> witness_blocks() const;
};

// Exact entanglement depth and separability of a pure register state:
// marks every subset whose reduced state is pure to tolerance, then runs a
// bitmask DP over partitions into pure subsets. Depth is the minimum over
// partitions of the largest block; separability the maximum block count.
// The witness is the depth-attaining partition with the lexicographically
// smallest mask sequence.
OracleResult exact_depth(const ComplexVector& psi_full, double tol = kTol.purity,
                         int cap = kTol.oracle_cap);

enum class DepthMode { lower_bound, exact };

// Scheme-level depth: pair-bound certificate (lower_bound) or the grid
// maximum of the exact oracle on embedded states (exact).
int resource_depth(const RealizedScheme& scheme, int grid = 64,
                   double tol = kTol.purity, DepthMode mode = DepthMode::lower_bound);

// Full-register state of a scheme at time t; requires an embedding or
// product structure. Used by the exact-depth route and the work audit.
ComplexVector register_state(const RealizedScheme& scheme, double t);

// ---- state file format -------------------------------------------------------
// {"n_qubits": N, "amplitudes": [[re, im], ...]} with little-endian qubit
// indexing; amplitudes has length 2^N.

ComplexVector read_state_json(const std::string& path);
void write_state_json(const std::string& path, const ComplexVector& psi);

}  // namespace qb
