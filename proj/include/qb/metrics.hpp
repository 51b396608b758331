#pragma once
// Quantum-speed-limit bound, charging time and rate, the conjectured
// depth floor ceil(N eta^2), and stored work.

#include "qb/schemes.hpp"

#include <cstdint>
#include <functional>

namespace qb {

// Both QSL terms evaluated on the initial state. The Margolus-Levitin term
// is taken against the ground energy (<H> - E_min), so schemes written with
// a zero diagonal keep a meaningful bound; reports label this convention
// "ml_convention: ground-shifted".
struct QslBreakdown {
  double mt_term = 0.0;  // pi / (2 dH)
  double ml_term = 0.0;  // pi / (2 (<H> - E_min))
  double tau = 0.0;      // max of the two
};

QslBreakdown qsl_tau(const ComplexMatrix& h, const ComplexVector& psi0);
QslBreakdown qsl_tau(const RealizedScheme& scheme);

struct RateResult {
  double charge_time = 0.0;
  double tau = 0.0;
  double eta = 0.0;
  double gamma = 0.0;  // sqrt(N) * eta
};

// Earliest time at which the target-state weight reaches 1 - tol; grid scan
// with step <= pi / (8 (E_max - E_min)) plus golden-section refinement.
// t_max <= 0 selects the default window 32 pi / (E_max - E_min).
double charging_time(const RealizedScheme& scheme, double t_max = 0.0,
                     double tol = kTol.full_charging);

// eta = tau / T; throws QslViolation when eta exceeds 1 beyond the slack.
double charging_rate(double tau, double t);

RateResult make_rate_result(int n, double tau, double t);

// ceil(N eta^2), guarded against float noise just above an integer.
long conjecture_rhs(long n, double eta);

// <sum_j sigma^z_j> + N on a full-register state.
double stored_work(const ComplexVector& psi_full, int n);

// Exact value of eta^2 for a parallel scheme: 1 / sum_j (1 + 4 k_j)^2.
struct RationalRate {
  std::int64_t num = 1;
  std::int64_t den = 1;
};

RationalRate parallel_eta_squared(const ParallelSpec& spec);

// ---- scalar maximisation helpers used by the scan-based operations ----------

struct ScanMax {
  double t = 0.0;
  double value = 0.0;
};

// Golden-section maximisation of a unimodal bracket down to width t_tol.
ScanMax golden_max(const std::function<double(double)>& f, double lo, double hi,
                   double t_tol = kTol.time_refine);

// Dense scan over [lo, hi] followed by refinement around the best point.
ScanMax scan_max(const std::function<double(double)>& f, double lo, double hi,
                 int points, double t_tol = kTol.time_refine);

}  // namespace qb
