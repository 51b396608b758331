#include "qb/metrics.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace qb {

namespace {

constexpr double kPi = std::numbers::pi;

QslBreakdown breakdown_from_moments(double fluctuation, double mean_above_ground) {
  if (fluctuation < kTol.degenerate || mean_above_ground < kTol.degenerate) {
    throw Degenerate("qsl_tau: initial state is (numerically) an eigenstate");
  }
  QslBreakdown b;
  b.mt_term = 0.5 * kPi / fluctuation;
  b.ml_term = 0.5 * kPi / mean_above_ground;
  b.tau = std::max(b.mt_term, b.ml_term);
  return b;
}

}  // namespace

QslBreakdown qsl_tau(const ComplexMatrix& h, const ComplexVector& psi0) {
  if (h.rows() != psi0.size()) {
    throw DimMismatch("qsl_tau: state dimension does not match Hamiltonian");
  }
  if (!is_hermitian(h)) throw NotHermitian("qsl_tau: Hamiltonian is not Hermitian");
  const ComplexVector hpsi = h * psi0;
  const double mean = overlap(psi0, hpsi).real();
  const double second = hpsi.squaredNorm();
  const double var = std::max(0.0, second - mean * mean);
  const EigenSystem es = hermitian_eig(h);
  return breakdown_from_moments(std::sqrt(var), mean - es.values(0));
}

QslBreakdown qsl_tau(const RealizedScheme& scheme) {
  if (scheme.product_structure) {
    // Independent cells: the moments are sums over per-cell contributions and
    // the ground energy is zero, so no register matrix is ever formed.
    double sum_sq = 0.0, sum = 0.0;
    for (double a : scheme.alphas) {
      sum_sq += a * a;
      sum += a;
    }
    return breakdown_from_moments(0.5 * std::sqrt(sum_sq), 0.5 * sum);
  }
  return qsl_tau(scheme.ladder(), scheme.initial_state());
}

ScanMax golden_max(const std::function<double(double)>& f, double lo, double hi,
                   double t_tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > t_tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  const double t = 0.5 * (a + b);
  return {t, f(t)};
}

ScanMax scan_max(const std::function<double(double)>& f, double lo, double hi,
                 int points, double t_tol) {
  if (points < 2 || !(hi > lo)) throw Error("scan_max: bad scan window");
  const double step = (hi - lo) / (points - 1);
  ScanMax best{lo, f(lo)};
  for (int i = 1; i < points; ++i) {
    const double t = lo + i * step;
    const double v = f(t);
    if (v > best.value) best = {t, v};
  }
  const double a = std::max(lo, best.t - step);
  const double b = std::min(hi, best.t + step);
  const ScanMax refined = golden_max(f, a, b, t_tol);
  return refined.value >= best.value ? refined : best;
}

double charging_time(const RealizedScheme& scheme, double t_max, double tol) {
  if (!scheme.fully_charging_capable) {
    throw NotFullyCharging("charging_time: scheme cannot fully charge (" +
                           scheme.name() + ")");
  }
  if (scheme.product_structure) {
    // Defining charging time of the parallel family: alpha_j T = (1+4k_j) pi.
    const auto& spec = std::get<ParallelSpec>(scheme.spec);
    return kPi * (1.0 + 4.0 * spec.k[0]) / scheme.alphas[0];
  }

  const EigenSystem es = hermitian_eig(scheme.ladder());
  const int dim = int(es.values.size());
  const double width = es.values(dim - 1) - es.values(0);
  if (width < kTol.degenerate) {
    throw NotFullyCharging("charging_time: spectrum has no dynamics");
  }
  if (t_max <= 0.0) t_max = 32.0 * kPi / width;

  // transfer amplitude c(t) = sum_k <ud|E_k><E_k|u0> e^{-i E_k t}
  std::vector<Complex> w(dim);
  for (int k = 0; k < dim; ++k) {
    w[k] = es.vectors(dim - 1, k) * std::conj(es.vectors(0, k));
  }
  auto amplitude = [&](double t) {
    Complex c = 0.0;
    for (int k = 0; k < dim; ++k) c += w[k] * std::exp(Complex(0.0, -es.values(k) * t));
    return c;
  };
  auto weight = [&](double t) { return std::abs(amplitude(t)); };
  // d|c|^2/dt; linear through a peak, so bisection pins t to full precision
  // where golden section would stall on the flat quadratic top
  auto slope = [&](double t) {
    Complex c = 0.0, dc = 0.0;
    for (int k = 0; k < dim; ++k) {
      const Complex phase = std::exp(Complex(0.0, -es.values(k) * t));
      c += w[k] * phase;
      dc += w[k] * phase * Complex(0.0, -es.values(k));
    }
    return 2.0 * (std::conj(c) * dc).real();
  };
  auto refine = [&](double lo, double hi) {
    double g_lo = slope(lo);
    double g_hi = slope(hi);
    if (!(g_lo > 0.0 && g_hi < 0.0)) {
      return golden_max(weight, lo, hi, kTol.time_refine);
    }
    while (hi - lo > kTol.time_refine) {
      const double mid = 0.5 * (lo + hi);
      const double g = slope(mid);
      if (g > 0.0) {
        lo = mid;
        g_lo = g;
      } else {
        hi = mid;
        g_hi = g;
      }
    }
    const double t = 0.5 * (lo + hi);
    return ScanMax{t, weight(t)};
  };

  const double step = kPi / (8.0 * width);
  const int points = int(std::ceil(t_max / step)) + 1;
  std::vector<double> vals(points);
  for (int i = 0; i < points; ++i) vals[i] = weight(std::min(i * step, t_max));

  // earliest local maximum whose refined peak reaches 1 - tol; the 0.05
  // margin covers the largest grid-to-peak sag at this step size
  for (int i = 1; i < points; ++i) {
    const bool local_max =
        vals[i] >= vals[i - 1] && (i + 1 >= points || vals[i] >= vals[i + 1]);
    if (!local_max || vals[i] < 1.0 - tol - 0.05) continue;
    const double lo = (i - 1) * step;
    const double hi = std::min(double(i + 1) * step, t_max);
    const ScanMax peak = refine(lo, hi);
    if (1.0 - peak.value <= tol && peak.t > 0.0) return peak.t;
  }
  throw NotFullyCharging("charging_time: no full-charging maximum within window (" +
                         scheme.name() + ")");
}

double charging_rate(double tau, double t) {
  if (!(tau > 0.0) || !(t > 0.0)) throw Error("charging_rate: need tau, T > 0");
  const double eta = tau / t;
  if (eta > 1.0 + kTol.qsl_slack) {
    throw QslViolation("charging_rate: eta exceeds 1; T fell below the QSL");
  }
  return eta;
}

RateResult make_rate_result(int n, double tau, double t) {
  RateResult r;
  r.charge_time = t;
  r.tau = tau;
  r.eta = charging_rate(tau, t);
  r.gamma = std::sqrt(double(n)) * r.eta;
  return r;
}

long conjecture_rhs(long n, double eta) {
  if (!(eta > 0.0) || eta > 1.0 + kTol.qsl_slack) {
    throw Error("conjecture_rhs: eta must lie in (0, 1]");
  }
  const double value = double(n) * eta * eta;
  // relative guard: eta carries up to ~1e-9 of slack, which must not push
  // an exact integer value over the next ceiling
  const long r = long(std::ceil(value * (1.0 - 4.0e-9) - 1e-9));
  return std::max(1L, r);
}

double stored_work(const ComplexVector& psi_full, int n) {
  if (n < 1 || psi_full.size() != (int64_t(1) << n)) {
    throw DimMismatch("stored_work: state is not a " + std::to_string(n) +
                      "-qubit register");
  }
  double sz = 0.0;
  for (int64_t i = 0; i < psi_full.size(); ++i) {
    const double w = std::norm(psi_full(i));
    sz += w * (2.0 * std::popcount(uint64_t(i)) - n);
  }
  return sz + n;
}

RationalRate parallel_eta_squared(const ParallelSpec& spec) {
  if (spec.n < 1) throw Error("parallel_eta_squared: n must be >= 1");
  std::vector<int> k = spec.k.empty() ? std::vector<int>(spec.n, 0) : spec.k;
  if (int(k.size()) != spec.n) {
    throw Error("parallel_eta_squared: k list length must equal n");
  }
  RationalRate r;
  r.num = 1;
  r.den = 0;
  for (int kj : k) {
    if (kj < 0) throw Error("parallel_eta_squared: winding integers must be >= 0");
    const std::int64_t w = 1 + 4 * std::int64_t(kj);
    r.den += w * w;
  }
  return r;
}

}  // namespace qb
