#include "qb/schemes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace qb {

namespace {

constexpr double kPi = std::numbers::pi;

void require_register_fits(int n, int cap) {
  if (n > cap) {
    throw TooLarge("register of " + std::to_string(n) +
                   " qubits exceeds the oracle cap of " + std::to_string(cap));
  }
}

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * double(n - k + i) / double(i);
  return c;
}

SpinGenerators su2_generators(int d) {
  if (d < 1) throw Error("su2_generators: d must be >= 1");
  const int dim = d + 1;
  SpinGenerators g{d, ComplexMatrix::Zero(dim, dim), ComplexMatrix::Zero(dim, dim),
                   ComplexMatrix::Zero(dim, dim)};
  for (int k = 1; k <= d; ++k) {
    const double f = std::sqrt(double(k) * double(d - k + 1));
    g.jx(k - 1, k) = f / 2.0;
    g.jx(k, k - 1) = f / 2.0;
    g.jy(k - 1, k) = Complex(0.0, f / 2.0);   // -f/(2i)
    g.jy(k, k - 1) = Complex(0.0, -f / 2.0);  // +f/(2i)
  }
  for (int j = 0; j <= d; ++j) g.jz(j, j) = -0.5 * d + j;
  return g;
}

std::string descriptor(const SchemeSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        std::ostringstream os;
        if constexpr (std::is_same_v<T, Su2Spec>) {
          os << "su2(d=" << s.d << ",alpha=(" << fmt(s.alpha1) << "," << fmt(s.alpha2)
             << "," << fmt(s.alpha3) << "))";
        } else if constexpr (std::is_same_v<T, ParallelSpec>) {
          os << "parallel(n=" << s.n << ",k=[" << join_ints(s.k)
             << "],alpha=" << fmt(s.alpha_base) << ")";
        } else if constexpr (std::is_same_v<T, TridiagSpec>) {
          os << "tridiag(b=[";
          for (size_t i = 0; i < s.b.size(); ++i) os << (i ? "," : "") << fmt(s.b[i]);
          os << "])";
        } else if constexpr (std::is_same_v<T, Tridiag3Spec>) {
          os << "tridiag3(lambda1=" << fmt(s.lambda1) << ",lambda2=" << fmt(s.lambda2)
             << ")";
        } else {
          os << "hybrid(n=" << s.n << ",d=" << s.d << ")";
        }
        return os.str();
      },
      spec);
}

const ComplexMatrix& RealizedScheme::ladder() const {
  if (product_structure) {
    throw Error("parallel schemes carry no ladder matrix");
  }
  return ladder_h ? *ladder_h : h;
}

ComplexVector RealizedScheme::initial_state() const {
  ComplexVector v = ComplexVector::Zero(d + 1);
  v(0) = 1.0;
  return v;
}

ComplexVector RealizedScheme::target_state() const {
  ComplexVector v = ComplexVector::Zero(d + 1);
  v(d) = 1.0;
  return v;
}

RealizedScheme build_su2(const Su2Spec& spec) {
  if (spec.d < 1) throw Error("build_su2: d must be >= 1");
  const double norm = std::sqrt(spec.alpha1 * spec.alpha1 +
                                spec.alpha2 * spec.alpha2 +
                                spec.alpha3 * spec.alpha3);
  if (norm == 0.0) throw ZeroField("build_su2: alpha vector vanishes");

  const SpinGenerators g = su2_generators(spec.d);
  RealizedScheme s;
  s.spec = spec;
  s.d = spec.d;
  s.n = spec.n > 0 ? spec.n : spec.d;
  if (s.n < s.d) throw Error("build_su2: n must be at least d");
  s.h = spec.alpha1 * g.jx + spec.alpha2 * g.jy + spec.alpha3 * g.jz +
        0.5 * spec.d * norm * ComplexMatrix::Identity(spec.d + 1, spec.d + 1);
  s.theta = std::atan2(spec.alpha2, spec.alpha1);
  s.alpha_norm = norm;
  // Full charging is reachable exactly when the drive has no jz component.
  s.fully_charging_capable = std::abs(spec.alpha3) <= 1e-12 * norm;
  if (s.n == s.d && s.n <= kTol.oracle_cap) attach_dicke_embedding(s);
  return s;
}

std::vector<Complex> su2_coefficients(int d, double alpha_norm, double theta,
                                      double t) {
  if (d < 1) throw Error("su2_coefficients: d must be >= 1");
  if (alpha_norm <= 0.0) throw ZeroField("su2_coefficients: |alpha| must be positive");
  const double half = 0.5 * alpha_norm * t;
  const Complex up = Complex(0.0, -std::sin(half)) * std::exp(Complex(0.0, -theta));
  const double down = std::cos(half);
  std::vector<Complex> p(d + 1);
  Complex up_pow = 1.0;
  for (int j = 0; j <= d; ++j) {
    p[j] = std::sqrt(binomial(d, j)) * up_pow * std::pow(down, double(d - j));
    up_pow *= up;
  }
  return p;
}

RealizedScheme build_parallel(const ParallelSpec& spec) {
  if (spec.n < 1) throw Error("build_parallel: n must be >= 1");
  if (!spec.k.empty() && int(spec.k.size()) != spec.n) {
    throw Error("build_parallel: k list length must equal n");
  }
  if (spec.alpha_base <= 0.0) throw ZeroField("build_parallel: alpha_base must be positive");
  ParallelSpec full = spec;
  if (full.k.empty()) full.k.assign(full.n, 0);
  for (int kj : full.k) {
    if (kj < 0) throw Error("build_parallel: winding integers must be >= 0");
  }

  RealizedScheme s;
  s.spec = full;
  s.n = full.n;
  s.d = full.n;
  s.theta = full.theta;
  s.product_structure = true;
  s.fully_charging_capable = true;
  s.alphas.resize(full.n);
  const double denom = 1.0 + 4.0 * full.k[0];
  Eigen::Matrix2cd sx, sy;
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, 1), Complex(0, -1), 0;  // sigma_y in (down, up) basis order
  for (int j = 0; j < full.n; ++j) {
    s.alphas[j] = full.alpha_base * (1.0 + 4.0 * full.k[j]) / denom;
    Eigen::Matrix2cd hj =
        0.5 * s.alphas[j] *
        (std::cos(full.theta) * sx + std::sin(full.theta) * sy +
         Eigen::Matrix2cd::Identity());
    s.local_h.push_back(hj);
  }
  return s;
}

std::vector<std::pair<Complex, Complex>> parallel_amplitudes(
    const ParallelSpec& spec, double t) {
  const RealizedScheme s = build_parallel(spec);
  std::vector<std::pair<Complex, Complex>> out(s.n);
  const Complex phase = Complex(0.0, -1.0) * std::exp(Complex(0.0, -s.theta));
  for (int j = 0; j < s.n; ++j) {
    const double half = 0.5 * s.alphas[j] * t;
    out[j] = {Complex(std::cos(half), 0.0), phase * std::sin(half)};
  }
  return out;
}

RealizedScheme build_tridiag(const TridiagSpec& spec) {
  const int d = int(spec.b.size());
  if (d < 1) throw Error("build_tridiag: need at least one coupling");
  double bmax = 0.0;
  for (double b : spec.b) {
    if (!(b > 0.0)) throw NonPositiveCoupling("build_tridiag: couplings must be positive");
    bmax = std::max(bmax, b);
  }
  RealizedScheme s;
  s.spec = spec;
  s.d = d;
  s.n = spec.n > 0 ? spec.n : d;
  if (s.n < s.d) throw Error("build_tridiag: n must be at least d");
  s.h = ComplexMatrix::Zero(d + 1, d + 1);
  for (int j = 0; j < d; ++j) {
    s.h(j, j + 1) = spec.b[j];
    s.h(j + 1, j) = spec.b[j];
  }
  s.mirror_symmetric = true;
  for (int j = 0; j < d; ++j) {
    if (std::abs(spec.b[j] - spec.b[d - 1 - j]) > kTol.mirror * bmax) {
      s.mirror_symmetric = false;
      break;
    }
  }
  s.fully_charging_capable = true;  // candidate; charging_time may still fail
  if (s.n == s.d && s.n <= kTol.oracle_cap) attach_dicke_embedding(s);
  return s;
}

RealizedScheme build_tridiag3(double lambda1, double lambda2, int n) {
  if (!(lambda2 > 0.0) || !(lambda1 > lambda2)) {
    throw BadOrdering("build_tridiag3: need lambda1 > lambda2 > 0");
  }
  const double b1 = std::sqrt(lambda1 * lambda2);
  const double b2 = lambda1 - lambda2;
  RealizedScheme s = build_tridiag(TridiagSpec{{b1, b2, b1}, n});
  s.spec = Tridiag3Spec{lambda1, lambda2, n};
  // spectrum of this family is {-l1, -l2, l2, l1}; verify the construction
  const EigenSystem es = hermitian_eig(s.h);
  const double expected[4] = {-lambda1, -lambda2, lambda2, lambda1};
  for (int k = 0; k < 4; ++k) {
    if (std::abs(es.values(k) - expected[k]) > 1e-9 * lambda1) {
      throw Error("build_tridiag3: spectrum check failed");
    }
  }
  return s;
}

Eigen::Vector4cd tridiag3_analytic_state(double lambda1, double lambda2, double t) {
  if (!(lambda2 > 0.0) || !(lambda1 > lambda2)) {
    throw BadOrdering("tridiag3_analytic_state: need lambda1 > lambda2 > 0");
  }
  const double root = std::sqrt(lambda1 * lambda2);
  const double c1 = std::cos(lambda1 * t), c2 = std::cos(lambda2 * t);
  const double s1 = std::sin(lambda1 * t), s2 = std::sin(lambda2 * t);
  Eigen::Vector4cd v;
  v(0) = lambda2 * c1 + lambda1 * c2;
  v(1) = Complex(0.0, -root) * (s1 + s2);
  v(2) = root * (c1 - c2);
  v(3) = Complex(0.0, 1.0) * (lambda1 * s2 - lambda2 * s1);
  return v / (lambda1 + lambda2);
}

std::vector<AdmissibleRatio> tridiag3_admissible_ratios(int m_max, int n_max) {
  if (m_max < 0 || n_max < 0) throw Error("tridiag3_admissible_ratios: negative range");
  std::vector<AdmissibleRatio> out;
  auto push = [&out](int case_id, int m, int n, long num, long den, long half_pis) {
    if (num <= den) return;  // k must exceed 1
    const long g = std::gcd(num, den);
    AdmissibleRatio r;
    r.case_id = case_id;
    r.m = m;
    r.n = n;
    r.k_num = num / g;
    r.k_den = den / g;
    r.lambda1 = double(r.k_num) / double(r.k_den);
    r.lambda2 = 1.0;
    r.charge_time = 0.5 * kPi * double(half_pis);
    for (const AdmissibleRatio& seen : out) {
      if (seen.k_num == r.k_num && seen.k_den == r.k_den &&
          std::lround(2.0 * seen.charge_time / kPi) == half_pis) {
        return;  // duplicate (k, T)
      }
    }
    out.push_back(r);
  };
  for (int m = 0; m <= m_max; ++m) {
    for (int n = 1; n <= n_max; ++n) {
      push(1, m, n, 4L * n - 1, 4L * m + 1, 4L * m + 1);
    }
  }
  for (int m = 0; m <= m_max; ++m) {
    for (int n = 1; n <= n_max; ++n) {
      push(2, m, n, 4L * m + 1, 4L * n - 1, 4L * n - 1);
    }
  }
  return out;
}

SpectrumCondition spectrum_condition_check(const Eigen::VectorXd& eigs, double t,
                                           double tol) {
  if (t <= 0.0) throw Error("spectrum_condition_check: T must be positive");
  SpectrumCondition cond;
  cond.holds = true;
  cond.phi0 = eigs(0) * t;
  cond.m.resize(eigs.size());
  for (Eigen::Index k = 0; k < eigs.size(); ++k) {
    const double x = (eigs(k) * t - cond.phi0 + k * kPi) / (2.0 * kPi);
    cond.m[k] = std::lround(x);
    if (std::abs(x - double(cond.m[k])) > tol) cond.holds = false;
  }
  if (!cond.holds) cond.m.clear();
  return cond;
}

std::vector<std::pair<int, int>> hybrid_blocks(int n, int d) {
  if (d < 1 || d > n) throw Error("hybrid_blocks: need 1 <= d <= n");
  std::vector<std::pair<int, int>> blocks;
  const int k = (n + d - 1) / d;
  const int r = n - (d - 1) * k;
  int start = 0;
  if (r >= 1) {
    for (int b = 0; b < d - 1; ++b, start += k) blocks.emplace_back(start, k);
    blocks.emplace_back(start, r);
  } else {
    // (d-1) full blocks would exhaust the register; fall back to the
    // balanced partition, which keeps the maximal block at ceil(n/d).
    const int q = n / d;
    const int extra = n - q * d;
    for (int b = 0; b < d; ++b) {
      const int size = q + (b < extra ? 1 : 0);
      blocks.emplace_back(start, size);
      start += size;
    }
  }
  return blocks;
}

namespace {

// Enumerates subsets of blocks; amp(j) supplies the amplitude of every
// arrangement with j raised blocks.
template <typename AmpFn>
ComplexVector hybrid_superposition(int n, int d, AmpFn amp) {
  const auto blocks = hybrid_blocks(n, d);
  std::vector<uint64_t> block_mask(d);
  for (int b = 0; b < d; ++b) {
    block_mask[b] = ((uint64_t(1) << blocks[b].second) - 1) << blocks[b].first;
  }
  ComplexVector psi = ComplexVector::Zero(int64_t(1) << n);
  for (uint64_t subset = 0; subset < (uint64_t(1) << d); ++subset) {
    const int j = std::popcount(subset);
    uint64_t idx = 0;
    for (int b = 0; b < d; ++b) {
      if (subset >> b & 1) idx |= block_mask[b];
    }
    psi(int64_t(idx)) += amp(j);
  }
  return psi;
}

}  // namespace

ComplexVector hybrid_basis(int n, int d, int j, int cap) {
  require_register_fits(n, cap);
  if (j < 0 || j > d) throw Error("hybrid_basis: need 0 <= j <= d");
  const double norm = 1.0 / std::sqrt(binomial(d, j));
  return hybrid_superposition(n, d, [&](int ups) -> Complex {
    return ups == j ? Complex(norm, 0.0) : Complex(0.0, 0.0);
  });
}

ComplexVector hybrid_evolved(int n, int d, double theta, double alpha_norm,
                             double t, int cap) {
  require_register_fits(n, cap);
  const double half = 0.5 * alpha_norm * t;
  const Complex up = Complex(0.0, -std::sin(half)) * std::exp(Complex(0.0, -theta));
  const double down = std::cos(half);
  std::vector<Complex> amp(d + 1);
  Complex up_pow = 1.0;
  for (int j = 0; j <= d; ++j) {
    amp[j] = up_pow * std::pow(down, double(d - j));
    up_pow *= up;
  }
  return hybrid_superposition(n, d, [&](int ups) -> Complex { return amp[ups]; });
}

ComplexMatrix hybrid_hamiltonian(int n, int d, int cap) {
  require_register_fits(n, cap);
  const auto blocks = hybrid_blocks(n, d);
  const int64_t dim = int64_t(1) << n;
  ComplexMatrix h = 0.5 * d * ComplexMatrix::Identity(dim, dim);
  for (const auto& [start, size] : blocks) {
    const int64_t mask = ((int64_t(1) << size) - 1) << start;
    for (int64_t i = 0; i < dim; ++i) h(i ^ mask, i) += 1.0;
  }
  return h;
}

RealizedScheme build_hybrid(const HybridSpec& spec, int cap) {
  RealizedScheme s;
  s.spec = spec;
  s.n = spec.n;
  s.d = spec.d;
  s.theta = spec.theta;
  s.h = hybrid_hamiltonian(spec.n, spec.d, cap);
  // The block-flip sum restricted to the u'_j ladder acts as 2 J^x, so the
  // effective drive strength is 2 and the charging time pi/2.
  const SpinGenerators g = su2_generators(spec.d);
  s.ladder_h = 2.0 * g.jx +
               0.5 * spec.d * ComplexMatrix::Identity(spec.d + 1, spec.d + 1);
  s.alpha_norm = 2.0;
  s.fully_charging_capable = true;
  ComplexMatrix embed(int64_t(1) << spec.n, spec.d + 1);
  for (int j = 0; j <= spec.d; ++j) {
    embed.col(j) = hybrid_basis(spec.n, spec.d, j, cap);
  }
  s.embedding = std::move(embed);
  return s;
}

bool check_full_charging(const RealizedScheme& scheme, double t, double tol) {
  if (t <= 0.0) throw Error("check_full_charging: T must be positive");
  double target_weight = 0.0;
  if (scheme.product_structure) {
    double prod = 1.0;
    for (double a : scheme.alphas) prod *= std::abs(std::sin(0.5 * a * t));
    target_weight = prod;
  } else {
    const ComplexVector psi = evolve(scheme.ladder(), scheme.initial_state(), t);
    target_weight = std::abs(overlap(scheme.target_state(), psi));
  }
  return 1.0 - target_weight <= tol;
}

void attach_dicke_embedding(RealizedScheme& scheme, int cap) {
  if (scheme.product_structure) {
    throw Error("attach_dicke_embedding: parallel schemes embed as products");
  }
  if (scheme.n != scheme.d) {
    throw NoEmbedding("attach_dicke_embedding: requires d == n");
  }
  require_register_fits(scheme.n, cap);
  const int n = scheme.n;
  const int64_t dim = int64_t(1) << n;
  ComplexMatrix embed = ComplexMatrix::Zero(dim, n + 1);
  for (int64_t idx = 0; idx < dim; ++idx) {
    const int j = std::popcount(uint64_t(idx));
    embed(idx, j) = 1.0 / std::sqrt(binomial(n, j));
  }
  scheme.embedding = std::move(embed);
}

ComplexVector embedded_state(const RealizedScheme& scheme,
                             const ComplexVector& ladder_state) {
  if (!scheme.embedding) {
    throw NoEmbedding("embedded_state: scheme carries no register embedding");
  }
  if (ladder_state.size() != scheme.embedding->cols()) {
    throw DimMismatch("embedded_state: ladder state has wrong dimension");
  }
  return *scheme.embedding * ladder_state;
}

CoefficientTrace coefficient_trace(const RealizedScheme& scheme,
                                   const std::vector<double>& times) {
  const Propagator prop(scheme.ladder());
  const ComplexVector u0 = scheme.initial_state();
  CoefficientTrace trace;
  trace.times = times;
  trace.coeffs.reserve(times.size());
  for (double t : times) {
    const ComplexVector psi = prop.state_at(u0, t);
    trace.coeffs.emplace_back(psi.data(), psi.data() + psi.size());
  }
  return trace;
}

}  // namespace qb
