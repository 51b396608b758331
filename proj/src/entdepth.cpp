#include "qb/entdepth.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace qb {

namespace {

int register_size(const ComplexVector& psi) {
  const auto size = uint64_t(psi.size());
  if (size < 2 || !std::has_single_bit(size)) {
    throw DimMismatch("state length is not a power of two");
  }
  return std::countr_zero(size);
}

void require_cap(int n, int cap) {
  if (n > cap) {
    throw TooLarge("register of " + std::to_string(n) +
                   " qubits exceeds the oracle cap of " + std::to_string(cap));
  }
}

// Reduced purity for a subset mask; assumes 1 <= popcount(mask) <= n/2 side
// handled by the caller (purity is complement-symmetric on pure states).
double purity_of_mask(const ComplexVector& psi, uint32_t mask, int n) {
  const int s = std::popcount(mask);
  const int64_t rows = int64_t(1) << s;
  const int64_t cols = int64_t(1) << (n - s);
  // incremental extraction maps: weight of each register bit inside the
  // row (subset) and column (environment) indices
  std::array<int64_t, 32> row_w{}, col_w{};
  int r = 0, c = 0;
  for (int q = 0; q < n; ++q) {
    if (mask >> q & 1) {
      row_w[q] = int64_t(1) << r++;
    } else {
      col_w[q] = int64_t(1) << c++;
    }
  }
  ComplexMatrix m(rows, cols);
  std::vector<int64_t> row_of(psi.size()), col_of(psi.size());
  row_of[0] = 0;
  col_of[0] = 0;
  for (int64_t i = 1; i < psi.size(); ++i) {
    const int q = std::countr_zero(uint64_t(i));
    const int64_t prev = i & (i - 1);
    row_of[i] = row_of[prev] + row_w[q];
    col_of[i] = col_of[prev] + col_w[q];
  }
  for (int64_t i = 0; i < psi.size(); ++i) m(row_of[i], col_of[i]) = psi(i);
  const ComplexMatrix gram = m * m.adjoint();
  return gram.squaredNorm();
}

}  // namespace

int thm1_bound(int n, double product) {
  if (n < 1) throw Error("thm1_bound: n must be >= 1");
  double p = std::min(product, 0.5);  // normalisation caps the true product at 1/2
  if (!(p > 0.0)) return 1;
  if (p < std::ldexp(1.0, -n)) return 1;  // bound is vacuous below 2^-n
  const double l = std::log2(1.0 / p);
  // snap so products sitting on an exact power of two keep their integer log
  long floor_l = long(std::floor(l + 1e-9));
  if (floor_l >= n) return 1;
  floor_l = std::max(1L, floor_l);
  return int((n + floor_l - 1) / floor_l);
}

LocalPair LocalPair::z_pair(int n) {
  LocalPair pair;
  pair.v0.assign(n, Eigen::Vector2cd(1.0, 0.0));   // |down>
  pair.vbar.assign(n, Eigen::Vector2cd(0.0, 1.0)); // |up>
  return pair;
}

PairCoefficients pair_product(const ComplexVector& psi_full, const LocalPair& pair,
                              double tol) {
  const int n = register_size(psi_full);
  if (int(pair.v0.size()) != n || int(pair.vbar.size()) != n) {
    throw DimMismatch("pair_product: pair length does not match the register");
  }
  for (int q = 0; q < n; ++q) {
    const auto& a = pair.v0[q];
    const auto& b = pair.vbar[q];
    if (std::abs(a.norm() - 1.0) > tol || std::abs(b.norm() - 1.0) > tol ||
        std::abs(a.dot(b)) > tol) {
      throw PairNotOrthonormal("pair_product: qubit " + std::to_string(q) +
                               " pair is not orthonormal");
    }
  }
  // contract <v|psi> one qubit at a time (qubit 0 = least significant bit)
  auto contract = [&](const std::vector<Eigen::Vector2cd>& v) {
    ComplexVector cur = psi_full;
    for (int q = 0; q < n; ++q) {
      const int64_t half = cur.size() / 2;
      ComplexVector next(half);
      for (int64_t i = 0; i < half; ++i) {
        next(i) = std::conj(v[q](0)) * cur(2 * i) + std::conj(v[q](1)) * cur(2 * i + 1);
      }
      cur.swap(next);
    }
    return cur(0);
  };
  PairCoefficients out;
  out.p0 = contract(pair.v0);
  out.pbar = contract(pair.vbar);
  out.product = std::abs(out.p0 * out.pbar);
  return out;
}

PairCoefficients ladder_pair_product(const ComplexVector& psi_ladder) {
  if (psi_ladder.size() < 2) throw DimMismatch("ladder_pair_product: state too small");
  PairCoefficients out;
  out.p0 = psi_ladder(0);
  out.pbar = psi_ladder(psi_ladder.size() - 1);
  out.product = std::abs(out.p0 * out.pbar);
  return out;
}

DepthCertificate max_pair_product(const RealizedScheme& scheme, int grid) {
  const double t_charge = charging_time(scheme);
  ScanMax peak;
  if (scheme.product_structure) {
    auto product = [&](double t) {
      double p = 1.0;
      for (double a : scheme.alphas) {
        p *= std::abs(std::cos(0.5 * a * t)) * std::abs(std::sin(0.5 * a * t));
      }
      return p;
    };
    peak = scan_max(product, 0.0, t_charge, grid);
  } else {
    const Propagator prop(scheme.ladder());
    const ComplexVector u0 = scheme.initial_state();
    auto product = [&](double t) {
      return ladder_pair_product(prop.state_at(u0, t)).product;
    };
    peak = scan_max(product, 0.0, t_charge, grid);
  }
  DepthCertificate cert;
  cert.n = scheme.n;
  cert.product = peak.value;
  cert.t_star = peak.t;
  cert.bound = thm1_bound(scheme.n, peak.value);
  return cert;
}

double reduced_purity(const ComplexVector& psi_full, const std::vector<int>& subset,
                      int cap) {
  const int n = register_size(psi_full);
  require_cap(n, cap);
  if (subset.empty()) throw BadSubset("reduced_purity: subset is empty");
  uint32_t mask = 0;
  for (int q : subset) {
    if (q < 0 || q >= n) throw BadSubset("reduced_purity: qubit index out of range");
    if (mask >> q & 1) throw BadSubset("reduced_purity: duplicate qubit index");
    mask |= uint32_t(1) << q;
  }
  const uint32_t full = (uint32_t(1) << n) - 1;
  if (mask == full) throw BadSubset("reduced_purity: subset must be proper");
  if (std::popcount(mask) > n / 2) mask = full & ~mask;  // same purity, smaller side
  return purity_of_mask(psi_full, mask, n);
}

std::vector<std::vector<int>> OracleResult::witness_blocks() const {
  std::vector<std::vector<int>> blocks;
  for (uint32_t mask : witness) {
    std::vector<int> qubits;
    for (int q = 0; q < 32; ++q) {
      if (mask >> q & 1) qubits.push_back(q);
    }
    blocks.push_back(std::move(qubits));
  }
  return blocks;
}

OracleResult exact_depth(const ComplexVector& psi_full, double tol, int cap) {
  const int n = register_size(psi_full);
  require_cap(n, cap);
  const uint32_t full = (uint32_t(1) << n) - 1;

  // purity table; complement symmetry halves the work
  std::vector<char> pure(full + 1, 0);
  pure[full] = 1;
  for (uint32_t mask = 1; mask < full; ++mask) {
    const int s = std::popcount(mask);
    if (s > n - s) continue;
    if (2 * s == n && mask > (full & ~mask)) continue;
    const bool is_pure = purity_of_mask(psi_full, mask, n) >= 1.0 - tol;
    pure[mask] = is_pure;
    pure[full & ~mask] = is_pure;
  }

  // dp over submasks: minimal largest block / maximal block count over
  // partitions of `mask` into pure blocks (each block holds the lowest bit
  // of what remains, which canonicalises the enumeration)
  constexpr int kInfeasible = std::numeric_limits<int>::max();
  std::vector<int> best_depth(full + 1, kInfeasible);
  std::vector<int> best_count(full + 1, -1);
  best_depth[0] = 0;
  best_count[0] = 0;
  for (uint32_t mask = 1; mask <= full; ++mask) {
    const uint32_t low = mask & (0u - mask);
    for (uint32_t sub = mask; sub; sub = (sub - 1) & mask) {
      if (!(sub & low) || !pure[sub]) continue;
      const uint32_t rest = mask ^ sub;
      if (best_depth[rest] != kInfeasible) {
        best_depth[mask] = std::min(
            best_depth[mask], std::max(std::popcount(sub), best_depth[rest]));
      }
      if (best_count[rest] >= 0) {
        best_count[mask] = std::max(best_count[mask], 1 + best_count[rest]);
      }
    }
  }

  OracleResult out;
  out.depth = best_depth[full];
  out.separability = best_count[full];

  // witness: depth-attaining partition, lexicographically smallest sequence
  uint32_t mask = full;
  while (mask) {
    const uint32_t low = mask & (0u - mask);
    std::vector<uint32_t> candidates;
    for (uint32_t sub = mask; sub; sub = (sub - 1) & mask) {
      if (sub & low && pure[sub]) candidates.push_back(sub);
    }
    std::sort(candidates.begin(), candidates.end());
    for (uint32_t sub : candidates) {
      const uint32_t rest = mask ^ sub;
      if (best_depth[rest] == kInfeasible) continue;
      if (std::max(std::popcount(sub), best_depth[rest]) == best_depth[mask]) {
        out.witness.push_back(sub);
        mask = rest;
        break;
      }
    }
  }
  return out;
}

ComplexVector register_state(const RealizedScheme& scheme, double t) {
  require_cap(scheme.n, kTol.oracle_cap);
  if (scheme.product_structure) {
    const auto amps = parallel_amplitudes(std::get<ParallelSpec>(scheme.spec), t);
    ComplexVector psi(int64_t(1) << scheme.n);
    for (int64_t idx = 0; idx < psi.size(); ++idx) {
      Complex amp = 1.0;
      for (int q = 0; q < scheme.n; ++q) {
        amp *= (idx >> q & 1) ? amps[q].second : amps[q].first;
      }
      psi(idx) = amp;
    }
    return psi;
  }
  if (!scheme.embedding) {
    throw NoEmbedding("register_state: scheme carries no register embedding");
  }
  const ComplexVector ladder_state =
      evolve(scheme.ladder(), scheme.initial_state(), t);
  return embedded_state(scheme, ladder_state);
}

int resource_depth(const RealizedScheme& scheme, int grid, double tol,
                   DepthMode mode) {
  if (mode == DepthMode::lower_bound) {
    return max_pair_product(scheme, std::max(grid, 256)).bound;
  }
  if (!scheme.product_structure && !scheme.embedding) {
    throw NoEmbedding("resource_depth: exact mode needs a register embedding");
  }
  require_cap(scheme.n, kTol.oracle_cap);
  const double t_charge = charging_time(scheme);
  int deepest = 1;
  for (int i = 0; i <= grid; ++i) {
    const double t = t_charge * double(i) / double(grid);
    deepest = std::max(deepest, exact_depth(register_state(scheme, t), tol).depth);
  }
  return deepest;
}

ComplexVector read_state_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open state file: " + path);
  nlohmann::json j;
  in >> j;
  const int n = j.at("n_qubits").get<int>();
  if (n < 1 || n > 30) throw Error("state file: bad n_qubits");
  const auto& amps = j.at("amplitudes");
  if (int64_t(amps.size()) != (int64_t(1) << n)) {
    throw Error("state file: amplitude count does not match n_qubits");
  }
  ComplexVector psi(int64_t(1) << n);
  for (int64_t i = 0; i < psi.size(); ++i) {
    const auto& pair = amps.at(i);
    psi(i) = Complex(pair.at(0).get<double>(), pair.at(1).get<double>());
  }
  const double norm = psi.norm();
  if (norm < 1e-12) throw Error("state file: amplitudes are all zero");
  return psi / norm;  // forgive rounded hand-written amplitudes
}

void write_state_json(const std::string& path, const ComplexVector& psi) {
  const int n = register_size(psi);
  std::ofstream out(path);
  if (!out) throw Error("cannot write state file: " + path);
  char buf[64];
  out << "{\"n_qubits\": " << n << ", \"amplitudes\": [";
  for (int64_t i = 0; i < psi.size(); ++i) {
    if (i) out << ", ";
    std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", psi(i).real(), psi(i).imag());
    out << buf;
  }
  out << "]}\n";
}

}  // namespace qb
