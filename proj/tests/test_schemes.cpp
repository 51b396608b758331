#include "qb/schemes.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

#include "test_support.hpp"

using namespace qb;

namespace {
constexpr double kPi = std::numbers::pi;

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}
}  // namespace

TEST_CASE("su2_generators: matrix elements") {
  const SpinGenerators g1 = su2_generators(1);
  CHECK(std::abs(g1.jx(0, 1) - Complex(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(g1.jx(1, 0) - Complex(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(g1.jx(0, 0)) < 1e-15);

  const SpinGenerators g3 = su2_generators(3);
  CHECK(2.0 * std::abs(g3.jx(0, 1)) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  CHECK(2.0 * std::abs(g3.jx(1, 2)) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(2.0 * std::abs(g3.jx(2, 3)) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));

  const SpinGenerators g2 = su2_generators(2);
  CHECK(g2.jz(0, 0).real() == doctest::Approx(-1.0));
  CHECK(std::abs(g2.jz(1, 1)) < 1e-15);
  CHECK(g2.jz(2, 2).real() == doctest::Approx(1.0));

  CHECK_THROWS_AS(su2_generators(0), Error);
}

TEST_CASE("su2_generators: algebra [jx,jy] = i jz for d = 1..12") {
  for (int d = 1; d <= 12; ++d) {
    const SpinGenerators g = su2_generators(d);
    const ComplexMatrix comm = g.jx * g.jy - g.jy * g.jx;
    CHECK(max_abs_diff(comm, Complex(0.0, 1.0) * g.jz) <= kTol.commutator * d);
  }
}

TEST_CASE("build_su2: direct substitution and the alpha3 gate") {
  const RealizedScheme flat = build_su2(Su2Spec{1, 1.0, 0.0, 0.0});
  ComplexMatrix expected(2, 2);
  expected << 0.5, 0.5, 0.5, 0.5;
  CHECK(max_abs_diff(flat.h, expected) < 1e-14);
  CHECK(flat.fully_charging_capable);

  const RealizedScheme ladder = build_su2(Su2Spec{3, 1.0, 0.0, 0.0});
  CHECK(ladder.h(0, 1).real() == doctest::Approx(std::sqrt(3.0) / 2.0));
  CHECK(ladder.h(1, 2).real() == doctest::Approx(1.0));
  CHECK(ladder.h(2, 3).real() == doctest::Approx(std::sqrt(3.0) / 2.0));
  for (int j = 0; j <= 3; ++j) {
    CHECK(ladder.h(j, j).real() == doctest::Approx(1.5));
  }

  const RealizedScheme tilted = build_su2(Su2Spec{2, 0.0, 0.0, 1.0});
  CHECK_FALSE(tilted.fully_charging_capable);

  CHECK_THROWS_AS(build_su2(Su2Spec{2, 0.0, 0.0, 0.0}), ZeroField);
}

TEST_CASE("su2_coefficients: end points and the T/2 pair") {
  const auto start = su2_coefficients(4, 1.3, 0.2, 0.0);
  CHECK(std::abs(start[0] - Complex(1.0, 0.0)) < 1e-14);
  for (int j = 1; j <= 4; ++j) CHECK(std::abs(start[j]) < 1e-14);

  // d=1 at half the charging time: both weights 1/sqrt(2)
  const auto half = su2_coefficients(1, 1.0, 0.0, 0.5 * kPi);
  CHECK(std::abs(half[0]) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(std::abs(half[1]) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

  // d=3 at T/2: the pair carries 2^{-3/2} each
  const auto pair = su2_coefficients(3, 2.0, 0.0, 0.5 * (kPi / 2.0));
  CHECK(std::abs(pair[0]) == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-12));
  CHECK(std::abs(pair[3]) == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-12));
}

TEST_CASE("su2_coefficients: normalised and consistent with the realized matrix") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> amp(0.2, 2.0);
  std::uniform_real_distribution<double> time(0.0, 8.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + int(rng() % 10);
    const double a1 = amp(rng) * (rng() % 2 ? 1.0 : -1.0);
    const double a2 = amp(rng) * (rng() % 2 ? 1.0 : -1.0);
    const double t = time(rng);
    const RealizedScheme s = build_su2(Su2Spec{d, a1, a2, 0.0});
    const auto p = su2_coefficients(d, s.alpha_norm, s.theta, t);

    double norm2 = 0.0;
    for (const Complex& c : p) norm2 += std::norm(c);
    CHECK(std::abs(norm2 - 1.0) <= kTol.coeff_norm);

    // the realized matrix carries the constant d|alpha|/2, a global phase
    const ComplexVector psi = evolve(s.h, s.initial_state(), t);
    const Complex undo = std::exp(Complex(0.0, 0.5 * d * s.alpha_norm * t));
    for (int j = 0; j <= d; ++j) {
      CHECK(std::abs(psi(j) * undo - p[j]) < 1e-10);
    }
  }
}

TEST_CASE("build_parallel: coupling ratios") {
  const RealizedScheme even = build_parallel(ParallelSpec{4, {0, 0, 0, 0}, 1.5, 0.0});
  for (double a : even.alphas) CHECK(a == doctest::Approx(1.5).epsilon(1e-15));

  const RealizedScheme skew = build_parallel(ParallelSpec{2, {0, 1}, 1.0, 0.0});
  CHECK(skew.alphas[0] == doctest::Approx(1.0));
  CHECK(skew.alphas[1] == doctest::Approx(5.0));

  const RealizedScheme single = build_parallel(ParallelSpec{1, {0}, 1.0, 0.0});
  CHECK(single.local_h.size() == 1);
  CHECK(single.product_structure);

  CHECK_THROWS_AS(build_parallel(ParallelSpec{2, {0, -1}, 1.0, 0.0}), Error);
  CHECK_THROWS_AS(build_parallel(ParallelSpec{2, {0, 0}, 0.0, 0.0}), ZeroField);
}

TEST_CASE("parallel_amplitudes: trajectory endpoints") {
  const ParallelSpec spec{3, {0, 0, 0}, 1.0, 0.4};
  const auto start = parallel_amplitudes(spec, 0.0);
  for (const auto& [a, b] : start) {
    CHECK(std::abs(a - Complex(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(b) < 1e-15);
  }

  const auto end = parallel_amplitudes(spec, kPi);
  const Complex expected = Complex(0.0, -1.0) * std::exp(Complex(0.0, -0.4));
  for (const auto& [a, b] : end) {
    CHECK(std::abs(a) < 1e-15);
    CHECK(std::abs(b - expected) < 1e-14);
  }

  // halfway through, the pair product collapses to 2^-N
  const int n = 5;
  const auto mid = parallel_amplitudes(ParallelSpec{n, {}, 1.0, 0.0}, 0.5 * kPi);
  double product = 1.0;
  for (const auto& [a, b] : mid) product *= std::abs(a) * std::abs(b);
  CHECK(product == doctest::Approx(std::pow(2.0, -n)).epsilon(1e-12));
}

TEST_CASE("build_tridiag: couplings, mirror flag, validation") {
  const RealizedScheme x = build_tridiag(TridiagSpec{{1.0}});
  ComplexMatrix pauli(2, 2);
  pauli << 0, 1, 1, 0;
  CHECK(max_abs_diff(x.h, pauli) < 1e-15);

  CHECK(build_tridiag(TridiagSpec{{std::sqrt(3.0), 2.0, std::sqrt(3.0)}}).mirror_symmetric);
  CHECK_FALSE(build_tridiag(TridiagSpec{{1.0, 2.0, 3.0}}).mirror_symmetric);

  CHECK_THROWS_AS(build_tridiag(TridiagSpec{{1.0, -2.0}}), NonPositiveCoupling);
  CHECK_THROWS_AS(build_tridiag(TridiagSpec{{0.0}}), NonPositiveCoupling);
}

TEST_CASE("build_tridiag3: eigenvalue parametrisation") {
  const RealizedScheme a = build_tridiag3(3.0, 1.0);
  CHECK(a.h(0, 1).real() == doctest::Approx(std::sqrt(3.0)));
  CHECK(a.h(1, 2).real() == doctest::Approx(2.0));
  CHECK(a.h(2, 3).real() == doctest::Approx(std::sqrt(3.0)));
  CHECK(a.mirror_symmetric);

  const RealizedScheme b = build_tridiag3(7.0, 1.0);
  CHECK(b.h(0, 1).real() == doctest::Approx(std::sqrt(7.0)));
  CHECK(b.h(1, 2).real() == doctest::Approx(6.0));

  // barely separated eigenvalues remain a valid scheme
  const RealizedScheme c = build_tridiag3(1.0001, 1.0);
  CHECK(c.h(1, 2).real() == doctest::Approx(1e-4).epsilon(1e-8));

  CHECK_THROWS_AS(build_tridiag3(1.0, 1.0), BadOrdering);
  CHECK_THROWS_AS(build_tridiag3(1.0, 3.0), BadOrdering);
}

TEST_CASE("tridiag3_analytic_state: endpoints and full charging") {
  const Eigen::Vector4cd start = tridiag3_analytic_state(3.0, 1.0, 0.0);
  CHECK(std::abs(start(0) - Complex(1.0, 0.0)) < 1e-15);
  for (int j = 1; j < 4; ++j) CHECK(std::abs(start(j)) < 1e-15);

  const Eigen::Vector4cd charged = tridiag3_analytic_state(3.0, 1.0, 0.5 * kPi);
  CHECK(std::abs(charged(3)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tridiag3_analytic_state: matches the matrix exponential") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> lam(0.1, 6.0);
  std::uniform_real_distribution<double> time(0.0, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    double l1 = lam(rng), l2 = lam(rng);
    if (l1 < l2) std::swap(l1, l2);
    if (l1 - l2 < 1e-3) l1 += 1e-2;
    const double t = time(rng);
    const RealizedScheme s = build_tridiag3(l1, l2);
    const ComplexVector numeric = evolve(s.h, s.initial_state(), t);
    const Eigen::Vector4cd analytic = tridiag3_analytic_state(l1, l2, t);
    CHECK((numeric - analytic).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("tridiag3_admissible_ratios: families, dedupe, k > 1") {
  const auto rows = tridiag3_admissible_ratios(5, 5);
  CHECK(!rows.empty());

  auto find = [&](int case_id, int m, int n) -> const AdmissibleRatio* {
    for (const auto& r : rows) {
      if (r.case_id == case_id && r.m == m && r.n == n) return &r;
    }
    return nullptr;
  };

  const AdmissibleRatio* su2_row = find(1, 0, 1);
  REQUIRE(su2_row != nullptr);
  CHECK(su2_row->k_num == 3);
  CHECK(su2_row->k_den == 1);
  CHECK(su2_row->charge_time == doctest::Approx(0.5 * kPi));

  const AdmissibleRatio* seven = find(1, 0, 2);
  REQUIRE(seven != nullptr);
  CHECK(seven->k_num == 7);
  CHECK(seven->charge_time == doctest::Approx(0.5 * kPi));

  const AdmissibleRatio* frac = find(2, 1, 1);
  REQUIRE(frac != nullptr);
  CHECK(frac->k_num == 5);
  CHECK(frac->k_den == 3);
  CHECK(frac->charge_time == doctest::Approx(1.5 * kPi));

  for (const auto& r : rows) {
    CHECK(r.k_num > r.k_den);  // k > 1
    for (const auto& other : rows) {
      if (&r == &other) continue;
      const bool same = r.k_num == other.k_num && r.k_den == other.k_den &&
                        std::abs(r.charge_time - other.charge_time) < 1e-12;
      CHECK_FALSE(same);
    }
  }
}

TEST_CASE("spectrum_condition_check: integer residues") {
  Eigen::VectorXd eigs(4);
  eigs << -3.0, -1.0, 1.0, 3.0;
  const SpectrumCondition ok = spectrum_condition_check(eigs, 0.5 * kPi);
  CHECK(ok.holds);
  REQUIRE(ok.m.size() == 4);
  CHECK(ok.m[0] == 0);
  CHECK(ok.m[1] == 1);
  CHECK(ok.m[2] == 2);
  CHECK(ok.m[3] == 3);

  Eigen::VectorXd two(2);
  two << 0.0, 1.0;
  CHECK(spectrum_condition_check(two, kPi).holds);

  CHECK_FALSE(spectrum_condition_check(eigs, kPi / 3.0).holds);
}

TEST_CASE("mirror symmetry: eigenvector reversal parity") {
  // gauge-fixed eigenvectors of a mirror-symmetric ladder obey
  // <u0|E_k> = (-1)^(d-k) <ud|E_k>; for even d this is the (-1)^k rule
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> coupling(0.2, 3.0);
  for (int d = 1; d <= 7; ++d) {
    std::vector<double> b(d);
    for (int j = 0; j < (d + 1) / 2; ++j) {
      b[j] = coupling(rng);
      b[d - 1 - j] = b[j];
    }
    const RealizedScheme s = build_tridiag(TridiagSpec{b});
    REQUIRE(s.mirror_symmetric);
    const EigenSystem es = hermitian_eig(s.h);
    for (int k = 0; k <= d; ++k) {
      const double head = es.vectors(0, k).real();
      const double tail = es.vectors(d, k).real();
      const double sign = (d - k) % 2 == 0 ? 1.0 : -1.0;
      CHECK(std::abs(head - sign * tail) < 1e-9);
    }
  }
}

TEST_CASE("mirror symmetry: full charging iff the spectrum condition holds") {
  const RealizedScheme s = build_tridiag3(3.0, 1.0);
  const EigenSystem es = hermitian_eig(s.h);
  const double probes[] = {kPi / 6.0, kPi / 4.0, kPi / 2.0, kPi, 1.5 * kPi,
                           2.5 * kPi, 3.0};
  for (double t : probes) {
    const bool charges = check_full_charging(s, t, 1e-6);
    const bool spectral = spectrum_condition_check(es.values, t, 1e-4).holds;
    CHECK(charges == spectral);
  }
}

TEST_CASE("hybrid_blocks: layouts and the balanced fallback") {
  using Blocks = std::vector<std::pair<int, int>>;
  CHECK(hybrid_blocks(4, 2) == Blocks{{0, 2}, {2, 2}});
  CHECK(hybrid_blocks(5, 2) == Blocks{{0, 3}, {3, 2}});
  CHECK(hybrid_blocks(7, 3) == Blocks{{0, 3}, {3, 3}, {6, 1}});
  // (d-1)*ceil(n/d) swallows the register here; balanced split takes over
  CHECK(hybrid_blocks(9, 4) == Blocks{{0, 3}, {3, 2}, {5, 2}, {7, 2}});
  CHECK(hybrid_blocks(9, 7) ==
        Blocks{{0, 2}, {2, 2}, {4, 1}, {5, 1}, {6, 1}, {7, 1}, {8, 1}});
  for (int n = 1; n <= 12; ++n) {
    for (int d = 1; d <= n; ++d) {
      const auto blocks = hybrid_blocks(n, d);
      CHECK(int(blocks.size()) == d);
      int total = 0, largest = 0;
      for (const auto& [start, size] : blocks) {
        CHECK(start == total);  // contiguous ascending
        CHECK(size >= 1);
        total += size;
        largest = std::max(largest, size);
      }
      CHECK(total == n);
      CHECK(largest == (n + d - 1) / d);
    }
  }
}

TEST_CASE("hybrid_basis: explicit small cases") {
  const ComplexVector ground = hybrid_basis(4, 2, 0);
  CHECK(std::abs(ground(0) - Complex(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(ground.norm() - 1.0) < 1e-15);

  // N=4, d=2, j=1: (|up up down down> + |down down up up>) / sqrt2,
  // qubits 0,1 = first block
  const ComplexVector one = hybrid_basis(4, 2, 1);
  CHECK(std::abs(one(0b0011) - Complex(1.0 / std::sqrt(2.0), 0.0)) < 1e-15);
  CHECK(std::abs(one(0b1100) - Complex(1.0 / std::sqrt(2.0), 0.0)) < 1e-15);

  // N=5, d=2, j=1 with blocks of 3 and 2
  const ComplexVector skew = hybrid_basis(5, 2, 1);
  CHECK(std::abs(skew(0b00111) - Complex(1.0 / std::sqrt(2.0), 0.0)) < 1e-15);
  CHECK(std::abs(skew(0b11000) - Complex(1.0 / std::sqrt(2.0), 0.0)) < 1e-15);

  // columns are orthonormal
  for (int n : {4, 5, 6}) {
    for (int d = 1; d <= n; ++d) {
      for (int j = 0; j <= d; ++j) {
        const ComplexVector uj = hybrid_basis(n, d, j);
        CHECK(std::abs(uj.norm() - 1.0) < 1e-12);
        for (int j2 = 0; j2 < j; ++j2) {
          CHECK(std::abs(overlap(hybrid_basis(n, d, j2), uj)) < 1e-12);
        }
      }
    }
  }

  CHECK_THROWS_AS(hybrid_basis(20, 2, 0), TooLarge);
}

TEST_CASE("hybrid_evolved: product form and ladder expansion") {
  CHECK(std::abs(hybrid_evolved(4, 2, 0.0, 2.0, 0.0)(0) - Complex(1.0, 0.0)) < 1e-15);

  // GHZ2 x GHZ2 at T/2: |p0 pd| = 1/4
  const ComplexVector mid = hybrid_evolved(4, 2, 0.0, 2.0, kPi / 4.0);
  const double product = std::abs(mid(0)) * std::abs(mid(0b1111));
  CHECK(product == doctest::Approx(0.25).epsilon(1e-12));

  // projecting onto the hybrid basis reproduces the ladder coefficients
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> time(0.0, kPi);
  for (int n : {4, 6, 7, 10}) {
    for (int d = 1; d <= n; d += (n > 6 ? 2 : 1)) {
      const double t = time(rng);
      const ComplexVector psi = hybrid_evolved(n, d, 0.3, 2.0, t);
      const auto coeffs = su2_coefficients(d, 2.0, 0.3, t);
      for (int j = 0; j <= d; ++j) {
        const Complex projected = overlap(hybrid_basis(n, d, j), psi);
        CHECK(std::abs(projected - coeffs[j]) < 1e-10);
      }
    }
  }
}

TEST_CASE("hybrid_hamiltonian: operators and dynamics") {
  const ComplexMatrix h1 = hybrid_hamiltonian(1, 1);
  ComplexMatrix expected1(2, 2);
  expected1 << 0.5, 1.0, 1.0, 0.5;
  CHECK(max_abs_diff(h1, expected1) < 1e-15);

  // N=4, d=2: X X I I + I I X X + 1 (qubits 0,1 then 2,3)
  const ComplexMatrix h4 = hybrid_hamiltonian(4, 2);
  CHECK(std::abs(h4(0b0000, 0b0011) - Complex(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(h4(0b0000, 0b1100) - Complex(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(h4(0b0000, 0b1111)) < 1e-15);
  CHECK(std::abs(h4(0b0101, 0b0110) - Complex(1.0, 0.0)) < 1e-15);
  for (int i = 0; i < 16; ++i) CHECK(h4(i, i).real() == doctest::Approx(1.0));

  // full-register evolution matches the product form once the constant-term
  // phase e^{-i d t / 2} is removed; the effective drive strength is 2
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> time(0.0, kPi);
  for (int n : {3, 4, 6}) {
    for (int d = 1; d <= n; ++d) {
      const ComplexMatrix h = hybrid_hamiltonian(n, d);
      ComplexVector down = ComplexVector::Zero(int64_t(1) << n);
      down(0) = 1.0;
      const double t = time(rng);
      const ComplexVector numeric = evolve(h, down, t);
      const ComplexVector analytic =
          std::exp(Complex(0.0, -0.5 * d * t)) * hybrid_evolved(n, d, 0.0, 2.0, t);
      CHECK((numeric - analytic).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("check_full_charging: accepted and rejected times") {
  const RealizedScheme su2 = build_su2(Su2Spec{3, 1.0, 0.0, 0.0});
  CHECK(check_full_charging(su2, kPi));

  const RealizedScheme ladder = build_tridiag3(3.0, 1.0);
  CHECK(check_full_charging(ladder, 0.5 * kPi));
  CHECK_FALSE(check_full_charging(ladder, 0.25 * kPi));

  const RealizedScheme parallel = build_parallel(ParallelSpec{4, {}, 1.0, 0.0});
  CHECK(check_full_charging(parallel, kPi));
  CHECK_FALSE(check_full_charging(parallel, 0.5 * kPi));
}

TEST_CASE("coefficient_trace: normalised along the trajectory") {
  std::vector<double> times;
  for (int i = 0; i <= 64; ++i) times.push_back(kPi * i / 64.0);
  for (const RealizedScheme& s :
       {build_su2(Su2Spec{5, 0.7, 0.4, 0.0}), build_tridiag3(7.0, 1.0),
        build_tridiag(TridiagSpec{{1.0, 2.0, 3.0}})}) {
    const CoefficientTrace trace = coefficient_trace(s, times);
    for (const auto& coeffs : trace.coeffs) {
      double norm2 = 0.0;
      for (const Complex& c : coeffs) norm2 += std::norm(c);
      CHECK(std::abs(norm2 - 1.0) <= kTol.coeff_norm);
    }
  }
}

TEST_CASE("attach_dicke_embedding: polarized ends, orthonormal columns") {
  RealizedScheme s = build_tridiag3(3.0, 1.0);  // n = d = 3, embedding auto-attached
  REQUIRE(s.embedding.has_value());
  const ComplexMatrix& e = *s.embedding;
  CHECK(std::abs(e(0, 0) - Complex(1.0, 0.0)) < 1e-15);          // u0 = all-down
  CHECK(std::abs(e(7, 3) - Complex(1.0, 0.0)) < 1e-15);          // u3 = all-up
  CHECK(max_abs_diff(e.adjoint() * e, ComplexMatrix::Identity(4, 4)) < 1e-12);

  RealizedScheme wide = build_su2(Su2Spec{2, 1.0, 0.0, 0.0, 5});
  CHECK_THROWS_AS(attach_dicke_embedding(wide), NoEmbedding);
}
