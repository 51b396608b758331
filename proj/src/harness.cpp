#include "qb/harness.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

namespace qb {

namespace {

constexpr double kPi = std::numbers::pi;

AuditStatus classify(long conj_rhs, int lb_max, std::optional<int> exact) {
  if (lb_max >= conj_rhs) return AuditStatus::verified_by_lb;
  if (exact) {
    return *exact >= conj_rhs ? AuditStatus::verified_by_oracle
                              : AuditStatus::falsified;
  }
  return AuditStatus::undetermined;
}

}  // namespace

std::string to_string(AuditStatus status) {
  switch (status) {
    case AuditStatus::verified_by_lb: return "verified_by_lb";
    case AuditStatus::verified_by_oracle: return "verified_by_oracle";
    case AuditStatus::undetermined: return "undetermined";
    case AuditStatus::falsified: return "falsified";
  }
  return "unknown";
}

ChargeReport report(const RealizedScheme& scheme, const ReportOptions& opts) {
  ChargeReport rep;
  rep.scheme = scheme.name();
  rep.n = scheme.n;
  rep.charge_time = charging_time(scheme, 0.0, opts.tol);
  rep.tau = qsl_tau(scheme).tau;
  const RateResult rate = make_rate_result(scheme.n, rep.tau, rep.charge_time);
  rep.eta = rate.eta;
  rep.gamma = rate.gamma;
  rep.conj_rhs = conjecture_rhs(scheme.n, rep.eta);
  const DepthCertificate cert = max_pair_product(scheme, opts.grid);
  rep.lb_max = cert.bound;
  rep.t_star = cert.t_star;
  const bool embeddable = scheme.product_structure || scheme.embedding.has_value();
  if (opts.want_exact && embeddable && scheme.n <= kTol.oracle_cap) {
    rep.exact_depth =
        resource_depth(scheme, opts.exact_grid, kTol.purity, DepthMode::exact);
  }
  rep.status = classify(rep.conj_rhs, rep.lb_max, rep.exact_depth);
  return rep;
}

std::vector<SweepRow> figure_sweep(int n_qubits, int m_max, int n_max, int grid,
                                   int threads) {
  if (n_qubits < 2) throw Error("figure_sweep: need at least two qubits");
  const auto ratios = tridiag3_admissible_ratios(m_max, n_max);
  std::vector<SweepRow> rows(ratios.size());

  auto fill_row = [&](size_t i) {
    const AdmissibleRatio& ratio = ratios[i];
    SweepRow& row = rows[i];
    row.case_tag = ratio.case_tag();
    row.m = ratio.m;
    row.n = ratio.n;
    row.k_num = ratio.k_num;
    row.k_den = ratio.k_den;
    row.lambda1 = ratio.lambda1;
    row.lambda2 = ratio.lambda2;
    row.closed_form_time = ratio.charge_time;

    const RealizedScheme scheme =
        build_tridiag3(ratio.lambda1, ratio.lambda2, n_qubits);
    const double width = 2.0 * ratio.lambda1;
    const double window = std::max(32.0 * kPi / width, 1.25 * ratio.charge_time);
    row.charge_time = charging_time(scheme, window);
    row.time_matches_closed_form =
        std::abs(row.charge_time - ratio.charge_time) <= 1e-8 * ratio.charge_time;

    row.tau = qsl_tau(scheme).tau;
    const RateResult rate = make_rate_result(n_qubits, row.tau, row.charge_time);
    row.eta = rate.eta;
    row.gamma = rate.gamma;
    row.conj_rhs = conjecture_rhs(n_qubits, row.eta);

    // lower bound from the closed-form pair product, scanned over [0, T]
    const double l1 = ratio.lambda1, l2 = ratio.lambda2;
    auto pair_product_at = [l1, l2](double t) {
      const Eigen::Vector4cd psi = tridiag3_analytic_state(l1, l2, t);
      return std::abs(psi(0) * psi(3));
    };
    const ScanMax peak = scan_max(pair_product_at, 0.0, row.charge_time, grid);
    row.lb_max = thm1_bound(n_qubits, peak.value);
    row.t_star = peak.t;
    row.status = classify(row.conj_rhs, row.lb_max, std::nullopt);
  };

  if (threads <= 1 || rows.size() < 2) {
    for (size_t i = 0; i < rows.size(); ++i) fill_row(i);
  } else {
    // rows are independent; output order is fixed by index regardless of
    // completion order
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    const int workers = std::min<int>(threads, int(rows.size()));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < rows.size(); i = next.fetch_add(1)) {
          fill_row(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  return rows;
}

Thm2Result thm2_check(int n, int d, int grid, double tol) {
  const RealizedScheme scheme = build_hybrid(HybridSpec{n, d, 0.0});
  Thm2Result result;
  result.expected = (n + d - 1) / d;
  result.lb_max = max_pair_product(scheme, std::max(grid, 256)).bound;
  result.exact_max = resource_depth(scheme, grid, tol, DepthMode::exact);
  result.pass =
      result.exact_max == result.expected && result.lb_max == result.expected;
  return result;
}

AuditSummary conjecture_audit(const std::vector<AuditStatus>& statuses) {
  AuditSummary s;
  for (AuditStatus st : statuses) {
    switch (st) {
      case AuditStatus::verified_by_lb: ++s.verified_by_lb; break;
      case AuditStatus::verified_by_oracle: ++s.verified_by_oracle; break;
      case AuditStatus::undetermined: ++s.undetermined; break;
      case AuditStatus::falsified: ++s.falsified; break;
    }
  }
  return s;
}

AuditSummary conjecture_audit(const std::vector<ChargeReport>& reports) {
  std::vector<AuditStatus> statuses;
  statuses.reserve(reports.size());
  for (const auto& r : reports) statuses.push_back(r.status);
  return conjecture_audit(statuses);
}

AuditSummary conjecture_audit(const std::vector<SweepRow>& rows) {
  std::vector<AuditStatus> statuses;
  statuses.reserve(rows.size());
  for (const auto& r : rows) statuses.push_back(r.status);
  return conjecture_audit(statuses);
}

}  // namespace qb
