#include "qb/cli.hpp"

#include <CLI11.hpp>

#include <bit>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace qb {

namespace {

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

std::string json_int_or_null(const std::optional<int>& v) {
  return v ? std::to_string(*v) : std::string("null");
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_json(const ChargeReport& r) {
  std::ostringstream os;
  os << "{\n"
     << "  \"scheme\": \"" << r.scheme << "\",\n"
     << "  \"n\": " << r.n << ",\n"
     << "  \"T\": " << format_double(r.charge_time) << ",\n"
     << "  \"tau\": " << format_double(r.tau) << ",\n"
     << "  \"eta\": " << format_double(r.eta) << ",\n"
     << "  \"gamma\": " << format_double(r.gamma) << ",\n"
     << "  \"conj_rhs\": " << r.conj_rhs << ",\n"
     << "  \"lb_max\": " << r.lb_max << ",\n"
     << "  \"t_star\": " << format_double(r.t_star) << ",\n"
     << "  \"exact_depth\": " << json_int_or_null(r.exact_depth) << ",\n"
     << "  \"status\": \"" << to_string(r.status) << "\",\n"
     << "  \"ml_convention\": \"ground-shifted\"\n"
     << "}\n";
  return os.str();
}

namespace {

void append_row_fields(std::ostringstream& os, const SweepRow& row, char sep) {
  os << row.case_tag << sep << row.m << sep << row.n << sep << row.k_num << sep
     << row.k_den << sep << format_double(row.lambda1) << sep
     << format_double(row.lambda2) << sep << format_double(row.charge_time) << sep
     << format_double(row.tau) << sep << format_double(row.eta) << sep
     << format_double(row.gamma) << sep << row.conj_rhs << sep << row.lb_max << sep
     << format_double(row.t_star) << sep << to_string(row.status);
}

}  // namespace

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "case,m,n,k_num,k_den,lambda1,lambda2,T,tau_qsl,eta,gamma,conj_rhs,"
        "lb_max,t_star,status\n";
  for (const SweepRow& row : rows) {
    append_row_fields(os, row, ',');
    os << "\n";
  }
  return os.str();
}

std::string to_json(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& row = rows[i];
    os << (i ? ",\n " : "\n ") << "{\"case\": \"" << row.case_tag
       << "\", \"m\": " << row.m << ", \"n\": " << row.n
       << ", \"k_num\": " << row.k_num << ", \"k_den\": " << row.k_den
       << ", \"lambda1\": " << format_double(row.lambda1)
       << ", \"lambda2\": " << format_double(row.lambda2)
       << ", \"T\": " << format_double(row.charge_time)
       << ", \"tau_qsl\": " << format_double(row.tau)
       << ", \"eta\": " << format_double(row.eta)
       << ", \"gamma\": " << format_double(row.gamma)
       << ", \"conj_rhs\": " << row.conj_rhs << ", \"lb_max\": " << row.lb_max
       << ", \"t_star\": " << format_double(row.t_star) << ", \"status\": \""
       << to_string(row.status) << "\"}";
  }
  os << "\n]\n";
  return os.str();
}

std::string to_json(const OracleResult& oracle, int n) {
  std::ostringstream os;
  os << "{\"n\": " << n << ", \"depth\": " << oracle.depth
     << ", \"separability\": " << oracle.separability << ", \"witness\": [";
  const auto blocks = oracle.witness_blocks();
  for (size_t b = 0; b < blocks.size(); ++b) {
    os << (b ? ", [" : "[");
    for (size_t q = 0; q < blocks[b].size(); ++q) {
      os << (q ? ", " : "") << blocks[b][q];
    }
    os << "]";
  }
  os << "]}\n";
  return os.str();
}

std::string to_json(const PairCoefficients& pair, int n, int bound) {
  std::ostringstream os;
  os << "{\"n\": " << n << ", \"p0\": [" << format_double(pair.p0.real()) << ", "
     << format_double(pair.p0.imag()) << "], \"pbar\": ["
     << format_double(pair.pbar.real()) << ", " << format_double(pair.pbar.imag())
     << "], \"product\": " << format_double(pair.product)
     << ", \"bound\": " << bound << "}\n";
  return os.str();
}

std::string to_json(const Thm2Result& result, int n, int d) {
  std::ostringstream os;
  os << "{\"n\": " << n << ", \"d\": " << d << ", \"expected\": " << result.expected
     << ", \"lb_max\": " << result.lb_max << ", \"exact_max\": " << result.exact_max
     << ", \"pass\": " << (result.pass ? "true" : "false") << "}\n";
  return os.str();
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + out_path);
  out << payload;
}

int cli_run(int argc, const char* const* argv) {
  CLI::App app{"quantum-battery charging simulator and depth certifier"};
  app.require_subcommand(1);

  // common flags
  int n_qubits = 0;
  int grid = 4096;
  double tol = kTol.full_charging;
  std::string out_path;
  std::string format = "json";
  int threads = 1;
  bool format_given = false;
  auto add_common = [&](CLI::App* cmd, bool with_n = true) {
    if (with_n) cmd->add_option("--n", n_qubits, "battery cells");
    cmd->add_option("--grid", grid, "time-scan resolution");
    cmd->add_option("--tol", tol, "full-charging tolerance");
    cmd->add_option("--out", out_path, "output path (default stdout)");
    cmd->add_option("--format", format, "json|csv (default json, or csv when --out ends in .csv)")
        ->check(CLI::IsMember({"json", "csv"}))
        ->each([&](const std::string&) { format_given = true; });
    cmd->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* su2 = app.add_subcommand("su2", "SU(2) ladder charging scheme");
  int d = 1;
  double alpha1 = 1.0, alpha2 = 0.0, alpha3 = 0.0;
  su2->add_option("--d", d, "ladder length")->required();
  su2->add_option("--alpha1", alpha1, "jx drive");
  su2->add_option("--alpha2", alpha2, "jy drive");
  su2->add_option("--alpha3", alpha3, "jz drive (must be 0 to fully charge)");
  add_common(su2);

  auto* parallel = app.add_subcommand("parallel", "fully parallel charging scheme");
  std::string k_list;
  double alpha_base = 1.0, theta = 0.0;
  parallel->add_option("--k", k_list, "comma-separated winding integers");
  parallel->add_option("--alpha-base", alpha_base, "coupling of the first cell");
  parallel->add_option("--theta", theta, "drive phase");
  add_common(parallel);

  auto* tridiag = app.add_subcommand("tridiag", "tridiagonal ladder scheme");
  std::string b_list;
  tridiag->add_option("--b", b_list, "comma-separated couplings")->required();
  add_common(tridiag);

  auto* tridiag3 = app.add_subcommand("tridiag3", "mirror-symmetric d=3 scheme");
  double lambda1 = 3.0, lambda2 = 1.0;
  tridiag3->add_option("--lambda1", lambda1, "larger eigenvalue")->required();
  tridiag3->add_option("--lambda2", lambda2, "smaller eigenvalue")->required();
  add_common(tridiag3);

  auto* hybrid = app.add_subcommand("hybrid", "k-body block scheme");
  int hybrid_d = 1;
  double emit_t = -1.0;
  std::string emit_state;
  hybrid->add_option("--d", hybrid_d, "ladder length")->required();
  hybrid->add_option("--t", emit_t, "time of the emitted state (default T/2)");
  hybrid->add_option("--emit-state", emit_state, "write the register state here");
  add_common(hybrid);

  auto* sweep = app.add_subcommand("sweep", "d=3 admissible-ratio figure sweep");
  int m_max = 5, n_max = 5;
  sweep->add_option("--m-max", m_max, "case range in m");
  sweep->add_option("--n-max", n_max, "case range in n");
  add_common(sweep);

  auto* oracle = app.add_subcommand("oracle", "exact depth of a state file");
  std::string state_path;
  double purity_tol = kTol.purity;
  oracle->add_option("--state", state_path, "state JSON file")->required();
  oracle->add_option("--purity-tol", purity_tol, "pure-subset tolerance");
  add_common(oracle, false);

  auto* thm1 = app.add_subcommand("thm1", "pair-product bound of a state file");
  thm1->add_option("--state", state_path, "state JSON file")->required();
  add_common(thm1, false);

  auto* thm2 = app.add_subcommand("thm2", "hybrid tightness check");
  thm2->add_option("--d", hybrid_d, "ladder length")->required();
  add_common(thm2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 64;
  }

  try {
    if (!format_given && out_path.size() > 4 &&
        out_path.compare(out_path.size() - 4, 4, ".csv") == 0) {
      format = "csv";
    }
    std::vector<AuditStatus> statuses;
    ReportOptions opts;
    opts.grid = grid;
    opts.tol = tol;

    auto emit_report = [&](const RealizedScheme& scheme) {
      const ChargeReport rep = report(scheme, opts);
      statuses.push_back(rep.status);
      emit(to_json(rep), out_path);
    };

    if (*su2) {
      emit_report(build_su2(Su2Spec{d, alpha1, alpha2, alpha3, n_qubits}));
    } else if (*parallel) {
      ParallelSpec spec;
      spec.k = parse_int_list(k_list);
      spec.n = n_qubits > 0 ? n_qubits : int(spec.k.size());
      if (spec.n < 1) throw Error("parallel: give --n or --k");
      spec.alpha_base = alpha_base;
      spec.theta = theta;
      emit_report(build_parallel(spec));
    } else if (*tridiag) {
      emit_report(build_tridiag(TridiagSpec{parse_double_list(b_list), n_qubits}));
    } else if (*tridiag3) {
      emit_report(build_tridiag3(lambda1, lambda2, n_qubits));
    } else if (*hybrid) {
      if (n_qubits < 1) throw Error("hybrid: --n is required");
      const RealizedScheme scheme = build_hybrid(HybridSpec{n_qubits, hybrid_d, 0.0});
      if (!emit_state.empty()) {
        const double t_charge = charging_time(scheme);
        const double t = emit_t >= 0.0 ? emit_t : 0.5 * t_charge;
        write_state_json(emit_state, register_state(scheme, t));
      }
      emit_report(scheme);
    } else if (*sweep) {
      if (n_qubits < 2) throw Error("sweep: --n is required (>= 2)");
      const auto rows = figure_sweep(n_qubits, m_max, n_max, grid, threads);
      for (const SweepRow& row : rows) {
        statuses.push_back(row.status);
        if (!row.time_matches_closed_form) {
          std::cerr << "note: case (" << row.case_tag << ", m=" << row.m
                    << ", n=" << row.n << ") charges at T=" << row.charge_time
                    << ", earlier than the closed form " << row.closed_form_time
                    << "\n";
        }
      }
      emit(format == "csv" ? to_csv(rows) : to_json(rows), out_path);
    } else if (*oracle) {
      const ComplexVector psi = read_state_json(state_path);
      const int n = int(std::countr_zero(uint64_t(psi.size())));
      emit(to_json(exact_depth(psi, purity_tol), n), out_path);
    } else if (*thm1) {
      const ComplexVector psi = read_state_json(state_path);
      const int n = int(std::countr_zero(uint64_t(psi.size())));
      const PairCoefficients pair = pair_product(psi, LocalPair::z_pair(n));
      emit(to_json(pair, n, thm1_bound(n, pair.product)), out_path);
    } else if (*thm2) {
      if (n_qubits < 1) throw Error("thm2: --n is required");
      const Thm2Result result = thm2_check(n_qubits, hybrid_d, std::min(grid, 128));
      emit(to_json(result, n_qubits, hybrid_d), out_path);
      if (!result.pass) return 1;
    }

    for (AuditStatus st : statuses) {
      if (st == AuditStatus::falsified) return 2;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qb
