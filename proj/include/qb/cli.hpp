#pragma once
// Command-line front end and the serialisers behind it. Output is
// bit-stable: floats are printed with 17 significant digits and key order
// is fixed, so identical invocations produce identical bytes.

#include "qb/harness.hpp"

#include <string>
#include <vector>

namespace qb {

enum class EmitFormat { json, csv };

std::string format_double(double x);  // %.17g

std::string to_json(const ChargeReport& report);
std::string to_json(const std::vector<SweepRow>& rows);
std::string to_csv(const std::vector<SweepRow>& rows);  // pinned column header
std::string to_json(const OracleResult& oracle, int n);
std::string to_json(const PairCoefficients& pair, int n, int bound);
std::string to_json(const Thm2Result& result, int n, int d);

// Writes to the path, or stdout when the path is empty.
void emit(const std::string& payload, const std::string& out_path);

// exit codes: 0 ok, 1 error, 2 falsified conjecture status, 64 usage
int cli_run(int argc, const char* const* argv);

}  // namespace qb
