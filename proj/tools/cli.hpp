#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qcap/experiments.hpp"

namespace qcap::cli {

// Process exit codes.
enum ExitCode : int { kOk = 0, kUsage = 2, kNumerics = 3, kValidation = 4 };

inline constexpr const char* kSchemaVersion = "1.0";
inline constexpr const char* kSweepHeader = "theta,sigma,p00,p01,p1_star,capacity_bits";

// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Shortest decimal form that parses back to the same double; never
// locale-dependent.
std::string format_double(double v);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(std::istream& is);

}  // namespace qcap::cli
