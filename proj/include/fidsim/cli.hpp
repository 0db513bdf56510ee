#ifndef FIDSIM_CLI_HPP
#define FIDSIM_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fidsim/fit.hpp"

// Command-line front end. Parsing and dispatch live in the library so the
// whole surface (exit codes, emitted bytes) is testable in-process.
//
// Exit codes: 0 success, 2 validation failure, 3 compute guard,
// 4 I/O failure, 1 unexpected internal error.

namespace fidsim::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Command { analytic, fermion, oracle, thermal, compare, moments, fit };
enum class OutputFormat { csv, json };

struct RunConfig {
  Command command = Command::analytic;

  int n_spins = 1;
  double coupling = 0.0;  // rad/s
  double t_max = 0.0;     // s
  int points = 256;

  std::optional<double> beta;
  bool raw = false;

  // fit
  std::string input_path;
  double d_min = 0.0;
  double d_max = 0.0;
  PulseCycleSpec cycle;
  bool synthetic = false;
  double true_d = 15.5e3;
  double amplitude = 1.0;
  double noise_sigma = 0.0;
  unsigned long long seed = 1;
  std::string emit_data_path;

  OutputFormat format = OutputFormat::csv;
  std::string out_path;  // empty = stdout
};

// Executes a validated config, writing the artifact to config.out_path or
// stdout. Throws fidsim errors; exit-code mapping happens in run().
void dispatch(const RunConfig& config);

// Parse argv (without the program name) and dispatch. Writes a
// machine-readable JSON error record to `err` on failure.
int run(const std::vector<std::string>& args, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& err);

// "%.17g" with C-locale '.' decimals; the fixed CSV float format.
std::string format_g17(double value);

}  // namespace fidsim::cli

#endif
