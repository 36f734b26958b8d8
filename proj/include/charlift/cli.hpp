#ifndef CHARLIFT_CLI_HPP
#define CHARLIFT_CLI_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace charlift {

// Exit codes: 0 success, 2 invalid or singular input, 3 verification
// failure, 4 timeout.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitVerifyFailed = 3;
inline constexpr int kExitTimeout = 4;

struct SweepRange {
  std::string coord;
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;
};

struct RunConfig {
  std::string command;         // eval | table | verify | chambers
  std::string group = "upq";   // upq | lift
  int p = 0, q = 0, n = 0;
  int m = 0, t = 0;
  std::map<std::string, double> coords;  // named bindings X1=..., X2=...
  std::vector<SweepRange> sweeps;        // at most 3
  std::string out_path;                  // empty = stdout
  std::string format = "json";           // csv | json
  std::string suite = "all";
  double tolerance = 0.0;  // 0 = suite default
  int nodes = 4096;
  std::uint64_t seed = 20240817;
  int threads = 0;  // 0 = CHARLIFT_THREADS env or hardware default
  int samples = 1000;
  double budget_seconds = 0.0;  // 0 = per-criterion defaults
};

// Parse argv-style arguments (without the program name) and run. All output
// goes through the supplied streams; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

int run_eval(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_table(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_chambers(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace charlift

#endif
