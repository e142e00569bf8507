#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "virlab/rat.hpp"

namespace virlab::cli {

enum class Command { coeffs, mayer, bounds, polys, invert, models, figures, selftest };
enum class Mode { exact, floating };
enum class Format { csv, json };

/// `start:stop:step`, inclusive of `stop` up to rounding.
struct GridSpec {
  double start = 0;
  double stop = 0;
  double step = 0;
  std::vector<double> points() const;
};

GridSpec parse_grid(const std::string& text);

struct RunConfig {
  Command command = Command::coeffs;
  int K = 12;
  Rat epsilon{1, 2};
  std::optional<Rat> eta;
  std::optional<double> t;
  std::optional<GridSpec> grid;
  Mode mode = Mode::exact;
  Format format = Format::csv;
  std::filesystem::path out;  ///< empty: standard output (a directory for figures/selftest)

  std::string kind;                    ///< coefficient kind; empty picks the command default
  std::string curve = "kappa";         ///< bounds
  std::string from = "beta";           ///< invert
  std::filesystem::path input;         ///< invert
  std::string model = "hard_sphere";   ///< models
  std::optional<int> k;                ///< polys: a single family index
  double kappa_stab = 1;               ///< bounds --curve lp
  double B = 1;                        ///< bounds --curve lp
};

/// Bad flags, values or commands; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by parse_cli for `--help`; carries the full help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string>& command_names();

/// Arguments after the program name.
RunConfig parse_cli(const std::vector<std::string>& args);

/// Executes a validated configuration and returns the exit code (selftest returns 1 when a
/// criterion fails). Engine errors propagate as virlab::Error.
int run(const RunConfig& config, std::ostream& out);

/// parse_cli + run with the documented exit codes: 0 ok, 1 engine error (the error name and
/// message on `err`), 2 usage error.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Thread cap from VIRIAL_LAB_THREADS, falling back to the hardware concurrency.
int thread_budget();

}  // namespace virlab::cli
