#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace virlab {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;  ///< key measured values, then the first failed checks
};

/// Evaluates the eleven acceptance criteria. Figure CSVs for visual comparison go to
/// `figure_dir`.
std::vector<CriterionResult> evaluate_acceptance(const std::filesystem::path& figure_dir);

/// Prints one line per criterion and returns true when all pass.
bool run_acceptance(std::ostream& out, const std::filesystem::path& figure_dir);

}  // namespace virlab
