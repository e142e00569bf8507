#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace virlab {

struct FigureJob {
  std::string file;
  std::string description;
  std::function<std::string()> render;
};

/// The nine figure-data files, each rendered deterministically.
std::vector<FigureJob> figure_jobs();

/// Renders every job (at most `threads` at a time) and writes the files into `dir`, plus a
/// `figures.meta.json` sidecar listing what each file holds. Returns the written paths.
std::vector<std::filesystem::path> write_figures(const std::filesystem::path& dir, int threads);

}  // namespace virlab
