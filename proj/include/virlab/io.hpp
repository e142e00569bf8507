#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "virlab/bounds.hpp"
#include "virlab/coeff_seq.hpp"
#include "virlab/eta_expr.hpp"

namespace virlab {

/// 17 significant digits, enough to round-trip any binary64.
std::string format_double(double x);
/// "num/den", always with an explicit denominator.
std::string format_rat(const Rat& r);

nlohmann::json eta_to_json(const EtaExpr& e);
EtaExpr eta_from_json(const nlohmann::json& j);

/// `index,value` with exact "num/den" values.
std::string coeff_seq_csv(const CoeffSeq<Rat>& seq);
/// `index,value` with 17-digit floats.
std::string coeff_seq_csv(const CoeffSeq<double>& seq);
/// Reads an `index,value` file into a sequence whose base is the first index (0 or 1).
CoeffSeq<Rat> read_coeff_seq_csv(const std::filesystem::path& path);

struct TrajectoryRow {
  int k = 0;
  double t = 0;
  double eta = 0;
  std::string value_kind;
  std::string value;  ///< already formatted (exact or float)
};

/// `k,t,eta,value_kind,value`
std::string trajectory_csv(const std::vector<TrajectoryRow>& rows);
/// `eta,value,name`
std::string curve_csv(const std::vector<BoundCurve>& curves);

/// Writes through a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace virlab
