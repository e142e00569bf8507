#include "virlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "virlab/errors.hpp"

namespace virlab {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_rat(const Rat& r) { return r.num().get_str() + "/" + r.den().get_str(); }

nlohmann::json eta_to_json(const EtaExpr& e) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [key, c] : e.terms())
    terms.push_back({{"a", key.a}, {"m", key.m}, {"num", c.num().get_str()}, {"den", c.den().get_str()}});
  return {{"terms", terms}};
}

EtaExpr eta_from_json(const nlohmann::json& j) {
  try {
    EtaExpr e;
    for (const auto& t : j.at("terms")) {
      const mpz_class num(t.at("num").get<std::string>()), den(t.at("den").get<std::string>());
      if (den == 0) throw ParseError("zero denominator in EtaExpr JSON");
      e.add_term(t.at("a").get<int>(), t.at("m").get<int>(), Rat(num, den));
    }
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed EtaExpr JSON: ") + ex.what());
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed integer in EtaExpr JSON");
  }
}

std::string coeff_seq_csv(const CoeffSeq<Rat>& seq) {
  std::string out = "index,value\n";
  for (int k = seq.base(); k <= seq.order(); ++k) out += std::to_string(k) + "," + format_rat(seq[k]) + "\n";
  return out;
}

std::string coeff_seq_csv(const CoeffSeq<double>& seq) {
  std::string out = "index,value\n";
  for (int k = seq.base(); k <= seq.order(); ++k) out += std::to_string(k) + "," + format_double(seq[k]) + "\n";
  return out;
}

CoeffSeq<Rat> read_coeff_seq_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "index,value")
    throw ParseError(path.string() + ": expected header 'index,value'");
  std::vector<Rat> values;
  int base = -1, expected = 0, lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError(path.string() + ":" + std::to_string(lineno) + ": missing comma");
    int index = 0;
    try {
      index = std::stoi(line.substr(0, comma));
    } catch (const std::exception&) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": bad index");
    }
    if (base < 0) {
      if (index != 0 && index != 1) throw ParseError(path.string() + ": first index must be 0 or 1");
      base = expected = index;
    }
    if (index != expected) throw ParseError(path.string() + ":" + std::to_string(lineno) + ": indices must be consecutive");
    values.push_back(Rat::parse(line.substr(comma + 1)));
    ++expected;
  }
  if (base < 0) throw ParseError(path.string() + ": no coefficients");
  return CoeffSeq<Rat>(base, std::move(values));
}

std::string trajectory_csv(const std::vector<TrajectoryRow>& rows) {
  std::string out = "k,t,eta,value_kind,value\n";
  for (const auto& r : rows)
    out += std::to_string(r.k) + "," + format_double(r.t) + "," + format_double(r.eta) + "," +
           r.value_kind + "," + r.value + "\n";
  return out;
}

std::string curve_csv(const std::vector<BoundCurve>& curves) {
  std::string out = "eta,value,name\n";
  for (const auto& c : curves)
    for (const auto& [e, v] : c.samples) out += format_double(e) + "," + format_double(v) + "," + c.name + "\n";
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("IOError", "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("IOError", "write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

}  // namespace virlab
