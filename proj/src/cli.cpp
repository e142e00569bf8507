#include "virlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "virlab/acceptance.hpp"
#include "virlab/bounds.hpp"
#include "virlab/cluster.hpp"
#include "virlab/engines.hpp"
#include "virlab/errors.hpp"
#include "virlab/figures.hpp"
#include "virlab/io.hpp"
#include "virlab/models.hpp"

namespace virlab::cli {

using nlohmann::json;

std::vector<double> GridSpec::points() const {
  // Tolerate rounding in (stop - start)/step so that 0:1:0.001 ends exactly at 1.
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  std::vector<double> p;
  p.reserve(static_cast<std::size_t>(n + 1));
  for (long i = 0; i <= n; ++i) p.push_back(start + static_cast<double>(i) * step);
  if (std::abs(p.back() - stop) < 1e-9 * step) p.back() = stop;
  return p;
}

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  char c1 = 0, c2 = 0;
  std::istringstream is(text);
  if (!(is >> g.start >> c1 >> g.stop >> c2 >> g.step) || c1 != ':' || c2 != ':' || !is.eof())
    throw UsageError("grid must be start:stop:step, got '" + text + "'");
  if (!(g.step > 0) || !(g.stop >= g.start) || !std::isfinite(g.stop))
    throw UsageError("grid must be non-empty and increasing: " + text);
  return g;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"coeffs", "mayer",   "bounds",  "polys",
                                              "invert", "models",  "figures", "selftest"};
  return names;
}

int thread_budget() {
  if (const char* env = std::getenv("VIRIAL_LAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(std::min(v, 256L));
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

namespace {

// Formula map shown by --help, keyed by command.
const std::map<std::string, std::string> kFormulas{
    {"coeffs",
     "  gamma_1 = -lambda, lambda = (1 - eta)/(2 eps), eta = exp(-2 eps t)\n"
     "  gamma_k = -k(k+1) eta^N int_eta^1 u^(-N-1) h_k du, N = k(k+1)/2\n"
     "  h_k = eps sum_{n>=2} (gamma^{*n})_k\n"
     "  delta_k = gamma_k/lambda^k, beta_k = gamma_k/k\n"},
    {"mayer",
     "  q_0 = 1, q_k = -(k+1)/2 eta^N int_eta^1 u^(-N-1) (q*q)_{k-1} du\n"
     "  c_k = (-1)^k q_k/lambda^k, b_{k+1} = q_k/(k+1), c_k(t=0) = (k+1)^k/(k+1)!\n"},
    {"bounds",
     "  kappa(eta) = (2 + sqrt(1-eta) - 2 sqrt(1 - eta/2 + sqrt(1-eta)))/(1+eta)\n"
     "  R_minus_minus: smallest root of (1 - r^2 - eta r^2)^2 - 8(r(1-r)^2 - eta r^2 (1-r))\n"
     "  r_minus_minus = (1 - sqrt(1 - (12 - 8 sqrt 2) eta))/(2 eta)\n"
     "  threshold: R_minus_minus(eta*) = W(1/e)\n"
     "  lp: max_w ((1+kappa) e^-w - 1) w/(kappa^2 B)\n"
     "  majorant_h: Psi = u + 2 Psi^2 - u Psi, u = r - eta r^2, at --eta\n"},
    {"polys",
     "  p_{k,n} = prod_{j=1}^n (D-j+1)/(N-j), D = (k-2)(k+1)/2, N = k(k+1)/2\n"
     "  Q_k = 1 - (1-eta) P_k, T_k = Q_k + (k-1)(1-eta) Q_{k+1}, T_2 = eta\n"
     "  R_k: same product with D = k(k-1)/2, L_k = (1 - (k-1)eta/(k+1)) R_k - 1\n"},
    {"invert",
     "  b_l = l^-2 sum_{n_1+2n_2+...=l-1} prod_i (l beta_i)^{n_i}/n_i!\n"
     "  beta_k = sum_{n_2+2n_3+...=k} (-1)^{sum n - 1} (k + sum n - 1)!/k! prod_i (i b_i)^{n_i}/n_i!\n"},
    {"models",
     "  hard_sphere: z = rho e^rho, P = rho + rho^2/2\n"
     "  ford: P = log(1/(1-rho)) | log 2 | log((rho-1)/(2-rho)^2)\n"
     "  limits: P -> rho (t->0), rho + t rho^2/2 (eps->0), -2 eps log(1 - rho/2eps) (t->inf)\n"
     "  mayer_majorant: -W(-x)/x = sum (k+1)^k/(k+1)! x^k\n"},
    {"figures",
     "  fig_kappa, fig3, fig5, figL, fig1, fig2, fig6, fig7, figq (.csv) + figures.meta.json\n"},
    {"selftest", "  the eleven acceptance criteria, one PASS/FAIL line each\n"},
};

std::string all_formulas() {
  std::string s = "Formula map:\n";
  for (const auto& name : command_names()) s += " " + name + ":\n" + kFormulas.at(name);
  return s;
}

Rat parse_rat(const std::string& text, const char* what) {
  try {
    return Rat::parse(text);
  } catch (const Error& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
}

/// Emits to --out (atomically) or to the stream; returns the success exit code.
int emit(const RunConfig& c, std::ostream& out, const std::string& text) {
  if (c.out.empty())
    out << text;
  else
    write_file_atomic(c.out, text);
  return 0;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// The evaluation points of a coefficient command, as physical times.
std::vector<double> time_points(const RunConfig& c) {
  if (c.t) return {*c.t};
  if (c.grid) return c.grid->points();
  if (c.eta) return {-std::log(c.eta->to_double()) / (2 * c.epsilon.to_double())};
  return {};
}

struct ExactTable {
  CoeffSeq<EtaExpr> seq;
  std::string kind;
};

ExactTable exact_table(const RunConfig& c, bool virial) {
  ModelParams p;
  p.K = c.K;
  p.epsilon = c.epsilon;
  if (virial) {
    const auto v = virial_exact(p);
    if (c.kind == "gamma") return {v.gamma, "gamma"};
    if (c.kind == "beta") return {v.beta, "beta"};
    return {v.delta, "delta"};
  }
  const auto m = mayer_exact(p);
  if (c.kind == "q") return {m.q, "q"};
  if (c.kind == "b") return {m.b, "b"};
  return {m.c, "c"};
}

int coefficients(const RunConfig& c, std::ostream& out, bool virial) {
  const std::vector<double> times = time_points(c);

  if (c.mode == Mode::exact) {
    const auto table = exact_table(c, virial);
    const auto& seq = table.seq;
    if (c.eta && !c.t && !c.grid) {
      // A rational η keeps the values exact.
      std::vector<Rat> vals;
      for (int k = seq.base(); k <= seq.order(); ++k) vals.push_back(seq[k].eval_exact(*c.eta));
      const CoeffSeq<Rat> r(seq.base(), vals);
      if (c.format == Format::csv) return emit(c, out, coeff_seq_csv(r));
      json j{{"kind", table.kind}, {"epsilon", format_rat(c.epsilon)}, {"eta", format_rat(*c.eta)}};
      for (int k = r.base(); k <= r.order(); ++k) j["values"].push_back({{"index", k}, {"value", format_rat(r[k])}});
      return emit(c, out, dump(j));
    }
    if (times.empty()) {
      if (c.format == Format::csv) {
        std::string s = "index,value\n";
        for (int k = seq.base(); k <= seq.order(); ++k) s += std::to_string(k) + "," + seq[k].str() + "\n";
        return emit(c, out, s);
      }
      json j{{"kind", table.kind}, {"epsilon", format_rat(c.epsilon)}, {"variable", "eta"}};
      j["coefficients"] = json::array();
      for (int k = seq.base(); k <= seq.order(); ++k)
        j["coefficients"].push_back({{"index", k}, {"expr", eta_to_json(seq[k])}});
      return emit(c, out, dump(j));
    }
    std::vector<TrajectoryRow> rows;
    json j{{"kind", table.kind}, {"epsilon", format_rat(c.epsilon)}, {"rows", json::array()}};
    for (double t : times) {
      const double eta = std::exp(-2 * c.epsilon.to_double() * t);
      for (int k = seq.base(); k <= seq.order(); ++k) {
        const double v = seq[k].eval(eta);
        rows.push_back({k, t, eta, table.kind, format_double(v)});
        j["rows"].push_back({{"k", k}, {"t", t}, {"eta", eta}, {"value", v}});
      }
    }
    return emit(c, out, c.format == Format::csv ? trajectory_csv(rows) : dump(j));
  }

  if (times.empty()) throw UsageError("float mode needs --eta, --t or --grid");
  ModelParams p;
  p.K = c.K;
  p.epsilon = c.epsilon;
  std::vector<double> grid = times;
  std::sort(grid.begin(), grid.end());
  if (grid.front() < 0) throw UsageError("times must be nonnegative");
  const auto tr = numeric_trajectories(p, grid, virial ? Side::virial : Side::mayer);
  const std::string kind = c.kind.empty() ? (virial ? "delta" : "c") : c.kind;
  std::vector<TrajectoryRow> rows;
  json j{{"kind", kind}, {"epsilon", format_rat(c.epsilon)}, {"rows", json::array()}};
  auto add = [&](int k, std::size_t i, double v) {
    const double t = grid[i], eta = std::exp(-2 * c.epsilon.to_double() * t);
    rows.push_back({k, t, eta, kind, format_double(v)});
    j["rows"].push_back({{"k", k}, {"t", t}, {"eta", eta}, {"value", v}});
  };
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (virial) {
      for (int k = 1; k <= c.K; ++k) {
        const double g = tr.primary[k][i];
        add(k, i, kind == "gamma" ? g : kind == "beta" ? g / k : tr.normalized[k][i]);
      }
    } else if (kind == "b") {
      for (int k = 0; k <= c.K; ++k) add(k + 1, i, tr.primary[k][i] / (k + 1));
    } else {
      for (int k = 0; k <= c.K; ++k) add(k, i, kind == "q" ? tr.primary[k][i] : tr.normalized[k][i]);
    }
  }
  return emit(c, out, c.format == Format::csv ? trajectory_csv(rows) : dump(j));
}

std::string name_value_csv(const std::vector<std::pair<std::string, double>>& rows) {
  std::string s = "name,value\n";
  for (const auto& [n, v] : rows) s += n + "," + format_double(v) + "\n";
  return s;
}

int emit_pairs(const RunConfig& c, std::ostream& out, const std::vector<std::pair<std::string, double>>& rows) {
  if (c.format == Format::csv) return emit(c, out, name_value_csv(rows));
  json j = json::object();
  for (const auto& [n, v] : rows) j[n] = v;
  return emit(c, out, dump(j));
}

int bounds_command(const RunConfig& c, std::ostream& out) {
  if (c.curve == "threshold") {
    const auto th = threshold_solve();
    return emit_pairs(c, out, {{"eta_star", th.eta_star},
                               {"epsilon_t_star", th.epsilon_t_star},
                               {"minus_log_eta_star", th.minus_log_eta_star}});
  }
  if (c.curve == "lp") {
    const auto lp = lp_bounds(c.kappa_stab, c.B);
    return emit_pairs(c, out, {{"R0", lp.R0}, {"w_star", lp.w_star}});
  }
  if (c.curve == "majorant_h") {
    if (!c.eta) throw UsageError("--curve majorant_h needs --eta");
    const auto h = majorant_h(*c.eta, c.K);
    const auto& cs = h.series.coefficients();
    if (c.format == Format::csv) {
      if (c.mode == Mode::exact) return emit(c, out, coeff_seq_csv(cs));
      std::vector<double> d;
      for (int k = cs.base(); k <= cs.order(); ++k) d.push_back(cs[k].to_double());
      return emit(c, out, coeff_seq_csv(CoeffSeq<double>(cs.base(), d)));
    }
    json j{{"eta", format_rat(*c.eta)}, {"smallest_positive_root", h.smallest_positive}};
    for (int k = cs.base(); k <= cs.order(); ++k)
      j["coefficients"].push_back({{"index", k}, {"value", format_rat(cs[k])}});
    return emit(c, out, dump(j));
  }

  std::function<double(double)> f;
  if (c.curve == "kappa")
    f = kappa;
  else if (c.curve == "R_minus_minus")
    f = [](double eta) { return majorant_h1(eta).smallest; };
  else if (c.curve == "r_minus_minus")
    f = r_minus_minus;
  else
    throw UsageError("unknown curve '" + c.curve +
                     "' (kappa, R_minus_minus, r_minus_minus, threshold, lp, majorant_h)");
  const auto grid = c.grid ? c.grid->points() : unit_grid(1000);
  if (grid.front() < 0 || grid.back() > 1) throw UsageError("eta grid must lie in [0, 1]");
  const auto curve = sample_curve(c.curve, f, grid);
  if (c.format == Format::csv) return emit(c, out, curve_csv({curve}));
  json j{{"name", curve.name}, {"samples", json::array()}};
  for (const auto& [x, y] : curve.samples) j["samples"].push_back({x, y});
  return emit(c, out, dump(j));
}

int polys_command(const RunConfig& c, std::ostream& out) {
  const int lo = c.k ? *c.k : 2;
  const int hi = c.k ? *c.k : c.K;
  if (lo < 2) throw UsageError("polynomial families start at k = 2");
  std::string s = "k,family,n,value\n";
  json j = json::array();
  for (int k = lo; k <= hi; ++k) {
    const auto f = poly_family(k);
    const std::vector<std::pair<const char*, const std::vector<Rat>*>> fams{
        {"P", &f.P}, {"Q", &f.Q}, {"T", &f.T}, {"R", &f.R}, {"L", &f.L}, {"t", &f.t}};
    for (const auto& [name, coeffs] : fams) {
      json jc = json::array();
      for (std::size_t n = 0; n < coeffs->size(); ++n) {
        const Rat& v = (*coeffs)[n];
        const std::string text = c.mode == Mode::exact ? format_rat(v) : format_double(v.to_double());
        s += std::to_string(k) + "," + name + "," + std::to_string(n) + "," + text + "\n";
        jc.push_back(text);
      }
      j.push_back({{"k", k}, {"family", name}, {"coefficients", jc}});
    }
  }
  return emit(c, out, c.format == Format::csv ? s : dump(j));
}

int invert_command(const RunConfig& c, std::ostream& out) {
  if (c.input.empty()) throw UsageError("invert needs --input");
  const auto in = read_coeff_seq_csv(c.input);
  CoeffSeq<Rat> res;
  if (c.from == "beta") {
    res = b_from_beta(in, c.K + 1);
  } else if (c.from == "b") {
    res = beta_from_b(in, c.K);
  } else {
    throw UsageError("--from must be beta or b");
  }
  if (c.format == Format::csv) {
    if (c.mode == Mode::exact) return emit(c, out, coeff_seq_csv(res));
    std::vector<double> d;
    for (const Rat& v : res.values()) d.push_back(v.to_double());
    return emit(c, out, coeff_seq_csv(CoeffSeq<double>(res.base(), d)));
  }
  json j{{"kind", c.from == "beta" ? "b" : "beta"}, {"values", json::array()}};
  for (int k = res.base(); k <= res.order(); ++k) j["values"].push_back({{"index", k}, {"value", format_rat(res[k])}});
  return emit(c, out, dump(j));
}

int models_command(const RunConfig& c, std::ostream& out) {
  if (c.model == "mayer_majorant") {
    const CoeffSeq<Rat> r(0, mayer_majorant_coefficients(c.K));
    return emit(c, out, coeff_seq_csv(r));
  }
  std::vector<std::string> cols;
  std::function<std::vector<std::string>(double)> row;
  GridSpec def{0, 0.5, 0.01};
  if (c.model == "hard_sphere") {
    cols = {"rho", "z", "pressure"};
    row = [](double r) {
      return std::vector<std::string>{format_double(hard_sphere::zmap(r)), format_double(hard_sphere::pressure(r))};
    };
  } else if (c.model == "ford") {
    cols = {"rho", "P", "F", "branch"};
    def = {0, 1.99, 0.01};
    row = [](double r) {
      const auto f = ford_model(r);
      return std::vector<std::string>{format_double(f.P), format_double(f.F), f.branch};
    };
  } else if (c.model == "limits") {
    cols = {"rho", "t0", "eps0", "tinf"};
    const double t = c.t.value_or(1.0), eps = c.epsilon.to_double();
    def = {0, eps, eps / 50};
    row = [t, eps](double r) {
      const auto l = limit_pressures(t, eps, r);
      return std::vector<std::string>{format_double(l.t0), format_double(l.eps0), format_double(l.tinf)};
    };
  } else {
    throw UsageError("unknown model '" + c.model + "' (hard_sphere, ford, limits, mayer_majorant)");
  }
  const auto grid = (c.grid ? *c.grid : def).points();
  std::string s;
  for (std::size_t i = 0; i < cols.size(); ++i) s += (i ? "," : "") + cols[i];
  s += "\n";
  json j = json::array();
  for (double r : grid) {
    const auto vals = row(r);
    s += format_double(r);
    json jr{{cols[0], r}};
    for (std::size_t i = 0; i < vals.size(); ++i) {
      s += "," + vals[i];
      jr[cols[i + 1]] = vals[i];
    }
    s += "\n";
    j.push_back(jr);
  }
  return emit(c, out, c.format == Format::csv ? s : dump(j));
}

}  // namespace

RunConfig parse_cli(const std::vector<std::string>& args) {
  const auto& names = command_names();
  auto valid_list = [&] {
    std::string s;
    for (const auto& n : names) s += (s.empty() ? "" : ", ") + n;
    return s;
  };
  if (!args.empty() && !args[0].empty() && args[0][0] != '-' &&
      std::find(names.begin(), names.end(), args[0]) == names.end())
    throw UsageError("unknown command '" + args[0] + "'; valid commands: " + valid_list());

  CLI::App app{"Exact and numeric virial/Mayer coefficients of the mean-field model", "virial_lab"};
  app.footer(all_formulas());
  app.require_subcommand(1, 1);

  RunConfig c;
  std::string eps_text, eta_text, grid_text, mode_text = "exact", format_text = "csv", out_text,
                                             input_text;
  std::optional<double> t;
  std::optional<int> k;

  std::map<std::string, CLI::App*> subs;
  const std::map<std::string, std::string> blurbs{
      {"coeffs", "virial-side coefficients gamma_k, delta_k, beta_k"},
      {"mayer", "Mayer-side coefficients q_k, c_k, b_k"},
      {"bounds", "radius bounds, thresholds and majorant curves"},
      {"polys", "exact polynomial families P, Q, T, R, L and the t_{k,n} coefficients"},
      {"invert", "convert between irreducible (beta) and Mayer (b) coefficients"},
      {"models", "hard spheres, Ford model, limit pressures, Mayer majorant"},
      {"figures", "write every figure-data CSV into --out"},
      {"selftest", "run the acceptance criteria"},
  };
  for (const auto& name : names) {
    CLI::App* s = app.add_subcommand(name, blurbs.at(name));
    s->footer("Formulas:\n" + kFormulas.at(name));
    s->add_option("--K", c.K, "highest coefficient index")->check(CLI::PositiveNumber);
    s->add_option("--epsilon", eps_text, "epsilon as p/q (default 1/2)");
    s->add_option("--mode", mode_text, "exact | float")->check(CLI::IsMember({"exact", "float"}));
    s->add_option("--format", format_text, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--out", out_text, "output file (directory for figures/selftest)");
    if (name != "figures" && name != "selftest" && name != "invert") {
      s->add_option("--eta", eta_text, "single eta, decimal or p/q");
      s->add_option("--t", t, "single time");
      s->add_option("--grid", grid_text, "start:stop:step (t for coefficients, eta for curves, rho for models)");
    }
    subs[name] = s;
  }
  subs["coeffs"]->add_option("--kind", c.kind, "delta | gamma | beta")->check(CLI::IsMember({"delta", "gamma", "beta"}));
  subs["mayer"]->add_option("--kind", c.kind, "c | q | b")->check(CLI::IsMember({"c", "q", "b"}));
  subs["bounds"]->add_option("--curve", c.curve, "kappa | R_minus_minus | r_minus_minus | threshold | lp | majorant_h");
  subs["bounds"]->add_option("--kappa", c.kappa_stab, "stability constant for --curve lp");
  subs["bounds"]->add_option("--B", c.B, "B for --curve lp");
  subs["polys"]->add_option("--k", k, "single family index (default 2..K)");
  subs["invert"]->add_option("--from", c.from, "beta | b")->check(CLI::IsMember({"beta", "b"}));
  subs["invert"]->add_option("--input", input_text, "index,value CSV")->required();
  subs["models"]->add_option("--model", c.model, "hard_sphere | ford | limits | mayer_majorant");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    if (args.empty()) throw UsageError("a command is required; valid commands: " + valid_list());
    throw UsageError(e.what());
  }

  for (const auto& [name, s] : subs)
    if (s->parsed()) c.command = static_cast<Command>(std::find(names.begin(), names.end(), name) - names.begin());
  if (!eps_text.empty()) c.epsilon = parse_rat(eps_text, "--epsilon");
  if (c.epsilon.sign() <= 0) throw UsageError("--epsilon must be positive");
  if (!eta_text.empty()) {
    c.eta = parse_rat(eta_text, "--eta");
    if (c.eta->sign() < 0 || *c.eta > Rat(1)) throw UsageError("--eta must lie in [0, 1]");
    if (c.eta->is_zero() && c.command != Command::bounds) throw UsageError("--eta must lie in (0, 1]");
  }
  c.t = t;
  c.k = k;
  if (c.t && !(*c.t >= 0)) throw UsageError("--t must be nonnegative");
  if (!grid_text.empty()) c.grid = parse_grid(grid_text);
  if ((c.eta ? 1 : 0) + (c.t ? 1 : 0) + (c.grid ? 1 : 0) > 1 && c.command != Command::bounds &&
      c.command != Command::models)
    throw UsageError("give at most one of --eta, --t, --grid");
  c.mode = mode_text == "float" ? Mode::floating : Mode::exact;
  c.format = format_text == "json" ? Format::json : Format::csv;
  c.out = out_text;
  c.input = input_text;
  return c;
}

int run(const RunConfig& c, std::ostream& out) {
  switch (c.command) {
    case Command::coeffs: return coefficients(c, out, true);
    case Command::mayer: return coefficients(c, out, false);
    case Command::bounds: return bounds_command(c, out);
    case Command::polys: return polys_command(c, out);
    case Command::invert: return invert_command(c, out);
    case Command::models: return models_command(c, out);
    case Command::figures: {
      const auto dir = c.out.empty() ? std::filesystem::path("figures") : c.out;
      for (const auto& p : write_figures(dir, thread_budget())) out << p.string() << "\n";
      return 0;
    }
    case Command::selftest: {
      const auto dir = c.out.empty() ? std::filesystem::path("selftest_figures") : c.out;
      return run_acceptance(out, dir) ? 0 : 1;
    }
  }
  return 2;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  try {
    c = parse_cli(args);
  } catch (const HelpRequested& h) {
    out << h.what();
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  try {
    return run(c, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << e.name() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "Error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace virlab::cli
