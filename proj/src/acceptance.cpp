#include "virlab/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <thread>

#include "virlab/bounds.hpp"
#include "virlab/cluster.hpp"
#include "virlab/engines.hpp"
#include "virlab/figures.hpp"
#include "virlab/combinatorics.hpp"
#include "virlab/models.hpp"
#include "virlab/radius.hpp"
#include "virlab/thermo.hpp"

namespace virlab {

namespace {

/// Collects checks for one criterion. Measured values go in `notes`; failures are kept
/// separately so the printed line leads with what went wrong.
class Ledger {
 public:
  void check(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failed_.size() < 4) failed_.push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool pass() const { return failures_ == 0; }
  std::string detail() const {
    std::string out;
    for (const auto& n : notes_) out += (out.empty() ? "" : "; ") + n;
    if (failures_ > 0) {
      out += (out.empty() ? "" : "; ") + std::to_string(failures_) + " failed check(s): ";
      for (std::size_t i = 0; i < failed_.size(); ++i) out += (i ? ", " : "") + failed_[i];
      if (failures_ > static_cast<int>(failed_.size())) out += ", ...";
    }
    return out;
  }

 private:
  int failures_ = 0;
  std::vector<std::string> failed_;
  std::vector<std::string> notes_;
};

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

ModelParams params(int K, Rat eps = Rat(1, 2)) {
  ModelParams p;
  p.K = K;
  p.epsilon = std::move(eps);
  return p;
}

const EtaExpr kLam = EtaExpr::lambda();
const EtaExpr kEta = EtaExpr::eta();

void exact_anchors(Ledger& L) {
  const auto v = virial_exact(params(3));
  L.check(v.gamma[1] == -kLam, "gamma_1");
  L.check(v.gamma[2] == -(kLam.pow(3)), "gamma_2 at 2eps=1");
  L.check(v.delta[2] == -kLam, "delta_2");
  L.check(v.delta[3] == -(kLam * (EtaExpr(1) - kEta * Rat(2) - kEta * kEta * Rat(1, 2))), "delta_3");
  // γ₂ = -2ελ³ with the physical λ = (1-η)/(2ε), at a second ε
  const Rat eps(1, 3);
  const auto w = virial_exact(params(2, eps));
  L.check(w.gamma[1] == -kLam * (Rat(1) / (Rat(2) * eps)), "gamma_1 at eps=1/3");
  L.check(w.gamma[2] == -(kLam.pow(3)) * (Rat(2) * eps / pow(Rat(2) * eps, 3)), "gamma_2 at eps=1/3");
  const auto m = mayer_exact(params(2));
  L.check(m.q[2] == EtaExpr::polynomial({1, Rat(-3, 2), 0, Rat(1, 2)}), "q_2");
  L.note("delta_3 = " + v.delta[3].str());
}

void initial_mayer(Ledger& L) {
  const auto m = mayer_exact(params(20));
  for (int k = 0; k <= 20; ++k) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), mpz_class(k + 1).get_mpz_t(), static_cast<unsigned long>(k));
    mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(k + 1));
    L.check(m.c[k].eval_exact(Rat(1)) == Rat(num, den), "c_" + std::to_string(k) + "(0)");
  }
  L.check(m.c[2].eval_exact(Rat(1)) == Rat(3, 2), "c_2(0) = 3/2");
  L.check(m.c[3].eval_exact(Rat(1)) == Rat(8, 3), "c_3(0) = 8/3");
  L.check(m.c[4].eval_exact(Rat(1)) == Rat(125, 24), "c_4(0) = 125/24");
  L.note("c_20(0) = " + m.c[20].eval_exact(Rat(1)).str());
}

void cross_engine(Ledger& L) {
  const int K = 8;
  const auto v = virial_exact(params(K));
  const auto m = mayer_exact(params(K));
  const auto beta = beta_from_b(m.b, K);
  for (int k = 1; k <= K; ++k) L.check(beta[k] == v.beta[k], "beta_" + std::to_string(k));

  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
  int trials = 0;
  for (int K2 = 1; K2 <= 12; ++K2) {
    std::vector<Rat> b{Rat(1)}, bt;
    for (int i = 2; i <= K2 + 1; ++i) b.push_back(Rat(num(rng), den(rng)));
    for (int i = 1; i <= K2; ++i) bt.push_back(Rat(num(rng), den(rng)));
    const CoeffSeq<Rat> bs(1, b), betas(1, bt);
    L.check(b_from_beta(beta_from_b(bs, K2), K2 + 1) == bs, "b round trip K=" + std::to_string(K2));
    L.check(beta_from_b(b_from_beta(betas, K2 + 1), K2) == betas,
            "beta round trip K=" + std::to_string(K2));
    trials += 2;
  }
  L.note("beta_k equal for k <= 8, " + std::to_string(trials) + " random round trips");
}

void bounds(Ledger& L) {
  L.check(std::abs(kappa(1) - (1 - 1 / std::sqrt(2.0))) < 1e-12, "kappa(1)");
  L.check(std::abs(kappa(0) - (3 - 2 * std::sqrt(2.0))) < 1e-12, "kappa(0)");
  double worst = 0, lowest = 1;
  for (double eta : unit_grid(1000)) {
    const double r = majorant_h1(eta).smallest;
    worst = std::max(worst, std::abs(r - kappa(eta)));
    if (eta > 0) lowest = std::min(lowest, r);
  }
  L.check(worst < 1e-12, "R_{-,-} = kappa on grid");
  L.check(lowest > 0.144767, "R_{-,-} > 0.144767");
  const auto th = threshold_solve();
  L.check(std::abs(th.eta_star - 0.99463) < 1e-4, "eta*");
  L.check(std::abs(th.epsilon_t_star - 0.00538) < 1e-4,
          "eps t* = " + fmt("%.5f", th.epsilon_t_star) + " (expected 0.00538)");
  L.note("max |R_{-,-} - kappa| = " + fmt("%.1e", worst));
  L.note("eta* = " + fmt("%.5f", th.eta_star));
  L.note("-log eta* = " + fmt("%.5f", th.minus_log_eta_star));
}

void lambert(Ledger& L) {
  const double w = lambert_w(std::exp(-1.0));
  L.check(std::abs(w - 0.278465) < 5e-7, "W(1/e)");
  double worst = 0;
  for (int i = 0; i <= 200; ++i) {
    const double x = -std::exp(-1.0) + std::pow(10.0, -6 + 12.0 * i / 200);
    const double y = lambert_w(x);
    worst = std::max(worst, std::abs(y * std::exp(y) - x) / std::abs(x));
  }
  L.check(worst < 1e-14, "W e^W = x");
  // Independent maximisation of (2e^{-w} - 1)w on a fine grid plus a local Newton polish.
  double best_w = 0, best = 0;
  for (int i = 0; i <= 100000; ++i) {
    const double x = i * 1e-5;
    const double f = (2 * std::exp(-x) - 1) * x;
    if (f > best) best = f, best_w = x;
  }
  for (int it = 0; it < 20; ++it) {
    const double e = std::exp(-best_w);
    best_w -= (2 * e * (1 - best_w) - 1) / (2 * e * (best_w - 2));
  }
  best = (2 * std::exp(-best_w) - 1) * best_w;
  const auto lp = lp_bounds(1, 1);
  L.check(std::abs(lp.R0 - 0.14476) < 1e-5, "LP bound");
  L.check(std::abs(lp.R0 - best) < 1e-12, "LP bound vs grid search");
  L.note("W(1/e) = " + fmt("%.9f", w));
  L.note("LP max = " + fmt("%.7f", lp.R0));
}

void families(Ledger& L) {
  std::vector<Rat> grid;
  for (int i = 1; i < 1000; ++i) grid.emplace_back(i, 1000);
  for (int k = 2; k <= 15; ++k) {
    const auto f = poly_family(k);
    const std::string K = std::to_string(k);
    for (int n = 1; n <= f.D_int; ++n) {
      const auto u = static_cast<std::size_t>(n);
      L.check(f.P[u].sign() > 0 && f.P[u - 1] > f.P[u], "p_{" + K + "," + std::to_string(n) + "}");
    }
    for (int n = 1; n <= f.D_int + 1; ++n) L.check(f.Q[static_cast<std::size_t>(n)].sign() > 0, "q positive k=" + K);
    for (int n = 1; n <= f.D_int; ++n)
      L.check(f.Q[static_cast<std::size_t>(n)] > f.Q[static_cast<std::size_t>(n + 1)], "q decreasing k=" + K);
    L.check(eval_poly(f.Q, 0) == Rat(0) && eval_poly(f.Q, 1) == Rat(1), "Q endpoints k=" + K);
    if (k == 2) L.check(f.T == std::vector<Rat>{Rat(0), Rat(1)}, "T_2 = eta");
    for (const Rat& x : grid) L.check(eval_poly(f.T, x) >= x, "T >= eta k=" + K);
    L.check(f.t[1] > Rat(1), "t_{k,1} > 1 k=" + K);
    for (std::size_t n = 2; n < f.t.size(); ++n) L.check(f.t[n].sign() > 0, "t_{k,n} > 0 k=" + K);
    L.check(eval_poly(f.L, 0) == Rat(0) && eval_poly(f.L, 1) == Rat(0), "L endpoints k=" + K);
    for (const Rat& x : grid) L.check(eval_poly(f.L, x).sign() > 0, "L > 0 k=" + K);
  }
  L.check(t_lower_constant(3, 1) == Rat(80), "h_{3,1} = 80");
  L.note("k = 2..15 on a 999-point interior grid");
  L.note("t_{3,1} = " + poly_family(3).t[1].str());
}

void asymptotics(Ledger& L) {
  const auto v = virial_exact(params(16));
  for (const Rat& eps : {Rat(1, 2), Rat(2, 7)}) {
    for (int k = 2; k <= 12; ++k) {
      const Rat expect = Rat(k % 2 == 0 ? -k : k) * eps;
      L.check(delta_slope_at_origin(v.delta[k], eps) == expect,
              "slope k=" + std::to_string(k) + " eps=" + eps.str());
    }
  }
  const double et = 1e-4, eta = std::exp(-2 * et);
  double worst = 0;
  int worst_k = 0;
  for (int k = 2; k <= 10; ++k) {
    const double d = v.delta[k].eval(eta);
    L.check((d > 0) == (k % 2 == 1), "sign k=" + std::to_string(k));
    const double dev = std::abs(std::abs(d) / (k * et) - 1);
    L.check(dev < 1e-2, "|delta_" + std::to_string(k) + "/(k eps t)| - 1 = " + fmt("%.4f", dev));
    if (dev > worst) worst = dev, worst_k = k;
  }
  std::vector<double> mag;
  for (int k = 1; k <= 16; ++k) mag.push_back(std::abs(v.delta[k].eval(eta)));
  const auto ds = radius_estimate(mag, RadiusMethod::domb_sykes, 1);
  L.check(std::abs(ds.estimate - 1) < 2e-2, "Domb-Sykes radius " + fmt("%.4f", ds.estimate));
  L.note("slopes k <= 12 exact");
  L.note("largest |delta_k/(k eps t)| - 1 = " + fmt("%.4f", worst) + " at k=" + std::to_string(worst_k));
  L.note("radius from k <= 16 = " + fmt("%.4f", ds.estimate));
}

void stationary(Ledger& L) {
  const auto v = virial_exact(params(16));
  for (int k = 1; k <= 12; ++k) L.check(v.delta[k].limit_at_origin() == Rat(-1), "delta_k(eta->0)");
  for (const Rat& eps : {Rat(1, 2), Rat(1, 5)}) {
    const auto s = stationary_limit(12, eps);
    for (int k = 1; k <= 12; ++k) {
      L.check(s.gamma_inf[k] == -pow(Rat(2) * eps, -k), "stationary gamma");
      L.check(s.residual[k].is_zero(), "stationary residual");
    }
    std::vector<Rat> beta;
    for (int n = 1; n <= 12; ++n) beta.push_back(s.gamma_inf[n] / Rat(n));
    const auto maps = thermo_maps(CoeffSeq<Rat>(1, beta), 12);
    // -2ε log(1 - ρ/2ε) = Σ_m (2ε)^{1-m} ρ^m/m
    for (int m = 1; m <= 13; ++m)
      L.check(maps.pressure[m] == pow(Rat(2) * eps, 1 - m) / Rat(m), "P_0 coefficient");
  }

  // The three limits against pressure series built from engine coefficients.
  auto engine_pressure = [&](double eps, double t, double rho) {
    const double eta = std::exp(-2 * eps * t);
    const double lam = -std::expm1(-2 * eps * t) / (2 * eps);
    double P = rho;
    for (int n = 1; n <= 16; ++n) {
      const double beta = std::pow(lam, n) * v.delta[n].eval(eta) / n;
      P -= n * beta * std::pow(rho, n + 1) / (n + 1);
    }
    return P;
  };
  const double rho = 0.2;
  const auto small_t = limit_pressures(1e-9, 0.5, rho);
  // The ε → 0 display does not depend on ε; the engine runs at a tiny ε.
  const auto small_eps = limit_pressures(1.0, 0.5, rho);
  const auto large_t = limit_pressures(60.0, 0.5, rho);
  L.check(small_t.t0 == rho, "t -> 0 display");
  L.check(std::abs(engine_pressure(0.5, 1e-9, rho) - small_t.t0) < 1e-9, "t -> 0 engine");
  L.check(std::abs(small_eps.eps0 - (rho + rho * rho / 2)) < 1e-15, "eps -> 0 display");
  L.check(std::abs(engine_pressure(1e-7, 1.0, rho) - small_eps.eps0) < 1e-6, "eps -> 0 engine");
  L.check(std::abs(large_t.tinf + std::log(1 - rho)) < 1e-15, "t -> inf display");
  L.check(std::abs(engine_pressure(0.5, 60.0, rho) - large_t.tinf) < 1e-10, "t -> inf engine");
  L.note("delta_k(eta->0) = -1 for k <= 12");
  L.note("limit pressures at rho = 0.2 match engine series");
}

void oracle(Ledger& L) {
  const int K = 12;
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(0.05 * i);
  const auto v = virial_exact(params(K));
  const auto m = mayer_exact(params(K));
  const auto nv = numeric_trajectories(params(K), grid, Side::virial);
  const auto nm = numeric_trajectories(params(K), grid, Side::mayer);
  double worst = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double eta = std::exp(-grid[i]);
    for (int k = 1; k <= K; ++k) {
      worst = std::max(worst, std::abs(nv.primary[k][i] - v.gamma[k].eval(eta)));
      worst = std::max(worst, std::abs(nm.primary[k][i] - m.q[k].eval(eta)));
    }
  }
  L.check(worst <= 1e-9, "numeric vs exact " + fmt("%.1e", worst));

  std::vector<double> long_grid;
  for (int i = 0; i <= 400; ++i) long_grid.push_back(0.1 * i);
  const auto c = numeric_trajectories(params(K), long_grid, Side::mayer);
  for (int k = 2; k <= K; ++k) {
    const auto& ck = c.normalized[k];
    for (std::size_t i = 1; i < ck.size(); ++i) {
      const bool ok = ck[i - 1] - 1 > 1e-12 ? ck[i] < ck[i - 1] : ck[i] <= ck[i - 1] + 1e-15;
      L.check(ok, "c_" + std::to_string(k) + " decreasing");
    }
    L.check(std::abs(ck.back() - 1) < 1e-6, "c_" + std::to_string(k) + "(40) -> 1");
  }
  L.note("max |numeric - exact| = " + fmt("%.1e", worst) + " over k <= 12, t in [0,5]");
}

void combinatorics(Ledger& L) {
  for (unsigned n = 2; n <= 30; ++n) {
    const auto id = tree_split_identity(n);
    L.check(id.lhs == id.rhs, "tree identity n=" + std::to_string(n));
  }
  const double margin = convolution_domination_margin(10000);
  L.check(margin <= 1e-12, "convolution domination");
  std::vector<double> w;
  for (int n = 1; n <= 40; ++n) w.push_back(std::exp((n - 1) * std::log(n) - std::lgamma(n + 1.0)));
  const double r = radius_estimate(w, RadiusMethod::domb_sykes, 1).estimate;
  L.check(std::abs(r * std::exp(1.0) - 1) < 1e-2, "W radius " + fmt("%.5f", r));
  L.note("max (c*c)_n - c_n = " + fmt("%.2e", margin));
  L.note("W radius * e = " + fmt("%.5f", r * std::exp(1.0)));
}

void qualitative(Ledger& L, const std::filesystem::path& dir) {
  const auto v = virial_exact(params(12));
  for (double et : {1e-4, 1e-3})
    for (int k = 2; k <= 12; ++k) {
      const double d = v.delta[k].eval(std::exp(-2 * et));
      L.check((d > 0) == (k % 2 == 1), "alternation k=" + std::to_string(k));
    }
  // Past the transient, each δ_k approaches -1 monotonically.
  for (int k = 2; k <= 12; ++k) {
    double prev = v.delta[k].eval(std::exp(-20.0));
    bool mono = true;
    for (int i = 1; i <= 200; ++i) {
      const double cur = v.delta[k].eval(std::exp(-(20.0 + 0.1 * i)));
      mono = mono && std::abs(cur + 1) <= std::abs(prev + 1);
      prev = cur;
    }
    L.check(mono, "monotone tail k=" + std::to_string(k));
    L.check(std::abs(prev + 1) < 1e-6, "delta_" + std::to_string(k) + "(t=40) -> -1");
  }
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const auto written = write_figures(dir, static_cast<int>(std::min(hw, 4u)));
  L.check(written.size() == figure_jobs().size(), "figure files");
  L.check(std::filesystem::exists(dir / "figures.meta.json"), "figure sidecar");
  for (const auto& p : written) L.check(std::filesystem::file_size(p) > 0, "non-empty " + p.filename().string());
  L.note(std::to_string(written.size()) + " files in " + dir.string());
}

}  // namespace

std::vector<CriterionResult> evaluate_acceptance(const std::filesystem::path& figure_dir) {
  const std::vector<std::pair<std::string, std::function<void(Ledger&)>>> steps{
      {"exact anchors", exact_anchors},
      {"initial Mayer values", initial_mayer},
      {"cross-engine identity", cross_engine},
      {"radius bounds and threshold", bounds},
      {"Lambert W and LP bound", lambert},
      {"polynomial families", families},
      {"small-time asymptotics", asymptotics},
      {"stationary solution and limits", stationary},
      {"numeric oracle agreement", oracle},
      {"combinatorial identities", combinatorics},
      {"qualitative oscillation and figure data",
       [&](Ledger& L) { qualitative(L, figure_dir); }},
  };
  std::vector<CriterionResult> out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    Ledger L;
    try {
      steps[i].second(L);
    } catch (const std::exception& e) {
      L.check(false, std::string("exception: ") + e.what());
    }
    out.push_back({static_cast<int>(i + 1), steps[i].first, L.pass(), L.detail()});
  }
  return out;
}

bool run_acceptance(std::ostream& out, const std::filesystem::path& figure_dir) {
  bool all = true;
  for (const auto& r : evaluate_acceptance(figure_dir)) {
    out << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << " (" << r.title << "): "
        << r.detail << "\n";
    all = all && r.pass;
  }
  out.flush();
  return all;
}

}  // namespace virlab
