#include "virlab/figures.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "virlab/bounds.hpp"
#include "virlab/engines.hpp"
#include "virlab/io.hpp"
#include "virlab/models.hpp"

namespace virlab {

namespace {

std::string fig_kappa() {
  const auto grid = unit_grid(1000);
  const double lp = lp_bounds(1, 1).R0;
  const double w = lambert_w(std::exp(-1.0));
  return curve_csv({sample_curve("kappa", kappa, grid),
                    sample_curve("lebowitz_penrose", [lp](double) { return lp; }, grid),
                    sample_curve("lambert_w_threshold", [w](double) { return w; }, grid)});
}

std::string fig3() {
  return curve_csv({sample_curve("r_minus_minus", r_minus_minus, unit_grid(1000))});
}

std::vector<BoundCurve> exact_poly_curves(const std::string& prefix, int k_lo, int k_hi,
                                          std::vector<Rat> PolyFamily::*member) {
  std::vector<BoundCurve> curves;
  const auto grid = unit_grid(500);
  for (int k = k_lo; k <= k_hi; ++k) {
    const auto coeffs = poly_family(k).*member;
    curves.push_back(sample_curve(prefix + std::to_string(k),
                                  [&coeffs](double e) { return eval_poly(coeffs, Rat::from_double(e)).to_double(); },
                                  grid));
  }
  return curves;
}

std::string fig5() { return curve_csv(exact_poly_curves("T", 2, 6, &PolyFamily::T)); }
std::string figL() { return curve_csv(exact_poly_curves("L", 2, 8, &PolyFamily::L)); }

std::string circles_csv(const std::vector<hard_sphere::CirclePoint>& pts) {
  std::string out = "radius,theta,re,im\n";
  for (const auto& p : pts)
    out += format_double(p.radius) + "," + format_double(p.theta) + "," + format_double(p.value.re) +
           "," + format_double(p.value.im) + "\n";
  return out;
}

std::string fig1() {
  std::vector<hard_sphere::CirclePoint> pts;
  for (int i = 1; i <= 10; ++i) {
    const auto c = hard_sphere::circle_image_z(i / 10.0, 360);
    pts.insert(pts.end(), c.begin(), c.end());
  }
  return circles_csv(pts);
}

std::string fig2() {
  std::vector<hard_sphere::CirclePoint> pts;
  for (int i = 1; i <= 10; ++i) {
    const auto c = hard_sphere::circle_image_w(i / 10.0 * std::exp(-1.0), 360);
    pts.insert(pts.end(), c.begin(), c.end());
  }
  return circles_csv(pts);
}

// δ_k, k ≤ 29, over t ∈ [0, 3] in 2ε = 1 units, from the float engine.
std::string fig6() {
  ModelParams p;
  p.K = 29;
  std::vector<double> grid;
  for (int i = 0; i <= 300; ++i) grid.push_back(i / 100.0);
  const auto tr = numeric_trajectories(p, grid, Side::virial);
  std::vector<TrajectoryRow> rows;
  for (int k = 1; k <= p.K; ++k)
    for (std::size_t i = 0; i < grid.size(); ++i)
      rows.push_back({k, grid[i], std::exp(-grid[i]), "delta",
                      format_double(tr.normalized[static_cast<std::size_t>(k)][i])});
  return trajectory_csv(rows);
}

std::string fig7() {
  ModelParams p;
  p.K = 15;
  const auto v = virial_exact(p);
  std::vector<TrajectoryRow> rows;
  for (double t : {0.17, 0.33, 0.75})
    for (int k = 1; k <= p.K; ++k) rows.push_back({k, t, std::exp(-t), "delta", format_double(v.delta[k].eval(std::exp(-t)))});
  return trajectory_csv(rows);
}

std::string figq() {
  ModelParams p;
  p.K = 13;
  const auto m = mayer_exact(p);
  std::vector<TrajectoryRow> rows;
  for (int k = 0; k <= p.K; ++k) {
    // q_k/λ^k = (-1)^k c_k
    const EtaExpr ratio = k % 2 == 0 ? m.c[k] : -m.c[k];
    for (int i = 0; i <= 300; ++i) {
      const double t = i / 100.0;
      rows.push_back({k, t, std::exp(-t), "q_over_lambda_k", format_double(ratio.eval(std::exp(-t)))});
    }
  }
  return trajectory_csv(rows);
}

}  // namespace

std::vector<FigureJob> figure_jobs() {
  return {
      {"fig_kappa.csv", "kappa(eta) with the Lebowitz-Penrose and Lambert-W thresholds", fig_kappa},
      {"fig3.csv", "smallest discriminant root r_{-,-}(eta) of the majorant H", fig3},
      {"fig5.csv", "T_k(eta) for k = 2..6", fig5},
      {"figL.csv", "L_k(eta) for k = 2..8", figL},
      {"fig1.csv", "images of |rho| = i/10 under Z(rho) = rho e^rho", fig1},
      {"fig2.csv", "images of |z| = i/(10e) under the principal Lambert W", fig2},
      {"fig6.csv", "delta_k(t), k <= 29, t in [0, 3], 2 epsilon = 1", fig6},
      {"fig7.csv", "delta_k, k <= 15, at t = 0.17, 0.33, 0.75, 2 epsilon = 1", fig7},
      {"figq.csv", "q_k/lambda^k, k <= 13, t in [0, 3], 2 epsilon = 1", figq},
  };
}

std::vector<std::filesystem::path> write_figures(const std::filesystem::path& dir, int threads) {
  const auto jobs = figure_jobs();
  std::vector<std::string> rendered(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        rendered[i] = jobs[i].render();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::vector<std::filesystem::path> written;
  nlohmann::json meta = {{"tool", "virial_lab"}, {"normalization", "2 epsilon = 1"}, {"files", nlohmann::json::array()}};
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto path = dir / jobs[i].file;
    write_file_atomic(path, rendered[i]);
    written.push_back(path);
    meta["files"].push_back({{"file", jobs[i].file}, {"content", jobs[i].description}});
  }
  write_file_atomic(dir / "figures.meta.json", meta.dump(2) + "\n");
  return written;
}

}  // namespace virlab
