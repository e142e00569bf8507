#include "virlab/engines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "virlab/numerics.hpp"

namespace virlab {

const char* to_string(CoeffKind kind) {
  switch (kind) {
    case CoeffKind::gamma: return "gamma";
    case CoeffKind::delta: return "delta";
    case CoeffKind::beta: return "beta";
    case CoeffKind::q: return "q";
    case CoeffKind::c: return "c";
    case CoeffKind::b: return "b";
  }
  return "?";
}

namespace {

void check_epsilon(const Rat& epsilon) {
  if (epsilon.sign() <= 0) throw DomainError("epsilon must be positive");
}

}  // namespace

VirialExact virial_exact(const ModelParams& params) {
  if (params.K < 1) throw DomainError("virial engine needs K >= 1");
  check_epsilon(params.epsilon);
  const Rat inv_two_eps = Rat(1) / (Rat(2) * params.epsilon);

  VirialExact out;
  out.epsilon = params.epsilon;
  out.gamma = CoeffSeq<EtaExpr>(1, {});
  out.delta = CoeffSeq<EtaExpr>(1, {});
  out.beta = CoeffSeq<EtaExpr>(1, {});

  // The recursion runs in 2ε = 1 units; ε enters only through the final (2ε)^{-k} factor.
  PowerSumTracker<EtaExpr> sums;
  for (int k = 1; k <= params.K; ++k) {
    const EtaExpr h = k == 1 ? EtaExpr(Rat(1, 2)) : sums.tail(k) * Rat(1, 2);
    EtaExpr g = kernel_integrate(h, k) * Rat(-k * (k + 1));
    sums.push(g);
    EtaExpr d = g.divide_by_lambda(k);
    const Rat s = pow(inv_two_eps, k);
    out.gamma.push_back(g * s);
    out.beta.push_back(g * (s / Rat(k)));
    out.delta.push_back(std::move(d));
  }
  return out;
}

MayerExact mayer_exact(const ModelParams& params) {
  if (params.K < 0) throw DomainError("Mayer engine needs K >= 0");
  check_epsilon(params.epsilon);
  const Rat inv_two_eps = Rat(1) / (Rat(2) * params.epsilon);

  std::vector<EtaExpr> q{EtaExpr(1)};
  for (int k = 1; k <= params.K; ++k) {
    EtaExpr conv_sum;
    for (int j = 0; j <= k - 1; ++j) conv_sum += q[static_cast<std::size_t>(j)] * q[static_cast<std::size_t>(k - 1 - j)];
    q.push_back(kernel_integrate(conv_sum, k) * Rat(-(k + 1), 2));
  }

  MayerExact out;
  out.epsilon = params.epsilon;
  out.q = CoeffSeq<EtaExpr>(0, {});
  out.c = CoeffSeq<EtaExpr>(0, {});
  out.b = CoeffSeq<EtaExpr>(1, {});
  for (int k = 0; k <= params.K; ++k) {
    const EtaExpr& qk = q[static_cast<std::size_t>(k)];
    out.q.push_back(qk * pow(inv_two_eps, k));
    EtaExpr ck = qk.divide_by_lambda(k);
    out.c.push_back(k % 2 == 0 ? ck : -ck);
  }
  for (int k = 1; k <= params.K + 1; ++k)
    out.b.push_back(q[static_cast<std::size_t>(k - 1)] * (pow(inv_two_eps, k - 1) / Rat(k)));
  return out;
}

// ---------------------------------------------------------------------------------------------
// Numeric oracle

namespace {

/// Panel-independent pieces of the collocation scheme.
///
/// On a panel [a, a+h] the forcing f is known at Gauss nodes τ_l (scaled to [0,1]). The value
/// at τ_i (and at the end τ = 1) is e^{-μhτ_i}·u(a) + h·τ_i Σ_j w_j e^{-μhτ_i(1-ξ_j)} f(τ_iξ_j),
/// with f(τ_iξ_j) obtained by Lagrange interpolation from the node values.
struct Collocation {
  GaussRule rule;
  std::vector<double> targets;  // τ_0..τ_{m-1}, then 1
  std::vector<double> interp;   // [(i*m + j)*m + l] = L_l(τ_i ξ_j)

  explicit Collocation(int m) : rule(gauss_legendre(m)) {
    targets = rule.nodes;
    targets.push_back(1.0);
    const auto mm = static_cast<std::size_t>(m);
    interp.assign(targets.size() * mm * mm, 0.0);
    std::vector<double> bary(mm, 1.0);
    for (std::size_t l = 0; l < mm; ++l)
      for (std::size_t p = 0; p < mm; ++p)
        if (p != l) bary[l] /= rule.nodes[l] - rule.nodes[p];
    for (std::size_t i = 0; i < targets.size(); ++i) {
      for (std::size_t j = 0; j < mm; ++j) {
        const double x = targets[i] * rule.nodes[j];
        double* row = &interp[(i * mm + j) * mm];
        std::size_t exact = mm;
        for (std::size_t l = 0; l < mm; ++l)
          if (x == rule.nodes[l]) exact = l;
        if (exact != mm) {
          row[exact] = 1.0;
          continue;
        }
        double denom = 0;
        for (std::size_t l = 0; l < mm; ++l) {
          row[l] = bary[l] / (x - rule.nodes[l]);
          denom += row[l];
        }
        for (std::size_t l = 0; l < mm; ++l) row[l] /= denom;
      }
    }
  }

  std::size_t m() const { return rule.nodes.size(); }

  /// Weight matrix W[i][l] (row-major, (m+1) x m) and decay factors for rate μ, width h.
  void weights(double mu, double h, std::vector<double>& W, std::vector<double>& decay) const {
    const std::size_t mm = m();
    W.assign(targets.size() * mm, 0.0);
    decay.resize(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const double ti = targets[i];
      decay[i] = std::exp(-mu * h * ti);
      for (std::size_t j = 0; j < mm; ++j) {
        const double e = h * ti * rule.weights[j] * std::exp(-mu * h * ti * (1 - rule.nodes[j]));
        const double* row = &interp[(i * mm + j) * mm];
        for (std::size_t l = 0; l < mm; ++l) W[i * mm + l] += e * row[l];
      }
    }
  }
};

class PanelIntegrator {
 public:
  PanelIntegrator(Side side, int K, double epsilon, int m)
      : side_(side), K_(K), eps_(epsilon), col_(m) {}

  /// Advances the state (index 0..K) across [a, a+h].
  std::vector<double> step(const std::vector<double>& state, double h) {
    const std::size_t mm = col_.m();
    const std::size_t nt = mm + 1;
    // values[k][i] at targets
    std::vector<std::vector<double>> values(static_cast<std::size_t>(K_) + 1,
                                            std::vector<double>(nt, 0.0));
    std::vector<double> W, decay, f(mm);
    std::vector<std::vector<double>> geometric(static_cast<std::size_t>(K_) + 1,
                                               std::vector<double>(nt, 0.0));
    if (side_ == Side::mayer) std::fill(values[0].begin(), values[0].end(), 1.0);

    for (int k = 1; k <= K_; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      // forcing at the Gauss nodes
      for (std::size_t l = 0; l < mm; ++l) f[l] = forcing(values, geometric, k, l);
      const double mu = eps_ * k * (k + 1);
      col_.weights(mu, h, W, decay);
      for (std::size_t i = 0; i < nt; ++i) {
        double acc = decay[i] * state[ku];
        for (std::size_t l = 0; l < mm; ++l) acc += W[i * mm + l] * f[l];
        values[ku][i] = acc;
      }
      if (side_ == Side::virial) {
        // geometric_k = γ_k + Σ_{l<k} γ_l geometric_{k-l}, kept at every target
        for (std::size_t i = 0; i < nt; ++i) {
          double acc = values[ku][i];
          for (int l = 1; l <= k - 1; ++l)
            acc += values[static_cast<std::size_t>(l)][i] *
                   geometric[static_cast<std::size_t>(k - l)][i];
          geometric[ku][i] = acc;
        }
      }
    }
    std::vector<double> end(static_cast<std::size_t>(K_) + 1);
    for (std::size_t k = 0; k <= static_cast<std::size_t>(K_); ++k) end[k] = values[k][mm];
    return end;
  }

 private:
  double forcing(const std::vector<std::vector<double>>& v,
                 const std::vector<std::vector<double>>& geo, int k, std::size_t l) const {
    if (side_ == Side::virial) {
      if (k == 1) return -2.0 * 0.5;
      double tail = 0;
      for (int j = 1; j <= k - 1; ++j)
        tail += v[static_cast<std::size_t>(j)][l] * geo[static_cast<std::size_t>(k - j)][l];
      return -static_cast<double>(k) * (k + 1) * eps_ * tail;
    }
    double conv = 0;
    for (int j = 0; j <= k - 1; ++j)
      conv += v[static_cast<std::size_t>(j)][l] * v[static_cast<std::size_t>(k - 1 - j)][l];
    return -0.5 * (k + 1) * conv;
  }

  Side side_;
  int K_;
  double eps_;
  Collocation col_;
};

double mayer_c_at_zero(int k) {
  // (k+1)^k/(k+1)! accumulated as a product to stay in range
  double v = 1;
  for (int j = 1; j <= k; ++j) v *= static_cast<double>(k + 1) / (j + 1);
  return v;
}

}  // namespace

NumericTrajectory numeric_trajectories(const ModelParams& params, const std::vector<double>& t_grid,
                                       Side side, const QuadratureOptions& options) {
  if (params.K < 1) throw DomainError("numeric engine needs K >= 1");
  check_epsilon(params.epsilon);
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 0) || !std::isfinite(t_grid[i]))
      throw DomainError("time grid must be finite and nonnegative");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw DomainError("time grid must be increasing");
  }

  const int K = params.K;
  const double eps = params.epsilon.to_double();
  NumericTrajectory out;
  out.side = side;
  out.epsilon = eps;
  out.K = K;
  out.times = t_grid;
  const auto rows = static_cast<std::size_t>(K) + 1;
  out.primary.assign(rows, std::vector<double>(t_grid.size(), 0.0));
  out.normalized.assign(rows, std::vector<double>(t_grid.size(), 0.0));

  PanelIntegrator integrator(side, K, eps, options.nodes);
  std::vector<double> state(rows, 0.0);
  if (side == Side::mayer) state[0] = 1.0;

  auto scale_of = [](const std::vector<double>& s) {
    std::vector<double> sc(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) sc[k] = std::max(1.0, std::abs(s[k]));
    return sc;
  };

  double t = 0, h = std::min(options.max_panel, 1.0 / (eps * K * (K + 1)));
  long panels = 0;
  for (std::size_t gi = 0; gi < t_grid.size(); ++gi) {
    const double target = t_grid[gi];
    while (t < target) {
      const bool last = h >= target - t;
      const double width = last ? target - t : h;
      const std::vector<double> full = integrator.step(state, width);
      const std::vector<double> half = integrator.step(integrator.step(state, width / 2), width / 2);
      const std::vector<double> sc = scale_of(half);
      double err = 0;
      for (std::size_t k = 0; k < rows; ++k) err = std::max(err, std::abs(full[k] - half[k]) / sc[k]);
      if (++panels > options.panel_budget)
        throw QuadratureFailure("adaptive refinement exceeded the panel budget");
      if (err > options.tolerance && width > 1e-12) {
        h = width / 2;
        continue;
      }
      state = half;
      t = last ? target : t + width;
      if (err < options.tolerance / 64) h = std::min(options.max_panel, 2 * width);
      else if (!last) h = width;
    }
    for (std::size_t k = 0; k < rows; ++k) out.primary[k][gi] = state[k];
  }
  out.panels = static_cast<int>(panels);

  for (std::size_t gi = 0; gi < t_grid.size(); ++gi) {
    const double tt = t_grid[gi];
    const double lam = -std::expm1(-2 * eps * tt) / (2 * eps);
    for (int k = side == Side::virial ? 1 : 0; k <= K; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      double v;
      if (tt == 0) {
        v = side == Side::virial ? (k == 1 ? -1.0 : 0.0) : mayer_c_at_zero(k);
      } else {
        v = out.primary[ku][gi] / std::pow(lam, k);
        if (side == Side::mayer && k % 2 == 1) v = -v;
      }
      out.normalized[ku][gi] = v;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------------------------

Rat delta_slope_at_origin(const EtaExpr& delta_k, const Rat& epsilon) {
  return Rat(2) * epsilon * delta_k.derivative_t().eval_exact(Rat(1));
}

SmallTimeAsymptotics asymptotic_smallt(int K, const Rat& epsilon) {
  if (K < 2) throw DomainError("small-time asymptotics need K >= 2");
  check_epsilon(epsilon);
  std::vector<Rat> slopes{Rat(0)};
  for (int k = 2; k <= K; ++k) slopes.push_back((k % 2 == 0 ? Rat(-k) : Rat(k)) * epsilon);
  const double eps = epsilon.to_double();
  SmallTimeAsymptotics out;
  out.slopes = CoeffSeq<Rat>(1, std::move(slopes));
  out.pade_form = [eps](double rho, double t) {
    const double tr = t * rho;
    return -tr - (tr * tr / (1 + tr)) * eps * t;
  };
  return out;
}

StationaryLimit stationary_limit(int K, const Rat& epsilon) {
  if (K < 1) throw DomainError("stationary limit needs K >= 1");
  check_epsilon(epsilon);
  const Rat two_eps = Rat(2) * epsilon;
  std::vector<Rat> g;
  for (int k = 1; k <= K; ++k) g.push_back(-pow(two_eps, -k));
  StationaryLimit out;
  out.gamma_inf = CoeffSeq<Rat>(1, g);

  std::vector<Rat> res;
  for (int k = 1; k <= K; ++k) {
    const Rat h = h_k_eval(out.gamma_inf, k, epsilon);
    res.push_back(out.gamma_inf[k] + h / epsilon);
  }
  out.residual = CoeffSeq<Rat>(1, std::move(res));

  const double te = two_eps.to_double();
  const double eps = epsilon.to_double();
  auto guard = [te](double rho) {
    if (!(std::abs(rho) < te)) throw DomainError("stationary closures need |rho| < 2 epsilon");
  };
  out.phi0 = [te, guard](double rho) {
    guard(rho);
    return std::log1p(-rho / te);
  };
  out.P0 = [te, guard](double rho) {
    guard(rho);
    return -te * std::log1p(-rho / te);
  };
  out.psi0_residual = [te, eps, guard](double rho) {
    guard(rho);
    const double x = rho / te;
    const double psi = -x / (1 - x);
    return rho / 2 + eps * psi / (1 - psi);
  };
  return out;
}

AppendixDConstants appendix_d_constants(const Rat& C, const Rat& epsilon, const Rat& eta_const,
                                        const Rat& a) {
  if (epsilon.sign() <= 0 || eta_const.sign() <= 0 || C.sign() < 0)
    throw DegenerateParams("need epsilon > 0, eta > 0 and C >= 0");
  const double c = C.to_double(), eps = epsilon.to_double(), eta = eta_const.to_double();
  const double ce = c / eps;
  AppendixDConstants out;
  out.delta = 1 / eta + ce - std::sqrt(2 / eta + ce * ce);
  if (!(out.delta > 0)) throw DegenerateParams("majorant constant delta is not positive");
  out.A = 3 / (2 * std::numbers::pi * std::numbers::pi);
  out.B = 1 / (out.delta * out.A * out.A);
  const double B = out.B, rate = eps * (1 + a.to_double());
  out.domain_check = [B, rate](double t, double abs_z) {
    return B * std::max(1.0, t) * std::exp(-rate * t) * abs_z < 1;
  };
  return out;
}

std::optional<PeakReport> delta_peak(const EtaExpr& delta_n, double epsilon, double t_max) {
  auto f = [&](double t) { return delta_n.eval(std::exp(-2 * epsilon * t)); };
  constexpr int samples = 4000;
  const double dt = t_max / samples;
  double prev2 = f(0), prev = f(dt);
  for (int i = 2; i <= samples; ++i) {
    const double cur = f(i * dt);
    if (prev > prev2 && prev >= cur) {
      const Extremum e = golden_section_max(f, (i - 2) * dt, i * dt);
      return PeakReport{e.x, e.value};
    }
    prev2 = prev;
    prev = cur;
  }
  return std::nullopt;
}

}  // namespace virlab
