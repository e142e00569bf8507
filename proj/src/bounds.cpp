#include "virlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "virlab/numerics.hpp"

namespace virlab {

BoundCurve sample_curve(std::string name, const std::function<double(double)>& f,
                        const std::vector<double>& eta_grid) {
  BoundCurve c;
  c.name = std::move(name);
  for (std::size_t i = 0; i < eta_grid.size(); ++i) {
    const double e = eta_grid[i];
    if (!(e >= 0 && e <= 1)) throw DomainError("curve grid must lie in [0, 1]");
    if (i > 0 && !(e > eta_grid[i - 1])) throw DomainError("curve grid must be increasing");
    c.samples.emplace_back(e, f(e));
  }
  return c;
}

std::vector<double> unit_grid(int n) {
  std::vector<double> g;
  for (int i = 0; i <= n; ++i) g.push_back(static_cast<double>(i) / n);
  return g;
}

double kappa(double eta) {
  if (!(eta >= 0 && eta <= 1)) throw DomainError("kappa needs eta in [0, 1]");
  const double s = std::sqrt(1 - eta);
  return (2 + s - 2 * std::sqrt(1 - eta / 2 + s)) / (1 + eta);
}

namespace {

template <CoefficientRing T>
std::vector<T> psi_coefficients(const T& eta, int K) {
  // index 0 unused; Ψ_n = u_n + 2(Ψ∗Ψ)_n - (u∗Ψ)_n
  std::vector<T> u(static_cast<std::size_t>(K) + 1, Ring<T>::zero());
  std::vector<T> psi(static_cast<std::size_t>(K) + 1, Ring<T>::zero());
  if (K >= 1) u[1] = Ring<T>::one();
  if (K >= 2) u[2] = Ring<T>::zero() - eta;
  for (int n = 1; n <= K; ++n) {
    T acc = u[static_cast<std::size_t>(n)];
    for (int l = 1; l <= n - 1; ++l) {
      const auto a = static_cast<std::size_t>(l), b = static_cast<std::size_t>(n - l);
      acc = acc + scale(psi[a] * psi[b], Rat(2)) - u[a] * psi[b];
    }
    psi[static_cast<std::size_t>(n)] = acc;
  }
  return psi;
}

}  // namespace

std::complex<double> majorant_h_discriminant(double eta, std::complex<double> r) {
  return eta * eta * std::pow(r, 4) - 2 * eta * std::pow(r, 3) + (1 + 6 * eta) * r * r - 6.0 * r +
         1.0;
}

double r_minus_minus(double eta) {
  if (!(eta >= 0 && eta <= 1)) throw DomainError("r_{-,-} needs eta in [0, 1]");
  const double a = 12 - 8 * std::numbers::sqrt2;
  return a / (2 * (1 + std::sqrt(1 - a * eta)));
}

MajorantH majorant_h(const Rat& eta, int K) {
  if (eta.sign() < 0 || eta >= Rat(1)) throw DomainError("majorant H needs eta in [0, 1)");
  if (K < 1) throw DomainError("majorant H needs K >= 1");
  MajorantH out;
  auto psi = psi_coefficients<Rat>(eta, K);
  psi[0] = Rat(0);
  out.series = FormalSeries<Rat>::dense(psi, "r");

  const double e = eta.to_double();
  const double s2 = 8 * std::numbers::sqrt2;
  std::size_t idx = 0;
  for (int outer : {-1, 1}) {
    for (int inner : {-1, 1}) {
      const double a = 12 + inner * s2;
      const std::complex<double> disc = std::sqrt(std::complex<double>(1 - a * e, 0));
      std::complex<double> r;
      if (outer < 0) {
        // (1 - √(1-aη))/(2η) rationalized; finite at η = 0
        r = a / (2.0 * (1.0 + disc));
      } else if (e == 0) {
        r = std::numeric_limits<double>::infinity();
      } else {
        r = (1.0 + disc) / (2 * e);
      }
      out.roots[idx++] = r;
    }
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : out.roots)
    if (std::abs(r.imag()) == 0 && r.real() > 0 && std::isfinite(r.real())) best = std::min(best, r.real());
  out.smallest_positive = best;
  return out;
}

CoeffSeq<EtaExpr> majorant_h_polynomials(int K) {
  if (K < 1) throw DomainError("majorant H needs K >= 1");
  auto psi = psi_coefficients<EtaExpr>(EtaExpr::eta(), K);
  psi.erase(psi.begin());
  return CoeffSeq<EtaExpr>(1, std::move(psi));
}

double majorant_h1_discriminant(double eta, double r) {
  const double a = 1 - r * r - eta * r * r;
  return a * a - 8 * (r * (1 - r) * (1 - r) - eta * r * r * (1 - r));
}

MajorantH1 majorant_h1(double eta) {
  if (!(eta >= 0 && eta <= 1)) throw DomainError("majorant H1 needs eta in [0, 1]");
  const double s = std::sqrt(1 - eta);
  MajorantH1 out;
  std::size_t idx = 0;
  for (int sigma : {-1, 1}) {
    for (int sigma_p : {-1, 1}) {
      const double inner = std::max(0.0, 1 - eta / 2 - sigma_p * s);
      out.roots[idx++] = (2 - sigma_p * s + 2 * sigma * std::sqrt(inner)) / (1 + eta);
    }
  }
  out.smallest = out.roots[0];
  return out;
}

Rat product_coefficient(int D, int N, int n) {
  Rat p(1);
  for (int j = 1; j <= n; ++j) p *= Rat(D - j + 1, N - j);
  return p;
}

Rat t_lower_constant(int k, int n) {
  const Rat K(k), n2(2 * n);
  const Rat a = K * K + K - Rat(6);
  return -Rat(1, 4) * K * a * (K * K + Rat(3) * K - n2) * (K * K + K - n2) +
         Rat(1, 2) * pow(K - Rat(1), 3) * pow(K + Rat(2), 2) * (K * K + K - Rat(2 * (n + 1)));
}

Rat eval_poly(const std::vector<Rat>& coeffs, const Rat& eta) {
  Rat acc(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * eta + *it;
  return acc;
}

namespace {

std::vector<Rat> trim(std::vector<Rat> v) {
  while (v.size() > 1 && v.back().is_zero()) v.pop_back();
  return v;
}

std::vector<Rat> p_coefficients(int D, int N) {
  std::vector<Rat> p;
  for (int n = 0; n <= D; ++n) p.push_back(product_coefficient(D, N, n));
  return p;
}

// 1 - (1-η)P
std::vector<Rat> q_from_p(const std::vector<Rat>& p) {
  std::vector<Rat> q(p.size() + 1, Rat(0));
  q[0] = Rat(1);
  for (std::size_t n = 0; n < p.size(); ++n) {
    q[n] -= p[n];
    q[n + 1] += p[n];
  }
  return trim(q);
}

std::vector<Rat> times_one_minus_eta(const std::vector<Rat>& a, const Rat& s) {
  std::vector<Rat> out(a.size() + 1, Rat(0));
  for (std::size_t n = 0; n < a.size(); ++n) {
    out[n] += s * a[n];
    out[n + 1] -= s * a[n];
  }
  return out;
}

std::vector<Rat> add(std::vector<Rat> a, const std::vector<Rat>& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rat(0));
  for (std::size_t n = 0; n < b.size(); ++n) a[n] += b[n];
  return trim(a);
}

}  // namespace

PolyFamily poly_family(int k) {
  if (k < 2) throw DomainError("polynomial families need k >= 2");
  PolyFamily f;
  f.k = k;
  f.N = k * (k + 1) / 2;
  f.D_int = (k - 2) * (k + 1) / 2;
  f.D_contra = k * (k - 1) / 2;
  f.P = p_coefficients(f.D_int, f.N);
  f.Q = q_from_p(f.P);

  const int k1 = k + 1;
  const auto Q_next = q_from_p(p_coefficients((k1 - 2) * (k1 + 1) / 2, k1 * (k1 + 1) / 2));
  const auto T_general = add(f.Q, times_one_minus_eta(Q_next, Rat(k - 1)));
  f.T = k == 2 ? f.Q : T_general;
  f.t.assign(T_general.size(), Rat(0));
  for (std::size_t n = 1; n < T_general.size(); ++n) f.t[n] = n == 1 ? T_general[n] : -T_general[n];

  f.R = p_coefficients(f.D_contra, f.N);
  // (1 - (k-1)η/(k+1))R = R - ((k-1)/(k+1))ηR
  std::vector<Rat> L(f.R.size() + 1, Rat(0));
  const Rat c(k - 1, k + 1);
  for (std::size_t n = 0; n < f.R.size(); ++n) {
    L[n] += f.R[n];
    L[n + 1] -= c * f.R[n];
  }
  L[0] -= Rat(1);
  f.L = trim(L);
  return f;
}

double lambert_w(double x) {
  constexpr double inv_e = 0.36787944117144233;
  if (std::isnan(x) || x < -inv_e) throw DomainError("Lambert W needs x >= -1/e");
  if (x == 0) return 0;
  if (x == -inv_e) return -1;
  double w;
  if (x < -0.3) {
    const double p = std::sqrt(2 * (std::numbers::e * x + 1));
    w = -1 + p - p * p / 3 + 11 * p * p * p / 72;
  } else if (x < 3) {
    w = std::log1p(x) * (1 - std::log1p(std::log1p(x)) / (2 + std::log1p(x)));
  } else {
    const double l = std::log(x);
    w = l - std::log(l);
  }
  for (int it = 0; it < 100; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1;
    if (wp1 == 0) break;
    const double dw = f / (ew * wp1 - (w + 2) * f / (2 * wp1));
    w -= dw;
    if (std::abs(dw) <= 4 * std::numeric_limits<double>::epsilon() * (1 + std::abs(w))) break;
  }
  return w;
}

LPBound lp_bounds(double kappa_stab, double B) {
  if (!(kappa_stab >= 1) || !(B > 0)) throw DegenerateParams("need kappa >= 1 and B > 0");
  const double k1 = 1 + kappa_stab;
  auto f = [k1](double w) { return (k1 * std::exp(-w) - 1) * w; };
  Extremum e = golden_section_max(f, 0.0, 1.0, 1e-10);
  // Newton on f'(w) = (1+κ)e^{-w}(1-w) - 1
  double w = e.x;
  for (int i = 0; i < 50; ++i) {
    const double g = k1 * std::exp(-w) * (1 - w) - 1;
    const double dg = k1 * std::exp(-w) * (w - 2);
    const double step = g / dg;
    w -= step;
    if (std::abs(step) < 1e-16) break;
  }
  if (!(w >= 0 && w < 1)) w = e.x;
  return {f(w) / (kappa_stab * kappa_stab * B), w};
}

Threshold threshold_solve() {
  const double target = lambert_w(std::exp(-1.0));
  const double eta = bisect([target](double e) { return majorant_h1(e).smallest - target; }, 0.0, 1.0,
                            1e-15);
  Threshold t;
  t.eta_star = eta;
  t.minus_log_eta_star = -std::log(eta);
  t.epsilon_t_star = t.minus_log_eta_star / 2;
  return t;
}

}  // namespace virlab
