#include "virlab/eta_expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "virlab/errors.hpp"

namespace virlab {

EtaExpr::EtaExpr(const Rat& c) {
  if (!c.is_zero()) terms_.emplace(Key{0, 0}, c);
}

EtaExpr EtaExpr::monomial(int a, int m, const Rat& c) {
  if (m < 0) throw DomainError("negative log power");
  EtaExpr e;
  e.add_term(a, m, c);
  return e;
}

EtaExpr EtaExpr::lambda() { return EtaExpr(1) - eta(); }

EtaExpr EtaExpr::polynomial(const std::vector<Rat>& coeffs) {
  EtaExpr e;
  for (std::size_t i = 0; i < coeffs.size(); ++i) e.add_term(static_cast<int>(i), 0, coeffs[i]);
  return e;
}

Rat EtaExpr::coeff(int a, int m) const {
  auto it = terms_.find(Key{a, m});
  return it == terms_.end() ? Rat(0) : it->second;
}

void EtaExpr::add_term(int a, int m, const Rat& c) {
  if (c.is_zero()) return;
  if (m < 0) throw DomainError("negative log power");
  auto [it, inserted] = terms_.try_emplace(Key{a, m}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool EtaExpr::has_logs() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.m > 0; });
}

bool EtaExpr::has_negative_powers() const {
  return !terms_.empty() && terms_.begin()->first.a < 0;
}

bool EtaExpr::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Key{0, 0});
}

int EtaExpr::min_power() const { return terms_.empty() ? 0 : terms_.begin()->first.a; }

int EtaExpr::max_power() const { return terms_.empty() ? 0 : terms_.rbegin()->first.a; }

EtaExpr& EtaExpr::operator+=(const EtaExpr& o) {
  for (const auto& [k, c] : o.terms_) add_term(k.a, k.m, c);
  return *this;
}

EtaExpr& EtaExpr::operator-=(const EtaExpr& o) {
  for (const auto& [k, c] : o.terms_) add_term(k.a, k.m, -c);
  return *this;
}

EtaExpr& EtaExpr::operator*=(const EtaExpr& o) {
  EtaExpr out;
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_) out.add_term(k1.a + k2.a, k1.m + k2.m, c1 * c2);
  terms_ = std::move(out.terms_);
  return *this;
}

EtaExpr& EtaExpr::operator*=(const Rat& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= s;
  return *this;
}

EtaExpr EtaExpr::derivative_t() const {
  EtaExpr d;
  for (const auto& [k, c] : terms_) {
    if (k.a != 0) d.add_term(k.a, k.m, -Rat(k.a) * c);
    if (k.m > 0) d.add_term(k.a, k.m - 1, -Rat(k.m) * c);
  }
  return d;
}

namespace {

void check_eta(double eta) {
  if (!(eta > 0.0) || eta > 1.0) throw DomainError("eta must lie in (0, 1]");
}

// Horner evaluation of the m = 0 slice, shifted by the smallest exponent.
Rat eval_polynomial_part(const EtaExpr::Terms& terms, const Rat& eta) {
  if (terms.empty()) return Rat(0);
  const int lo = terms.begin()->first.a;
  const int hi = terms.rbegin()->first.a;
  mpq_class acc = 0;
  const mpq_class& x = eta.get();
  auto it = terms.rbegin();
  for (int a = hi; a >= lo; --a) {
    acc *= x;
    if (it != terms.rend() && it->first.a == a) {
      acc += it->second.get();
      ++it;
    }
  }
  Rat r(acc);
  return lo == 0 ? r : r * virlab::pow(eta, lo);
}

}  // namespace

Rat EtaExpr::eval_exact(const Rat& eta) const {
  if (eta.sign() <= 0 || eta > Rat(1)) throw DomainError("eta must lie in (0, 1]");
  if (has_logs() && eta != Rat(1))
    throw ExactnessError("exact evaluation of log terms is only possible at eta = 1");
  Terms poly;
  for (const auto& [k, c] : terms_)
    if (k.m == 0) poly.emplace(k, c);
  return eval_polynomial_part(poly, eta);
}

double EtaExpr::eval(double eta) const {
  check_eta(eta);
  if (!has_logs()) return eval_exact(Rat::from_double(eta)).to_double();
  const long double L = std::log(static_cast<long double>(eta));
  long double sum = 0;
  for (const auto& [k, c] : terms_)
    sum += static_cast<long double>(c.to_double()) * std::pow(static_cast<long double>(eta), k.a) *
           std::pow(L, k.m);
  return static_cast<double>(sum);
}

Rat EtaExpr::limit_at_origin() const {
  if (!bounded_at_origin()) throw DomainError("expression is unbounded as eta -> 0");
  return coeff(0, 0);
}

EtaExpr EtaExpr::divide_by_lambda(int times) const {
  EtaExpr cur = *this;
  for (int n = 0; n < times; ++n) {
    EtaExpr q;
    // Each log slice is divided separately; log^m η are independent over η-polynomials.
    std::map<int, std::vector<std::pair<int, Rat>>> slices;
    for (const auto& [k, c] : cur.terms_) slices[k.m].emplace_back(k.a, c);
    for (auto& [m, slice] : slices) {
      const int lo = slice.front().first;
      const int hi = slice.back().first;
      // p(η) = Σ c_a η^a; p = (1-η) q  ⇔  q_{a} = q_{a-1} + c_a, running from the bottom.
      Rat run(0);
      std::size_t idx = 0;
      for (int a = lo; a <= hi; ++a) {
        if (idx < slice.size() && slice[idx].first == a) run += slice[idx++].second;
        if (a < hi) q.add_term(a, m, run);
      }
      if (!run.is_zero())
        throw ExactnessError("expression is not divisible by (1 - eta)");
    }
    cur = std::move(q);
  }
  return cur;
}

EtaExpr EtaExpr::pow(int e) const {
  if (e < 0) throw DomainError("negative power of EtaExpr");
  EtaExpr r(1), base = *this;
  while (e > 0) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

std::string EtaExpr::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    Rat mag = c;
    if (c.sign() < 0) {
      os << (first ? "-" : " - ");
      mag = -c;
    } else if (!first) {
      os << " + ";
    }
    first = false;
    const bool unit = mag == Rat(1);
    if (!unit || (k.a == 0 && k.m == 0)) os << mag;
    const char* sep = unit ? "" : "*";
    if (k.a != 0) {
      os << sep << "eta";
      if (k.a != 1) os << "^" << k.a;
      sep = "*";
    }
    if (k.m != 0) {
      os << sep << "log(eta)";
      if (k.m != 1) os << "^" << k.m;
    }
  }
  return os.str();
}

EtaExpr eta_arith(const EtaExpr& x, const EtaExpr& y, EtaOp op, const Rat& scale) {
  EtaExpr r;
  switch (op) {
    case EtaOp::add: r = x + y; break;
    case EtaOp::sub: r = x - y; break;
    case EtaOp::mul: r = x * y; break;
  }
  return r *= scale;
}

EtaExpr kernel_integrate(const EtaExpr& g, int k) {
  if (k < 1) throw DomainError("kernel_integrate needs k >= 1");
  const int N = k * (k + 1) / 2;
  EtaExpr out;
  for (const auto& [key, c] : g.terms()) {
    const int b = key.a - N - 1;
    const int m = key.m;
    if (b == -1) {
      // ∫ log^m u du/u = log^{m+1} u/(m+1), zero at u = 1.
      out.add_term(N, m + 1, -c / Rat(m + 1));
      continue;
    }
    // ∫ u^b L^m du = u^s Σ_j coef_j L^j with s = b + 1,
    // coef_j = (-1)^{m-j} m!/j! / s^{m-j+1}.
    const Rat s(b + 1);
    Rat coef = Rat(1) / s;  // j = m
    for (int j = m; j >= 0; --j) {
      out.add_term(key.a, j, -c * coef);  // -F(η)·η^N
      if (j == 0) out.add_term(N, 0, c * coef);  // F(1)·η^N
      coef = -coef * Rat(j) / s;
    }
  }
  return out;
}

}  // namespace virlab
