#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "virlab/cluster.hpp"
#include "virlab/formal_series.hpp"
#include "virlab/combinatorics.hpp"
#include "virlab/radius.hpp"
#include "virlab/thermo.hpp"

using namespace virlab;

namespace {

Rat random_rat(std::mt19937& gen) {
  std::uniform_int_distribution<int> n(-12, 12), d(1, 9);
  return Rat(n(gen), d(gen));
}

CoeffSeq<Rat> random_seq(std::mt19937& gen, int base, int order) {
  std::vector<Rat> v;
  for (int k = base; k <= order; ++k) v.push_back(random_rat(gen));
  return CoeffSeq<Rat>(base, v);
}

// Brute force: sum over all compositions of k into at least two positive parts.
Rat compositions_sum(const CoeffSeq<Rat>& g, int k) {
  Rat total(0);
  std::function<void(int, int, Rat)> rec = [&](int remaining, int parts, Rat prod) {
    if (remaining == 0) {
      if (parts >= 2) total += prod;
      return;
    }
    for (int p = 1; p <= remaining; ++p) rec(remaining - p, parts + 1, prod * g[p]);
  };
  rec(k, 0, Rat(1));
  return total;
}

std::vector<Rat> rat_range(std::initializer_list<Rat> xs) { return std::vector<Rat>(xs); }

}  // namespace

TEST_CASE("convolution conventions") {
  const CoeffSeq<Rat> a(1, rat_range({2, 3, 5})), b(1, rat_range({7, 11, 13}));
  const auto ab = conv(a, b);
  CHECK(ab[1] == Rat(0));
  CHECK(ab[2] == Rat(14));
  CHECK(ab[3] == Rat(2 * 11 + 3 * 7));
  CHECK(conv(a, b) == conv(b, a));

  const CoeffSeq<Rat> c0(0, rat_range({1, 1, Rat(3, 2), Rat(8, 3)}));
  const auto cc = conv(c0, c0);
  CHECK(cc[1] == Rat(2));
  // c_2(0) = (c∗c)_1 · (k+1)/(2k) at k = 2
  CHECK(cc[1] * Rat(3, 4) == Rat(3, 2));

  CHECK_THROWS_AS(conv(a, c0), BaseMismatch);
  CHECK(conv(a, CoeffSeq<Rat>(1, rat_range({1, 1}))).order() == 2);

  const CoeffSeq<Rat> minus(1, rat_range({-1, 4, -9, 2, 7}));
  for (int k = 1; k <= 5; ++k) CHECK(self_power(minus, k)[k] == (k % 2 ? Rat(-1) : Rat(1)));
}

TEST_CASE("h_k matches brute-force compositions") {
  std::mt19937 gen(3);
  CHECK(h_k_eval(CoeffSeq<Rat>(1, {}), 1) == Rat(1, 2));
  const CoeffSeq<Rat> g1(1, rat_range({-3}));
  CHECK(h_k_eval(g1, 2) == Rat(9, 2));
  CHECK_THROWS_AS(h_k_eval(g1, 3), InsufficientOrder);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = random_seq(gen, 1, 8);
    for (int k = 2; k <= 8; ++k) CHECK(h_k_eval(g, k) == compositions_sum(g, k) * Rat(1, 2));
    CHECK(h_k_eval(g, 6, Rat(3, 7)) == compositions_sum(g, 6) * Rat(3, 7));
  }
}

TEST_CASE("h_k is homogeneous of degree k") {
  std::mt19937 gen(8);
  for (int trial = 0; trial < 5; ++trial) {
    const auto d = random_seq(gen, 1, 10);
    const Rat lam = random_rat(gen) + Rat(13);
    std::vector<Rat> scaled;
    for (int j = 1; j <= 10; ++j) scaled.push_back(pow(lam, j) * d[j]);
    const CoeffSeq<Rat> s(1, scaled);
    for (int k = 2; k <= 10; ++k) CHECK(h_k_eval(s, k) == pow(lam, k) * h_k_eval(d, k));
  }
}

TEST_CASE("weighted partitions") {
  // unrestricted partition numbers p(n)
  const int p[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  for (int n = 1; n <= 10; ++n) {
    CHECK(weighted_partitions(n, n).size() == static_cast<std::size_t>(p[n]));
    CHECK(count_weighted_partitions(n, n) == static_cast<std::uint64_t>(p[n]));
  }
  CHECK(count_weighted_partitions(30, 30) == 5604);
  for (const auto& w : weighted_partitions(9, 4)) {
    int s = 0;
    for (int i = 1; i <= 4; ++i) s += i * w.multiplicity[static_cast<std::size_t>(i)];
    CHECK(s == 9);
  }
}

TEST_CASE("cluster reductions") {
  const Rat b1(-5, 3), b2(7, 2);
  const CoeffSeq<Rat> beta(1, rat_range({b1, b2}));
  const auto b = b_from_beta(beta, 3);
  CHECK(b[1] == Rat(1));
  CHECK(b[2] == b1 / Rat(2));
  CHECK(b[3] == b1 * b1 / Rat(2) + b2 / Rat(3));
  CHECK(beta_from_b(b, 1)[1] == Rat(2) * b[2]);
  // β₂ written out by hand: -6 b₂² + 3 b₃
  CHECK(beta_from_b(b, 2)[2] == Rat(-6) * b[2] * b[2] + Rat(3) * b[3]);
  CHECK_THROWS_AS(b_from_beta(beta, 5), InsufficientOrder);
  CHECK_THROWS_AS(beta_from_b(b, 3), InsufficientOrder);
}

TEST_CASE("cluster round trips") {
  std::mt19937 gen(21);
  for (int trial = 0; trial < 3; ++trial) {
    const auto beta = random_seq(gen, 1, 12);
    CHECK(beta_from_b(b_from_beta(beta, 13), 12) == beta);
    std::vector<Rat> bv{1};
    for (int l = 2; l <= 13; ++l) bv.push_back(random_rat(gen));
    const CoeffSeq<Rat> b(1, bv);
    CHECK(b_from_beta(beta_from_b(b, 12), 13) == b);
  }
}

TEST_CASE("cluster reduction agrees with inverting the activity relation") {
  // z = ρ exp(-Σ β_k ρ^k); inverting gives ρ(z) = Σ l b_l z^l.
  std::mt19937 gen(4);
  const int L = 9;
  const auto beta = random_seq(gen, 1, L - 1);
  std::vector<Rat> expo{0};
  for (int k = 1; k <= L - 1; ++k) expo.push_back(-beta[k]);
  // exp of a series without constant term, by the recurrence n e_n = Σ j a_j e_{n-j}
  std::vector<Rat> e(static_cast<std::size_t>(L), Rat(0));
  e[0] = 1;
  for (int n = 1; n < L; ++n) {
    Rat acc(0);
    for (int j = 1; j <= n; ++j) acc += Rat(j) * expo[static_cast<std::size_t>(j)] * e[static_cast<std::size_t>(n - j)];
    e[static_cast<std::size_t>(n)] = acc / Rat(n);
  }
  std::vector<Rat> zc{0};
  for (int n = 0; n < L; ++n) zc.push_back(e[static_cast<std::size_t>(n)]);
  const auto rho = series_invert(FormalSeries<Rat>::dense(zc, "rho"), L);
  const auto b = b_from_beta(beta, L);
  for (int l = 1; l <= L; ++l) CHECK(rho[l] == Rat(l) * b[l]);
}

TEST_CASE("hard-sphere seed in infinite dimension") {
  std::vector<Rat> bv{-1};
  for (int k = 2; k <= 11; ++k) bv.push_back(0);
  const auto b = b_from_beta(CoeffSeq<Rat>(1, bv), 12);
  for (int n = 1; n <= 12; ++n)
    CHECK(Rat(n) * b[n] == pow(Rat(-n), n - 1) / Rat(factorial(static_cast<unsigned long>(n))));
}

TEST_CASE("compositional inversion") {
  const auto id = FormalSeries<Rat>::dense(rat_range({0, 1}));
  CHECK(series_invert(id, 6).dense_coefficients() == rat_range({0, 1, 0, 0, 0, 0, 0}));

  const auto f = FormalSeries<Rat>::dense(rat_range({0, 1, 1}));
  const auto g = series_invert(f, 5);
  CHECK(g.dense_coefficients() == rat_range({0, 1, -1, 2, -5, 14}));
  const auto back = compose(f, g, 5);
  CHECK(back.dense_coefficients() == rat_range({0, 1, 0, 0, 0, 0}));

  // ρe^ρ inverts to the Lambert series
  std::vector<Rat> z{0};
  for (int n = 1; n <= 15; ++n) z.push_back(Rat(1) / Rat(factorial(static_cast<unsigned long>(n - 1))));
  const auto w = series_invert(FormalSeries<Rat>::dense(z), 15);
  for (int n = 1; n <= 15; ++n)
    CHECK(w[n] == pow(Rat(-n), n - 1) / Rat(factorial(static_cast<unsigned long>(n))));
  CHECK(compose(FormalSeries<Rat>::dense(z), w, 15).dense_coefficients() ==
        compose(id, id, 15).dense_coefficients());

  CHECK_THROWS_AS(series_invert(FormalSeries<Rat>::dense(rat_range({0, 0, 1})), 4), NotInvertible);
  CHECK_THROWS_AS(series_invert(FormalSeries<Rat>::dense(rat_range({1, 1})), 4), NotInvertible);
}

TEST_CASE("thermodynamic maps") {
  const int K = 12;
  auto ideal = thermo_maps(CoeffSeq<Rat>(1, std::vector<Rat>(K, Rat(0))), K);
  CHECK(ideal.pressure[1] == Rat(1));
  for (int n = 2; n <= K + 1; ++n) CHECK(ideal.pressure[n] == Rat(0));
  CHECK(ideal.mu_star.log_coefficient == Rat(1));

  const Rat t(3, 5);
  std::vector<Rat> tb{-t};
  for (int n = 2; n <= K; ++n) tb.push_back(0);
  auto tree = thermo_maps(CoeffSeq<Rat>(1, tb), K);
  CHECK(tree.pressure[2] == t / Rat(2));
  CHECK(tree.virial[2] == t / Rat(2));
  CHECK(tree.free_excess[2] == t / Rat(2));
  CHECK(tree.mu_star.series[1] == t);

  for (const Rat eps : {Rat(1, 2), Rat(3, 7)}) {
    std::vector<Rat> sb;
    for (int n = 1; n <= K; ++n) sb.push_back(-pow(Rat(2) * eps, -n) / Rat(n));
    auto st = thermo_maps(CoeffSeq<Rat>(1, sb), K);
    // -2ε log(1 - ρ/2ε) = Σ ρ^m (2ε)^{1-m}/m
    for (int m = 1; m <= K + 1; ++m) CHECK(st.pressure[m] == pow(Rat(2) * eps, 1 - m) / Rat(m));
  }
}

TEST_CASE("radius estimates") {
  std::vector<double> geo;
  for (int n = 0; n < 12; ++n) geo.push_back(std::pow(0.5, -n));
  CHECK(radius_estimate(geo, RadiusMethod::ratio).estimate == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(radius_estimate(geo, RadiusMethod::domb_sykes).estimate == doctest::Approx(0.5).epsilon(1e-12));

  std::vector<double> w;
  for (int n = 1; n <= 40; ++n) w.push_back(std::exp((n - 1) * std::log(n) - std::lgamma(n + 1.0)));
  const auto ds = radius_estimate(w, RadiusMethod::domb_sykes, 1);
  CHECK(std::abs(ds.estimate * std::exp(1.0) - 1) < 1e-2);
  CHECK(!ds.partial.empty());

  CHECK_THROWS_AS(radius_estimate(std::vector<double>{1, 2, 3, 4}, RadiusMethod::ratio), TooShort);
  CHECK_THROWS_AS(radius_estimate(std::vector<double>{1, 2, 3, 4, 5, 0}, RadiusMethod::ratio), TooShort);
}

TEST_CASE("combinatorial identities") {
  for (unsigned n = 2; n <= 30; ++n) {
    const auto id = tree_split_identity(n);
    CHECK(id.lhs == id.rhs);
  }
  CHECK(convolution_domination_margin(2000) <= 1e-12);
}
