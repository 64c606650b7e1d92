#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "npkit/error.hpp"
#include "npkit/seqkernel.hpp"
#include "oracles.hpp"

using namespace npkit;
using namespace npkit::seqkernel;

namespace {

ExactSequence q(std::initializer_list<const char*> terms) {
  ExactSequence out;
  for (auto t : terms) out.push_back(parse_rational(t));
  return out;
}

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no npkit::Error thrown";
  return ErrorKind::Domain;
}

}  // namespace

TEST(ParseRational, Forms) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-1/12"), Rational(-1, 12));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("1.5e-2"), Rational(3, 200));
  EXPECT_EQ(to_string(Rational(6, 4)), "3/2");
  EXPECT_EQ(kind_of([] { parse_rational("1/0"); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([] { parse_rational("x"); }), ErrorKind::Domain);
}

TEST(AFromB, DruryArvesonAllOnes) {
  const auto a = a_from_b<Rational>(q({"1"}), 10);
  ASSERT_EQ(a.size(), 10u);
  for (const auto& x : a) EXPECT_EQ(x, Rational(1));
}

TEST(AFromB, ZeroB) {
  const auto a = a_from_b<Rational>(ExactSequence{}, 5);
  EXPECT_EQ(a[0], Rational(1));
  for (std::size_t n = 1; n < a.size(); ++n) EXPECT_EQ(a[n], Rational(0));
}

TEST(AFromB, HarmonicAgainstSeriesProduct) {
  // a = (1, 1/2, 1/3, ...) against b from the inverse direction; the oracle
  // checks (1 - B(x)) A(x) = 1 by series multiplication.
  const std::size_t n = 12;
  ExactSequence a;
  for (std::size_t k = 0; k < n; ++k) a.push_back(Rational(1, static_cast<int>(k + 1)));
  const auto b = b_from_a<Rational>(a);
  EXPECT_EQ(b[0], Rational(1, 2));
  EXPECT_EQ(b[1], Rational(1, 12));
  EXPECT_EQ(b[2], Rational(1, 24));
  std::vector<oracle::Q> one_minus_b(n, 0);
  one_minus_b[0] = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) one_minus_b[k + 1] = -b[k];
  const auto prod = oracle::series_product(one_minus_b, a, n);
  EXPECT_EQ(prod[0], oracle::Q(1));
  for (std::size_t k = 1; k < n; ++k) EXPECT_EQ(prod[k], oracle::Q(0)) << k;
  EXPECT_EQ(a_from_b<Rational>(b, n), a);
}

TEST(AFromB, MatchesGeometricSeriesOracle) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(0, 5), den(1, 7);
  for (int trial = 0; trial < 20; ++trial) {
    ExactSequence b;
    for (int k = 0; k < 8; ++k) b.push_back(Rational(num(rng), den(rng)));
    EXPECT_EQ(a_from_b<Rational>(b, 9), oracle::geometric_series(b, 9));
  }
}

TEST(AFromB, Errors) {
  EXPECT_EQ(kind_of([] { a_from_b<double>(std::vector<double>{0.5, -0.1}, 4); }),
            ErrorKind::Domain);
  EXPECT_EQ(kind_of([] { a_from_b<double>(std::vector<double>{0.5}, 0); }), ErrorKind::Domain);
}

TEST(BFromA, ExamplesAndErrors) {
  const auto b = b_from_a<double>(std::vector<double>{1, 1, 1, 1});
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b[0], 1.0);
  EXPECT_EQ(b[1], 0.0);
  EXPECT_EQ(b[2], 0.0);
  EXPECT_EQ(kind_of([] { b_from_a<double>(std::vector<double>{2, 1}); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([] { b_from_a<double>(std::vector<double>{1, 0.0, 1}); }), ErrorKind::Domain);
  // A non-log-convex a yields a negative b, which is reported.
  const auto neg = b_from_a<double>(std::vector<double>{1, 0.5, 0.2});
  EXPECT_LT(neg[1], 0.0);
}

TEST(BFromA, ExactRoundtripRandom) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(0, 9), den(1, 9);
  for (int trial = 0; trial < 30; ++trial) {
    // b_1 > 0 keeps every a_n positive.
    ExactSequence b{Rational(1 + num(rng), den(rng))};
    for (int k = 1; k < 15; ++k) b.push_back(Rational(num(rng), den(rng)));
    const auto a = a_from_b<Rational>(b, 16);
    EXPECT_EQ(b_from_a<Rational>(a), b);
  }
}

TEST(BFromA, FloatRoundtrip) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> b(63);
    for (auto& x : b) x = u(rng) / 64.0;
    const auto a = a_from_b<double>(b, 64);
    const auto b2 = b_from_a<double>(a);
    for (std::size_t k = 0; k < b.size(); ++k) EXPECT_NEAR(b2[k], b[k], 1e-12);
  }
}

TEST(Admissible, Examples) {
  const std::vector<double> ones(64, 1.0);
  auto r = check_admissible_log_convex(ones);
  EXPECT_TRUE(r.verdict);
  EXPECT_EQ(r.last_ratio, 1.0);

  std::vector<double> geo(64);
  for (std::size_t n = 0; n < geo.size(); ++n) geo[n] = std::ldexp(1.0, -static_cast<int>(n));
  r = check_admissible_log_convex(geo);
  EXPECT_FALSE(r.verdict);
  EXPECT_TRUE(r.ratios_nonincreasing);
  EXPECT_DOUBLE_EQ(r.last_ratio, 2.0);

  std::vector<double> harm(64);
  for (std::size_t n = 0; n < harm.size(); ++n) harm[n] = 1.0 / static_cast<double>(n + 1);
  r = check_admissible_log_convex(harm, 0.02);
  EXPECT_TRUE(r.verdict);
  EXPECT_NEAR(r.last_ratio, 64.0 / 63.0, 1e-14);
  EXPECT_EQ(r.truncation, 64u);
  // 64/63 is not within the default 1e-6 of 1.
  EXPECT_FALSE(check_admissible_log_convex(harm).verdict);

  std::vector<double> bad = {2.0, 1.0};
  EXPECT_FALSE(check_admissible_log_convex(bad).a0_is_one);
}

TEST(Growth, Examples) {
  const std::size_t n = 50;
  std::vector<double> a(n), a2(n), a3(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double m = static_cast<double>(k + 1);
    a[k] = 1.0 / std::sqrt(m);
    a2[k] = a[k] * (1.0 + 1.0 / m);
    a3[k] = 1.0 / m;
  }
  auto same = same_growth_report(a, a, n);
  EXPECT_EQ(same.min_ratio, 1.0);
  EXPECT_EQ(same.max_ratio, 1.0);
  auto r = same_growth_report(a, a2, n);
  EXPECT_GE(r.min_ratio, 1.0);
  EXPECT_LE(r.max_ratio, 2.0);
  auto d = same_growth_report(a, a3, n);
  EXPECT_NEAR(d.min_ratio, 1.0 / std::sqrt(static_cast<double>(n)), 1e-14);
  EXPECT_EQ(d.argmin_index, n - 1);
  auto back = same_growth_report(a3, a, n);
  EXPECT_NEAR(d.min_ratio, 1.0 / back.max_ratio, 1e-12);
}

TEST(KernelEval, Examples) {
  std::vector<double> ones(400, 1.0);
  auto v = kernel_eval(ones, 0.5, 1e-12);
  EXPECT_NEAR(v.value.real(), 2.0, 1e-12);
  EXPECT_EQ(kernel_eval(ones, 0.0, 1e-12).value, std::complex<double>(1.0));

  std::vector<double> harm(400);
  for (std::size_t n = 0; n < harm.size(); ++n) harm[n] = 1.0 / static_cast<double>(n + 1);
  v = kernel_eval(harm, 0.5, 1e-12);
  EXPECT_NEAR(v.value.real(), 2.0 * std::numbers::ln2, 1e-12);

  EXPECT_EQ(kind_of([&] { kernel_eval(ones, 1.0, 1e-12); }), ErrorKind::Domain);
  std::vector<double> few(5, 1.0);
  EXPECT_EQ(kind_of([&] { kernel_eval(few, 0.9, 1e-12); }), ErrorKind::Uncertified);
}

TEST(KernelEval, AllOnesWithinTailBound) {
  std::vector<double> ones(2000, 1.0);
  for (double r : {0.1, 0.5, 0.8, 0.9}) {
    for (double t : {0.0, 1.0, 2.5}) {
      const std::complex<double> u = std::polar(r, t);
      const auto v = kernel_eval(ones, u, 1e-12);
      EXPECT_LE(std::abs(v.value - 1.0 / (1.0 - u)), v.tail_bound + 1e-13);
    }
  }
}

TEST(ReductionF, Examples) {
  std::vector<double> half(10, 0.5);
  const auto a = reduction_f(half, 4);
  EXPECT_EQ(a[0], 1.0);
  EXPECT_NEAR(a[1], std::exp(-0.5), 1e-15);
  EXPECT_NEAR(a[2], std::exp(-0.75), 1e-15);
  EXPECT_NEAR(a[3], std::exp(-0.875), 1e-15);
  std::vector<double> near_one = {1.0 - 1e-12};
  EXPECT_NEAR(reduction_f(near_one, 2)[1], std::exp(-1.0), 1e-11);
}

TEST(ReductionF, OutputIsLogConvex) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> s(64);
    for (auto& x : s) x = u(rng);
    const auto a = reduction_f(s, 64);
    const auto r = check_admissible_log_convex(a);
    EXPECT_TRUE(r.a0_is_one);
    EXPECT_TRUE(r.ratios_nonincreasing);
  }
}

TEST(FDiscrepancy, Examples) {
  std::vector<double> s(80, 0.5), s2(80, 0.25);
  EXPECT_EQ(f_discrepancy(s, s, 80), 0.0);
  EXPECT_NEAR(f_discrepancy(s, s2, 80), 2.0 / 3.0, 1e-12);
  EXPECT_EQ(f_discrepancy(s, s2, 30), f_discrepancy(s2, s, 30));
  double prev = 0.0;
  for (std::size_t n = 1; n <= 80; ++n) {
    const double d = f_discrepancy(s, s2, n);
    EXPECT_GE(d, prev);
    prev = d;
  }
}

TEST(Gamma, Membership) {
  const std::vector<double> ones(20, 1.0);
  auto m = gamma_membership(ones, 20);
  EXPECT_EQ(m.partial_sum, 0.0);
  for (double x : m.embedding) EXPECT_EQ(x, 0.0);

  // g_0 = 3/2 and g_k = (1 + 2^{-k-1}) / (1 + 2^{-k}) give prod_{k<=n} = 1 + 2^{-n-1}.
  std::vector<double> g(60);
  g[0] = 1.5;
  for (std::size_t k = 1; k < g.size(); ++k)
    g[k] = (1.0 + std::ldexp(1.0, -static_cast<int>(k) - 1)) /
           (1.0 + std::ldexp(1.0, -static_cast<int>(k)));
  m = gamma_membership(g, 60);
  EXPECT_NEAR(m.partial_sum, 1.0, 1e-14);
  EXPECT_NEAR(m.embedding[3], 1.0 / 16.0, 1e-15);
  double prev = 0.0;
  for (std::size_t n = 1; n <= 60; ++n) {
    const double p = gamma_membership(g, n).partial_sum;
    EXPECT_GE(p, prev);
    prev = p;
  }
  EXPECT_EQ(gamma_distance(g, g, 60), 0.0);
  EXPECT_NEAR(gamma_distance(g, ones, 20), gamma_membership(g, 20).partial_sum, 1e-15);
  std::vector<double> bad = {1.0, 0.0};
  EXPECT_EQ(kind_of([&] { gamma_membership(bad, 2); }), ErrorKind::Domain);
}

TEST(Turbulence, Examples) {
  const std::vector<double> s(6, 0.5);
  auto step = turbulence_step(s, s, 2, 0.1);
  EXPECT_EQ(step.steps, 1u);
  for (double x : step.g) EXPECT_EQ(x, 1.0);

  std::vector<double> t = s;
  t[0] = 0.75;
  step = turbulence_step(s, t, 0, 0.1);
  const double n = static_cast<double>(step.steps);
  EXPECT_NEAR(step.g[0], std::pow(1.5, 1.0 / n), 1e-15);
  EXPECT_NEAR(turbulence_power(step, s, 0, step.steps), 0.75, 1e-12);
  EXPECT_LT(step.distance_to_identity, 0.1);
  // Minimality: one step fewer misses the bound.
  if (step.steps > 1) {
    const double prev = static_cast<double>(step.steps - 1);
    EXPECT_GE(std::abs(std::pow(1.5, 1.0 / prev) - 1.0), 0.1);
  }
  // Telescoping: prod g_k over the support is 1.
  double prod = 1.0;
  for (double x : step.g) prod *= x;
  EXPECT_NEAR(prod, 1.0, 1e-14);
}

TEST(Turbulence, StaysInUnitInterval) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> us(0.1, 0.6), ud(-0.05, 0.05);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n1 = static_cast<std::size_t>(trial % 8);
    std::vector<double> s(12), t(12);
    for (std::size_t k = 0; k < s.size(); ++k) {
      s[k] = us(rng);
      t[k] = s[k] * std::exp(ud(rng));
    }
    const auto step = turbulence_step(s, t, n1, 0.01);
    for (std::uint64_t i = 0; i <= step.steps; i += std::max<std::uint64_t>(1, step.steps / 16))
      for (std::size_t k = 0; k < s.size(); ++k) {
        const double v = turbulence_power(step, s, k, i);
        EXPECT_GT(v, 0.0);
        EXPECT_LT(v, 1.0);
      }
    for (std::size_t k = 0; k <= n1; ++k)
      EXPECT_NEAR(turbulence_power(step, s, k, step.steps), t[k], 1e-12);
  }
}

TEST(Turbulence, EndpointOutsideIsNoSolution) {
  std::vector<double> s = {0.2, 0.9, 0.5}, t = {0.1, 0.5, 0.5};
  EXPECT_EQ(kind_of([&] { turbulence_step(s, t, 0, 0.1); }), ErrorKind::NoSolution);
}

TEST(DaInner, Examples) {
  const std::vector<unsigned> e1 = {1, 0}, e2 = {0, 1}, both = {1, 1};
  EXPECT_EQ(da_monomial_inner(e1, e1), Rational(1));
  EXPECT_EQ(da_monomial_inner(e1, e2), Rational(0));
  EXPECT_EQ(da_monomial_inner(both, both), Rational(1, 2));
  const std::vector<unsigned> x = {2, 1, 3};
  // 2! 1! 3! / 6! = 12 / 720
  EXPECT_EQ(da_monomial_inner(x, x), Rational(1, 60));
}
