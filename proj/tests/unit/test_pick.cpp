#include <gtest/gtest.h>

#include <random>

#include "npkit/error.hpp"
#include "npkit/pick.hpp"

using namespace npkit;
using namespace npkit::pick;

namespace {

std::vector<double> hardy(std::size_t n = 3000) { return std::vector<double>(n, 1.0); }

PickProblem disc_problem(std::vector<Complex> nodes, std::vector<Complex> targets) {
  PickProblem p;
  p.kernel = hardy();
  p.dimension = 1;
  for (auto z : nodes) p.nodes.push_back({z});
  p.targets = std::move(targets);
  return p;
}

// Exact sign test for a 2x2 Hermitian matrix via its minors.
bool psd_by_minors(double m11, double m22, double det) {
  return m11 >= 0 && m22 >= 0 && det >= 0;
}

}  // namespace

TEST(PickMatrix, Examples) {
  auto single = disc_problem({0.0}, {0.0});
  auto m = build_pick_matrix(single);
  EXPECT_EQ(m.order(), 1u);
  EXPECT_DOUBLE_EQ(m(0, 0).real(), 1.0);

  auto p = disc_problem({0.0, 0.5}, {0.0, 0.5});
  m = build_pick_matrix(p);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(m(i, j) - 1.0), 0.0, 1e-13);

  p.targets[1] = 0.6;
  m = build_pick_matrix(p);
  EXPECT_NEAR(m(1, 1).real(), 4.0 / 3.0 * 0.64, 1e-13);
}

TEST(MinEigenvalue, Examples) {
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(3, 3);
  auto r = min_eigenvalue(id);
  EXPECT_NEAR(r.min_eigenvalue, 1.0, 1e-15);
  EXPECT_TRUE(r.is_psd);

  Eigen::MatrixXcd ones = Eigen::MatrixXcd::Ones(2, 2);
  r = min_eigenvalue(ones);
  EXPECT_NEAR(r.min_eigenvalue, 0.0, 1e-15);
  EXPECT_TRUE(r.is_psd);

  Eigen::MatrixXcd bad(2, 2);
  bad << 1.0, 1.0, 1.0, 4.0 / 3.0 * 0.64;
  r = min_eigenvalue(bad);
  EXPECT_LT(r.min_eigenvalue, 0.0);
  EXPECT_FALSE(r.is_psd);

  Eigen::MatrixXcd skew(2, 2);
  skew << 1.0, 1.0, 0.0, 1.0;
  EXPECT_THROW(HermitianMatrix{skew}, Error);
}

TEST(PickFeasible, SchwarzPickTwoPoints) {
  for (double lambda = 0.0; lambda <= 0.99; lambda += 0.01) {
    auto p = disc_problem({0.0, 0.5}, {0.0, lambda});
    if (std::abs(lambda - 0.5) < 1e-6) continue;
    EXPECT_EQ(pick_feasible(p).is_psd, lambda <= 0.5) << lambda;
  }
}

TEST(PickFeasible, TrivialTargets) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  std::vector<Complex> nodes;
  for (int i = 0; i < 6; ++i) nodes.emplace_back(u(rng), u(rng));
  EXPECT_TRUE(pick_feasible(disc_problem(nodes, std::vector<Complex>(6, 0.0))).is_psd);
  EXPECT_TRUE(pick_feasible(disc_problem(nodes, std::vector<Complex>(6, {0.3, -0.4}))).is_psd);
}

TEST(PickFeasible, ScalingMonotone) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  std::vector<Complex> nodes, targets;
  for (int i = 0; i < 5; ++i) {
    nodes.emplace_back(u(rng), u(rng));
    targets.emplace_back(u(rng) * 1.5, u(rng) * 1.5);
  }
  double prev = -1e300;
  for (int k = 10; k >= 0; --k) {
    std::vector<Complex> scaled;
    for (auto t : targets) scaled.push_back(t * (k / 10.0));
    const double m = pick_feasible(disc_problem(nodes, scaled)).min_eigenvalue;
    EXPECT_GE(m, prev - 1e-12);
    prev = m;
  }
}

TEST(PickFeasible, AgreesWithMinorsOn2x2) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto p = disc_problem({{u(rng), u(rng)}, {u(rng), u(rng)}}, {{u(rng), u(rng)}, {u(rng), u(rng)}});
    const auto m = build_pick_matrix(p);
    const double det = (m(0, 0) * m(1, 1)).real() - std::norm(m(0, 1));
    if (std::abs(det) < 1e-9) continue;
    ++checked;
    EXPECT_EQ(pick_feasible(p).is_psd, psd_by_minors(m(0, 0).real(), m(1, 1).real(), det));
  }
  EXPECT_GT(checked, 250);
}

TEST(PickFeasible, BallDimensionTwo) {
  PickProblem p;
  p.kernel = hardy();
  p.dimension = 2;
  p.nodes = {{0.0, 0.0}, {0.3, Complex(0.0, 0.4)}};
  // |z| = 0.5: feasible iff |lambda| <= 0.5 for the Drury-Arveson kernel.
  p.targets = {0.0, 0.49};
  EXPECT_TRUE(pick_feasible(p).is_psd);
  p.targets = {0.0, 0.51};
  EXPECT_FALSE(pick_feasible(p).is_psd);
}

TEST(PickProblem, Validation) {
  auto p = disc_problem({0.0, 0.0}, {0.0, 0.1});
  EXPECT_THROW(p.validate(), Error);
  auto q = disc_problem({0.0, 1.0}, {0.0, 0.1});
  EXPECT_THROW(q.validate(), Error);
  auto r = disc_problem({0.0}, {0.0, 0.1});
  EXPECT_THROW(r.validate(), Error);
}

TEST(Gram, Examples) {
  const auto g = gram_and_irreducibility(hardy(), 1, {{0.0}, {0.5}});
  EXPECT_NEAR(g.gram(0, 0).real(), 1.0, 1e-14);
  EXPECT_NEAR(g.gram(0, 1).real(), 1.0, 1e-14);
  EXPECT_NEAR(g.gram(1, 1).real(), 4.0 / 3.0, 1e-13);
  EXPECT_TRUE(g.irreducible);
  EXPECT_TRUE(gram_and_irreducibility(hardy(), 1, {{0.2}}).irreducible);
  EXPECT_THROW(gram_and_irreducibility(hardy(), 1, {{0.2}, {0.2}}), Error);
}
