#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "coxroot/egcm_graph.hpp"
#include "oracles.hpp"
#include "random_graphs.hpp"

namespace {

using namespace coxroot;

ErrorCode build_error(const std::vector<std::vector<std::string>>& entries) {
  try {
    validate_and_build(RawEntryTable{entries, {}});
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "graph accepted";
  return ErrorCode::InvalidArgument;
}

TEST(EGCMGraph, ValidationErrors) {
  EXPECT_EQ(build_error({{"2", "-1"}, {"-1", "3"}}), ErrorCode::DiagonalNotTwo);
  EXPECT_EQ(build_error({{"2", "1"}, {"-1", "2"}}), ErrorCode::PositiveOffDiagonal);
  EXPECT_EQ(build_error({{"2", "0"}, {"-1", "2"}}), ErrorCode::AsymmetricZeroPair);
  // Product 1/2 is not 4cos^2(pi/k) for a rational-valued k.
  EXPECT_EQ(build_error({{"2", "-1"}, {"-1/2", "2"}}), ErrorCode::UnrecognizedBond);
}

TEST(EGCMGraph, BondOrdersFromProducts) {
  const auto g = validate_and_build(RawEntryTable{{{"2", "-1", "0", "-2"},
                                                   {"-1", "2", "-1", "0"},
                                                   {"0", "-3", "2", "-1"},
                                                   {"-2", "0", "-5", "2"}},
                                                  {}});
  EXPECT_EQ(g.mode(), NumericMode::exact);
  EXPECT_EQ(g.bond_order(0, 1), 3);
  EXPECT_EQ(g.bond_order(1, 2), 6);
  EXPECT_EQ(g.bond_order(0, 2), 2);
  EXPECT_TRUE(is_infinite(g.bond_order(0, 3)));
  EXPECT_TRUE(is_infinite(g.bond_order(2, 3)));
  EXPECT_EQ(g.bond_order(1, 1), 1);
}

TEST(EGCMGraph, DecimalEntriesSelectFloatMode) {
  const auto g = validate_and_build(RawEntryTable{{{"2", "-0.5"}, {"-2", "2"}}, {}});
  EXPECT_EQ(g.mode(), NumericMode::floating);
  const auto f = validate_and_build(RawEntryTable{{{"2", "-0.80901699437494742"}, {"-3.2360679774997897", "2"}}, {}});
  EXPECT_EQ(f.mode(), NumericMode::floating);
  EXPECT_EQ(f.bond_order(0, 1), 5);
}

TEST(EGCMGraph, FourCosSquaredRoundTrip) {
  for (int k = 2; k <= 1000; ++k) {
    const Scalar p = four_cos_squared(k, NumericMode::floating, 1e-12);
    ASSERT_EQ(recognize_bond(p, NumericMode::floating, 1000), k) << k;
  }
  for (int k : {2, 3, 4, 6}) {
    EXPECT_EQ(recognize_bond(four_cos_squared(k, NumericMode::exact, 0), NumericMode::exact, 1000), k);
  }
  EXPECT_TRUE(is_infinite(recognize_bond(Scalar(4), NumericMode::exact, 1000)));
  EXPECT_TRUE(is_infinite(recognize_bond(Scalar::ratio(9, 2), NumericMode::exact, 1000)));
}

TEST(EGCMGraph, OddAsymmetriesAndComponents) {
  const auto g = testgen::fixture("example312_rational");
  EXPECT_EQ(g.components().size(), 3u);
  std::vector<int> f;
  for (const auto& c : g.components()) f.push_back(f_value(g, c));
  EXPECT_EQ(f, (std::vector<int>{2, 1, 3}));
  for (auto [i, j] : g.odd_asymmetries()) {
    EXPECT_TRUE(g.odd_neighbors(i, j));
    EXPECT_NE(g.entry(i, j), g.entry(j, i));
  }
}

TEST(EGCMGraph, LinkScalarsInvert) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    const auto g = testgen::random_unital(rng, 5);
    for (int i = 0; i < g.size(); ++i)
      for (int j = 0; j < g.size(); ++j)
        if (g.odd_neighbors(i, j)) {
          EXPECT_EQ(link_scalar(g, i, j) * link_scalar(g, j, i), Scalar(1));
          EXPECT_EQ(pi_product(g, ONPath{{i, j, i}}), Scalar(1));
        }
  }
}

TEST(EGCMGraph, FloatLinkScalars) {
  const auto g = testgen::fixture("example312_reconstruction");
  // K_46 = -a_46 / (2cos(pi/5)), the scalar on the step 6 -> 4.
  EXPECT_NEAR(link_scalar(g, 5, 3).to_double(), 0.5, 1e-9);
  EXPECT_NEAR(link_scalar(g, 3, 5).to_double(), 2.0, 1e-9);
}

TEST(EGCMGraph, PathErrors) {
  const auto g = testgen::fixture("a3");
  try {
    pi_product(g, ONPath{{0, 2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidPath);
  }
  try {
    link_scalar(g, 0, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotOddNeighbors);
  }
}

TEST(EGCMGraph, GcmsAreUnitalWithFOne) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const auto g = testgen::random_gcm(rng, 2 + t % 5);
    EXPECT_TRUE(g.odd_asymmetries().empty());
    for (const auto& c : g.components()) {
      EXPECT_TRUE(is_unital_on_cyclic(g, c));
      EXPECT_EQ(f_value(g, c), 1);
    }
  }
}

TEST(EGCMGraph, UnitalCheckAgreesWithCycleWalk) {
  std::mt19937_64 rng(7);
  int non_unital_seen = 0;
  for (int t = 0; t < 120; ++t) {
    const auto g = t % 2 ? testgen::random_unital(rng, 5, {0.7, 0.9, true})
                         : testgen::random_non_unital(rng, 5);
    bool all = true;
    for (const auto& c : g.components()) {
      const auto report = unital_report(g, c);
      all &= report.unital;
      if (!report.unital) {
        ASSERT_TRUE(report.certificate.has_value());
        EXPECT_TRUE(report.certificate->is_cycle());
        EXPECT_NE(pi_product(g, *report.certificate), Scalar(1));
      }
    }
    EXPECT_EQ(all, oracle::every_simple_cycle_unital(g)) << t;
    non_unital_seen += !all;
  }
  EXPECT_GE(non_unital_seen, 60);
}

TEST(EGCMGraph, PathProductsMatchDepthFirstSearch) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 40; ++t) {
    const auto g = testgen::random_unital(rng, 5, {0.7, 0.8, true});
    for (int x = 0; x < g.size(); ++x) {
      auto expected = oracle::distinct(oracle::simple_path_products(g, x));
      auto got = distinct_path_products(g, x);
      EXPECT_EQ(got.size(), expected.size());
      for (const auto& v : expected) EXPECT_NE(std::find(got.begin(), got.end(), v), got.end());
      std::size_t simple = 0;
      for (const auto& p : simple_on_paths(g, x)) {
        EXPECT_TRUE(p.is_simple());
        EXPECT_EQ(p.end(), x);
        ++simple;
      }
      EXPECT_EQ(simple, oracle::simple_path_products(g, x).size());
    }
  }
}

TEST(EGCMGraph, LongPathsHaveSimpleEquivalents) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 60; ++t) {
    const auto g = testgen::random_unital(rng, 5, {0.8, 0.9, false});
    for (int trial = 0; trial < 10; ++trial) {
      std::uniform_int_distribution<int> node(0, g.size() - 1);
      std::vector<int> walk{node(rng)};
      std::uniform_int_distribution<int> len(1, 6);
      const int target = len(rng);
      while (static_cast<int>(walk.size()) <= target) {
        std::vector<int> next;
        for (int j = 0; j < g.size(); ++j)
          if (g.odd_neighbors(walk.back(), j)) next.push_back(j);
        if (next.empty()) break;
        std::uniform_int_distribution<std::size_t> pick(0, next.size() - 1);
        walk.push_back(next[pick(rng)]);
      }
      const ONPath p{walk};
      const Scalar pi = pi_product(g, p);
      bool found = false;
      for (const auto& q : simple_on_paths(g, p.end())) {
        if (q.start() == p.start() && pi_product(g, q) == pi) found = true;
      }
      EXPECT_TRUE(found) << "walk of length " << p.length();
    }
  }
}

TEST(EGCMGraph, MatrixTypeAgreesWithPerronRoot) {
  std::mt19937_64 rng(17);
  int tested = 0;
  std::array<int, 3> seen{};
  for (int t = 0; t < 300 && tested < 120; ++t) {
    const auto g = t % 3 == 0 ? testgen::random_gcm(rng, 2 + t % 4, 0.8)
                              : testgen::random_unital(rng, 2 + t % 4, {0.8, 0.5, t % 2 == 0});
    if (!g.is_connected()) continue;
    ++tested;
    const Matrix& a = g.matrix();
    const int n = g.size();
    const Vector a_ones = a * ones_vector(n);
    auto system = [&](Relation rel, int margin) {
      Vector rhs(n);
      for (int k = 0; k < n; ++k) rhs(k) = Scalar(margin) - a_ones(k);
      const std::vector<Relation> rels(static_cast<std::size_t>(n), rel);
      return feasible(a, rhs, rels);
    };
    const int count = int(system(Relation::greater_equal, 1)) +
                      int(system(Relation::equal, 0) && rank(a) == n - 1) +
                      int(system(Relation::less_equal, -1));
    EXPECT_EQ(count, 1);
    const MatrixType type = classify_matrix_type(g);
    EXPECT_EQ(type, oracle::perron_type(g));
    ++seen[static_cast<std::size_t>(type)];
  }
  EXPECT_GE(tested, 100);
  EXPECT_GT(seen[0], 0);
  EXPECT_GT(seen[2], 0);
}

TEST(EGCMGraph, AffineFixturesAreZeroType) {
  EXPECT_EQ(classify_matrix_type(testgen::fixture("dihedral_pq4")), MatrixType::zero);
  EXPECT_EQ(classify_matrix_type(testgen::fixture("example48")), MatrixType::zero);
  EXPECT_EQ(classify_matrix_type(testgen::fixture("dihedral_pq5")), MatrixType::minus);
  EXPECT_EQ(classify_matrix_type(testgen::fixture("g2")), MatrixType::plus);
}

TEST(EGCMGraph, StandardizeIsSymmetric) {
  const auto g = testgen::fixture("asym_m3");
  const auto s = standardize(g);
  EXPECT_EQ(s.entry(0, 1), Scalar(-1));
  EXPECT_EQ(s.entry(1, 0), Scalar(-1));
  const auto inf = standardize(testgen::fixture("example48"));
  EXPECT_EQ(inf.entry(0, 1), Scalar(-2));
  const auto b2 = standardize(testgen::fixture("b2"));
  EXPECT_EQ(b2.mode(), NumericMode::floating);
  EXPECT_NEAR(b2.entry(0, 1).to_double(), -std::sqrt(2.0), 1e-12);
  EXPECT_EQ(b2.bond_order(0, 1), 4);
}

}  // namespace
