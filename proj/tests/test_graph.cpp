#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "clsparse/edge_io.hpp"
#include "clsparse/generators.hpp"
#include "clsparse/graph.hpp"
#include "clsparse/rng.hpp"
#include "clsparse/spectral.hpp"
#include "test_graphs.hpp"

using namespace clsparse;

TEST(GraphTest, CanonicalizesAndMergesDuplicates) {
  Graph g(3, {{2, 0, 1.0}, {0, 2, 2.5}, {1, 0, 1.0}});
  ASSERT_EQ(g.num_edges(), 2);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1, 1.0}));
  EXPECT_EQ(g.edges()[1], (Edge{0, 2, 3.5}));
  EXPECT_DOUBLE_EQ(g.total_weight(), 4.5);
}

TEST(GraphTest, RejectsInvalidEdges) {
  EXPECT_THROW(Graph(2, {{0, 0, 1.0}}), std::invalid_argument);
  EXPECT_THROW(Graph(2, {{0, 2, 1.0}}), std::invalid_argument);
  EXPECT_THROW(Graph(2, {{0, 1, 0.0}}), std::invalid_argument);
  EXPECT_THROW(Graph(2, {{0, 1, -1.0}}), std::invalid_argument);
}

TEST(GraphTest, Components) {
  const Graph g = testing_graphs::two_triangles();
  EXPECT_EQ(g.num_components(), 2);
  EXPECT_FALSE(g.connected());
  EXPECT_TRUE(testing_graphs::triangle().connected());
}

TEST(PartitionTest, Validates) {
  EXPECT_THROW(Partition({0, 2}), std::invalid_argument);
  EXPECT_THROW(Partition({0, -1}), std::invalid_argument);
  EXPECT_THROW(Partition({0, 0}, 2), std::invalid_argument);
  Partition p({1, 0, 1});
  EXPECT_EQ(p.num_clusters(), 2);
  EXPECT_EQ(p.cluster_sizes(), (std::vector<Index>{1, 2}));
  EXPECT_EQ(p.members(1), (std::vector<Index>{0, 2}));
}

TEST(LaplacianTest, K2) {
  const Graph g(2, {{0, 1, 1.0}});
  Eigen::Matrix2d expected;
  expected << 1, -1, -1, 1;
  EXPECT_TRUE(laplacian(g, LaplacianVariant::Unnormalized).isApprox(expected));
  const Eigen::MatrixXd N = laplacian(g, LaplacianVariant::Normalized);
  EXPECT_TRUE(N.isApprox(expected));
  const Spectrum s = eig_sym(N);
  EXPECT_NEAR(s.values[0], 0.0, 1e-12);
  EXPECT_NEAR(s.values[1], 2.0, 1e-12);
}

TEST(LaplacianTest, Triangle) {
  const Eigen::MatrixXd L = laplacian(testing_graphs::triangle(), LaplacianVariant::Unnormalized);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(L(i, j), i == j ? 2.0 : -1.0);
  }
}

TEST(LaplacianTest, IsolatedVertexPolicy) {
  const Graph g(3, {{0, 1, 1.0}});
  EXPECT_THROW(laplacian(g, LaplacianVariant::Normalized), std::domain_error);
  const Eigen::MatrixXd N =
      laplacian(g, LaplacianVariant::Normalized, IsolatedVertexPolicy::UnitDiagonal);
  EXPECT_DOUBLE_EQ(N(2, 2), 1.0);
  EXPECT_DOUBLE_EQ(N(0, 2), 0.0);
  EXPECT_NO_THROW(laplacian(g, LaplacianVariant::Unnormalized));
}

TEST(LaplacianTest, RandomGraphsArePsdWithKnownKernels) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const Index n = 2 + static_cast<Index>(rng.below(49));
    const Graph g = random_connected_graph(n, 0.2, seed, true);
    const Eigen::MatrixXd L = laplacian(g, LaplacianVariant::Unnormalized);
    const Eigen::MatrixXd N = laplacian(g, LaplacianVariant::Normalized);
    EXPECT_EQ(L, L.transpose());
    EXPECT_EQ(N, N.transpose());
    EXPECT_GE(eig_sym(L).values.minCoeff(), -1e-9);
    EXPECT_GE(eig_sym(N).values.minCoeff(), -1e-9);
    EXPECT_LE((L * Eigen::VectorXd::Ones(n)).norm(), 1e-9);
    const Eigen::VectorXd sqrt_d = g.degrees().cwiseSqrt();
    EXPECT_LE((N * sqrt_d).norm(), 1e-9);
    double sum_deg = g.degrees().sum();
    EXPECT_NEAR(sum_deg, 2.0 * g.total_weight(), 1e-12 * sum_deg);
  }
}

TEST(IncidenceQuadraticTest, Examples) {
  const Graph k2(2, {{0, 1, 1.0}});
  EXPECT_DOUBLE_EQ(incidence_quadratic(k2, Eigen::Vector2d(1, 0)), 1.0);
  EXPECT_DOUBLE_EQ(incidence_quadratic(testing_graphs::triangle(), Eigen::Vector3d(1, 0, 0)), 2.0);
  EXPECT_DOUBLE_EQ(incidence_quadratic(testing_graphs::triangle(), Eigen::Vector3d::Ones()), 0.0);
  EXPECT_THROW(incidence_quadratic(k2, Eigen::Vector3d::Ones()), std::invalid_argument);
}

TEST(IncidenceQuadraticTest, MatchesLaplacianForm) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Graph g = random_connected_graph(30, 0.2, seed, true);
    Rng rng(seed + 1000);
    Eigen::VectorXd x(30);
    for (Index i = 0; i < 30; ++i) x[i] = rng.normal();
    const double direct = x.dot(laplacian(g, LaplacianVariant::Unnormalized) * x);
    EXPECT_NEAR(incidence_quadratic(g, x), direct, 1e-10 * std::abs(direct));
  }
}

TEST(VolumeTest, Examples) {
  const Graph tri = testing_graphs::triangle();
  const std::vector<Index> s0{0}, all{0, 1, 2};
  EXPECT_DOUBLE_EQ(volume(tri, s0), 2.0);
  EXPECT_DOUBLE_EQ(volume(tri, all), 6.0);
  EXPECT_DOUBLE_EQ(volume(Graph(2, {{0, 1, 3.0}}), s0), 3.0);
  const std::vector<Index> bad{5};
  EXPECT_THROW(volume(tri, bad), std::out_of_range);
}

TEST(ConductanceTest, Examples) {
  const std::vector<Index> s0{0}, first{0, 1, 2}, empty;
  EXPECT_DOUBLE_EQ(conductance(testing_graphs::triangle(), s0), 1.0);
  EXPECT_DOUBLE_EQ(conductance(testing_graphs::two_triangles(), first), 0.0);
  EXPECT_DOUBLE_EQ(conductance(testing_graphs::bridged_triangles(1.0), first), 1.0 / 7.0);
  EXPECT_THROW(conductance(testing_graphs::triangle(), empty), std::invalid_argument);
  const Graph g(3, {{0, 1, 1.0}});
  const std::vector<Index> isolated{2};
  EXPECT_THROW(conductance(g, isolated), std::domain_error);
}

TEST(RhoTest, Examples) {
  const Partition halves({0, 0, 0, 1, 1, 1});
  EXPECT_DOUBLE_EQ(rho_of_partition(testing_graphs::two_triangles(), halves), 0.0);
  EXPECT_DOUBLE_EQ(rho_of_partition(testing_graphs::bridged_triangles(1.0), halves), 1.0 / 7.0);
  EXPECT_DOUBLE_EQ(rho_of_partition(testing_graphs::triangle(), Partition({0, 0, 0})), 0.0);
}

TEST(IndicatorTest, Examples) {
  const Eigen::MatrixXd C = indicator_matrix(Partition({0, 0, 1}));
  ASSERT_EQ(C.cols(), 2);
  EXPECT_DOUBLE_EQ(C(0, 0), 1.0 / std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(C(1, 0), 1.0 / std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(C(2, 0), 0.0);
  EXPECT_DOUBLE_EQ(C(2, 1), 1.0);
  EXPECT_TRUE(indicator_matrix(Partition({0, 1, 2})).isIdentity());
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    std::vector<Index> a(40);
    for (Index i = 0; i < 40; ++i) a[static_cast<std::size_t>(i)] = i % 5;
    rng.shuffle(std::span<Index>(a));
    const Eigen::MatrixXd M = indicator_matrix(Partition(a));
    EXPECT_LE((M.transpose() * M - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(InterclusterTest, Examples) {
  const Partition halves({0, 0, 0, 1, 1, 1});
  auto a = intercluster_edges(testing_graphs::two_triangles(), halves);
  EXPECT_EQ(a.count, 0);
  EXPECT_DOUBLE_EQ(a.weight, 0.0);
  auto b = intercluster_edges(testing_graphs::bridged_triangles(1.0), halves);
  EXPECT_EQ(b.count, 1);
  EXPECT_DOUBLE_EQ(b.weight, 1.0);
  EXPECT_LE(static_cast<double>(b.count), (1.0 / 7.0) * 7.0 + 1e-12);
  auto c = intercluster_edges(testing_graphs::triangle(), Partition({0, 1, 2}));
  EXPECT_EQ(c.count, 3);
  EXPECT_DOUBLE_EQ(c.weight, 3.0);
}

TEST(InterclusterTest, CountBoundedByRhoTimesEdges) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const Index n = 6 + static_cast<Index>(rng.below(40));
    const Index k = 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(std::min<Index>(n, 6))));
    const Graph g = random_connected_graph(n, 0.15, seed + 7);
    std::vector<Index> a(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] = i < k ? i : static_cast<Index>(rng.below(static_cast<std::uint64_t>(k)));
    const Partition p(a);
    const auto inter = intercluster_edges(g, p);
    EXPECT_LE(static_cast<double>(inter.count),
              rho_of_partition(g, p) * static_cast<double>(g.num_edges()) + 1e-9);
  }
}

TEST(EdgeIoTest, Examples) {
  std::istringstream a("0 1\n1 2\n");
  const Graph ga = read_edge_list(a);
  EXPECT_EQ(ga, Graph(3, {{0, 1, 1.0}, {1, 2, 1.0}}));
  std::istringstream b("0 1 2.0\n0 1 3.0\n");
  EXPECT_EQ(read_edge_list(b), Graph(2, {{0, 1, 5.0}}));
  std::istringstream c("0 0 1.0");
  try {
    read_edge_list(c);
    FAIL() << "self-loop accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(EdgeIoTest, HeaderCommentsAndErrors) {
  std::istringstream a("# n=5\n# comment\n0 1 0.5\n\n3 1\n");
  const Graph g = read_edge_list(a);
  EXPECT_EQ(g.num_vertices(), 5);
  EXPECT_EQ(g.num_edges(), 2);
  std::istringstream neg("0 1\n1 2 -1\n");
  try {
    read_edge_list(neg);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream junk("0 x\n");
  EXPECT_THROW(read_edge_list(junk), ParseError);
  std::istringstream small("# n=2\n0 3\n");
  EXPECT_THROW(read_edge_list(small), ParseError);
}

TEST(EdgeIoTest, RoundTrip) {
  const Graph g = random_connected_graph(25, 0.2, 9, true);
  std::stringstream buf;
  write_edge_list(buf, g);
  EXPECT_EQ(read_edge_list(buf), g);
  const Partition p({0, 1, 1, 2, 0});
  std::stringstream pb;
  write_partition(pb, p);
  EXPECT_EQ(read_partition(pb), p);
}

TEST(EdgeIoTest, FormatDoubleRoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, -2.5}) {
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
}
