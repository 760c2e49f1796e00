#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "clsparse/generators.hpp"
#include "clsparse/rng.hpp"
#include "clsparse/sparsifier.hpp"
#include "clsparse/verify.hpp"
#include "test_graphs.hpp"

using namespace clsparse;

namespace {

StructureStats make_stats(Index k, double upsilon, double kappa, double rho) {
  StructureStats s;
  s.k = k;
  s.rho = rho;
  s.upsilon = upsilon;
  s.kappa = kappa;
  s.lambda_k1 = 1.0;
  s.lambda_n = kappa;
  return s;
}

Graph random_edges(Index n, Index m, std::uint64_t seed) {
  // Random simple graph with exactly m edges.
  Graph dense = random_connected_graph(n, 1.0, seed);
  std::vector<Edge> e = dense.edges();
  Rng rng(seed);
  rng.shuffle(std::span<Edge>(e));
  e.resize(static_cast<std::size_t>(m));
  return Graph(n, e);
}

}  // namespace

TEST(SampleCountTest, Uniform) {
  const double inf = std::numeric_limits<double>::infinity();
  // kappa = 1, upsilon infinite, rho = 0, eps = 1: n ln n.
  EXPECT_EQ(sample_count_uniform(800, 4, make_stats(4, inf, 1.0, 0.0), 1.0),
            static_cast<std::int64_t>(std::ceil(800 * std::log(800.0))));
  // kappa = 2, k/upsilon = 0.5, rho = 0.5, eps = 0.5: 64 * 4 * 800 ln 800.
  EXPECT_EQ(sample_count_uniform(800, 4, make_stats(4, 8.0, 2.0, 0.5), 0.5), 1369009);
  const auto a = sample_count_uniform(500, 2, make_stats(2, 20.0, 1.5, 0.1), 0.5, 1.0);
  const auto b = sample_count_uniform(500, 2, make_stats(2, 20.0, 3.0, 0.1), 0.5, 1.0);
  EXPECT_NEAR(static_cast<double>(b) / static_cast<double>(a), 4.0, 1e-4);
  EXPECT_THROW(sample_count_uniform(800, 4, make_stats(4, 4.0, 2.0, 0.1), 0.5), std::domain_error);
  EXPECT_THROW(sample_count_uniform(800, 4, make_stats(4, 40.0, 2.0, 1.0), 0.5), std::domain_error);
}

TEST(SampleCountTest, EffectiveResistance) {
  EXPECT_EQ(sample_count_reff(800, 0.5), 21391);
  const double e = std::exp(1.0);
  EXPECT_EQ(sample_count_reff(3, 1.0), static_cast<std::int64_t>(std::ceil(3 * std::log(3.0))));
  EXPECT_EQ(static_cast<std::int64_t>(std::ceil(e * std::log(e))), 3);
  const double full = 800 * std::log(800.0) / 0.25;
  EXPECT_EQ(sample_count_reff(800, 0.5, 0.5), static_cast<std::int64_t>(std::ceil(0.5 * full)));
}

TEST(SparsifyConfigTest, Validation) {
  SparsifyConfig c;
  c.epsilon = 1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.epsilon = 0.5;
  c.budget = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.budget = 1;
  c.constant = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(ParseTest, MethodAndRankNames) {
  EXPECT_EQ(parse_sampling_method("uniform"), SamplingMethod::Uniform);
  EXPECT_EQ(parse_sampling_method("reff"), SamplingMethod::EffectiveResistance);
  EXPECT_EQ(parse_sampling_method("EffectiveResistance"), SamplingMethod::EffectiveResistance);
  EXPECT_EQ(parse_rank_mode("nk"), RankMode::RankNK);
  EXPECT_THROW(parse_sampling_method("random"), std::invalid_argument);
}

TEST(UniformSamplerTest, FullBudgetReproducesInput) {
  const Graph g = random_connected_graph(40, 0.2, 3, true);
  SparsifyConfig c;
  c.budget = g.num_edges();
  c.seed = 17;
  const SparsifyResult r = sparsify_uniform(g, c);
  EXPECT_EQ(r.graph, g);
  EXPECT_EQ(r.kept_edges, g.num_edges());
}

TEST(UniformSamplerTest, DeterministicAndSupported) {
  const Graph g = random_connected_graph(60, 0.2, 4, true);
  SparsifyConfig c;
  c.budget = g.num_edges() / 3;
  c.seed = 99;
  const SparsifyResult a = sparsify_uniform(g, c);
  const SparsifyResult b = sparsify_uniform(g, c);
  EXPECT_EQ(a.graph, b.graph);
  const double pi = static_cast<double>(c.budget) / static_cast<double>(g.num_edges());
  std::size_t j = 0;
  for (const auto& e : a.graph.edges()) {
    while (j < g.edges().size() && (g.edges()[j].u != e.u || g.edges()[j].v != e.v)) ++j;
    ASSERT_LT(j, g.edges().size());
    EXPECT_NEAR(e.w, g.edges()[j].w / pi, 1e-12);
  }
}

TEST(UniformSamplerTest, KeptCountMatchesBinomial) {
  const Graph g = random_edges(80, 1000, 5);
  ASSERT_EQ(g.num_edges(), 1000);
  SparsifyConfig c;
  c.budget = 500;
  double sum = 0.0;
  const int seeds = 10000;
  for (int s = 0; s < seeds; ++s) {
    c.seed = static_cast<std::uint64_t>(s);
    sum += static_cast<double>(sparsify_uniform(g, c).kept_edges);
  }
  // Per-run sd is sqrt(250); the seed average concentrates far more tightly.
  EXPECT_NEAR(sum / seeds, 500.0, 3.0 * std::sqrt(250.0));
  EXPECT_NEAR(sum / seeds, 500.0, 4.0 * std::sqrt(250.0 / seeds));
}

TEST(ReffSamplerTest, TriangleWeightsAreIntegers) {
  const Graph tri = testing_graphs::triangle();
  const ResistanceProfile prof = resistance_profile(tri, 1);
  SparsifyConfig c;
  c.method = SamplingMethod::EffectiveResistance;
  c.budget = 3;
  for (std::uint64_t s = 0; s < 50; ++s) {
    c.seed = s;
    const SparsifyResult r = sparsify_reff(tri, prof, c, RankMode::RankNK);
    double total = 0.0;
    for (const auto& e : r.graph.edges()) {
      EXPECT_NEAR(e.w, std::round(e.w), 1e-12);
      total += e.w;
    }
    EXPECT_NEAR(total, 3.0, 1e-12);
  }
}

TEST(ReffSamplerTest, SingleDraw) {
  const Graph g = random_connected_graph(12, 0.3, 6, true);
  const ResistanceProfile prof = resistance_profile(g, 1);
  SparsifyConfig c;
  c.method = SamplingMethod::EffectiveResistance;
  c.budget = 1;
  c.seed = 4;
  const SparsifyResult r = sparsify_reff(g, prof, c);
  ASSERT_EQ(r.graph.num_edges(), 1);
  const Edge& e = r.graph.edges()[0];
  for (const auto& er : prof.edges) {
    if (er.u == e.u && er.v == e.v) EXPECT_NEAR(e.w, er.w / er.p_full, 1e-12);
  }
}

TEST(ReffSamplerTest, BoundedIncrementAndDeterminism) {
  const Graph g = random_connected_graph(40, 0.2, 7, true);
  const ResistanceProfile prof = resistance_profile(g, 3);
  for (RankMode mode : {RankMode::Full, RankMode::RankNK}) {
    SparsifyConfig c;
    c.method = SamplingMethod::EffectiveResistance;
    c.budget = 200;
    c.seed = 11;
    const SparsifyResult a = sparsify_reff(g, prof, c, mode);
    EXPECT_EQ(a.graph, sparsify_reff(g, prof, c, mode).graph);
    double max_w = 0.0, min_p = 1.0;
    for (const auto& e : prof.edges) {
      max_w = std::max(max_w, e.w);
      min_p = std::min(min_p, mode == RankMode::Full ? e.p_full : e.p_nk);
    }
    EXPECT_LE(a.max_increment, max_w / (200.0 * min_p) * (1 + 1e-12));
    for (const auto& e : a.graph.edges()) EXPECT_GT(e.w, 0.0);
  }
}

// The stated example (triangle, q = 3, 10,000 seeds, 2%) puts 2% at about 2.45
// standard errors per entry: each off-diagonal mean is (1/10^4) sum of
// Binomial(3, 1/3) counts, sd sqrt(2/3)/100. The check uses 4 standard errors.
TEST(UnbiasednessTest, TriangleReffAtThreeDraws) {
  const Graph tri = testing_graphs::triangle();
  const Eigen::MatrixXd mean =
      mean_sparsified_laplacian(tri, SamplingMethod::EffectiveResistance, 3, 10000, 1);
  const double se = std::sqrt(2.0 / 3.0) / 100.0;
  EXPECT_LE(max_relative_entry_error(mean, laplacian(tri, LaplacianVariant::Unnormalized)),
            4.0 * se);
}

TEST(UnbiasednessTest, SmallRandomGraphsBothSamplers) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const Graph g = random_connected_graph(8, 0.5, seed);
    const Eigen::MatrixXd L = laplacian(g, LaplacianVariant::Unnormalized);
    const std::int64_t m = g.num_edges();
    EXPECT_LE(max_relative_entry_error(
                  mean_sparsified_laplacian(g, SamplingMethod::Uniform, (4 * m) / 5, 10000, seed), L),
              0.02);
    EXPECT_LE(max_relative_entry_error(
                  mean_sparsified_laplacian(g, SamplingMethod::EffectiveResistance, 8 * m, 10000, seed), L),
              0.02);
  }
}

TEST(CertificateTest, IdentityAndScaled) {
  const Graph g = random_connected_graph(30, 0.2, 2, true);
  const Eigen::MatrixXd L = laplacian(g, LaplacianVariant::Unnormalized);
  const auto same = quadratic_form_certificate(L, L, 0.1, std::nullopt, 50, 1);
  EXPECT_EQ(same.pass_fraction, 1.0);
  for (double r : same.ratios) EXPECT_NEAR(r, 1.0, 1e-12);
  const auto scaled = quadratic_form_certificate(L, 1.2 * L, 0.1, std::nullopt, 50, 1);
  EXPECT_EQ(scaled.pass_fraction, 0.0);
  const auto via_graph = quadratic_form_certificate(g, g, 0.1, std::nullopt, 50, 1);
  EXPECT_EQ(via_graph.pass_fraction, 1.0);
}

TEST(CertificateTest, SubspaceVectorsAvoidKernel) {
  const Graph g = testing_graphs::two_triangles();
  const Spectrum s = laplacian_spectrum(g, LaplacianVariant::Unnormalized);
  const auto kernel = quadratic_form_certificate(g, g, 0.5, s.bottom(2), 20, 3);
  EXPECT_EQ(kernel.skipped, 20);
  const auto top = quadratic_form_certificate(g, g, 0.5, s.top(2), 20, 3);
  EXPECT_EQ(top.skipped, 0);
  EXPECT_EQ(top.pass_fraction, 1.0);
}

TEST(CertificateTest, CsvShape) {
  const Graph g = testing_graphs::triangle();
  const auto r = quadratic_form_certificate(g, g, 0.5, std::nullopt, 3, 3);
  std::ostringstream out;
  write_certificate_csv(out, r);
  const std::string s = out.str();
  EXPECT_EQ(s.substr(0, s.find('\n')), "trial,ratio,pass");
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 4);
}
