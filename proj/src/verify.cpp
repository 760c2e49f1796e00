#include "clsparse/verify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "clsparse/edge_io.hpp"
#include "clsparse/generators.hpp"
#include "clsparse/resistance.hpp"
#include "clsparse/rng.hpp"
#include "clsparse/spectral.hpp"

namespace clsparse {

namespace {

constexpr double kIdentityTolerance = 1e-8;
constexpr double kBoundSlack = 1e-9;
constexpr double kUnbiasedTolerance = 0.02;

// Negative control: the copy of the graph that identity checks read has every
// weight scaled. Only the suites that compare against edge weights use it.
Graph maybe_corrupt(const Graph& g, bool inject) {
  if (!inject) return g;
  std::vector<Edge> edges = g.edges();
  for (auto& e : edges) e.w *= 1.25;
  return Graph(g.num_vertices(), std::move(edges));
}

// Connected unweighted graphs with 10 <= n <= 60.
Graph corpus_graph(std::uint64_t seed, Index i) {
  Rng rng(mix_seed(seed) ^ static_cast<std::uint64_t>(i));
  const Index n = 10 + static_cast<Index>(rng.below(51));
  const double p = 0.05 + 0.3 * rng.uniform();
  return random_connected_graph(n, p, rng.next());
}

void record(SuiteReport& r, double error, double tolerance, const std::string& what) {
  ++r.checked;
  r.max_error = std::max(r.max_error, error);
  if (!(error <= tolerance)) {
    ++r.failures;
    if (r.messages.size() < 10) r.messages.push_back(what + ": error " + format_double(error));
  }
}

SuiteReport foster_suite(const VerifyOptions& opts) {
  SuiteReport r{"foster", 0, 0, 0.0, "max |sum tau - (n-1)|", {}};
  for (Index i = 0; i < opts.graphs; ++i) {
    const Graph g = corpus_graph(opts.seed, i);
    const Graph weights = maybe_corrupt(g, opts.inject_bug);
    const ResistanceProfile prof = resistance_profile(g, 1);
    double sum = 0.0;
    for (std::size_t e = 0; e < prof.edges.size(); ++e) {
      sum += weights.edges()[e].w * prof.edges[e].r_full;
    }
    const double n = static_cast<double>(g.num_vertices());
    record(r, std::abs(sum - (n - 1.0)), kIdentityTolerance, "graph " + std::to_string(i));
  }
  return r;
}

SuiteReport trace_suite(const VerifyOptions& opts) {
  SuiteReport r{"trace", 0, 0, 0.0, "max |sum w R^{n-k} - (n-k)|", {}};
  for (Index i = 0; i < opts.graphs; ++i) {
    const Graph g = corpus_graph(opts.seed, i);
    const Graph weights = maybe_corrupt(g, opts.inject_bug);
    const Index n = g.num_vertices();
    const Spectrum spec = laplacian_spectrum(g, LaplacianVariant::Unnormalized);
    std::vector<Index> ks{1, 2, n / 4};
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    for (Index k : ks) {
      if (k < 1 || k >= n) continue;
      double sum = 0.0;
      for (const auto& e : weights.edges()) sum += e.w * rank_nk_resistance(spec, k, e.u, e.v);
      record(r, std::abs(sum - static_cast<double>(n - k)), kIdentityTolerance,
             "graph " + std::to_string(i) + " k=" + std::to_string(k));
    }
  }
  return r;
}

// Small planted instances so the suite stays fast at the default corpus size.
GeneratedGraph structure_instance(std::uint64_t seed, Index i) {
  SbmConfig c;
  c.cluster_sizes = {30, 30, 30, 30};
  c.p_intra = 0.5;
  c.p_inter = 0.01;
  c.seed = mix_seed(seed + static_cast<std::uint64_t>(i));
  return generate_sbm(c);
}

SuiteReport structure_suite(const VerifyOptions& opts) {
  SuiteReport r{"structure", 0, 0, 0.0, "max violation of residual <= 1/Y and alignment <= k/Y",
                {}};
  const Index count = std::min<Index>(opts.graphs, 50);
  for (Index i = 0; i < count; ++i) {
    const GeneratedGraph inst = structure_instance(opts.seed, i);
    const Index k = inst.partition.num_clusters();
    const Spectrum spec = laplacian_spectrum(inst.graph, LaplacianVariant::Normalized,
                                             IsolatedVertexPolicy::UnitDiagonal);
    const StructureStats stats =
        structure_stats(spec, rho_of_partition(inst.graph, inst.partition), k);
    const Eigen::MatrixXd C = indicator_matrix(inst.partition);
    const double inv_upsilon = stats.k_over_upsilon() / static_cast<double>(k);
    double worst = 0.0;
    for (double res : structure_residuals_part1(spec, C, k)) {
      worst = std::max(worst, res - inv_upsilon);
    }
    const double part2 = alignment_frobenius(spec.top(k), C);
    worst = std::max(worst, part2 - stats.k_over_upsilon());
    const double complement = std::abs(part2 + (spec.bottom(k).transpose() * C).squaredNorm() -
                                       static_cast<double>(k));
    record(r, std::max(worst, 0.0), kBoundSlack, "instance " + std::to_string(i));
    record(r, complement, kIdentityTolerance, "instance " + std::to_string(i) + " complement");
  }
  return r;
}

SuiteReport upper_suite(const VerifyOptions& opts) {
  SuiteReport r{"upper", 0, 0, 0.0, "max (R^{n-k} - 2/lambda_{k+1}) over all pairs", {}};
  const Index count = std::min<Index>(opts.graphs, 50);
  for (Index i = 0; i < count; ++i) {
    const GeneratedGraph inst = structure_instance(opts.seed, i);
    const Graph g = inst.graph;
    const Index k = inst.partition.num_clusters();
    const Index n = g.num_vertices();
    const Spectrum spec = laplacian_spectrum(g, LaplacianVariant::Unnormalized);
    const double bound = 2.0 / spec.values[k];
    double worst = -1.0;
    double monotone = 0.0;
    for (Index a = 0; a < n; ++a) {
      for (Index b = a + 1; b < n; ++b) {
        const double rk = rank_nk_resistance(spec, k, a, b);
        worst = std::max(worst, rk - bound);
        const double rk1 = rank_nk_resistance(spec, k + 1, a, b);
        monotone = std::max(monotone, rk1 - rk);
      }
    }
    record(r, std::max(worst, 0.0), kBoundSlack * std::max(1.0, bound),
           "instance " + std::to_string(i));
    record(r, monotone, kBoundSlack, "instance " + std::to_string(i) + " monotone in k");
  }
  return r;
}

SuiteReport unbiased_suite(const VerifyOptions& opts) {
  SuiteReport r{"unbiased", 0, 0, 0.0, "max relative entry error of mean sparsified L", {}};
  const Graph triangle(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  const Graph k4(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}, {1, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}});
  struct Case {
    const Graph* g;
    const char* name;
    SamplingMethod method;
    std::int64_t budget;
  };
  const Case cases[] = {
      {&triangle, "triangle uniform", SamplingMethod::Uniform, 2},
      {&triangle, "triangle reff", SamplingMethod::EffectiveResistance, 12},
      {&k4, "K4 uniform", SamplingMethod::Uniform, 5},
      {&k4, "K4 reff", SamplingMethod::EffectiveResistance, 24},
  };
  for (const auto& c : cases) {
    const Eigen::MatrixXd mean = mean_sparsified_laplacian(*c.g, c.method, c.budget,
                                                           opts.monte_carlo_seeds, opts.seed);
    const Graph ref = maybe_corrupt(*c.g, opts.inject_bug);
    const double err = max_relative_entry_error(mean, laplacian(ref, LaplacianVariant::Unnormalized));
    record(r, err, kUnbiasedTolerance, c.name);
  }
  return r;
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"foster", "trace", "structure", "unbiased", "upper"};
  return names;
}

SuiteReport run_verify_suite(const std::string& name, const VerifyOptions& opts) {
  if (opts.graphs < 1) throw std::invalid_argument("--graphs must be positive");
  if (opts.monte_carlo_seeds < 1) throw std::invalid_argument("Monte Carlo seed count must be positive");
  if (name == "foster") return foster_suite(opts);
  if (name == "trace") return trace_suite(opts);
  if (name == "structure") return structure_suite(opts);
  if (name == "unbiased") return unbiased_suite(opts);
  if (name == "upper") return upper_suite(opts);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

void print_suite_report(std::ostream& out, const SuiteReport& report) {
  out << (report.passed() ? "PASS " : "FAIL ") << report.name << ": " << report.checked
      << " checks, " << report.failures << " failures, " << report.error_label << " = "
      << format_double(report.max_error) << '\n';
  for (const auto& m : report.messages) out << "  " << m << '\n';
}

Eigen::MatrixXd mean_sparsified_laplacian(const Graph& g, SamplingMethod method,
                                          std::int64_t budget, Index seeds,
                                          std::uint64_t base_seed) {
  const Index n = g.num_vertices();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
  std::optional<ResistanceProfile> profile;
  if (method == SamplingMethod::EffectiveResistance) profile = resistance_profile(g, 1);
  SparsifyConfig cfg;
  cfg.method = method;
  cfg.budget = budget;
  for (Index s = 0; s < seeds; ++s) {
    cfg.seed = base_seed + static_cast<std::uint64_t>(s);
    const SparsifyResult res = method == SamplingMethod::Uniform
                                   ? sparsify_uniform(g, cfg)
                                   : sparsify_reff(g, *profile, cfg, RankMode::Full);
    for (const auto& e : res.graph.edges()) {
      sum(e.u, e.u) += e.w;
      sum(e.v, e.v) += e.w;
      sum(e.u, e.v) -= e.w;
      sum(e.v, e.u) -= e.w;
    }
  }
  return sum / static_cast<double>(seeds);
}

double max_relative_entry_error(const Eigen::MatrixXd& mean, const Eigen::MatrixXd& L) {
  if (mean.rows() != L.rows() || mean.cols() != L.cols()) {
    throw std::invalid_argument("max_relative_entry_error: size mismatch");
  }
  double worst = 0.0;
  for (Index i = 0; i < L.rows(); ++i) {
    for (Index j = 0; j < L.cols(); ++j) {
      if (L(i, j) != 0.0) worst = std::max(worst, std::abs(mean(i, j) - L(i, j)) / std::abs(L(i, j)));
    }
  }
  return worst;
}

}  // namespace clsparse
