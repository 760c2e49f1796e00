#include "clsparse/analyze.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "clsparse/edge_io.hpp"

namespace clsparse {

AnalysisReport analyze(const Graph& g, const Partition& p, Index k, LaplacianVariant structure) {
  const Index n = g.num_vertices();
  if (p.size() != n) throw std::invalid_argument("partition length does not match graph");
  if (k < 1 || k >= n) {
    throw std::invalid_argument("k must satisfy 1 <= k < n (k=" + std::to_string(k) +
                                ", n=" + std::to_string(n) + ")");
  }
  if (k != p.num_clusters()) {
    throw std::invalid_argument("k=" + std::to_string(k) + " but the partition has " +
                                std::to_string(p.num_clusters()) + " clusters");
  }
  AnalysisReport r;
  r.n = n;
  r.m = g.num_edges();
  r.k = k;
  r.connected = g.connected();
  const double rho = rho_of_partition(g, p);
  const Spectrum spec = laplacian_spectrum(g, structure, IsolatedVertexPolicy::UnitDiagonal);
  r.stats = structure_stats(spec, rho, k);
  const Eigen::MatrixXd C = indicator_matrix(p);
  r.residuals = structure_residuals_part1(spec, C, k);
  r.alignment = alignment_frobenius(spec.top(k), C);
  r.intercluster = intercluster_edges(g, p);

  if (!r.connected) {
    r.resistance_notice = "graph is disconnected; resistance section skipped";
    return r;
  }
  const Spectrum unnorm = laplacian_spectrum(g, LaplacianVariant::Unnormalized);
  const StructureStats ustats = structure_stats(unnorm, rho, k);
  r.resistance_stats = ustats;
  if (!ustats.kappa_defined()) {
    r.resistance_notice = "lambda_{k+1} of the unnormalized Laplacian is zero; resistance section skipped";
    return r;
  }
  r.effres = verify_effres_bounds(g, p, unnorm, ustats);
  r.relative = verify_relative_probabilities(resistance_profile(g, unnorm, k), ustats);
  return r;
}

void print_analysis(std::ostream& out, const AnalysisReport& r) {
  const auto& s = r.stats;
  out << "n " << r.n << "\nm " << r.m << "\nk " << r.k << '\n';
  out << "rho " << format_double(s.rho) << '\n';
  out << "lambda_k1 " << format_double(s.lambda_k1) << '\n';
  out << "upsilon " << (s.upsilon_finite() ? format_double(s.upsilon) : std::string("inf")) << '\n';
  out << "kappa " << (s.kappa_defined() ? format_double(s.kappa) : std::string("undefined")) << '\n';
  out << "intercluster_edges " << r.intercluster.count << '\n';
  const double max_res =
      r.residuals.empty() ? 0.0 : *std::max_element(r.residuals.begin(), r.residuals.end());
  out << "part1_max_residual " << format_double(max_res) << " (bound 1/upsilon "
      << format_double(s.k_over_upsilon() / static_cast<double>(r.k)) << ")\n";
  out << "part2_alignment " << format_double(r.alignment) << " (bound k/upsilon "
      << format_double(s.k_over_upsilon()) << ")\n";
  if (!r.resistance_notice.empty()) {
    out << "notice: " << r.resistance_notice << '\n';
    return;
  }
  out << "effres_upper_pass_rate " << format_double(r.effres->upper_pass_rate) << '\n';
  out << "effres_lower_pass_rate " << format_double(r.effres->lower_pass_rate)
      << (r.effres->vacuous ? " (vacuous)" : "") << '\n';
  out << "relprob_pass_rate " << format_double(r.relative->pass_rate)
      << (r.relative->vacuous ? " (vacuous)" : "") << '\n';
  out << "relprob_ratio_range " << format_double(r.relative->min_ratio) << ' '
      << format_double(r.relative->max_ratio) << '\n';
}

}  // namespace clsparse
