#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "clsparse/graph.hpp"
#include "clsparse/spectral.hpp"

namespace clsparse {

// Moore-Penrose pseudoinverse of a symmetric PSD matrix. Eigenvalues at or
// below rank_tolerance * lambda_max are treated as zero.
inline constexpr double kDefaultRankTolerance = 1e-10;

Eigen::MatrixXd pinv_psd(const Eigen::MatrixXd& M, double rank_tolerance = kDefaultRankTolerance);
Eigen::MatrixXd pinv_from_spectrum(const Spectrum& spec,
                                   double rank_tolerance = kDefaultRankTolerance);

// (e_u - e_v)^T L^+ (e_u - e_v) with L the unnormalized Laplacian. Throws
// std::domain_error when u and v lie in different components.
double effective_resistance(const Graph& g, Index u, Index v);

// Same quadratic form with L^+ restricted to eigenpairs k+1..n of `spec`
// (0-based columns k..n-1), i.e. sum_i (v_i(a) - v_i(b))^2 / lambda_i.
double rank_nk_resistance(const Spectrum& spec, Index k, Index a, Index b);

struct EdgeResistance {
  Index edge = 0;
  Index u = 0;
  Index v = 0;
  double w = 0.0;
  double r_full = 0.0;
  double r_nk = 0.0;
  double tau_full = 0.0;
  double tau_nk = 0.0;
  double p_full = 0.0;
  double p_nk = 0.0;
};

struct ResistanceProfile {
  Index k = 0;
  std::vector<EdgeResistance> edges;  // canonical edge order
  double sum_tau_full = 0.0;
  double sum_tau_nk = 0.0;
};

// Exact per-edge resistances from one eigendecomposition of the unnormalized
// Laplacian. Throws std::domain_error for disconnected graphs.
ResistanceProfile resistance_profile(const Graph& g, Index k);
ResistanceProfile resistance_profile(const Graph& g, const Spectrum& unnormalized, Index k);

struct BoundCheck {
  Index u = 0;
  Index v = 0;
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool pass_lower = false;
  bool pass_upper = false;
};

struct BoundReport {
  std::vector<BoundCheck> checks;
  // Lower bound is vacuous (k/upsilon >= 1, or rho >= 1 where it enters).
  bool vacuous = false;
  double upper_pass_rate = 0.0;
  double lower_pass_rate = 0.0;
  bool all_upper_pass() const { return upper_pass_rate == 1.0 || checks.empty(); }
};

enum class PairScope { IntraClusterEdges, IntraClusterPairs, AllEdges };

// Checks 2/lambda_{k+1} >= R^{n-k}(a,b) >= (1/kappa)(1 - k/upsilon) 2/lambda_{k+1}
// on intra-cluster edges (or all intra-cluster pairs). `spec` is the
// unnormalized spectrum and `stats` must be computed from it.
BoundReport verify_effres_bounds(const Graph& g, const Partition& p, const Spectrum& spec,
                                 const StructureStats& stats,
                                 PairScope scope = PairScope::IntraClusterEdges);

struct RelativeProbabilityReport {
  std::vector<BoundCheck> checks;  // value = p_e / p_unif, bounds likewise scaled
  bool vacuous = false;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double pass_rate = 0.0;
};

// Checks ((1-k/upsilon)(1-rho)/kappa) p_unif <= p_e <= kappa/((1-k/upsilon)(1-rho)) p_unif
// with p_e the rank-(n-k) leverage distribution of the profile.
RelativeProbabilityReport verify_relative_probabilities(const ResistanceProfile& profile,
                                                        const StructureStats& stats);

// CSV `edge_u,edge_v,value,lower,upper,pass_lower,pass_upper`.
void write_bound_csv(std::ostream& out, const std::vector<BoundCheck>& checks);

}  // namespace clsparse
