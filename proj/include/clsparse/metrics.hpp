#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "clsparse/graph.hpp"
#include "clsparse/spectral.hpp"

namespace clsparse {

// Row i is the embedding of vertex i.
struct Embedding {
  Eigen::MatrixXd points;
};

// Rows of the first k eigenvectors, without row normalization.
Embedding spectral_embedding(const Spectrum& spec, Index k);

struct KMeansOptions {
  int max_iters = 100;
  double tol = 1e-8;
};

struct KMeansResult {
  Partition partition;
  Eigen::MatrixXd centroids;
  std::vector<double> objective_trace;  // objective after each assignment step
  int iterations = 0;
  double objective() const { return objective_trace.empty() ? 0.0 : objective_trace.back(); }
};

// k-means++ seeding followed by Lloyd iterations. Empty clusters are refilled
// with the point farthest from its centroid, so the result always has k
// non-empty clusters. Throws std::logic_error if the objective ever increases.
KMeansResult kmeans(const Embedding& points, Index k, std::uint64_t seed,
                    const KMeansOptions& options = {});

struct AngleReport {
  std::vector<double> cosines;  // descending, clamped to [0, 1]
  double sin_theta_max = 0.0;
  double frob_misalignment = 0.0;  // k - sum cos^2
};

// Principal angles between span(U) and span(W), both n x k orthonormal.
AngleReport principal_angles(const Eigen::MatrixXd& U, const Eigen::MatrixXd& W);

// k (1/upsilon + eps/(1-eps) kappa).
double bound_uniform(Index k, const StructureStats& stats, double epsilon);
// k/upsilon - eps/(1-eps) kappa; the variant obtained at the end of the
// appendix derivation. Reported alongside bound_uniform, never asserted.
double bound_uniform_alt(Index k, const StructureStats& stats, double epsilon);
// (1+eps)/(1-eps) k/upsilon.
double bound_reff(Index k, const StructureStats& stats, double epsilon);

double adjusted_rand_index(const Partition& a, const Partition& b);

}  // namespace clsparse
