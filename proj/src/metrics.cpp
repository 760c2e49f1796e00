#include "clsparse/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "clsparse/rng.hpp"

namespace clsparse {

Embedding spectral_embedding(const Spectrum& spec, Index k) {
  if (k < 1 || k > spec.size()) {
    throw std::invalid_argument("spectral_embedding: k=" + std::to_string(k) + " outside 1..n");
  }
  return Embedding{spec.bottom(k)};
}

namespace {

Eigen::MatrixXd plus_plus_seeds(const Eigen::MatrixXd& X, Index k, Rng& rng) {
  const Index n = X.rows();
  Eigen::MatrixXd centers(k, X.cols());
  std::vector<char> chosen(static_cast<std::size_t>(n), 0);
  Index first = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
  centers.row(0) = X.row(first);
  chosen[first] = 1;
  Eigen::VectorXd d2 = (X.rowwise() - X.row(first)).rowwise().squaredNorm();
  for (Index c = 1; c < k; ++c) {
    const double total = d2.sum();
    Index pick = -1;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      for (Index i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc > target && d2[i] > 0.0) {
          pick = i;
          break;
        }
      }
      if (pick < 0) {
        for (Index i = n - 1; i >= 0; --i) {
          if (d2[i] > 0.0) {
            pick = i;
            break;
          }
        }
      }
    } else {
      // All remaining points coincide with a center; take the first unused index.
      for (Index i = 0; i < n; ++i) {
        if (!chosen[i]) {
          pick = i;
          break;
        }
      }
    }
    chosen[pick] = 1;
    centers.row(c) = X.row(pick);
    d2 = d2.cwiseMin((X.rowwise() - X.row(pick)).rowwise().squaredNorm());
  }
  return centers;
}

}  // namespace

KMeansResult kmeans(const Embedding& embedding, Index k, std::uint64_t seed,
                    const KMeansOptions& options) {
  const Eigen::MatrixXd& X = embedding.points;
  const Index n = X.rows();
  if (k < 1 || k > n) {
    throw std::invalid_argument("kmeans: k=" + std::to_string(k) + " outside 1..n (n=" +
                                std::to_string(n) + ")");
  }
  if (!X.allFinite()) throw std::invalid_argument("kmeans: non-finite embedding");

  Rng rng(seed);
  Eigen::MatrixXd centers = plus_plus_seeds(X, k, rng);
  std::vector<Index> assign(static_cast<std::size_t>(n), 0);
  Eigen::VectorXd dist(n);
  KMeansResult result;

  for (int iter = 0; iter < std::max(1, options.max_iters); ++iter) {
    // Assignment step; ties go to the lowest cluster index.
    for (Index i = 0; i < n; ++i) {
      Index best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (Index c = 0; c < k; ++c) {
        const double d = (X.row(i) - centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      assign[i] = best;
      dist[i] = best_d;
    }
    // Refill empty clusters with the farthest point of a cluster that can spare one.
    std::vector<Index> sizes(static_cast<std::size_t>(k), 0);
    for (Index c : assign) ++sizes[c];
    for (Index c = 0; c < k; ++c) {
      if (sizes[c] > 0) continue;
      Index far = -1;
      for (Index i = 0; i < n; ++i) {
        if (sizes[assign[i]] > 1 && (far < 0 || dist[i] > dist[far])) far = i;
      }
      --sizes[assign[far]];
      ++sizes[c];
      assign[far] = c;
      dist[far] = 0.0;
      centers.row(c) = X.row(far);
    }
    const double objective = dist.sum();
    if (!result.objective_trace.empty()) {
      const double prev = result.objective_trace.back();
      if (objective > prev + 1e-12 * std::max(1.0, prev)) {
        throw std::logic_error("kmeans: objective increased from " + std::to_string(prev) +
                               " to " + std::to_string(objective));
      }
    }
    result.objective_trace.push_back(objective);
    result.iterations = iter + 1;

    // Update step.
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(k, X.cols());
    for (Index i = 0; i < n; ++i) next.row(assign[i]) += X.row(i);
    for (Index c = 0; c < k; ++c) next.row(c) /= static_cast<double>(sizes[c]);
    const double movement = (next - centers).rowwise().norm().maxCoeff();
    centers = std::move(next);
    if (movement < options.tol) break;
  }

  result.partition = Partition(std::move(assign), k);
  result.centroids = std::move(centers);
  return result;
}

AngleReport principal_angles(const Eigen::MatrixXd& U, const Eigen::MatrixXd& W) {
  if (U.rows() != W.rows() || U.cols() != W.cols()) {
    throw std::invalid_argument("principal_angles: dimension mismatch");
  }
  if (U.cols() < 1) throw std::invalid_argument("principal_angles: empty basis");
  if (orthonormality_error(U) > 1e-6 || orthonormality_error(W) > 1e-6) {
    throw std::invalid_argument("principal_angles: basis is not orthonormal");
  }
  const Eigen::MatrixXd cross = U.transpose() * W;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cross);
  const Eigen::VectorXd sv = svd.singularValues();  // descending
  AngleReport report;
  report.cosines.resize(static_cast<std::size_t>(sv.size()));
  double sum_sq = 0.0;
  for (Index i = 0; i < sv.size(); ++i) {
    const double c = std::clamp(sv[i], 0.0, 1.0);
    report.cosines[i] = c;
    sum_sq += c * c;
  }
  const double min_cos = report.cosines.back();
  report.sin_theta_max = std::sqrt(std::max(0.0, 1.0 - min_cos * min_cos));
  report.frob_misalignment = std::max(0.0, static_cast<double>(U.cols()) - sum_sq);
  return report;
}

namespace {

void check_bound_args(const StructureStats& stats, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("bound: epsilon must lie in [0, 1)");
  }
  if (std::isnan(stats.upsilon) || stats.upsilon <= 0.0) {
    throw std::domain_error("bound: upsilon undefined");
  }
}

}  // namespace

double bound_uniform(Index k, const StructureStats& stats, double epsilon) {
  check_bound_args(stats, epsilon);
  if (!stats.kappa_defined()) throw std::domain_error("bound_uniform: kappa undefined");
  const double inv_upsilon = stats.upsilon_finite() ? 1.0 / stats.upsilon : 0.0;
  return static_cast<double>(k) * (inv_upsilon + epsilon / (1.0 - epsilon) * stats.kappa);
}

double bound_uniform_alt(Index k, const StructureStats& stats, double epsilon) {
  check_bound_args(stats, epsilon);
  if (!stats.kappa_defined()) throw std::domain_error("bound_uniform_alt: kappa undefined");
  const double inv_upsilon = stats.upsilon_finite() ? 1.0 / stats.upsilon : 0.0;
  return static_cast<double>(k) * inv_upsilon - epsilon / (1.0 - epsilon) * stats.kappa;
}

double bound_reff(Index k, const StructureStats& stats, double epsilon) {
  check_bound_args(stats, epsilon);
  const double inv_upsilon = stats.upsilon_finite() ? 1.0 / stats.upsilon : 0.0;
  return (1.0 + epsilon) / (1.0 - epsilon) * static_cast<double>(k) * inv_upsilon;
}

double adjusted_rand_index(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) throw std::invalid_argument("adjusted_rand_index: length mismatch");
  auto choose2 = [](double x) { return x * (x - 1.0) / 2.0; };
  std::map<std::pair<Index, Index>, double> table;
  for (Index i = 0; i < a.size(); ++i) table[{a[i], b[i]}] += 1.0;
  double sum_cells = 0.0;
  for (const auto& [key, count] : table) sum_cells += choose2(count);
  double sum_a = 0.0, sum_b = 0.0;
  for (Index s : a.cluster_sizes()) sum_a += choose2(static_cast<double>(s));
  for (Index s : b.cluster_sizes()) sum_b += choose2(static_cast<double>(s));
  const double total = choose2(static_cast<double>(a.size()));
  const double expected = total > 0.0 ? sum_a * sum_b / total : 0.0;
  const double max_index = 0.5 * (sum_a + sum_b);
  if (max_index == expected) return 1.0;  // both partitions trivial and identical in shape
  return (sum_cells - expected) / (max_index - expected);
}

}  // namespace clsparse
