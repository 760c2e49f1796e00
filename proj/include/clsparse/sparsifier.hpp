#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "clsparse/graph.hpp"
#include "clsparse/resistance.hpp"
#include "clsparse/spectral.hpp"

namespace clsparse {

enum class SamplingMethod { Uniform, EffectiveResistance };
enum class RankMode { Full, RankNK };

std::string_view to_string(SamplingMethod m);
SamplingMethod parse_sampling_method(std::string_view text);
std::string_view to_string(RankMode m);
RankMode parse_rank_mode(std::string_view text);

struct SparsifyConfig {
  SamplingMethod method = SamplingMethod::Uniform;
  std::int64_t budget = 1;  // target (expected) edge count q
  double epsilon = 0.5;
  std::uint64_t seed = 0;
  double constant = 1.0;    // multiplier on the formula sample counts

  // Throws std::invalid_argument unless 0 < epsilon < 1, budget >= 1, constant > 0.
  void validate() const;
};

struct SparsifyResult {
  Graph graph;
  Index kept_edges = 0;
  SamplingMethod method = SamplingMethod::Uniform;
  std::uint64_t seed = 0;
  // Largest single-draw weight increment (effective-resistance sampler only).
  double max_increment = 0.0;
};

// constant * kappa^2 / ((1 - k/upsilon)^2 (1 - rho)^2) * n ln n / eps^2, rounded up.
// Not clamped to m. Throws std::domain_error when k/upsilon >= 1 or rho >= 1.
std::int64_t sample_count_uniform(Index n, Index k, const StructureStats& stats, double epsilon,
                                  double constant = 1.0);

// constant * n ln n / eps^2, rounded up.
std::int64_t sample_count_reff(Index n, double epsilon, double constant = 1.0);

// Keeps each edge independently with probability pi = min(1, q/m) and weight
// w/pi. Decisions are drawn in canonical edge order.
SparsifyResult sparsify_uniform(const Graph& g, const SparsifyConfig& cfg);

// q = cfg.budget independent draws with replacement, edge e with probability
// p_e; each draw adds w_e / (q p_e).
SparsifyResult sparsify_reff(const Graph& g, const ResistanceProfile& profile,
                             const SparsifyConfig& cfg, RankMode mode = RankMode::Full);

struct CertificateReport {
  std::vector<double> ratios;  // x^T L~ x / x^T L x per evaluated trial
  std::vector<bool> passed;
  Index skipped = 0;           // trials with x^T L x < 1e-12
  double pass_fraction = 0.0;  // over evaluated trials
  double min_ratio = 0.0;
  double max_ratio = 0.0;
};

// Random unit-vector check of (1-eps) x^T L x <= x^T L~ x <= (1+eps) x^T L x.
// With a subspace basis (n x d, orthonormal), vectors are drawn inside it.
CertificateReport quadratic_form_certificate(const Eigen::MatrixXd& L,
                                             const Eigen::MatrixXd& L_tilde, double epsilon,
                                             const std::optional<Eigen::MatrixXd>& subspace,
                                             Index trials, std::uint64_t seed);

// Same check evaluated through edge lists, O(m) per quadratic form.
CertificateReport quadratic_form_certificate(const Graph& g, const Graph& g_tilde,
                                             double epsilon,
                                             const std::optional<Eigen::MatrixXd>& subspace,
                                             Index trials, std::uint64_t seed);

// CSV `trial,ratio,pass`.
void write_certificate_csv(std::ostream& out, const CertificateReport& report);

}  // namespace clsparse
