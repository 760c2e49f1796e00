#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "clsparse/generators.hpp"
#include "clsparse/graph.hpp"
#include "clsparse/sparsifier.hpp"

namespace clsparse {

// Externally generated instance (e.g. an LFR reference implementation).
struct ExternalGraphFiles {
  std::filesystem::path edges;
  std::filesystem::path partition;
};

using GeneratorSpec = std::variant<SbmConfig, HierSbmConfig, LfrConfig, ExternalGraphFiles>;

// One panel of an experiment: a generator setting plus its display label.
struct Panel {
  std::string label;
  GeneratorSpec generator;
};

enum class CertificateSubspace { Dominant, Full };

struct ExperimentConfig {
  std::string name = "experiment";
  std::vector<Panel> panels;
  Index k = 0;  // 0: take the planted partition's cluster count
  LaplacianVariant structure_laplacian = LaplacianVariant::Normalized;
  LaplacianVariant resistance_laplacian = LaplacianVariant::Unnormalized;
  std::vector<SamplingMethod> methods{SamplingMethod::Uniform,
                                      SamplingMethod::EffectiveResistance};
  RankMode rank_mode = RankMode::Full;
  std::vector<double> budget_sweep{0.05, 0.1, 0.2, 0.4, 0.8};
  double epsilon = 0.5;
  Index repetitions = 20;
  std::uint64_t base_seed = 1;
  Index certificate_trials = 100;
  CertificateSubspace certificate_subspace = CertificateSubspace::Dominant;
  bool record_runtime = false;
  unsigned threads = 0;  // 0: CLSPARSE_THREADS or hardware concurrency
  std::filesystem::path output = "experiment";

  // Throws std::invalid_argument on out-of-range fields.
  void validate() const;
  std::filesystem::path trials_path() const;
  std::filesystem::path summary_path() const;
};

// Builds a config from a parsed TOML document. Relative file paths in the
// generator table are resolved against `base_dir`.
ExperimentConfig experiment_config_from_json(const nlohmann::json& doc,
                                             const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

// One (instance, method, budget, repetition) row.
struct TrialRecord {
  std::string graph_id;
  std::string generator;
  std::string param_label;
  SamplingMethod method = SamplingMethod::Uniform;
  std::int64_t requested_q = 0;
  Index kept_edges = 0;
  std::uint64_t seed = 0;
  double sin_theta_max = 0.0;
  double frob_misalignment = 0.0;
  double upsilon = 0.0;
  double kappa = 0.0;
  double rho = 0.0;
  double lambda_k1 = 0.0;
  double gap = 0.0;
  double bound_uniform = 0.0;
  double bound_reff = 0.0;
  double cert_pass_fraction = 0.0;
  std::optional<double> runtime_ms;
  // Columns after the fixed TrialRecord block.
  double budget_fraction = 0.0;
  double epsilon = 0.0;
  Index k = 0;
  Index num_edges = 0;
  double bound_uniform_alt = 0.0;
  double ari = 0.0;
  std::string error;  // empty on success
};

struct SummaryRow {
  std::string param_label;
  SamplingMethod method = SamplingMethod::Uniform;
  double budget_fraction = 0.0;
  Index count = 0;   // successful trials
  Index errors = 0;  // failed trials
  double sin_theta_max_mean = 0.0;
  double sin_theta_max_sd = 0.0;
  double frob_misalignment_mean = 0.0;
  double frob_misalignment_sd = 0.0;
  double kept_fraction_mean = 0.0;
  double kept_fraction_sd = 0.0;
  double ari_mean = 0.0;
  double ari_sd = 0.0;
  double cert_pass_fraction_mean = 0.0;
};

// Runs every (panel, repetition, method, budget) trial. Instance seed for
// repetition r is mix_seed(base_seed + r); the sampler seed of trial t (rows
// in output order) is base_seed + t. Trial failures are recorded in `error`.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg);

// Mean and sample standard deviation per (panel, method, budget), in order of
// first appearance.
std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);

inline constexpr int kCsvSchemaVersion = 1;

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

// Runs the experiment and writes <output>.trials.csv and <output>.summary.csv.
void run_experiment_to_files(const ExperimentConfig& cfg);

// Worker count: explicit value, else CLSPARSE_THREADS, else hardware concurrency.
unsigned resolve_thread_count(unsigned requested);

}  // namespace clsparse
