#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "clsparse/graph.hpp"
#include "clsparse/sparsifier.hpp"

namespace clsparse {

struct VerifyOptions {
  Index graphs = 100;          // corpus size for the graph-based suites
  std::uint64_t seed = 1;
  Index monte_carlo_seeds = 10000;
  bool inject_bug = false;     // corrupts edge weights; every suite must then fail
};

struct SuiteReport {
  std::string name;
  Index checked = 0;
  Index failures = 0;
  double max_error = 0.0;      // largest violation (or deviation) seen
  std::string error_label;     // what max_error measures
  std::vector<std::string> messages;

  bool passed() const { return failures == 0 && checked > 0; }
};

// foster, trace, structure, unbiased, upper
const std::vector<std::string>& verify_suite_names();

// Throws std::invalid_argument for an unknown suite.
SuiteReport run_verify_suite(const std::string& name, const VerifyOptions& opts);

void print_suite_report(std::ostream& out, const SuiteReport& report);

// Average of the sparsified unnormalized Laplacian over `seeds` runs with
// seeds base_seed, base_seed + 1, ...
Eigen::MatrixXd mean_sparsified_laplacian(const Graph& g, SamplingMethod method,
                                          std::int64_t budget, Index seeds,
                                          std::uint64_t base_seed);

// max over entries with L_ij != 0 of |mean_ij - L_ij| / |L_ij|.
double max_relative_entry_error(const Eigen::MatrixXd& mean, const Eigen::MatrixXd& L);

}  // namespace clsparse
