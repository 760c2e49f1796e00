#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "clsparse/graph.hpp"
#include "clsparse/resistance.hpp"
#include "clsparse/spectral.hpp"

namespace clsparse {

struct AnalysisReport {
  Index n = 0;
  Index m = 0;
  Index k = 0;
  bool connected = false;
  StructureStats stats;               // from the structure Laplacian
  std::vector<double> residuals;      // ||c_i - V_k V_k^T c_i||^2
  double alignment = 0.0;             // ||V_{n-k}^T C||_F^2
  InterclusterEdges intercluster;
  // Resistance section; empty with `resistance_notice` set when skipped.
  std::optional<StructureStats> resistance_stats;  // from the unnormalized Laplacian
  std::optional<BoundReport> effres;
  std::optional<RelativeProbabilityReport> relative;
  std::string resistance_notice;
};

// Throws std::invalid_argument when k >= n or k differs from the partition's
// cluster count.
AnalysisReport analyze(const Graph& g, const Partition& p, Index k,
                       LaplacianVariant structure = LaplacianVariant::Normalized);

void print_analysis(std::ostream& out, const AnalysisReport& r);

}  // namespace clsparse
