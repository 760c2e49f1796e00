#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "clsparse/graph.hpp"

namespace clsparse {

struct SbmConfig {
  std::vector<Index> cluster_sizes;
  double p_intra = 0.5;
  double p_inter = 0.01;
  std::uint64_t seed = 0;

  void validate() const;
};

struct HierSbmConfig {
  Index n_top = 4;
  Index n_sub_per_top = 4;
  Index nodes_per_sub = 50;
  double p_intra_sub = 0.5;
  double p_inter_sub = 0.10;
  double p_inter_top = 0.005;
  std::uint64_t seed = 0;

  void validate() const;
  // "strong", "moderate" or "weak": 4 x 4 sub-clusters of 50 nodes.
  static HierSbmConfig preset(std::string_view name, std::uint64_t seed = 0);
};

struct LfrConfig {
  Index n = 800;
  double tau1 = 2.5;  // degree exponent
  double tau2 = 1.5;  // community-size exponent
  double mu = 0.1;
  Index avg_degree = 20;
  Index max_degree = 50;
  Index min_community = 40;
  Index max_community = 200;
  std::uint64_t seed = 0;

  void validate() const;
};

struct GeneratedGraph {
  Graph graph;
  Partition partition;      // planted (top-level for the hierarchical model)
  Partition sub_partition;  // finest level; equals `partition` for flat models
};

// Thrown when LFR constraints cannot be met after bounded retries.
class InfeasibleConfig : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every intra-cluster pair is an edge w.p. p_intra, every inter-cluster pair
// w.p. p_inter. Vertices are cluster-contiguous; pairs are visited in
// lexicographic order so output is a pure function of the seed.
GeneratedGraph generate_sbm(const SbmConfig& cfg);

// Pair probability is picked by the finest shared level.
GeneratedGraph generate_hier_sbm(const HierSbmConfig& cfg);

// Configuration-model LFR variant: power-law degrees and community sizes, each
// vertex gets ceil((1 - mu) deg) intra-community stubs and the rest
// inter-community, wired by random matching that rejects self-loops,
// duplicates, and (for inter stubs) same-community pairs.
GeneratedGraph generate_lfr(const LfrConfig& cfg);

// Random spanning tree plus independent extra edges w.p. p_extra. Weights are
// 1, or uniform on [0.5, 2) when `weighted`.
Graph random_connected_graph(Index n, double p_extra, std::uint64_t seed, bool weighted = false);

// Fraction of edges whose endpoints lie in different clusters.
double mixing_fraction(const Graph& g, const Partition& p);

}  // namespace clsparse
