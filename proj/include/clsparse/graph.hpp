#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace clsparse {

using Index = std::ptrdiff_t;

// Undirected weighted edge, stored with u < v.
struct Edge {
  Index u = 0;
  Index v = 0;
  double w = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Immutable undirected graph without self-loops or parallel edges.
//
// Edges are kept in canonical order (sorted by (u, v) with u < v). Duplicate
// pairs passed to the constructor are merged by adding their weights, which
// is what with-replacement samplers need.
class Graph {
 public:
  Graph() = default;

  // Throws std::invalid_argument on self-loops, out-of-range endpoints or
  // non-positive weights.
  Graph(Index n, std::vector<Edge> edges);

  Index num_vertices() const { return n_; }
  Index num_edges() const { return static_cast<Index>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Eigen::VectorXd& degrees() const { return degrees_; }
  double total_weight() const { return total_weight_; }

  // Connected component id per vertex, numbered in order of first vertex.
  std::vector<Index> components() const;
  Index num_components() const;
  bool connected() const { return num_components() <= 1; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  Index n_ = 0;
  std::vector<Edge> edges_;
  Eigen::VectorXd degrees_;
  double total_weight_ = 0.0;
};

// Cluster assignment of every vertex; ids are 0..k-1 and none is empty.
class Partition {
 public:
  Partition() = default;
  // k = 1 + max id. Throws std::invalid_argument if some id in 0..k-1 is
  // unused or negative.
  explicit Partition(std::vector<Index> assignment);
  Partition(std::vector<Index> assignment, Index k);

  Index size() const { return static_cast<Index>(assignment_.size()); }
  Index num_clusters() const { return k_; }
  Index operator[](Index v) const { return assignment_[static_cast<std::size_t>(v)]; }
  const std::vector<Index>& assignment() const { return assignment_; }
  std::vector<Index> cluster_sizes() const;
  std::vector<Index> members(Index cluster) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<Index> assignment_;
  Index k_ = 0;
};

enum class LaplacianVariant { Unnormalized, Normalized };

// How the normalized Laplacian treats zero-degree vertices. Reject throws;
// UnitDiagonal sets the row of an isolated vertex to e_i (eigenvalue 1), which
// keeps it out of the bottom eigenspace.
enum class IsolatedVertexPolicy { Reject, UnitDiagonal };

// D - A or I - D^{-1/2} A D^{-1/2}, exactly symmetric.
Eigen::MatrixXd laplacian(const Graph& g, LaplacianVariant variant,
                          IsolatedVertexPolicy policy = IsolatedVertexPolicy::Reject);

// sum_e w_e (x[u] - x[v])^2, i.e. x^T B^T W B x without forming B.
double incidence_quadratic(const Graph& g, const Eigen::Ref<const Eigen::VectorXd>& x);

double volume(const Graph& g, std::span<const Index> subset);

// Weighted cut of the subset divided by its volume. The full vertex set has
// conductance 0 (empty cut).
double conductance(const Graph& g, std::span<const Index> subset);

// Maximum cluster conductance of the supplied partition. This is an upper
// bound on the k-way expansion, which would minimize over all partitions.
double rho_of_partition(const Graph& g, const Partition& p);

// n x k matrix whose i-th column is 1_{C_i} / sqrt(|C_i|).
Eigen::MatrixXd indicator_matrix(const Partition& p);

struct InterclusterEdges {
  Index count = 0;
  double weight = 0.0;
};

InterclusterEdges intercluster_edges(const Graph& g, const Partition& p);

}  // namespace clsparse
