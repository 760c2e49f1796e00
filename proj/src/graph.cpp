#include "clsparse/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace clsparse {

namespace {

std::vector<char> membership_mask(const Graph& g, std::span<const Index> subset) {
  std::vector<char> mask(static_cast<std::size_t>(g.num_vertices()), 0);
  for (Index v : subset) {
    if (v < 0 || v >= g.num_vertices()) {
      throw std::out_of_range("vertex " + std::to_string(v) + " out of range for n=" +
                              std::to_string(g.num_vertices()));
    }
    mask[static_cast<std::size_t>(v)] = 1;
  }
  return mask;
}

}  // namespace

Graph::Graph(Index n, std::vector<Edge> edges) : n_(n) {
  if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
  for (auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      throw std::invalid_argument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                  ") out of range for n=" + std::to_string(n));
    }
    if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw std::invalid_argument("non-positive weight on edge (" + std::to_string(e.u) + "," +
                                  std::to_string(e.v) + ")");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  // Stable sort keeps the merge order of duplicate weights fixed.
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  edges_.reserve(edges.size());
  for (const auto& e : edges) {
    if (!edges_.empty() && edges_.back().u == e.u && edges_.back().v == e.v) {
      edges_.back().w += e.w;
    } else {
      edges_.push_back(e);
    }
  }
  degrees_ = Eigen::VectorXd::Zero(n);
  for (const auto& e : edges_) {
    degrees_[e.u] += e.w;
    degrees_[e.v] += e.w;
    total_weight_ += e.w;
  }
}

std::vector<Index> Graph::components() const {
  std::vector<Index> parent(static_cast<std::size_t>(n_));
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& e : edges_) {
    Index a = find(e.u), b = find(e.v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<Index> label(static_cast<std::size_t>(n_), -1);
  std::vector<Index> out(static_cast<std::size_t>(n_));
  Index next = 0;
  for (Index v = 0; v < n_; ++v) {
    Index r = find(v);
    if (label[r] < 0) label[r] = next++;
    out[v] = label[r];
  }
  return out;
}

Index Graph::num_components() const {
  auto c = components();
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

Partition::Partition(std::vector<Index> assignment)
    : Partition(assignment,
                assignment.empty() ? 0 : *std::max_element(assignment.begin(), assignment.end()) + 1) {}

Partition::Partition(std::vector<Index> assignment, Index k)
    : assignment_(std::move(assignment)), k_(k) {
  if (assignment_.empty()) throw std::invalid_argument("partition of an empty vertex set");
  if (k_ < 1) throw std::invalid_argument("partition needs at least one cluster");
  std::vector<char> seen(static_cast<std::size_t>(k_), 0);
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    Index c = assignment_[i];
    if (c < 0 || c >= k_) {
      throw std::invalid_argument("cluster id " + std::to_string(c) + " at vertex " +
                                  std::to_string(i) + " outside 0.." + std::to_string(k_ - 1));
    }
    seen[static_cast<std::size_t>(c)] = 1;
  }
  for (Index c = 0; c < k_; ++c) {
    if (!seen[static_cast<std::size_t>(c)]) {
      throw std::invalid_argument("cluster " + std::to_string(c) + " is empty");
    }
  }
}

std::vector<Index> Partition::cluster_sizes() const {
  std::vector<Index> sizes(static_cast<std::size_t>(k_), 0);
  for (Index c : assignment_) ++sizes[static_cast<std::size_t>(c)];
  return sizes;
}

std::vector<Index> Partition::members(Index cluster) const {
  std::vector<Index> out;
  for (Index v = 0; v < size(); ++v) {
    if (assignment_[static_cast<std::size_t>(v)] == cluster) out.push_back(v);
  }
  return out;
}

Eigen::MatrixXd laplacian(const Graph& g, LaplacianVariant variant, IsolatedVertexPolicy policy) {
  const Index n = g.num_vertices();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  if (variant == LaplacianVariant::Unnormalized) {
    for (const auto& e : g.edges()) {
      L(e.u, e.v) -= e.w;
      L(e.v, e.u) -= e.w;
    }
    for (Index i = 0; i < n; ++i) L(i, i) = g.degrees()[i];
    return L;
  }

  Eigen::VectorXd inv_sqrt(n);
  for (Index i = 0; i < n; ++i) {
    double d = g.degrees()[i];
    if (d > 0.0) {
      inv_sqrt[i] = 1.0 / std::sqrt(d);
    } else if (policy == IsolatedVertexPolicy::Reject) {
      throw std::domain_error("normalized Laplacian undefined: vertex " + std::to_string(i) +
                              " is isolated");
    } else {
      inv_sqrt[i] = 0.0;
    }
  }
  for (const auto& e : g.edges()) {
    double a = -e.w * inv_sqrt[e.u] * inv_sqrt[e.v];
    L(e.u, e.v) = a;
    L(e.v, e.u) = a;
  }
  L.diagonal().setOnes();
  return L;
}

double incidence_quadratic(const Graph& g, const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != g.num_vertices()) {
    throw std::invalid_argument("vector length " + std::to_string(x.size()) +
                                " does not match n=" + std::to_string(g.num_vertices()));
  }
  double acc = 0.0;
  for (const auto& e : g.edges()) {
    double d = x[e.u] - x[e.v];
    acc += e.w * d * d;
  }
  return acc;
}

double volume(const Graph& g, std::span<const Index> subset) {
  auto mask = membership_mask(g, subset);
  double vol = 0.0;
  for (Index v = 0; v < g.num_vertices(); ++v) {
    if (mask[v]) vol += g.degrees()[v];
  }
  return vol;
}

double conductance(const Graph& g, std::span<const Index> subset) {
  if (subset.empty()) throw std::invalid_argument("conductance of an empty set");
  auto mask = membership_mask(g, subset);
  double vol = 0.0;
  for (Index v = 0; v < g.num_vertices(); ++v) {
    if (mask[v]) vol += g.degrees()[v];
  }
  if (!(vol > 0.0)) throw std::domain_error("conductance of a zero-volume set");
  double cut = 0.0;
  for (const auto& e : g.edges()) {
    if (mask[e.u] != mask[e.v]) cut += e.w;
  }
  return cut / vol;
}

double rho_of_partition(const Graph& g, const Partition& p) {
  if (p.size() != g.num_vertices()) {
    throw std::invalid_argument("partition size does not match graph");
  }
  if (p.num_clusters() == 1) return 0.0;
  std::vector<double> vol(static_cast<std::size_t>(p.num_clusters()), 0.0);
  std::vector<double> cut(vol.size(), 0.0);
  for (Index v = 0; v < g.num_vertices(); ++v) vol[p[v]] += g.degrees()[v];
  for (const auto& e : g.edges()) {
    if (p[e.u] != p[e.v]) {
      cut[p[e.u]] += e.w;
      cut[p[e.v]] += e.w;
    }
  }
  double rho = 0.0;
  for (std::size_t c = 0; c < vol.size(); ++c) {
    if (!(vol[c] > 0.0)) {
      throw std::domain_error("cluster " + std::to_string(c) + " has zero volume");
    }
    rho = std::max(rho, cut[c] / vol[c]);
  }
  return rho;
}

Eigen::MatrixXd indicator_matrix(const Partition& p) {
  auto sizes = p.cluster_sizes();
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(p.size(), p.num_clusters());
  for (Index v = 0; v < p.size(); ++v) {
    C(v, p[v]) = 1.0 / std::sqrt(static_cast<double>(sizes[p[v]]));
  }
  return C;
}

InterclusterEdges intercluster_edges(const Graph& g, const Partition& p) {
  if (p.size() != g.num_vertices()) {
    throw std::invalid_argument("partition size does not match graph");
  }
  InterclusterEdges out;
  for (const auto& e : g.edges()) {
    if (p[e.u] != p[e.v]) {
      ++out.count;
      out.weight += e.w;
    }
  }
  return out;
}

}  // namespace clsparse
