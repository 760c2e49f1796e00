#include "clsparse/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <span>
#include <string>
#include <unordered_set>

#include "clsparse/rng.hpp"

namespace clsparse {

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  }
}

// Bernoulli draws over all pairs (i < j) in lexicographic order.
template <typename ProbabilityFn>
std::vector<Edge> sample_pairs(Index n, Rng& rng, ProbabilityFn&& prob) {
  std::vector<Edge> edges;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (rng.uniform() < prob(i, j)) edges.push_back({i, j, 1.0});
    }
  }
  return edges;
}

}  // namespace

void SbmConfig::validate() const {
  if (cluster_sizes.empty()) throw std::invalid_argument("SBM needs at least one cluster");
  for (Index s : cluster_sizes) {
    if (s < 1) throw std::invalid_argument("SBM cluster sizes must be positive");
  }
  check_probability(p_intra, "p_intra");
  check_probability(p_inter, "p_inter");
}

void HierSbmConfig::validate() const {
  if (n_top < 1 || n_sub_per_top < 1 || nodes_per_sub < 1) {
    throw std::invalid_argument("hierarchical SBM dimensions must be positive");
  }
  check_probability(p_intra_sub, "p_intra_sub");
  check_probability(p_inter_sub, "p_inter_sub");
  check_probability(p_inter_top, "p_inter_top");
}

HierSbmConfig HierSbmConfig::preset(std::string_view name, std::uint64_t seed) {
  HierSbmConfig cfg;
  cfg.seed = seed;
  if (name == "strong") {
    cfg.p_intra_sub = 0.5;
    cfg.p_inter_sub = 0.10;
    cfg.p_inter_top = 0.005;
  } else if (name == "moderate") {
    cfg.p_intra_sub = 0.35;
    cfg.p_inter_sub = 0.08;
    cfg.p_inter_top = 0.015;
  } else if (name == "weak") {
    cfg.p_intra_sub = 0.20;
    cfg.p_inter_sub = 0.06;
    cfg.p_inter_top = 0.025;
  } else {
    throw std::invalid_argument("unknown hierarchical preset '" + std::string(name) + "'");
  }
  return cfg;
}

GeneratedGraph generate_sbm(const SbmConfig& cfg) {
  cfg.validate();
  std::vector<Index> assignment;
  for (std::size_t c = 0; c < cfg.cluster_sizes.size(); ++c) {
    assignment.insert(assignment.end(), static_cast<std::size_t>(cfg.cluster_sizes[c]),
                      static_cast<Index>(c));
  }
  const Index n = static_cast<Index>(assignment.size());
  Rng rng(cfg.seed);
  auto edges = sample_pairs(n, rng, [&](Index i, Index j) {
    return assignment[i] == assignment[j] ? cfg.p_intra : cfg.p_inter;
  });
  Partition p(assignment, static_cast<Index>(cfg.cluster_sizes.size()));
  return {Graph(n, std::move(edges)), p, p};
}

GeneratedGraph generate_hier_sbm(const HierSbmConfig& cfg) {
  cfg.validate();
  const Index n_sub = cfg.n_top * cfg.n_sub_per_top;
  const Index n = n_sub * cfg.nodes_per_sub;
  std::vector<Index> sub(static_cast<std::size_t>(n));
  std::vector<Index> top(static_cast<std::size_t>(n));
  for (Index v = 0; v < n; ++v) {
    sub[v] = v / cfg.nodes_per_sub;
    top[v] = sub[v] / cfg.n_sub_per_top;
  }
  Rng rng(cfg.seed);
  auto edges = sample_pairs(n, rng, [&](Index i, Index j) {
    if (sub[i] == sub[j]) return cfg.p_intra_sub;
    if (top[i] == top[j]) return cfg.p_inter_sub;
    return cfg.p_inter_top;
  });
  return {Graph(n, std::move(edges)), Partition(top, cfg.n_top), Partition(sub, n_sub)};
}

void LfrConfig::validate() const {
  if (n < 2) throw std::invalid_argument("LFR needs n >= 2");
  if (!(tau1 > 1.0) || !(tau2 > 1.0)) {
    throw std::invalid_argument("LFR exponents must exceed 1");
  }
  check_probability(mu, "mu");
  if (avg_degree < 1 || avg_degree > max_degree) {
    throw std::invalid_argument("LFR needs 1 <= avg_degree <= max_degree");
  }
  if (max_degree >= n) throw std::invalid_argument("LFR needs max_degree < n");
  if (min_community < 2 || min_community > max_community || max_community > n) {
    throw std::invalid_argument("LFR needs 2 <= min_community <= max_community <= n");
  }
}

namespace {

// Truncated continuous power law x^{-tau} on [lo, hi].
struct PowerLaw {
  double tau, lo, hi;

  double mean() const {
    if (hi <= lo) return lo;
    const double a = 1.0 - tau, b = 2.0 - tau;
    if (std::abs(b) < 1e-9) {
      return (std::log(hi) - std::log(lo)) / (1.0 / lo - 1.0 / hi);
    }
    return (a / b) * (std::pow(hi, b) - std::pow(lo, b)) / (std::pow(hi, a) - std::pow(lo, a));
  }

  double sample(Rng& rng) const {
    if (hi <= lo) return lo;
    const double a = 1.0 - tau;
    const double la = std::pow(lo, a), ha = std::pow(hi, a);
    return std::pow(la + rng.uniform() * (ha - la), 1.0 / a);
  }
};

std::vector<Index> lfr_degrees(const LfrConfig& cfg, Rng& rng) {
  const double hi = static_cast<double>(cfg.max_degree);
  const double target = static_cast<double>(cfg.avg_degree);
  if (PowerLaw{cfg.tau1, 1.0, hi}.mean() > target) {
    throw InfeasibleConfig("LFR: avg_degree " + std::to_string(cfg.avg_degree) +
                           " is below the smallest achievable power-law mean " +
                           std::to_string(PowerLaw{cfg.tau1, 1.0, hi}.mean()));
  }
  double lo = 1.0, up = hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + up);
    (PowerLaw{cfg.tau1, mid, hi}.mean() < target ? lo : up) = mid;
  }
  const PowerLaw law{cfg.tau1, 0.5 * (lo + up), hi};
  std::vector<Index> deg(static_cast<std::size_t>(cfg.n));
  for (auto& d : deg) {
    d = std::clamp<Index>(static_cast<Index>(std::lround(law.sample(rng))), 1, cfg.max_degree);
  }
  return deg;
}

std::vector<Index> lfr_community_sizes(const LfrConfig& cfg, Rng& rng) {
  const PowerLaw law{cfg.tau2, static_cast<double>(cfg.min_community),
                     static_cast<double>(cfg.max_community)};
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Index> sizes;
    Index total = 0;
    while (total < cfg.n) {
      Index s = std::clamp<Index>(static_cast<Index>(std::lround(law.sample(rng))),
                                  cfg.min_community, cfg.max_community);
      if (total + s > cfg.n) {
        Index rest = cfg.n - total;
        if (rest >= cfg.min_community) {
          s = rest;
        } else {
          // Spread the remainder over existing communities with spare room.
          for (auto& existing : sizes) {
            Index add = std::min(rest, cfg.max_community - existing);
            existing += add;
            rest -= add;
            if (rest == 0) break;
          }
          if (rest > 0) break;
          total = cfg.n;
          continue;
        }
      }
      sizes.push_back(s);
      total += s;
    }
    if (total == cfg.n) return sizes;
  }
  throw InfeasibleConfig("LFR: could not partition n=" + std::to_string(cfg.n) +
                         " into communities of size " + std::to_string(cfg.min_community) +
                         ".." + std::to_string(cfg.max_community));
}

Index intra_stubs(Index degree, double mu) {
  return static_cast<Index>(std::ceil((1.0 - mu) * static_cast<double>(degree) - 1e-9));
}

// Assigns vertices (ordered by decreasing degree) to communities with a free
// slot large enough for their intra-community degree. Returns community per
// vertex, or an empty vector if some vertex does not fit.
std::vector<Index> lfr_memberships(const std::vector<Index>& deg,
                                   const std::vector<Index>& sizes, double mu, Rng& rng) {
  const std::size_t n = deg.size();
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return deg[a] > deg[b]; });
  std::vector<Index> free(sizes);
  std::vector<Index> member(n, -1);
  for (Index v : order) {
    const Index need = intra_stubs(deg[v], mu);
    Index slots = 0;
    for (std::size_t c = 0; c < sizes.size(); ++c) {
      if (free[c] > 0 && sizes[c] - 1 >= need) slots += free[c];
    }
    if (slots == 0) return {};
    Index pick = static_cast<Index>(rng.below(static_cast<std::uint64_t>(slots)));
    for (std::size_t c = 0; c < sizes.size(); ++c) {
      if (free[c] > 0 && sizes[c] - 1 >= need) {
        if (pick < free[c]) {
          member[v] = static_cast<Index>(c);
          --free[c];
          break;
        }
        pick -= free[c];
      }
    }
  }
  return member;
}

// Random stub matching in rounds; rejected pairs return to the pool.
void match_stubs(std::vector<Index> stubs, const std::vector<Index>& community, bool inter,
                 Index n, std::unordered_set<std::uint64_t>& seen, std::vector<Edge>& edges,
                 Rng& rng) {
  if (stubs.size() % 2 == 1) stubs.pop_back();
  for (int round = 0; round < 100 && stubs.size() >= 2; ++round) {
    rng.shuffle(std::span<Index>(stubs));
    std::vector<Index> rejected;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      Index a = stubs[i], b = stubs[i + 1];
      if (a > b) std::swap(a, b);
      const std::uint64_t key = static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(n) +
                                static_cast<std::uint64_t>(b);
      const bool ok = a != b && (community[a] != community[b]) == inter && !seen.contains(key);
      if (ok) {
        seen.insert(key);
        edges.push_back({a, b, 1.0});
      } else {
        rejected.push_back(a);
        rejected.push_back(b);
      }
    }
    stubs = std::move(rejected);
  }
}

}  // namespace

GeneratedGraph generate_lfr(const LfrConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  for (int attempt = 0; attempt < 20; ++attempt) {
    auto deg = lfr_degrees(cfg, rng);
    auto sizes = lfr_community_sizes(cfg, rng);
    auto member = lfr_memberships(deg, sizes, cfg.mu, rng);
    if (member.empty()) continue;

    // Relabel so communities are contiguous (community 0 first).
    const Index n = cfg.n;
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return member[a] < member[b]; });
    std::vector<Index> new_deg(order.size()), community(order.size());
    for (Index i = 0; i < n; ++i) {
      new_deg[i] = deg[order[i]];
      community[i] = member[order[i]];
    }

    std::vector<std::vector<Index>> intra(sizes.size());
    std::vector<Index> inter;
    for (Index v = 0; v < n; ++v) {
      const Index in = intra_stubs(new_deg[v], cfg.mu);
      intra[community[v]].insert(intra[community[v]].end(), static_cast<std::size_t>(in), v);
      inter.insert(inter.end(), static_cast<std::size_t>(new_deg[v] - in), v);
    }
    std::unordered_set<std::uint64_t> seen;
    std::vector<Edge> edges;
    for (auto& stubs : intra) match_stubs(std::move(stubs), community, false, n, seen, edges, rng);
    match_stubs(std::move(inter), community, true, n, seen, edges, rng);

    Partition p(community, static_cast<Index>(sizes.size()));
    return {Graph(n, std::move(edges)), p, p};
  }
  throw InfeasibleConfig("LFR: no community assignment satisfies the intra-degree constraints "
                         "(max_degree=" + std::to_string(cfg.max_degree) +
                         ", mu=" + std::to_string(cfg.mu) +
                         ", max_community=" + std::to_string(cfg.max_community) + ")");
}

Graph random_connected_graph(Index n, double p_extra, std::uint64_t seed, bool weighted) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  check_probability(p_extra, "p_extra");
  Rng rng(seed);
  auto weight = [&] { return weighted ? 0.5 + 1.5 * rng.uniform() : 1.0; };
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  rng.shuffle(std::span<Index>(order));
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;
  auto key = [n](Index a, Index b) {
    return static_cast<std::uint64_t>(std::min(a, b)) * static_cast<std::uint64_t>(n) +
           static_cast<std::uint64_t>(std::max(a, b));
  };
  for (Index i = 1; i < n; ++i) {
    const Index a = order[static_cast<std::size_t>(i)];
    const Index b = order[rng.below(static_cast<std::uint64_t>(i))];
    edges.push_back({a, b, weight()});
    seen.insert(key(a, b));
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (rng.uniform() < p_extra && !seen.contains(key(i, j))) edges.push_back({i, j, weight()});
    }
  }
  return Graph(n, std::move(edges));
}

double mixing_fraction(const Graph& g, const Partition& p) {
  if (g.num_edges() == 0) return 0.0;
  return static_cast<double>(intercluster_edges(g, p).count) /
         static_cast<double>(g.num_edges());
}

}  // namespace clsparse
