#include "clsparse/resistance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "clsparse/edge_io.hpp"

namespace clsparse {

namespace {

constexpr double kBoundSlack = 1e-9;

bool within_upper(double value, double upper) {
  return value <= upper + kBoundSlack * std::max(1.0, std::abs(upper));
}

bool within_lower(double value, double lower) {
  return value >= lower - kBoundSlack * std::max(1.0, std::abs(lower));
}

void require_positive_lambda(const Spectrum& spec, Index k) {
  const Index n = spec.size();
  if (k < 0 || k >= n) {
    throw std::invalid_argument("rank-(n-k) resistance: k=" + std::to_string(k) +
                                " outside 0..n-1");
  }
  const double lambda_max = std::max(1.0, std::abs(spec.values[n - 1]));
  if (spec.values[k] <= kZeroEigenvalueTolerance * lambda_max) {
    throw std::domain_error("rank-(n-k) resistance: lambda_{k+1} is zero for k=" +
                            std::to_string(k));
  }
}

// Rows are vertex embeddings whose squared distances give R^{n-k}.
Eigen::MatrixXd resistance_embedding(const Spectrum& spec, Index k) {
  const Index n = spec.size();
  Eigen::MatrixXd Y = spec.vectors.rightCols(n - k);
  for (Index j = 0; j < n - k; ++j) Y.col(j) /= std::sqrt(spec.values[k + j]);
  return Y;
}

}  // namespace

Eigen::MatrixXd pinv_from_spectrum(const Spectrum& spec, double rank_tolerance) {
  const Index n = spec.size();
  if (n == 0) return {};
  const double lambda_max = spec.values.cwiseAbs().maxCoeff();
  const double cutoff = rank_tolerance * lambda_max;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(n);
  for (Index i = 0; i < n; ++i) {
    if (spec.values[i] > cutoff) inv[i] = 1.0 / spec.values[i];
  }
  Eigen::MatrixXd P = spec.vectors * inv.asDiagonal() * spec.vectors.transpose();
  return 0.5 * (P + P.transpose());
}

Eigen::MatrixXd pinv_psd(const Eigen::MatrixXd& M, double rank_tolerance) {
  return pinv_from_spectrum(eig_sym(M), rank_tolerance);
}

double effective_resistance(const Graph& g, Index u, Index v) {
  const Index n = g.num_vertices();
  if (u < 0 || v < 0 || u >= n || v >= n) {
    throw std::out_of_range("effective_resistance: vertex out of range");
  }
  if (u == v) throw std::invalid_argument("effective_resistance: u == v");
  const auto comp = g.components();
  if (comp[u] != comp[v]) {
    throw std::domain_error("effective_resistance: vertices " + std::to_string(u) + " and " +
                            std::to_string(v) + " are in different components");
  }
  const Eigen::MatrixXd P = pinv_psd(laplacian(g, LaplacianVariant::Unnormalized));
  return P(u, u) + P(v, v) - 2.0 * P(u, v);
}

double rank_nk_resistance(const Spectrum& spec, Index k, Index a, Index b) {
  const Index n = spec.size();
  if (a < 0 || b < 0 || a >= n || b >= n) {
    throw std::out_of_range("rank_nk_resistance: vertex out of range");
  }
  require_positive_lambda(spec, k);
  if (a == b) return 0.0;
  double acc = 0.0;
  for (Index i = k; i < n; ++i) {
    const double d = spec.vectors(a, i) - spec.vectors(b, i);
    acc += d * d / spec.values[i];
  }
  return acc;
}

ResistanceProfile resistance_profile(const Graph& g, Index k) {
  if (!g.connected()) throw std::domain_error("resistance_profile: graph is disconnected");
  return resistance_profile(g, laplacian_spectrum(g, LaplacianVariant::Unnormalized), k);
}

ResistanceProfile resistance_profile(const Graph& g, const Spectrum& unnormalized, Index k) {
  const Index n = g.num_vertices();
  if (unnormalized.size() != n) {
    throw std::invalid_argument("resistance_profile: spectrum size does not match graph");
  }
  if (!g.connected()) throw std::domain_error("resistance_profile: graph is disconnected");
  if (g.num_edges() == 0) throw std::domain_error("resistance_profile: graph has no edges");
  require_positive_lambda(unnormalized, k);

  const Eigen::MatrixXd P = pinv_from_spectrum(unnormalized);
  const Eigen::MatrixXd Y = resistance_embedding(unnormalized, k);

  ResistanceProfile out;
  out.k = k;
  out.edges.reserve(static_cast<std::size_t>(g.num_edges()));
  Index id = 0;
  for (const auto& e : g.edges()) {
    EdgeResistance r;
    r.edge = id++;
    r.u = e.u;
    r.v = e.v;
    r.w = e.w;
    r.r_full = std::max(0.0, P(e.u, e.u) + P(e.v, e.v) - 2.0 * P(e.u, e.v));
    r.r_nk = (Y.row(e.u) - Y.row(e.v)).squaredNorm();
    r.tau_full = e.w * r.r_full;
    r.tau_nk = e.w * r.r_nk;
    out.sum_tau_full += r.tau_full;
    out.sum_tau_nk += r.tau_nk;
    out.edges.push_back(r);
  }
  for (auto& r : out.edges) {
    r.p_full = r.tau_full / out.sum_tau_full;
    r.p_nk = r.tau_nk / out.sum_tau_nk;
  }
  return out;
}

BoundReport verify_effres_bounds(const Graph& g, const Partition& p, const Spectrum& spec,
                                 const StructureStats& stats, PairScope scope) {
  const Index n = g.num_vertices();
  if (p.size() != n || spec.size() != n) {
    throw std::invalid_argument("verify_effres_bounds: size mismatch");
  }
  const Index k = stats.k;
  require_positive_lambda(spec, k);
  if (std::abs(stats.lambda_k1 - spec.values[k]) >
      1e-12 * std::max(1.0, std::abs(spec.values[k]))) {
    throw std::invalid_argument(
        "verify_effres_bounds: stats were not computed from this spectrum");
  }

  BoundReport report;
  const double upper = 2.0 / stats.lambda_k1;
  const double shrink = 1.0 - stats.k_over_upsilon();
  report.vacuous = !(shrink > 0.0) || !stats.kappa_defined();
  const double lower = report.vacuous ? 0.0 : shrink / stats.kappa * upper;

  const Eigen::MatrixXd Y = resistance_embedding(spec, k);
  auto check = [&](Index a, Index b) {
    BoundCheck c;
    c.u = a;
    c.v = b;
    c.value = (Y.row(a) - Y.row(b)).squaredNorm();
    c.upper = upper;
    c.lower = lower;
    c.pass_upper = within_upper(c.value, upper);
    c.pass_lower = within_lower(c.value, lower);
    report.checks.push_back(c);
  };

  switch (scope) {
    case PairScope::AllEdges:
      for (const auto& e : g.edges()) check(e.u, e.v);
      break;
    case PairScope::IntraClusterEdges:
      for (const auto& e : g.edges()) {
        if (p[e.u] == p[e.v]) check(e.u, e.v);
      }
      break;
    case PairScope::IntraClusterPairs:
      for (Index a = 0; a < n; ++a) {
        for (Index b = a + 1; b < n; ++b) {
          if (p[a] == p[b]) check(a, b);
        }
      }
      break;
  }

  if (!report.checks.empty()) {
    const auto total = static_cast<double>(report.checks.size());
    const auto up = std::count_if(report.checks.begin(), report.checks.end(),
                                  [](const BoundCheck& c) { return c.pass_upper; });
    const auto lo = std::count_if(report.checks.begin(), report.checks.end(),
                                  [](const BoundCheck& c) { return c.pass_lower; });
    report.upper_pass_rate = static_cast<double>(up) / total;
    report.lower_pass_rate = static_cast<double>(lo) / total;
  }
  return report;
}

RelativeProbabilityReport verify_relative_probabilities(const ResistanceProfile& profile,
                                                        const StructureStats& stats) {
  RelativeProbabilityReport report;
  const double factor = (1.0 - stats.k_over_upsilon()) * (1.0 - stats.rho);
  report.vacuous = !(factor > 0.0) || !stats.kappa_defined();
  const double lower = report.vacuous ? 0.0 : factor / stats.kappa;
  const double upper =
      report.vacuous ? std::numeric_limits<double>::infinity() : stats.kappa / factor;
  const double m = static_cast<double>(profile.edges.size());

  report.min_ratio = std::numeric_limits<double>::infinity();
  report.max_ratio = 0.0;
  std::size_t passed = 0;
  for (const auto& e : profile.edges) {
    BoundCheck c;
    c.u = e.u;
    c.v = e.v;
    c.value = e.p_nk * m;
    c.lower = lower;
    c.upper = upper;
    c.pass_lower = within_lower(c.value, lower);
    c.pass_upper = within_upper(c.value, upper);
    if (c.pass_lower && c.pass_upper) ++passed;
    report.min_ratio = std::min(report.min_ratio, c.value);
    report.max_ratio = std::max(report.max_ratio, c.value);
    report.checks.push_back(c);
  }
  if (!report.checks.empty()) {
    report.pass_rate = static_cast<double>(passed) / static_cast<double>(report.checks.size());
  } else {
    report.min_ratio = 0.0;
  }
  return report;
}

void write_bound_csv(std::ostream& out, const std::vector<BoundCheck>& checks) {
  out << "edge_u,edge_v,value,lower,upper,pass_lower,pass_upper\n";
  for (const auto& c : checks) {
    out << c.u << ',' << c.v << ',' << format_double(c.value) << ',' << format_double(c.lower)
        << ',' << format_double(c.upper) << ',' << (c.pass_lower ? 1 : 0) << ','
        << (c.pass_upper ? 1 : 0) << '\n';
  }
}

}  // namespace clsparse
