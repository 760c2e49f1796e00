#include "clsparse/sparsifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "clsparse/edge_io.hpp"
#include "clsparse/rng.hpp"

namespace clsparse {

std::string_view to_string(SamplingMethod m) {
  return m == SamplingMethod::Uniform ? "Uniform" : "EffectiveResistance";
}

SamplingMethod parse_sampling_method(std::string_view text) {
  if (text == "Uniform" || text == "uniform") return SamplingMethod::Uniform;
  if (text == "EffectiveResistance" || text == "effective_resistance" || text == "reff") {
    return SamplingMethod::EffectiveResistance;
  }
  throw std::invalid_argument("unknown sampling method '" + std::string(text) + "'");
}

std::string_view to_string(RankMode m) { return m == RankMode::Full ? "Full" : "RankNK"; }

RankMode parse_rank_mode(std::string_view text) {
  if (text == "Full" || text == "full") return RankMode::Full;
  if (text == "RankNK" || text == "rank_nk" || text == "nk") return RankMode::RankNK;
  throw std::invalid_argument("unknown rank mode '" + std::string(text) + "'");
}

void SparsifyConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  if (budget < 1) throw std::invalid_argument("budget must be at least 1");
  if (!(constant > 0.0)) throw std::invalid_argument("constant must be positive");
}

namespace {

void check_count_args(Index n, double epsilon, double constant) {
  if (n < 2) throw std::invalid_argument("sample count needs n >= 2");
  // epsilon = 1 is allowed here: the count formula stays finite.
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1]");
  if (!(constant > 0.0)) throw std::invalid_argument("constant must be positive");
}

std::int64_t ceil_count(double q) {
  if (!std::isfinite(q) || q > 9.0e18) throw std::overflow_error("sample count overflows");
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(q)));
}

}  // namespace

std::int64_t sample_count_uniform(Index n, Index k, const StructureStats& stats, double epsilon,
                                  double constant) {
  check_count_args(n, epsilon, constant);
  const double shrink = 1.0 - static_cast<double>(k) * (stats.upsilon_finite() ? 1.0 / stats.upsilon : 0.0);
  if (!(shrink > 0.0)) throw std::domain_error("sample_count_uniform: k/upsilon >= 1");
  if (!(stats.rho < 1.0)) throw std::domain_error("sample_count_uniform: rho >= 1");
  if (!stats.kappa_defined()) throw std::domain_error("sample_count_uniform: kappa undefined");
  const double nn = static_cast<double>(n);
  const double factor =
      stats.kappa * stats.kappa / (shrink * shrink * (1.0 - stats.rho) * (1.0 - stats.rho));
  return ceil_count(constant * factor * nn * std::log(nn) / (epsilon * epsilon));
}

std::int64_t sample_count_reff(Index n, double epsilon, double constant) {
  check_count_args(n, epsilon, constant);
  const double nn = static_cast<double>(n);
  return ceil_count(constant * nn * std::log(nn) / (epsilon * epsilon));
}

SparsifyResult sparsify_uniform(const Graph& g, const SparsifyConfig& cfg) {
  cfg.validate();
  if (cfg.method != SamplingMethod::Uniform) {
    throw std::invalid_argument("sparsify_uniform: config method is not Uniform");
  }
  const double m = static_cast<double>(g.num_edges());
  const double pi = m > 0 ? std::min(1.0, static_cast<double>(cfg.budget) / m) : 1.0;
  Rng rng(cfg.seed);
  std::vector<Edge> kept;
  kept.reserve(static_cast<std::size_t>(std::min(m, std::ceil(pi * m * 1.1) + 16)));
  for (const auto& e : g.edges()) {
    if (rng.uniform() < pi) kept.push_back({e.u, e.v, e.w / pi});
  }
  SparsifyResult out;
  out.kept_edges = static_cast<Index>(kept.size());
  out.graph = Graph(g.num_vertices(), std::move(kept));
  out.method = SamplingMethod::Uniform;
  out.seed = cfg.seed;
  return out;
}

SparsifyResult sparsify_reff(const Graph& g, const ResistanceProfile& profile,
                             const SparsifyConfig& cfg, RankMode mode) {
  cfg.validate();
  if (cfg.method != SamplingMethod::EffectiveResistance) {
    throw std::invalid_argument("sparsify_reff: config method is not EffectiveResistance");
  }
  if (static_cast<Index>(profile.edges.size()) != g.num_edges()) {
    throw std::invalid_argument("sparsify_reff: profile does not match graph");
  }
  const auto& edges = g.edges();
  const std::size_t m = edges.size();
  std::vector<double> prob(m);
  std::vector<double> cumulative(m);
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& r = profile.edges[i];
    if (r.u != edges[i].u || r.v != edges[i].v) {
      throw std::invalid_argument("sparsify_reff: profile edge order does not match graph");
    }
    prob[i] = mode == RankMode::Full ? r.p_full : r.p_nk;
    acc += prob[i];
    cumulative[i] = acc;
  }

  Rng rng(cfg.seed);
  std::vector<std::int64_t> counts(m, 0);
  for (std::int64_t draw = 0; draw < cfg.budget; ++draw) {
    const double target = rng.uniform() * acc;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    std::size_t idx = static_cast<std::size_t>(it - cumulative.begin());
    if (idx >= m) idx = m - 1;
    // Skip zero-probability slots that share a cumulative value.
    while (prob[idx] <= 0.0 && idx + 1 < m) ++idx;
    ++counts[idx];
  }

  const double q = static_cast<double>(cfg.budget);
  SparsifyResult out;
  std::vector<Edge> kept;
  for (std::size_t i = 0; i < m; ++i) {
    if (counts[i] == 0) continue;
    const double increment = edges[i].w / (q * prob[i]);
    out.max_increment = std::max(out.max_increment, increment);
    kept.push_back({edges[i].u, edges[i].v, static_cast<double>(counts[i]) * increment});
  }
  out.kept_edges = static_cast<Index>(kept.size());
  out.graph = Graph(g.num_vertices(), std::move(kept));
  out.method = SamplingMethod::EffectiveResistance;
  out.seed = cfg.seed;
  return out;
}

namespace {

CertificateReport run_certificate(
    Index n, double epsilon, const std::optional<Eigen::MatrixXd>& subspace, Index trials,
    std::uint64_t seed, const std::function<double(const Eigen::VectorXd&)>& form,
    const std::function<double(const Eigen::VectorXd&)>& form_tilde) {
  if (trials < 1) throw std::invalid_argument("certificate: trials must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("certificate: epsilon must be positive");
  if (subspace) {
    if (subspace->rows() != n) throw std::invalid_argument("certificate: subspace row mismatch");
    if (subspace->cols() < 1) throw std::invalid_argument("certificate: empty subspace");
    if (orthonormality_error(*subspace) > 1e-6) {
      throw std::invalid_argument("certificate: subspace basis is not orthonormal");
    }
  }
  Rng rng(seed);
  CertificateReport report;
  report.min_ratio = std::numeric_limits<double>::infinity();
  report.max_ratio = -std::numeric_limits<double>::infinity();
  const Index dim = subspace ? subspace->cols() : n;
  Eigen::VectorXd coeff(dim);
  for (Index t = 0; t < trials; ++t) {
    for (Index i = 0; i < dim; ++i) coeff[i] = rng.normal();
    Eigen::VectorXd x = subspace ? Eigen::VectorXd(*subspace * coeff) : coeff;
    const double nrm = x.norm();
    if (!(nrm > 0.0)) {
      ++report.skipped;
      continue;
    }
    x /= nrm;
    const double base = form(x);
    if (base < 1e-12) {
      ++report.skipped;
      continue;
    }
    const double ratio = form_tilde(x) / base;
    const bool ok = ratio >= 1.0 - epsilon && ratio <= 1.0 + epsilon;
    report.ratios.push_back(ratio);
    report.passed.push_back(ok);
    report.min_ratio = std::min(report.min_ratio, ratio);
    report.max_ratio = std::max(report.max_ratio, ratio);
  }
  if (!report.ratios.empty()) {
    const auto ok = std::count(report.passed.begin(), report.passed.end(), true);
    report.pass_fraction = static_cast<double>(ok) / static_cast<double>(report.ratios.size());
  } else {
    report.min_ratio = report.max_ratio = 0.0;
  }
  return report;
}

}  // namespace

CertificateReport quadratic_form_certificate(const Eigen::MatrixXd& L,
                                             const Eigen::MatrixXd& L_tilde, double epsilon,
                                             const std::optional<Eigen::MatrixXd>& subspace,
                                             Index trials, std::uint64_t seed) {
  if (L.rows() != L.cols() || L_tilde.rows() != L.rows() || L_tilde.cols() != L.cols()) {
    throw std::invalid_argument("certificate: dimension mismatch");
  }
  return run_certificate(
      L.rows(), epsilon, subspace, trials, seed,
      [&](const Eigen::VectorXd& x) { return x.dot(L * x); },
      [&](const Eigen::VectorXd& x) { return x.dot(L_tilde * x); });
}

CertificateReport quadratic_form_certificate(const Graph& g, const Graph& g_tilde,
                                             double epsilon,
                                             const std::optional<Eigen::MatrixXd>& subspace,
                                             Index trials, std::uint64_t seed) {
  if (g.num_vertices() != g_tilde.num_vertices()) {
    throw std::invalid_argument("certificate: dimension mismatch");
  }
  return run_certificate(
      g.num_vertices(), epsilon, subspace, trials, seed,
      [&](const Eigen::VectorXd& x) { return incidence_quadratic(g, x); },
      [&](const Eigen::VectorXd& x) { return incidence_quadratic(g_tilde, x); });
}

void write_certificate_csv(std::ostream& out, const CertificateReport& report) {
  out << "trial,ratio,pass\n";
  for (std::size_t i = 0; i < report.ratios.size(); ++i) {
    out << i << ',' << format_double(report.ratios[i]) << ',' << (report.passed[i] ? 1 : 0)
        << '\n';
  }
}

}  // namespace clsparse
