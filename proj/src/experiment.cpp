#include "clsparse/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <stdexcept>
#include <thread>

#include "clsparse/edge_io.hpp"
#include "clsparse/metrics.hpp"
#include "clsparse/resistance.hpp"
#include "clsparse/rng.hpp"
#include "clsparse/spectral.hpp"
#include "clsparse/toml_lite.hpp"

namespace clsparse {

using nlohmann::json;

namespace {

const std::set<std::string> kTopLevelKeys = {
    "name",          "k",           "structure_laplacian", "resistance_laplacian",
    "methods",       "rank_mode",   "budget_sweep",        "epsilon",
    "repetitions",   "base_seed",   "certificate_trials",  "certificate_subspace",
    "record_runtime", "threads",    "output",              "generator"};

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      throw std::invalid_argument("unknown key '" + key + "' in " + where);
    }
  }
}

LaplacianVariant parse_variant(const std::string& s) {
  if (s == "Normalized" || s == "normalized") return LaplacianVariant::Normalized;
  if (s == "Unnormalized" || s == "unnormalized") return LaplacianVariant::Unnormalized;
  throw std::invalid_argument("unknown Laplacian variant '" + s + "'");
}

// Scalar or array value as a list.
template <typename T>
std::vector<T> as_list(const json& v) {
  std::vector<T> out;
  if (v.is_array()) {
    for (const auto& item : v) out.push_back(item.get<T>());
  } else {
    out.push_back(v.get<T>());
  }
  return out;
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
  return obj.contains(key) ? obj.at(key).get<T>() : fallback;
}

std::string gamma_label(double p_intra, double p_inter) {
  if (p_inter == 0.0) return "gamma=inf";
  return "gamma=" + format_double(p_intra / p_inter);
}

std::vector<Panel> sbm_panels(const json& gen) {
  reject_unknown_keys(gen, {"type", "sizes", "p_intra", "p_inter", "preset"}, "[generator] (sbm)");
  SbmConfig base;
  base.cluster_sizes = get_or<std::vector<Index>>(gen, "sizes", {200, 200, 200, 200});
  base.p_intra = get_or<double>(gen, "p_intra", 0.5);
  std::vector<Panel> panels;
  if (gen.contains("preset")) {
    if (gen.contains("p_inter")) {
      throw std::invalid_argument("[generator] sets both preset and p_inter");
    }
    for (const auto& name : as_list<std::string>(gen.at("preset"))) {
      SbmConfig c = base;
      if (name == "strong") {
        c.p_inter = 0.01;
      } else if (name == "moderate") {
        c.p_inter = 0.05;
      } else if (name == "weak") {
        c.p_inter = 0.1;
      } else {
        throw std::invalid_argument("unknown SBM preset '" + name + "'");
      }
      panels.push_back({name, c});
    }
    return panels;
  }
  const std::vector<double> inter =
      gen.contains("p_inter") ? as_list<double>(gen.at("p_inter"))
                              : std::vector<double>{0.005, 0.01, 0.02, 0.05, 0.1};
  for (double q : inter) {
    SbmConfig c = base;
    c.p_inter = q;
    panels.push_back({gamma_label(c.p_intra, q), c});
  }
  return panels;
}

std::vector<Panel> hier_panels(const json& gen) {
  reject_unknown_keys(gen,
                      {"type", "preset", "n_top", "n_sub_per_top", "nodes_per_sub",
                       "p_intra_sub", "p_inter_sub", "p_inter_top"},
                      "[generator] (hier)");
  auto apply_shape = [&](HierSbmConfig c) {
    c.n_top = get_or<Index>(gen, "n_top", c.n_top);
    c.n_sub_per_top = get_or<Index>(gen, "n_sub_per_top", c.n_sub_per_top);
    c.nodes_per_sub = get_or<Index>(gen, "nodes_per_sub", c.nodes_per_sub);
    return c;
  };
  std::vector<Panel> panels;
  if (gen.contains("preset")) {
    for (const auto& name : as_list<std::string>(gen.at("preset"))) {
      panels.push_back({name, apply_shape(HierSbmConfig::preset(name))});
    }
    return panels;
  }
  HierSbmConfig c = apply_shape(HierSbmConfig{});
  c.p_intra_sub = get_or<double>(gen, "p_intra_sub", c.p_intra_sub);
  c.p_inter_sub = get_or<double>(gen, "p_inter_sub", c.p_inter_sub);
  c.p_inter_top = get_or<double>(gen, "p_inter_top", c.p_inter_top);
  panels.push_back({"custom", c});
  return panels;
}

std::vector<Panel> lfr_panels(const json& gen) {
  reject_unknown_keys(gen,
                      {"type", "n", "tau1", "tau2", "mu", "avg_degree", "max_degree",
                       "min_community", "max_community"},
                      "[generator] (lfr)");
  LfrConfig base;
  base.n = get_or<Index>(gen, "n", base.n);
  base.tau1 = get_or<double>(gen, "tau1", base.tau1);
  base.tau2 = get_or<double>(gen, "tau2", base.tau2);
  base.avg_degree = get_or<Index>(gen, "avg_degree", base.avg_degree);
  base.max_degree = get_or<Index>(gen, "max_degree", base.max_degree);
  base.min_community = get_or<Index>(gen, "min_community", base.min_community);
  base.max_community = get_or<Index>(gen, "max_community", base.max_community);
  const std::vector<double> mus =
      gen.contains("mu") ? as_list<double>(gen.at("mu")) : std::vector<double>{base.mu};
  std::vector<Panel> panels;
  for (double mu : mus) {
    LfrConfig c = base;
    c.mu = mu;
    panels.push_back({"mu=" + format_double(mu), c});
  }
  return panels;
}

std::vector<Panel> file_panels(const json& gen, const std::filesystem::path& base_dir) {
  reject_unknown_keys(gen, {"type", "edges", "partition"}, "[generator] (files)");
  const auto edges = as_list<std::string>(gen.at("edges"));
  const auto parts = as_list<std::string>(gen.at("partition"));
  if (edges.size() != parts.size()) {
    throw std::invalid_argument("[generator] edges and partition lists differ in length");
  }
  std::vector<Panel> panels;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::filesystem::path e = edges[i], p = parts[i];
    if (e.is_relative()) e = base_dir / e;
    if (p.is_relative()) p = base_dir / p;
    panels.push_back({e.stem().string(), ExternalGraphFiles{e, p}});
  }
  return panels;
}

std::string generator_name(const GeneratorSpec& spec) {
  switch (spec.index()) {
    case 0: return "sbm";
    case 1: return "hier";
    case 2: return "lfr";
    default: return "files";
  }
}

GeneratedGraph instantiate(const GeneratorSpec& spec, std::uint64_t seed) {
  return std::visit(
      [seed](const auto& g) -> GeneratedGraph {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, ExternalGraphFiles>) {
          Graph graph = load_edge_list(g.edges);
          Partition p = load_partition(g.partition);
          if (p.size() != graph.num_vertices()) {
            throw std::invalid_argument("partition file length does not match graph");
          }
          return {std::move(graph), p, p};
        } else {
          T cfg = g;
          cfg.seed = seed;
          if constexpr (std::is_same_v<T, SbmConfig>) return generate_sbm(cfg);
          if constexpr (std::is_same_v<T, HierSbmConfig>) return generate_hier_sbm(cfg);
          if constexpr (std::is_same_v<T, LfrConfig>) return generate_lfr(cfg);
        }
      },
      spec);
}

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  }
  return s;
}

double safe_bound(double (*fn)(Index, const StructureStats&, double), Index k,
                  const StructureStats& s, double eps) {
  try {
    return fn(k, s, eps);
  } catch (const std::exception&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

struct InstanceContext {
  GeneratedGraph instance;
  Index k = 0;
  StructureStats stats;
  Eigen::MatrixXd indicators;
  std::optional<Spectrum> resistance_spectrum;
  std::optional<ResistanceProfile> profile;
  std::string profile_error;
  std::optional<Eigen::MatrixXd> certificate_basis;
};

InstanceContext prepare_instance(const ExperimentConfig& cfg, const Panel& panel,
                                 std::uint64_t seed) {
  InstanceContext ctx;
  ctx.instance = instantiate(panel.generator, seed);
  const Graph& g = ctx.instance.graph;
  const Partition& p = ctx.instance.partition;
  ctx.k = cfg.k > 0 ? cfg.k : p.num_clusters();
  if (ctx.k >= g.num_vertices()) throw std::invalid_argument("k must be smaller than n");
  if (ctx.k != p.num_clusters()) {
    throw std::invalid_argument("k=" + std::to_string(ctx.k) +
                                " differs from the planted cluster count " +
                                std::to_string(p.num_clusters()));
  }
  const Spectrum structure = laplacian_spectrum(g, cfg.structure_laplacian,
                                                IsolatedVertexPolicy::UnitDiagonal);
  ctx.stats = structure_stats(structure, rho_of_partition(g, p), ctx.k);
  ctx.indicators = indicator_matrix(p);

  const Spectrum unnormalized = laplacian_spectrum(g, LaplacianVariant::Unnormalized);
  if (cfg.certificate_subspace == CertificateSubspace::Dominant) {
    ctx.certificate_basis = unnormalized.top(ctx.k);
  }
  const bool needs_profile =
      std::find(cfg.methods.begin(), cfg.methods.end(), SamplingMethod::EffectiveResistance) !=
      cfg.methods.end();
  if (needs_profile) {
    try {
      const Spectrum& rs = cfg.resistance_laplacian == LaplacianVariant::Unnormalized
                               ? unnormalized
                               : ctx.resistance_spectrum.emplace(laplacian_spectrum(
                                     g, cfg.resistance_laplacian));
      const Index rank_k = cfg.rank_mode == RankMode::RankNK ? ctx.k : 1;
      ctx.profile = resistance_profile(g, rs, rank_k);
    } catch (const std::exception& e) {
      ctx.profile_error = e.what();
    }
  }
  return ctx;
}

TrialRecord run_trial(const ExperimentConfig& cfg, const InstanceContext& ctx,
                      SamplingMethod method, double fraction, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  const Graph& g = ctx.instance.graph;
  TrialRecord rec;
  rec.method = method;
  rec.seed = seed;
  rec.budget_fraction = fraction;
  rec.epsilon = cfg.epsilon;
  rec.k = ctx.k;
  rec.num_edges = g.num_edges();
  rec.upsilon = ctx.stats.upsilon;
  rec.kappa = ctx.stats.kappa;
  rec.rho = ctx.stats.rho;
  rec.lambda_k1 = ctx.stats.lambda_k1;
  rec.gap = ctx.stats.gap();
  rec.bound_uniform = safe_bound(&bound_uniform, ctx.k, ctx.stats, cfg.epsilon);
  rec.bound_uniform_alt = safe_bound(&bound_uniform_alt, ctx.k, ctx.stats, cfg.epsilon);
  rec.bound_reff = safe_bound(&bound_reff, ctx.k, ctx.stats, cfg.epsilon);
  rec.requested_q = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(fraction * static_cast<double>(g.num_edges()))));

  SparsifyConfig sc;
  sc.method = method;
  sc.budget = rec.requested_q;
  sc.epsilon = cfg.epsilon;
  sc.seed = seed;
  SparsifyResult result;
  if (method == SamplingMethod::Uniform) {
    result = sparsify_uniform(g, sc);
  } else {
    if (!ctx.profile) throw std::runtime_error("no resistance profile: " + ctx.profile_error);
    result = sparsify_reff(g, *ctx.profile, sc, cfg.rank_mode);
  }
  rec.kept_edges = result.kept_edges;

  const Spectrum sparse_spec = laplacian_spectrum(result.graph, cfg.structure_laplacian,
                                                  IsolatedVertexPolicy::UnitDiagonal);
  const AngleReport angles = principal_angles(sparse_spec.bottom(ctx.k), ctx.indicators);
  rec.sin_theta_max = angles.sin_theta_max;
  rec.frob_misalignment = angles.frob_misalignment;

  const auto cert = quadratic_form_certificate(g, result.graph, cfg.epsilon,
                                               ctx.certificate_basis, cfg.certificate_trials,
                                               mix_seed(seed));
  rec.cert_pass_fraction = cert.pass_fraction;

  const auto km = kmeans(spectral_embedding(sparse_spec, ctx.k), ctx.k, seed);
  rec.ari = adjusted_rand_index(km.partition, ctx.instance.partition);

  if (cfg.record_runtime) {
    rec.runtime_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  }
  return rec;
}

std::string csv_number(double x) { return format_double(x); }

}  // namespace

void ExperimentConfig::validate() const {
  if (panels.empty()) throw std::invalid_argument("experiment has no generator panels");
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  if (methods.empty()) throw std::invalid_argument("methods must not be empty");
  if (budget_sweep.empty()) throw std::invalid_argument("budget_sweep must not be empty");
  for (std::size_t i = 0; i < budget_sweep.size(); ++i) {
    if (!(budget_sweep[i] > 0.0 && budget_sweep[i] <= 1.0)) {
      throw std::invalid_argument("budget fractions must lie in (0, 1]");
    }
    if (i > 0 && !(budget_sweep[i] > budget_sweep[i - 1])) {
      throw std::invalid_argument("budget fractions must be strictly ascending");
    }
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
  if (certificate_trials < 1) throw std::invalid_argument("certificate_trials must be positive");
}

std::filesystem::path ExperimentConfig::trials_path() const {
  auto p = output;
  p += ".trials.csv";
  return p;
}

std::filesystem::path ExperimentConfig::summary_path() const {
  auto p = output;
  p += ".summary.csv";
  return p;
}

ExperimentConfig experiment_config_from_json(const json& doc,
                                             const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw std::invalid_argument("config must be a table");
  reject_unknown_keys(doc, kTopLevelKeys, "config");
  ExperimentConfig cfg;
  try {
    cfg.name = get_or<std::string>(doc, "name", cfg.name);
    cfg.k = get_or<Index>(doc, "k", cfg.k);
    if (doc.contains("structure_laplacian")) {
      cfg.structure_laplacian = parse_variant(doc.at("structure_laplacian").get<std::string>());
    }
    if (doc.contains("resistance_laplacian")) {
      cfg.resistance_laplacian = parse_variant(doc.at("resistance_laplacian").get<std::string>());
    }
    if (doc.contains("methods")) {
      cfg.methods.clear();
      for (const auto& m : as_list<std::string>(doc.at("methods"))) {
        cfg.methods.push_back(parse_sampling_method(m));
      }
    }
    if (doc.contains("rank_mode")) cfg.rank_mode = parse_rank_mode(doc.at("rank_mode").get<std::string>());
    if (doc.contains("budget_sweep")) cfg.budget_sweep = as_list<double>(doc.at("budget_sweep"));
    cfg.epsilon = get_or<double>(doc, "epsilon", cfg.epsilon);
    cfg.repetitions = get_or<Index>(doc, "repetitions", cfg.repetitions);
    cfg.base_seed = get_or<std::uint64_t>(doc, "base_seed", cfg.base_seed);
    cfg.certificate_trials = get_or<Index>(doc, "certificate_trials", cfg.certificate_trials);
    if (doc.contains("certificate_subspace")) {
      const auto s = doc.at("certificate_subspace").get<std::string>();
      if (s == "dominant") {
        cfg.certificate_subspace = CertificateSubspace::Dominant;
      } else if (s == "full") {
        cfg.certificate_subspace = CertificateSubspace::Full;
      } else {
        throw std::invalid_argument("certificate_subspace must be 'dominant' or 'full'");
      }
    }
    cfg.record_runtime = get_or<bool>(doc, "record_runtime", cfg.record_runtime);
    cfg.threads = get_or<unsigned>(doc, "threads", cfg.threads);
    std::filesystem::path out = get_or<std::string>(doc, "output", cfg.name);
    cfg.output = out.is_relative() ? base_dir / out : out;

    if (!doc.contains("generator")) throw std::invalid_argument("missing [generator] table");
    const json& gen = doc.at("generator");
    const auto type = gen.at("type").get<std::string>();
    if (type == "sbm") {
      cfg.panels = sbm_panels(gen);
    } else if (type == "hier") {
      cfg.panels = hier_panels(gen);
    } else if (type == "lfr") {
      cfg.panels = lfr_panels(gen);
    } else if (type == "files") {
      cfg.panels = file_panels(gen, base_dir);
    } else {
      throw std::invalid_argument("unknown generator type '" + type + "'");
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  return experiment_config_from_json(load_toml(path), path.parent_path());
}

unsigned resolve_thread_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CLSPARSE_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::size_t n_methods = cfg.methods.size();
  const std::size_t n_budgets = cfg.budget_sweep.size();
  const std::size_t per_instance = n_methods * n_budgets;
  const std::size_t n_jobs = cfg.panels.size() * static_cast<std::size_t>(cfg.repetitions);
  std::vector<std::vector<TrialRecord>> results(n_jobs);

  auto run_job = [&](std::size_t job) {
    const std::size_t panel_idx = job / static_cast<std::size_t>(cfg.repetitions);
    const std::size_t rep = job % static_cast<std::size_t>(cfg.repetitions);
    const Panel& panel = cfg.panels[panel_idx];
    const std::string graph_id = "p" + std::to_string(panel_idx) + "r" + std::to_string(rep);
    const std::uint64_t instance_seed = mix_seed(cfg.base_seed + rep);

    std::vector<TrialRecord> rows;
    rows.reserve(per_instance);
    std::optional<InstanceContext> ctx;
    std::string instance_error;
    try {
      ctx = prepare_instance(cfg, panel, instance_seed);
    } catch (const std::exception& e) {
      instance_error = e.what();
    }
    for (std::size_t mi = 0; mi < n_methods; ++mi) {
      for (std::size_t bi = 0; bi < n_budgets; ++bi) {
        const std::size_t trial_index = job * per_instance + mi * n_budgets + bi;
        const std::uint64_t seed = cfg.base_seed + trial_index;
        TrialRecord rec;
        if (ctx) {
          try {
            rec = run_trial(cfg, *ctx, cfg.methods[mi], cfg.budget_sweep[bi], seed);
          } catch (const std::exception& e) {
            rec.error = e.what();
          }
        } else {
          rec.error = instance_error;
        }
        rec.graph_id = graph_id;
        rec.generator = generator_name(panel.generator);
        rec.param_label = panel.label;
        rec.method = cfg.methods[mi];
        rec.seed = seed;
        rec.budget_fraction = cfg.budget_sweep[bi];
        rec.epsilon = cfg.epsilon;
        rows.push_back(std::move(rec));
      }
    }
    results[job] = std::move(rows);
  };

  const unsigned workers =
      std::min<unsigned>(resolve_thread_count(cfg.threads), static_cast<unsigned>(n_jobs));
  if (workers <= 1) {
    for (std::size_t j = 0; j < n_jobs; ++j) run_job(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t j = next++; j < n_jobs; j = next++) run_job(j);
      });
    }
    for (auto& t : pool) t.join();
  }

  std::vector<TrialRecord> out;
  out.reserve(n_jobs * per_instance);
  for (auto& rows : results) {
    for (auto& r : rows) out.push_back(std::move(r));
  }
  return out;
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
  struct Acc {
    SummaryRow row;
    std::vector<double> sin, frob, kept, ari, cert;
  };
  std::vector<Acc> groups;
  std::map<std::tuple<std::string, int, double>, std::size_t> index;
  for (const auto& r : records) {
    auto key = std::make_tuple(r.param_label, static_cast<int>(r.method), r.budget_fraction);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, groups.size()).first;
      Acc a;
      a.row.param_label = r.param_label;
      a.row.method = r.method;
      a.row.budget_fraction = r.budget_fraction;
      groups.push_back(std::move(a));
    }
    Acc& a = groups[it->second];
    if (!r.error.empty()) {
      ++a.row.errors;
      continue;
    }
    a.sin.push_back(r.sin_theta_max);
    a.frob.push_back(r.frob_misalignment);
    a.kept.push_back(r.num_edges > 0 ? static_cast<double>(r.kept_edges) /
                                           static_cast<double>(r.num_edges)
                                     : 0.0);
    a.ari.push_back(r.ari);
    a.cert.push_back(r.cert_pass_fraction);
  }

  auto mean = [](const std::vector<double>& v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  auto sd = [&](const std::vector<double>& v) {
    if (v.size() < 2) return v.empty() ? std::numeric_limits<double>::quiet_NaN() : 0.0;
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
  };

  std::vector<SummaryRow> rows;
  for (auto& a : groups) {
    SummaryRow r = a.row;
    r.count = static_cast<Index>(a.sin.size());
    r.sin_theta_max_mean = mean(a.sin);
    r.sin_theta_max_sd = sd(a.sin);
    r.frob_misalignment_mean = mean(a.frob);
    r.frob_misalignment_sd = sd(a.frob);
    r.kept_fraction_mean = mean(a.kept);
    r.kept_fraction_sd = sd(a.kept);
    r.ari_mean = mean(a.ari);
    r.ari_sd = sd(a.ari);
    r.cert_pass_fraction_mean = mean(a.cert);
    rows.push_back(r);
  }
  return rows;
}

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "# schema=" << kCsvSchemaVersion << '\n';
  out << "graph_id,generator,param_label,method,requested_q,kept_edges,seed,sin_theta_max,"
         "frob_misalignment,upsilon,kappa,rho,lambda_k1,gap,bound_uniform,bound_reff,"
         "cert_pass_fraction,runtime_ms,budget_fraction,epsilon,k,num_edges,"
         "bound_uniform_alt,ari,error\n";
  for (const auto& r : records) {
    const bool ok = r.error.empty();
    auto num = [&](double x) { return ok ? csv_number(x) : std::string("NA"); };
    out << sanitize(r.graph_id) << ',' << r.generator << ',' << sanitize(r.param_label) << ','
        << to_string(r.method) << ',' << (ok ? std::to_string(r.requested_q) : "NA") << ','
        << (ok ? std::to_string(r.kept_edges) : "NA") << ',' << r.seed << ','
        << num(r.sin_theta_max) << ',' << num(r.frob_misalignment) << ',' << num(r.upsilon)
        << ',' << num(r.kappa) << ',' << num(r.rho) << ',' << num(r.lambda_k1) << ','
        << num(r.gap) << ',' << num(r.bound_uniform) << ',' << num(r.bound_reff) << ','
        << num(r.cert_pass_fraction) << ','
        << (r.runtime_ms ? csv_number(*r.runtime_ms) : std::string("NA")) << ','
        << csv_number(r.budget_fraction) << ',' << csv_number(r.epsilon) << ','
        << (ok ? std::to_string(r.k) : "NA") << ',' << (ok ? std::to_string(r.num_edges) : "NA")
        << ',' << num(r.bound_uniform_alt) << ',' << num(r.ari) << ',' << sanitize(r.error)
        << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "# schema=" << kCsvSchemaVersion << '\n';
  out << "param_label,method,budget_fraction,count,errors,sin_theta_max_mean,sin_theta_max_sd,"
         "frob_misalignment_mean,frob_misalignment_sd,kept_fraction_mean,kept_fraction_sd,"
         "ari_mean,ari_sd,cert_pass_fraction_mean\n";
  for (const auto& r : rows) {
    out << sanitize(r.param_label) << ',' << to_string(r.method) << ','
        << csv_number(r.budget_fraction) << ',' << r.count << ',' << r.errors << ','
        << csv_number(r.sin_theta_max_mean) << ',' << csv_number(r.sin_theta_max_sd) << ','
        << csv_number(r.frob_misalignment_mean) << ',' << csv_number(r.frob_misalignment_sd)
        << ',' << csv_number(r.kept_fraction_mean) << ',' << csv_number(r.kept_fraction_sd)
        << ',' << csv_number(r.ari_mean) << ',' << csv_number(r.ari_sd) << ','
        << csv_number(r.cert_pass_fraction_mean) << '\n';
  }
}

void run_experiment_to_files(const ExperimentConfig& cfg) {
  const auto records = run_experiment(cfg);
  if (cfg.output.has_parent_path()) std::filesystem::create_directories(cfg.output.parent_path());
  {
    std::ofstream out(cfg.trials_path(), std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + cfg.trials_path().string());
    write_trials_csv(out, records);
  }
  std::ofstream out(cfg.summary_path(), std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + cfg.summary_path().string());
  write_summary_csv(out, summarize(records));
}

}  // namespace clsparse
