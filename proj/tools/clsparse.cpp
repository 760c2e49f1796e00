#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "clsparse/analyze.hpp"
#include "clsparse/edge_io.hpp"
#include "clsparse/experiment.hpp"
#include "clsparse/generators.hpp"
#include "clsparse/resistance.hpp"
#include "clsparse/sparsifier.hpp"
#include "clsparse/spectral.hpp"
#include "clsparse/verify.hpp"

using namespace clsparse;

namespace {

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

std::string show(double x) {
  if (std::isinf(x)) return "inf";
  if (std::isnan(x)) return "undefined";
  return format_double(x);
}

void write_instance(const GeneratedGraph& inst, const std::string& prefix, bool hierarchical) {
  save_edge_list(prefix + ".edges", inst.graph);
  save_partition(prefix + ".part", inst.partition);
  if (hierarchical) save_partition(prefix + ".sub.part", inst.sub_partition);
  const Index k = inst.partition.num_clusters();
  std::cout << "wrote " << prefix << ".edges, " << prefix << ".part";
  if (hierarchical) std::cout << ", " << prefix << ".sub.part";
  std::cout << '\n';
  std::cout << "n " << inst.graph.num_vertices() << "\nm " << inst.graph.num_edges() << "\nk " << k
            << '\n';
  if (k >= inst.graph.num_vertices()) return;
  const Spectrum spec = laplacian_spectrum(inst.graph, LaplacianVariant::Normalized,
                                           IsolatedVertexPolicy::UnitDiagonal);
  const StructureStats s = structure_stats(spec, rho_of_partition(inst.graph, inst.partition), k);
  std::cout << "rho " << show(s.rho) << "\nupsilon " << show(s.upsilon) << "\nkappa "
            << show(s.kappa) << '\n';
}

std::vector<Index> parse_sizes(const std::string& text) {
  std::vector<Index> sizes;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t used = 0;
    const long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("bad size '" + tok + "'");
    sizes.push_back(static_cast<Index>(v));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return sizes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure-preserving spectral sparsification of clustered graphs"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write a random graph and its planted partition");
  gen->require_subcommand(1);
  std::string out_prefix;
  std::uint64_t gen_seed = 1;

  auto* sbm = gen->add_subcommand("sbm", "Planted-partition stochastic block model");
  std::string sizes_text = "200,200,200,200";
  SbmConfig sbm_cfg;
  sbm->add_option("--sizes", sizes_text, "Comma-separated cluster sizes")->capture_default_str();
  sbm->add_option("--p-intra", sbm_cfg.p_intra)->required();
  sbm->add_option("--p-inter", sbm_cfg.p_inter)->required();
  sbm->add_option("--seed", gen_seed)->capture_default_str();
  sbm->add_option("-o,--output", out_prefix, "Output prefix")->required();

  auto* hier = gen->add_subcommand("hier", "Hierarchical stochastic block model");
  std::string preset;
  HierSbmConfig hier_cfg;
  hier->add_option("--preset", preset, "strong, moderate or weak");
  hier->add_option("--p-intra-sub", hier_cfg.p_intra_sub);
  hier->add_option("--p-inter-sub", hier_cfg.p_inter_sub);
  hier->add_option("--p-inter-top", hier_cfg.p_inter_top);
  hier->add_option("--n-top", hier_cfg.n_top)->capture_default_str();
  hier->add_option("--n-sub", hier_cfg.n_sub_per_top)->capture_default_str();
  hier->add_option("--nodes-per-sub", hier_cfg.nodes_per_sub)->capture_default_str();
  hier->add_option("--seed", gen_seed)->capture_default_str();
  hier->add_option("-o,--output", out_prefix, "Output prefix")->default_val("hier");

  auto* lfr = gen->add_subcommand("lfr", "LFR-style benchmark graph");
  LfrConfig lfr_cfg;
  lfr->add_option("--n", lfr_cfg.n)->capture_default_str();
  lfr->add_option("--mu", lfr_cfg.mu)->capture_default_str();
  lfr->add_option("--tau1", lfr_cfg.tau1)->capture_default_str();
  lfr->add_option("--tau2", lfr_cfg.tau2)->capture_default_str();
  lfr->add_option("--avg-degree", lfr_cfg.avg_degree)->capture_default_str();
  lfr->add_option("--max-degree", lfr_cfg.max_degree)->capture_default_str();
  lfr->add_option("--min-community", lfr_cfg.min_community)->capture_default_str();
  lfr->add_option("--max-community", lfr_cfg.max_community)->capture_default_str();
  lfr->add_option("--seed", gen_seed)->capture_default_str();
  lfr->add_option("-o,--output", out_prefix, "Output prefix")->required();

  // analyze
  auto* an = app.add_subcommand("analyze", "Clusterability statistics and resistance bound checks");
  std::string graph_path, part_path, effres_csv, relprob_csv, variant_text = "normalized";
  Index an_k = 0;
  an->add_option("graph", graph_path, "Edge-list file")->required();
  an->add_option("partition", part_path, "Partition file")->required();
  an->add_option("-k,--k", an_k, "Cluster count (default: from the partition)");
  an->add_option("--laplacian", variant_text, "normalized or unnormalized")->capture_default_str();
  an->add_option("--effres-csv", effres_csv, "Write per-edge resistance bound checks");
  an->add_option("--relprob-csv", relprob_csv, "Write per-edge probability ratio checks");

  // sparsify
  auto* sp = app.add_subcommand("sparsify", "Sample a reweighted sparsifier");
  std::string sp_graph, sp_out, method_text = "uniform", rank_text = "full", cert_csv, sp_part;
  std::int64_t budget = 0;
  double fraction = 0.0;
  SparsifyConfig sp_cfg;
  Index sp_k = 1;
  Index cert_trials = 200;
  sp->add_option("graph", sp_graph, "Edge-list file")->required();
  sp->add_option("--method", method_text, "uniform or reff")->capture_default_str();
  auto* budget_opt = sp->add_option("--budget", budget, "Sample count q");
  auto* frac_opt = sp->add_option("--fraction", fraction, "Sample count as a fraction of m");
  budget_opt->excludes(frac_opt);
  sp->add_option("--epsilon", sp_cfg.epsilon)->capture_default_str();
  sp->add_option("--seed", sp_cfg.seed)->capture_default_str();
  sp->add_option("--rank-mode", rank_text, "full or nk")->capture_default_str();
  sp->add_option("-k,--k", sp_k, "k for rank-(n-k) resistances and the certificate subspace")
      ->capture_default_str();
  sp->add_option("-o,--output", sp_out, "Output edge list")->required();
  sp->add_option("--certificate-csv", cert_csv, "Write a dominant-subspace certificate");
  sp->add_option("--certificate-trials", cert_trials)->capture_default_str();

  // experiment
  auto* ex = app.add_subcommand("experiment", "Run a configured sweep and write CSVs");
  std::string config_path;
  ex->add_option("config", config_path, "TOML config file")->required()->check(CLI::ExistingFile);

  // verify
  auto* ver = app.add_subcommand("verify", "Invariant suites on random corpora");
  std::vector<std::string> suites;
  VerifyOptions vopts;
  ver->add_option("--suite", suites, "Suites to run (default: all)")
      ->check(CLI::IsMember(verify_suite_names()));
  ver->add_option("--graphs", vopts.graphs, "Corpus size")->capture_default_str();
  ver->add_option("--seed", vopts.seed)->capture_default_str();
  ver->add_option("--mc-seeds", vopts.monte_carlo_seeds, "Monte Carlo repetitions")
      ->capture_default_str();
  ver->add_flag("--inject-bug", vopts.inject_bug, "Corrupt weights (negative control)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      if (sbm->parsed()) {
        sbm_cfg.cluster_sizes = parse_sizes(sizes_text);
        sbm_cfg.seed = gen_seed;
        write_instance(generate_sbm(sbm_cfg), out_prefix, false);
      } else if (hier->parsed()) {
        HierSbmConfig c = hier_cfg;
        if (!preset.empty()) {
          c = HierSbmConfig::preset(preset);
          c.n_top = hier_cfg.n_top;
          c.n_sub_per_top = hier_cfg.n_sub_per_top;
          c.nodes_per_sub = hier_cfg.nodes_per_sub;
        }
        c.seed = gen_seed;
        write_instance(generate_hier_sbm(c), out_prefix, true);
      } else {
        lfr_cfg.seed = gen_seed;
        write_instance(generate_lfr(lfr_cfg), out_prefix, false);
      }
    } else if (an->parsed()) {
      const Graph g = load_edge_list(graph_path);
      const Partition p = load_partition(part_path);
      const LaplacianVariant variant = variant_text == "unnormalized"
                                           ? LaplacianVariant::Unnormalized
                                           : LaplacianVariant::Normalized;
      if (variant_text != "unnormalized" && variant_text != "normalized") {
        throw std::invalid_argument("--laplacian must be normalized or unnormalized");
      }
      const AnalysisReport r = analyze(g, p, an_k > 0 ? an_k : p.num_clusters(), variant);
      print_analysis(std::cout, r);
      if (!effres_csv.empty() && r.effres) {
        auto out = open_csv(effres_csv);
        write_bound_csv(out, r.effres->checks);
      }
      if (!relprob_csv.empty() && r.relative) {
        auto out = open_csv(relprob_csv);
        write_bound_csv(out, r.relative->checks);
      }
    } else if (sp->parsed()) {
      const Graph g = load_edge_list(sp_graph);
      sp_cfg.method = parse_sampling_method(method_text);
      if (budget_opt->count() > 0) {
        sp_cfg.budget = budget;
      } else if (frac_opt->count() > 0) {
        if (!(fraction > 0.0 && fraction <= 1.0)) {
          throw std::invalid_argument("--fraction must lie in (0, 1]");
        }
        sp_cfg.budget = std::max<std::int64_t>(
            1, static_cast<std::int64_t>(std::ceil(fraction * static_cast<double>(g.num_edges()))));
      } else {
        throw std::invalid_argument("one of --budget or --fraction is required");
      }
      sp_cfg.validate();
      SparsifyResult res;
      if (sp_cfg.method == SamplingMethod::Uniform) {
        res = sparsify_uniform(g, sp_cfg);
      } else {
        res = sparsify_reff(g, resistance_profile(g, sp_k), sp_cfg, parse_rank_mode(rank_text));
      }
      save_edge_list(sp_out, res.graph);
      std::cout << "requested_q " << sp_cfg.budget << "\nkept_edges " << res.kept_edges
                << "\ninput_edges " << g.num_edges() << '\n';
      if (!cert_csv.empty()) {
        const Spectrum spec = laplacian_spectrum(g, LaplacianVariant::Unnormalized);
        const auto cert = quadratic_form_certificate(g, res.graph, sp_cfg.epsilon,
                                                     spec.top(sp_k), cert_trials, sp_cfg.seed);
        auto out = open_csv(cert_csv);
        write_certificate_csv(out, cert);
        std::cout << "certificate_pass_fraction " << format_double(cert.pass_fraction) << '\n';
      }
    } else if (ex->parsed()) {
      const ExperimentConfig cfg = load_experiment_config(config_path);
      run_experiment_to_files(cfg);
      std::cout << "wrote " << cfg.trials_path().string() << " and "
                << cfg.summary_path().string() << '\n';
    } else if (ver->parsed()) {
      if (suites.empty()) suites = verify_suite_names();
      bool ok = true;
      for (const auto& name : suites) {
        const SuiteReport r = run_verify_suite(name, vopts);
        print_suite_report(std::cout, r);
        ok = ok && r.passed();
      }
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
