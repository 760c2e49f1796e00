#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "clsparse/analyze.hpp"
#include "clsparse/edge_io.hpp"
#include "clsparse/experiment.hpp"
#include "clsparse/toml_lite.hpp"
#include "clsparse/verify.hpp"
#include "test_graphs.hpp"

using namespace clsparse;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("clsparse_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

ExperimentConfig small_config() {
  return experiment_config_from_json(parse_toml(R"(
name = "small"
repetitions = 3
budget_sweep = [0.2, 0.6]
certificate_trials = 20
threads = 1

[generator]
type = "sbm"
sizes = [30, 30, 30]
p_intra = 0.5
p_inter = [0.01, 0.05]
)"));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream s(line);
  std::string tok;
  while (std::getline(s, tok, ',')) out.push_back(tok);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST(TomlTest, ParsesSubset) {
  const auto doc = parse_toml(R"(# comment
name = "x\ty" # trailing
count = 1_000
ratio = -2.5e-1
big = inf
flag = true
list = [1, 2,
  3, # inline comment
]
[outer.inner]
key = "v"
)");
  EXPECT_EQ(doc["name"], "x\ty");
  EXPECT_EQ(doc["count"], 1000);
  EXPECT_DOUBLE_EQ(doc["ratio"].get<double>(), -0.25);
  EXPECT_TRUE(std::isinf(doc["big"].get<double>()));
  EXPECT_EQ(doc["flag"], true);
  EXPECT_EQ(doc["list"].size(), 3u);
  EXPECT_EQ(doc["outer"]["inner"]["key"], "v");
}

TEST(TomlTest, ErrorsCarryLineNumbers) {
  try {
    parse_toml("a = 1\nb = \n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_toml("a = 1\na = 2\n"), ParseError);
  EXPECT_THROW(parse_toml("a.b = 1\n"), ParseError);
  EXPECT_THROW(parse_toml("a = {b = 1}\n"), ParseError);
  EXPECT_THROW(parse_toml("[[t]]\n"), ParseError);
  EXPECT_THROW(parse_toml("a = \"open\n"), ParseError);
}

TEST(ConfigTest, DefaultsAndPanels) {
  const ExperimentConfig c = experiment_config_from_json(parse_toml("[generator]\ntype = \"sbm\"\n"));
  EXPECT_EQ(c.repetitions, 20);
  EXPECT_EQ(c.epsilon, 0.5);
  EXPECT_EQ(c.budget_sweep, (std::vector<double>{0.05, 0.1, 0.2, 0.4, 0.8}));
  EXPECT_EQ(c.methods.size(), 2u);
  EXPECT_EQ(c.structure_laplacian, LaplacianVariant::Normalized);
  EXPECT_EQ(c.resistance_laplacian, LaplacianVariant::Unnormalized);
  ASSERT_EQ(c.panels.size(), 5u);
  EXPECT_EQ(c.panels[0].label, "gamma=100");
  EXPECT_EQ(c.panels[4].label, "gamma=5");

  const ExperimentConfig h = experiment_config_from_json(
      parse_toml("[generator]\ntype = \"hier\"\npreset = [\"strong\", \"weak\"]\n"));
  ASSERT_EQ(h.panels.size(), 2u);
  EXPECT_EQ(std::get<HierSbmConfig>(h.panels[1].generator).p_inter_top, 0.025);

  const ExperimentConfig l = experiment_config_from_json(
      parse_toml("[generator]\ntype = \"lfr\"\nmu = [0.1, 0.3]\n"));
  ASSERT_EQ(l.panels.size(), 2u);
  EXPECT_EQ(l.panels[1].label, "mu=0.3");
}

TEST(ConfigTest, Rejections) {
  auto load = [](const std::string& text) {
    return experiment_config_from_json(parse_toml(text));
  };
  EXPECT_THROW(load("typo = 1\n[generator]\ntype = \"sbm\"\n"), std::invalid_argument);
  EXPECT_THROW(load("repetitions = 0\n[generator]\ntype = \"sbm\"\n"), std::invalid_argument);
  EXPECT_THROW(load("budget_sweep = [0.5, 0.2]\n[generator]\ntype = \"sbm\"\n"), std::invalid_argument);
  EXPECT_THROW(load("budget_sweep = [0.0, 0.2]\n[generator]\ntype = \"sbm\"\n"), std::invalid_argument);
  EXPECT_THROW(load("epsilon = 1.0\n[generator]\ntype = \"sbm\"\n"), std::invalid_argument);
  EXPECT_THROW(load("[generator]\ntype = \"er\"\n"), std::invalid_argument);
  EXPECT_THROW(load("name = \"x\"\n"), std::invalid_argument);
  EXPECT_THROW(load("[generator]\ntype = \"sbm\"\npreset = \"strong\"\np_inter = 0.1\n"),
               std::invalid_argument);
  EXPECT_THROW(load("methods = [\"both\"]\n[generator]\ntype = \"sbm\"\n"), std::invalid_argument);
}

TEST(ExperimentTest, RowsSummaryAndRanges) {
  const ExperimentConfig cfg = small_config();
  const auto rows = run_experiment(cfg);
  ASSERT_EQ(rows.size(), 2u * 3u * 2u * 2u);
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const auto& r = rows[t];
    ASSERT_TRUE(r.error.empty()) << r.error;
    EXPECT_EQ(r.seed, cfg.base_seed + t);
    EXPECT_GE(r.sin_theta_max, 0.0);
    EXPECT_LE(r.sin_theta_max, 1.0);
    EXPECT_GE(r.frob_misalignment, -1e-12);
    EXPECT_LE(r.frob_misalignment, static_cast<double>(r.k) + 1e-12);
    EXPECT_EQ(r.requested_q,
              static_cast<std::int64_t>(std::ceil(r.budget_fraction * static_cast<double>(r.num_edges))));
    EXPECT_FALSE(r.runtime_ms.has_value());
  }
  EXPECT_EQ(rows[0].graph_id, "p0r0");
  EXPECT_EQ(rows[0].param_label, "gamma=50");
  EXPECT_EQ(rows[0].method, SamplingMethod::Uniform);
  EXPECT_EQ(rows[2].method, SamplingMethod::EffectiveResistance);

  const auto summary = summarize(rows);
  ASSERT_EQ(summary.size(), 2u * 2u * 2u);
  for (const auto& s : summary) {
    std::vector<double> vals;
    for (const auto& r : rows) {
      if (r.param_label == s.param_label && r.method == s.method &&
          r.budget_fraction == s.budget_fraction) {
        vals.push_back(r.sin_theta_max);
      }
    }
    ASSERT_EQ(static_cast<Index>(vals.size()), s.count);
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= static_cast<double>(vals.size());
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / static_cast<double>(vals.size() - 1));
    EXPECT_NEAR(s.sin_theta_max_mean, mean, 1e-12);
    EXPECT_NEAR(s.sin_theta_max_sd, sd, 1e-12);
  }
  // Realized kept fraction grows with the budget.
  for (std::size_t i = 0; i + 1 < summary.size(); i += 2) {
    EXPECT_LT(summary[i].kept_fraction_mean, summary[i + 1].kept_fraction_mean);
  }
}

TEST(ExperimentTest, ThreadCountDoesNotChangeOutput) {
  ExperimentConfig one = small_config();
  ExperimentConfig many = one;
  many.threads = 3;
  std::ostringstream a, b;
  write_trials_csv(a, run_experiment(one));
  write_trials_csv(b, run_experiment(many));
  EXPECT_EQ(a.str(), b.str());
}

TEST(ExperimentTest, TrialErrorsAreRecorded) {
  const fs::path dir = scratch_dir("errors");
  {
    std::ofstream e(dir / "g.edges");
    e << "0 1\n1 2\n3 4\n";
    std::ofstream p(dir / "g.part");
    p << "0\n0\n0\n1\n1\n";
  }
  ExperimentConfig cfg = experiment_config_from_json(parse_toml(R"(
repetitions = 2
budget_sweep = [1.0]
[generator]
type = "files"
edges = "g.edges"
partition = "g.part"
)"), dir);
  const auto rows = run_experiment(cfg);
  ASSERT_EQ(rows.size(), 4u);
  // The graph is disconnected: uniform trials run, resistance trials fail.
  EXPECT_TRUE(rows[0].error.empty()) << rows[0].error;
  EXPECT_FALSE(rows[1].error.empty());
  EXPECT_EQ(rows[0].param_label, "g");
  std::ostringstream out;
  write_trials_csv(out, rows);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# schema=1");
  std::getline(in, line);
  const auto header = split(line);
  std::getline(in, line);
  std::getline(in, line);
  const auto failed = split(line);
  ASSERT_EQ(failed.size(), header.size());
  EXPECT_EQ(failed[7], "NA");
  EXPECT_FALSE(failed.back().empty());
}

TEST(ExperimentTest, MissingFilesBecomeRowErrors) {
  ExperimentConfig cfg = experiment_config_from_json(parse_toml(R"(
repetitions = 1
budget_sweep = [0.5]
[generator]
type = "files"
edges = "/nonexistent/a.edges"
partition = "/nonexistent/a.part"
)"));
  const auto rows = run_experiment(cfg);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) EXPECT_FALSE(r.error.empty());
  const auto s = summarize(rows);
  EXPECT_EQ(s[0].errors, 1);
  EXPECT_EQ(s[0].count, 0);
}

TEST(CsvSchemaTest, Headers) {
  std::ostringstream t, s;
  write_trials_csv(t, {});
  write_summary_csv(s, {});
  EXPECT_EQ(t.str(),
            "# schema=1\n"
            "graph_id,generator,param_label,method,requested_q,kept_edges,seed,sin_theta_max,"
            "frob_misalignment,upsilon,kappa,rho,lambda_k1,gap,bound_uniform,bound_reff,"
            "cert_pass_fraction,runtime_ms,budget_fraction,epsilon,k,num_edges,"
            "bound_uniform_alt,ari,error\n");
  EXPECT_EQ(s.str(),
            "# schema=1\n"
            "param_label,method,budget_fraction,count,errors,sin_theta_max_mean,sin_theta_max_sd,"
            "frob_misalignment_mean,frob_misalignment_sd,kept_fraction_mean,kept_fraction_sd,"
            "ari_mean,ari_sd,cert_pass_fraction_mean\n");
}

TEST(ExperimentTest, RuntimeColumnWhenRequested) {
  ExperimentConfig cfg = small_config();
  cfg.repetitions = 1;
  cfg.panels.resize(1);
  cfg.record_runtime = true;
  for (const auto& r : run_experiment(cfg)) {
    ASSERT_TRUE(r.runtime_ms.has_value());
    EXPECT_GT(*r.runtime_ms, 0.0);
  }
}

TEST(ThreadsTest, Resolution) {
  EXPECT_EQ(resolve_thread_count(5), 5u);
  setenv("CLSPARSE_THREADS", "2", 1);
  EXPECT_EQ(resolve_thread_count(0), 2u);
  unsetenv("CLSPARSE_THREADS");
  EXPECT_GE(resolve_thread_count(0), 1u);
}

TEST(AnalyzeTest, DisjointTriangles) {
  const AnalysisReport r =
      analyze(testing_graphs::two_triangles(), Partition({0, 0, 0, 1, 1, 1}), 2);
  EXPECT_FALSE(r.stats.upsilon_finite());
  EXPECT_LE(r.alignment, 1e-10);
  EXPECT_FALSE(r.effres.has_value());
  EXPECT_FALSE(r.resistance_notice.empty());
  EXPECT_THROW(analyze(testing_graphs::two_triangles(), Partition({0, 1, 2, 3, 4, 5}), 6),
               std::invalid_argument);
  EXPECT_THROW(analyze(testing_graphs::two_triangles(), Partition({0, 0, 0, 1, 1, 1}), 3),
               std::invalid_argument);
}

TEST(AnalyzeTest, ConnectedGraphRunsResistanceSection) {
  const AnalysisReport r =
      analyze(testing_graphs::bridged_triangles(0.1), Partition({0, 0, 0, 1, 1, 1}), 2);
  ASSERT_TRUE(r.effres.has_value());
  EXPECT_TRUE(r.effres->all_upper_pass());
  std::ostringstream out;
  print_analysis(out, r);
  EXPECT_NE(out.str().find("effres_upper_pass_rate 1\n"), std::string::npos);
}

TEST(VerifyTest, SuitesPassAndNegativeControlFails) {
  VerifyOptions opts;
  opts.graphs = 10;
  opts.monte_carlo_seeds = 10000;
  for (const auto& name : verify_suite_names()) {
    const SuiteReport r = run_verify_suite(name, opts);
    EXPECT_TRUE(r.passed()) << name;
  }
  opts.inject_bug = true;
  EXPECT_FALSE(run_verify_suite("foster", opts).passed());
  EXPECT_FALSE(run_verify_suite("trace", opts).passed());
  EXPECT_FALSE(run_verify_suite("unbiased", opts).passed());
  EXPECT_THROW(run_verify_suite("nope", opts), std::invalid_argument);
}

TEST(CliTest, ExperimentWritesCsvs) {
  const fs::path dir = scratch_dir("cli");
  {
    std::ofstream cfg(dir / "tiny.toml");
    cfg << "repetitions = 2\nbudget_sweep = [0.5]\ncertificate_trials = 10\noutput = \"out/tiny\"\n"
           "[generator]\ntype = \"sbm\"\nsizes = [20, 20]\npreset = \"strong\"\n";
  }
  const std::string cmd = std::string(CLSPARSE_CLI) + " experiment " + (dir / "tiny.toml").string() +
                          " > " + (dir / "log.txt").string();
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  const std::string trials = slurp(dir / "out" / "tiny.trials.csv");
  EXPECT_EQ(std::count(trials.begin(), trials.end(), '\n'), 2 + 4);
  EXPECT_TRUE(fs::exists(dir / "out" / "tiny.summary.csv"));
}

TEST(CliTest, GenerateAndSparsify) {
  const fs::path dir = scratch_dir("cli_gen");
  const std::string cli = CLSPARSE_CLI;
  const std::string prefix = (dir / "h").string();
  ASSERT_EQ(std::system((cli + " generate hier --preset strong --seed 1 -o " + prefix + " > /dev/null").c_str()), 0);
  const Graph g = load_edge_list(prefix + ".edges");
  EXPECT_EQ(g.num_vertices(), 800);
  EXPECT_EQ(load_partition(prefix + ".sub.part").num_clusters(), 16);
  const std::string sp = cli + " sparsify " + prefix + ".edges --method reff --fraction 0.3 -k 4 -o " +
                         (dir / "s.edges").string() + " > /dev/null";
  ASSERT_EQ(std::system(sp.c_str()), 0);
  const Graph s = load_edge_list(dir / "s.edges");
  EXPECT_LT(s.num_edges(), g.num_edges());
  EXPECT_NE(std::system((cli + " sparsify " + prefix + ".edges -o x 2> /dev/null").c_str()), 0);
}
