#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xlmap/harness.hpp"

namespace {

using namespace xlmap;

InitMode parse_init(const std::string& name) {
  if (name == "unsup") return InitMode::unsupervised;
  if (name == "rand") return InitMode::random_complete;
  if (name == "rand-cutoff") return InitMode::random_cutoff;
  return init_mode_from_string(name);  // also accept the long names
}

// Config flags shared by map/ablation/grid. Precedence: defaults, then
// --config file, then explicit flags.
struct ConfigFlags {
  std::optional<std::string> config_path;
  std::optional<std::string> init;
  std::optional<Index> vocab_cutoff, csls_k, window, max_iterations, seed_vocab,
      max_vocab;
  std::optional<double> p0, p_factor, epsilon;
  std::optional<bool> use_csls, bidirectional, stochastic, reweight;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file (flat keys)");
    cmd->add_option("--init", init,
                    "Initial dictionary: unsup|rand|rand-cutoff");
    cmd->add_option("--vocab-cutoff", vocab_cutoff,
                    "Words per side used during self-learning");
    cmd->add_option("--csls-k", csls_k, "CSLS neighbourhood size");
    cmd->add_flag("--csls,!--no-csls", use_csls,
                  "CSLS retrieval (default) vs nearest neighbour");
    cmd->add_flag("--bidirectional,!--no-bidirectional", bidirectional,
                  "Induce the dictionary in both directions");
    cmd->add_flag("--stochastic,!--no-stochastic", stochastic,
                  "Stochastic dictionary induction");
    cmd->add_option("--p0", p0, "Initial keep probability");
    cmd->add_option("--p-factor", p_factor, "Keep-probability growth factor");
    cmd->add_option("--epsilon", epsilon, "Convergence improvement threshold");
    cmd->add_option("--window", window, "Stall window in iterations");
    cmd->add_option("--max-iterations", max_iterations,
                    "Safety bound on self-learning iterations");
    cmd->add_flag("--reweight,!--no-reweight", reweight,
                  "Apply the final symmetric re-weighting");
    cmd->add_option("--seed-vocab", seed_vocab,
                    "Words per side for the unsupervised seed");
    cmd->add_option("--max-vocab", max_vocab,
                    "Cap on words loaded per embedding file (0 = all)");
  }

  PipelineConfig build() const {
    PipelineConfig cfg =
        config_path ? load_config_file(*config_path) : PipelineConfig{};
    if (init) cfg.init = parse_init(*init);
    if (vocab_cutoff) cfg.learn.vocab_cutoff = *vocab_cutoff;
    if (csls_k) cfg.learn.csls_k = *csls_k;
    if (use_csls) cfg.learn.use_csls = *use_csls;
    if (bidirectional) cfg.learn.bidirectional = *bidirectional;
    if (stochastic) cfg.learn.stochastic = *stochastic;
    if (p0) cfg.learn.p0 = *p0;
    if (p_factor) cfg.learn.p_factor = *p_factor;
    if (epsilon) cfg.learn.epsilon = *epsilon;
    if (window) cfg.learn.window = *window;
    if (max_iterations) cfg.learn.max_iterations = *max_iterations;
    if (reweight) cfg.reweight = *reweight;
    if (seed_vocab) cfg.seed_vocab = *seed_vocab;
    if (max_vocab) cfg.max_vocab = *max_vocab;
    return cfg;
  }
};

struct IoFlags {
  std::string src, trg, gold;

  void attach(CLI::App* cmd) {
    cmd->add_option("--src", src, "Source embeddings (word2vec text)")
        ->required();
    cmd->add_option("--trg", trg, "Target embeddings (word2vec text)")
        ->required();
    cmd->add_option("--gold", gold, "Gold dictionary (src trg per line)")
        ->required();
  }
};

struct SuiteFlags {
  int runs = 10;
  std::uint64_t base_seed = 0;
  int workers = 0;
  int threads = 0;
  Index block_rows = 1024;
  bool omit_timing = false;
  std::string out_log;

  void attach(CLI::App* cmd) {
    cmd->add_option("--runs", runs, "Runs per experiment");
    cmd->add_option("--base-seed", base_seed,
                    "Seeds are base-seed .. base-seed+runs-1");
    cmd->add_option("--workers", workers,
                    "Parallel runs (0 = from thread budget)");
    cmd->add_option("--threads", threads, "Threads per run (0 = auto)");
    cmd->add_option("--block-rows", block_rows,
                    "Row block size for similarity sweeps");
    cmd->add_flag("--omit-timing", omit_timing,
                  "Drop seconds/timestamp from log records");
    cmd->add_option("--out", out_log, "JSONL run log path");
  }

  RunOptions options() const {
    RunOptions opts;
    opts.workers = workers;
    opts.threads_per_run = threads;
    opts.block_rows = block_rows;
    opts.log_timing = !omit_timing;
    opts.log_path = out_log;
    return opts;
  }
};

void run_suite(const std::vector<ExperimentSpec>& suite, const IoFlags& io,
               const PipelineConfig& base, const SuiteFlags& sf) {
  const std::optional<Index> cap =
      base.max_vocab > 0 ? std::optional<Index>(base.max_vocab) : std::nullopt;
  const EmbeddingSet src = load_embeddings(io.src, cap);
  const EmbeddingSet trg = load_embeddings(io.trg, cap);
  const GoldDictionary gold = load_gold(io.gold);
  for (const std::string& w : src.warnings) std::cerr << io.src << ": " << w << '\n';
  for (const std::string& w : trg.warnings) std::cerr << io.trg << ": " << w << '\n';

  std::vector<RunRecord> all;
  all.reserve(suite.size() * static_cast<std::size_t>(sf.runs));
  for (std::size_t e = 0; e < suite.size(); ++e) {
    std::cerr << "[" << (e + 1) << "/" << suite.size() << "] "
              << suite[e].name << std::endl;
    std::vector<RunRecord> recs =
        run_experiment(suite[e].name, src, trg, gold, suite[e].config, sf.runs,
                       sf.base_seed, sf.options());
    all.insert(all.end(), recs.begin(), recs.end());
  }
  std::cout << render_report(aggregate(all), ReportFormat::markdown);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "xlmap: unsupervised cross-lingual word embedding mapping.\n"
      "XLMAP_THREADS sets the default thread count."};
  app.require_subcommand(1);

  // map
  auto* map_cmd = app.add_subcommand("map", "Run the pipeline once");
  IoFlags map_io;
  ConfigFlags map_cf;
  std::uint64_t map_seed = 0;
  int map_threads = 0;
  Index map_block_rows = 1024;
  map_io.attach(map_cmd);
  map_cf.attach(map_cmd);
  map_cmd->add_option("--seed", map_seed, "RNG seed for this run");
  map_cmd->add_option("--threads", map_threads, "Threads (0 = auto)");
  map_cmd->add_option("--block-rows", map_block_rows,
                      "Row block size for similarity sweeps");

  // ablation
  auto* abl_cmd =
      app.add_subcommand("ablation", "Full system plus one-change ablations");
  IoFlags abl_io;
  ConfigFlags abl_cf;
  SuiteFlags abl_sf;
  abl_io.attach(abl_cmd);
  abl_cf.attach(abl_cmd);
  abl_sf.attach(abl_cmd);

  // grid
  auto* grid_cmd = app.add_subcommand("grid", "Hyperparameter grid");
  IoFlags grid_io;
  ConfigFlags grid_cf;
  SuiteFlags grid_sf;
  std::string grid_kind;
  grid_io.attach(grid_cmd);
  grid_cf.attach(grid_cmd);
  grid_sf.attach(grid_cmd);
  grid_cmd->add_option("--kind", grid_kind, "csls|cutoff|stochastic")
      ->required();

  // report
  auto* rep_cmd = app.add_subcommand("report", "Aggregate a JSONL run log");
  std::string rep_log, rep_format = "md", rep_out;
  rep_cmd->add_option("--log", rep_log, "JSONL run log")->required();
  rep_cmd->add_option("--format", rep_format, "csv|md");
  rep_cmd->add_option("--out", rep_out, "Output file (default stdout)");

  // synth
  auto* syn_cmd =
      app.add_subcommand("synth", "Generate a synthetic isometric fixture");
  Index syn_vocab = 2000, syn_dim = 50;
  std::uint64_t syn_seed = 0;
  double syn_noise = 0.0;
  std::string syn_src, syn_trg, syn_gold;
  syn_cmd->add_option("--vocab", syn_vocab, "Vocabulary size per side");
  syn_cmd->add_option("--dim", syn_dim, "Embedding dimension");
  syn_cmd->add_option("--seed", syn_seed, "RNG seed");
  syn_cmd->add_option("--noise", syn_noise, "Gaussian noise sigma");
  syn_cmd->add_option("--out-src", syn_src, "Source embeddings path")
      ->required();
  syn_cmd->add_option("--out-trg", syn_trg, "Target embeddings path")
      ->required();
  syn_cmd->add_option("--out-gold", syn_gold, "Gold dictionary path")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*map_cmd) {
      const PipelineConfig cfg = map_cf.build();
      const std::optional<Index> cap =
          cfg.max_vocab > 0 ? std::optional<Index>(cfg.max_vocab) : std::nullopt;
      const EmbeddingSet src = load_embeddings(map_io.src, cap);
      const EmbeddingSet trg = load_embeddings(map_io.trg, cap);
      const GoldDictionary gold = load_gold(map_io.gold);
      for (const std::string& w : src.warnings)
        std::cerr << map_io.src << ": " << w << '\n';
      for (const std::string& w : trg.warnings)
        std::cerr << map_io.trg << ": " << w << '\n';
      const ExecPolicy exec{map_threads, map_block_rows};
      const PipelineResult res =
          run_pipeline(src, trg, gold, cfg, map_seed, exec);
      std::cout << "accuracy " << res.accuracy << '\n'
                << "coverage " << res.coverage << '\n'
                << "success " << (is_success(res.accuracy) ? "true" : "false")
                << '\n'
                << "iterations " << res.iterations << '\n'
                << "status "
                << (res.status == LearnStatus::converged ? "converged"
                                                         : "max_iterations_hit")
                << '\n'
                << "objective " << res.final_objective << '\n'
                << "dict_size " << res.dict_size << '\n';
    } else if (*abl_cmd) {
      const PipelineConfig base = abl_cf.build();
      run_suite(ablation_suite(base), abl_io, base, abl_sf);
    } else if (*grid_cmd) {
      const PipelineConfig base = grid_cf.build();
      run_suite(grid_suite(grid_kind_from_string(grid_kind), base), grid_io,
                base, grid_sf);
    } else if (*rep_cmd) {
      const RunLog log = load_run_log(rep_log);
      for (const std::string& w : log.warnings) std::cerr << w << '\n';
      const ReportFormat fmt = [&] {
        if (rep_format == "csv") return ReportFormat::csv;
        if (rep_format == "md" || rep_format == "markdown")
          return ReportFormat::markdown;
        throw std::invalid_argument("unknown report format: " + rep_format);
      }();
      const AggregateReport report = aggregate(log.records);
      if (rep_out.empty())
        std::cout << render_report(report, fmt);
      else
        emit_report(report, rep_out, fmt);
    } else if (*syn_cmd) {
      const SyntheticPair pair =
          generate_isometric_pair(syn_vocab, syn_dim, syn_seed, syn_noise);
      save_embeddings(pair.source, syn_src);
      save_embeddings(pair.target, syn_trg);
      save_gold_file(pair, syn_gold);
      std::cout << "wrote " << syn_src << ", " << syn_trg << ", " << syn_gold
                << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
