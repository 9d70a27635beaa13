#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "xlmap/pipeline.hpp"

namespace xlmap {

struct ExperimentSpec {
  std::string name;
  PipelineConfig config;
};

// The ablation matrix: the full system plus seven variants, each flipping
// exactly one field of the base config (both random-init flavours count).
std::vector<ExperimentSpec> ablation_suite(const PipelineConfig& base = {});

enum class GridKind { csls_k, cutoff_n, stochastic };

GridKind grid_kind_from_string(const std::string& name);

// csls_k: k = 1..20. cutoff_n: 10000..30000 step 1000. stochastic: 5 values
// of p0 in [0.05, 0.3] crossed with 4 values of p_factor in [1.5, 3].
std::vector<ExperimentSpec> grid_suite(GridKind kind,
                                       const PipelineConfig& base = {});

struct RunRecord {
  std::string experiment;
  PipelineConfig config;     // effective config; learn.rng_seed == seed
  std::uint64_t seed = 0;
  double accuracy = 0;
  double coverage = 0;
  bool success = false;
  Index iterations = 0;
  double seconds = 0;
  std::string timestamp;     // ISO 8601 UTC; empty when timing is omitted
  std::string error;         // failure diagnostic; empty for clean runs
};

// include_timing=false drops the seconds and timestamp fields so logs from
// different invocations can be compared byte for byte.
nlohmann::ordered_json record_to_json(const RunRecord& rec,
                                      bool include_timing = true);
RunRecord record_from_json(const nlohmann::json& j);

struct RunLog {
  std::vector<RunRecord> records;
  std::vector<std::string> warnings;  // e.g. truncated trailing line skipped
};

RunLog load_run_log(const std::string& path);

struct RunOptions {
  int workers = 0;          // parallel runs; 0 = min(n_runs, default threads)
  int threads_per_run = 0;  // 0 = default threads split across workers
  Index block_rows = 1024;
  bool log_timing = true;
  std::string log_path;     // empty = no log file
};

// Runs the pipeline n_runs times with seeds base_seed..base_seed+n_runs-1.
// Records are returned (and appended to the log) in seed order regardless of
// completion order; a run that throws becomes a success=false record with
// accuracy 0 instead of aborting the batch.
std::vector<RunRecord> run_experiment(const std::string& name,
                                      const EmbeddingSet& src,
                                      const EmbeddingSet& trg,
                                      const GoldDictionary& gold,
                                      const PipelineConfig& cfg, int n_runs,
                                      std::uint64_t base_seed,
                                      const RunOptions& opts = {});

// Same, loading the inputs from word2vec-text / gold files first.
std::vector<RunRecord> run_experiment_files(const std::string& name,
                                            const std::string& src_path,
                                            const std::string& trg_path,
                                            const std::string& gold_path,
                                            const PipelineConfig& cfg,
                                            int n_runs,
                                            std::uint64_t base_seed,
                                            const RunOptions& opts = {});

struct ExperimentAggregate {
  std::string experiment;
  double best = 0;          // max accuracy
  double mean = 0;          // failures included at accuracy 0
  std::optional<double> ci95;  // Student-t half-width; absent for n=1
  double success_rate = 0;
  double mean_minutes = 0;
  int n_runs = 0;
};

struct AggregateReport {
  std::vector<ExperimentAggregate> rows;  // first-appearance order
};

AggregateReport aggregate(const std::vector<RunRecord>& records);

enum class ReportFormat { csv, markdown };

// Columns: experiment, best, avg, ci95, s, t, n_runs. Accuracy columns are
// percentages; s is a fraction; t is minutes.
std::string render_report(const AggregateReport& report, ReportFormat fmt);
void emit_report(const AggregateReport& report, const std::string& path,
                 ReportFormat fmt);

// Flat key/value JSON config document. Unknown keys throw; absent keys keep
// their defaults.
void apply_config_json(PipelineConfig& cfg, const nlohmann::json& doc);
PipelineConfig load_config_file(const std::string& path);
nlohmann::ordered_json config_to_json(const PipelineConfig& cfg);

}  // namespace xlmap
