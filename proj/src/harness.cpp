#include "xlmap/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include <boost/math/distributions/students_t.hpp>

namespace xlmap {

namespace {

std::string format_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::vector<ExperimentSpec> ablation_suite(const PipelineConfig& base) {
  std::vector<ExperimentSpec> out;
  out.push_back({"Full System", base});
  PipelineConfig c = base;
  c.init = InitMode::random_complete;
  out.push_back({"- Unsup. Init. (Rand. Compl.)", c});
  c = base;
  c.init = InitMode::random_cutoff;
  out.push_back({"- Unsup. Init. (Rand. Cut.)", c});
  c = base;
  c.learn.stochastic = false;
  out.push_back({"- Stochastic", c});
  c = base;
  c.learn.vocab_cutoff = 100000;
  out.push_back({"- Cutoff (n=100k)", c});
  c = base;
  c.learn.use_csls = false;
  out.push_back({"- CSLS", c});
  c = base;
  c.learn.bidirectional = false;
  out.push_back({"- Bidirectional", c});
  c = base;
  c.reweight = false;
  out.push_back({"- Re-weighting", c});
  return out;
}

GridKind grid_kind_from_string(const std::string& name) {
  if (name == "csls" || name == "csls_k") return GridKind::csls_k;
  if (name == "cutoff" || name == "cutoff_n") return GridKind::cutoff_n;
  if (name == "stochastic") return GridKind::stochastic;
  throw std::invalid_argument("unknown grid kind: " + name);
}

std::vector<ExperimentSpec> grid_suite(GridKind kind,
                                       const PipelineConfig& base) {
  std::vector<ExperimentSpec> out;
  switch (kind) {
    case GridKind::csls_k:
      for (Index k = 1; k <= 20; ++k) {
        PipelineConfig c = base;
        c.learn.csls_k = k;
        out.push_back({"csls_k=" + std::to_string(k), c});
      }
      break;
    case GridKind::cutoff_n:
      for (Index n = 10000; n <= 30000; n += 1000) {
        PipelineConfig c = base;
        c.learn.vocab_cutoff = n;
        out.push_back({"cutoff_n=" + std::to_string(n), c});
      }
      break;
    case GridKind::stochastic:
      for (int i = 0; i < 5; ++i) {
        const double p0 = 0.05 + i * (0.3 - 0.05) / 4.0;
        for (int j = 0; j < 4; ++j) {
          const double pf = 1.5 + j * (3.0 - 1.5) / 3.0;
          PipelineConfig c = base;
          c.learn.p0 = p0;
          c.learn.p_factor = pf;
          out.push_back({"p0=" + format_g(p0) + " p_factor=" + format_g(pf), c});
        }
      }
      break;
  }
  return out;
}

nlohmann::ordered_json config_to_json(const PipelineConfig& cfg) {
  return nlohmann::ordered_json{
      {"init", to_string(cfg.init)},
      {"seed_vocab", cfg.seed_vocab},
      {"vocab_cutoff", cfg.learn.vocab_cutoff},
      {"csls_k", cfg.learn.csls_k},
      {"use_csls", cfg.learn.use_csls},
      {"bidirectional", cfg.learn.bidirectional},
      {"stochastic", cfg.learn.stochastic},
      {"p0", cfg.learn.p0},
      {"p_factor", cfg.learn.p_factor},
      {"epsilon", cfg.learn.epsilon},
      {"window", cfg.learn.window},
      {"max_iterations", cfg.learn.max_iterations},
      {"rng_seed", cfg.learn.rng_seed},
      {"reweight", cfg.reweight},
      {"max_vocab", cfg.max_vocab},
  };
}

void apply_config_json(PipelineConfig& cfg, const nlohmann::json& doc) {
  if (!doc.is_object())
    throw std::invalid_argument("config document must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& key = it.key();
    const auto& v = it.value();
    if (key == "init") cfg.init = init_mode_from_string(v.get<std::string>());
    else if (key == "seed_vocab") cfg.seed_vocab = v.get<Index>();
    else if (key == "vocab_cutoff") cfg.learn.vocab_cutoff = v.get<Index>();
    else if (key == "csls_k") cfg.learn.csls_k = v.get<Index>();
    else if (key == "use_csls") cfg.learn.use_csls = v.get<bool>();
    else if (key == "bidirectional") cfg.learn.bidirectional = v.get<bool>();
    else if (key == "stochastic") cfg.learn.stochastic = v.get<bool>();
    else if (key == "p0") cfg.learn.p0 = v.get<double>();
    else if (key == "p_factor") cfg.learn.p_factor = v.get<double>();
    else if (key == "epsilon") cfg.learn.epsilon = v.get<double>();
    else if (key == "window") cfg.learn.window = v.get<Index>();
    else if (key == "max_iterations") cfg.learn.max_iterations = v.get<Index>();
    else if (key == "rng_seed") cfg.learn.rng_seed = v.get<std::uint64_t>();
    else if (key == "reweight") cfg.reweight = v.get<bool>();
    else if (key == "max_vocab") cfg.max_vocab = v.get<Index>();
    else throw std::invalid_argument("unknown config key: " + key);
  }
}

PipelineConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  const nlohmann::json doc = nlohmann::json::parse(in);
  PipelineConfig cfg;
  apply_config_json(cfg, doc);
  return cfg;
}

nlohmann::ordered_json record_to_json(const RunRecord& rec,
                                      bool include_timing) {
  nlohmann::ordered_json j{
      {"experiment", rec.experiment},
      {"seed", rec.seed},
      {"config", config_to_json(rec.config)},
      {"accuracy", rec.accuracy},
      {"coverage", rec.coverage},
      {"success", rec.success},
      {"iterations", rec.iterations},
  };
  if (include_timing) {
    j["seconds"] = rec.seconds;
    j["timestamp"] = rec.timestamp;
  }
  if (!rec.error.empty()) j["error"] = rec.error;
  return j;
}

RunRecord record_from_json(const nlohmann::json& j) {
  RunRecord r;
  r.experiment = j.at("experiment").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  apply_config_json(r.config, j.at("config"));
  r.accuracy = j.at("accuracy").get<double>();
  r.coverage = j.at("coverage").get<double>();
  r.success = j.at("success").get<bool>();
  r.iterations = j.at("iterations").get<Index>();
  r.seconds = j.value("seconds", 0.0);
  r.timestamp = j.value("timestamp", std::string{});
  r.error = j.value("error", std::string{});
  return r;
}

RunLog load_run_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_run_log: cannot open " + path);
  std::vector<std::pair<long long, std::string>> lines;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    lines.emplace_back(line_no, line);
  }
  RunLog log;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      log.records.push_back(
          record_from_json(nlohmann::json::parse(lines[i].second)));
    } catch (const std::exception& e) {
      if (i + 1 == lines.size()) {
        log.warnings.push_back("skipped truncated line " +
                               std::to_string(lines[i].first) + ": " + e.what());
      } else {
        throw std::runtime_error("load_run_log: " + path + ":" +
                                 std::to_string(lines[i].first) + ": " +
                                 e.what());
      }
    }
  }
  return log;
}

AggregateReport aggregate(const std::vector<RunRecord>& records) {
  if (records.empty()) throw std::invalid_argument("aggregate: no records");
  std::vector<std::string> order;
  std::map<std::string, std::vector<const RunRecord*>> groups;
  for (const RunRecord& r : records) {
    if (!groups.count(r.experiment)) order.push_back(r.experiment);
    groups[r.experiment].push_back(&r);
  }
  AggregateReport report;
  for (const std::string& name : order) {
    const auto& group = groups[name];
    ExperimentAggregate row;
    row.experiment = name;
    row.n_runs = static_cast<int>(group.size());
    double sum = 0, sum_sec = 0;
    int successes = 0;
    for (const RunRecord* r : group) {
      row.best = std::max(row.best, r->accuracy);
      sum += r->accuracy;
      sum_sec += r->seconds;
      if (r->success) ++successes;
    }
    const double n = static_cast<double>(group.size());
    row.mean = sum / n;
    row.success_rate = successes / n;
    row.mean_minutes = sum_sec / n / 60.0;
    if (group.size() >= 2) {
      double ss = 0;
      for (const RunRecord* r : group) {
        const double dev = r->accuracy - row.mean;
        ss += dev * dev;
      }
      const double sd = std::sqrt(ss / (n - 1.0));
      const boost::math::students_t dist(n - 1.0);
      row.ci95 = boost::math::quantile(dist, 0.975) * sd / std::sqrt(n);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace

std::string render_report(const AggregateReport& report, ReportFormat fmt) {
  std::string out;
  if (fmt == ReportFormat::csv) {
    out = "experiment,best,avg,ci95,s,t,n_runs\n";
    for (const auto& row : report.rows) {
      out += csv_field(row.experiment);
      out += ',' + fixed(row.best * 100, 1);
      out += ',' + fixed(row.mean * 100, 1);
      out += ',' + (row.ci95 ? fixed(*row.ci95 * 100, 2) : std::string{});
      out += ',' + fixed(row.success_rate, 2);
      out += ',' + fixed(row.mean_minutes, 2);
      out += ',' + std::to_string(row.n_runs);
      out += '\n';
    }
    return out;
  }
  out = "| experiment | best | avg | ci95 | s | t | n_runs |\n";
  out += "| --- | --- | --- | --- | --- | --- | --- |\n";
  for (const auto& row : report.rows) {
    out += "| " + row.experiment;
    out += " | " + fixed(row.best * 100, 1);
    out += " | " + fixed(row.mean * 100, 1);
    out += " | " + (row.ci95 ? fixed(*row.ci95 * 100, 2) : std::string("-"));
    out += " | " + fixed(row.success_rate, 2);
    out += " | " + fixed(row.mean_minutes, 2);
    out += " | " + std::to_string(row.n_runs);
    out += " |\n";
  }
  return out;
}

void emit_report(const AggregateReport& report, const std::string& path,
                 ReportFormat fmt) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_report: cannot open " + path);
  out << render_report(report, fmt);
  if (!out) throw std::runtime_error("emit_report: write failure on " + path);
}

namespace {

RunRecord single_run(const std::string& name, const EmbeddingSet& src,
                     const EmbeddingSet& trg, const GoldDictionary& gold,
                     const PipelineConfig& cfg, std::uint64_t seed,
                     const ExecPolicy& exec) {
  RunRecord rec;
  rec.experiment = name;
  rec.seed = seed;
  rec.config = cfg;
  rec.config.learn.rng_seed = seed;
  rec.timestamp = iso8601_utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const PipelineResult res = run_pipeline(src, trg, gold, cfg, seed, exec);
    rec.accuracy = res.accuracy;
    rec.coverage = res.coverage;
    rec.iterations = res.iterations;
    rec.success = is_success(res.accuracy);
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  const std::chrono::duration<double> dt =
      std::chrono::steady_clock::now() - t0;
  rec.seconds = std::max(dt.count(), 1e-9);
  return rec;
}

}  // namespace

std::vector<RunRecord> run_experiment(const std::string& name,
                                      const EmbeddingSet& src,
                                      const EmbeddingSet& trg,
                                      const GoldDictionary& gold,
                                      const PipelineConfig& cfg, int n_runs,
                                      std::uint64_t base_seed,
                                      const RunOptions& opts) {
  if (n_runs < 1)
    throw std::invalid_argument("run_experiment: n_runs must be positive");

  const int total = default_thread_count();
  int workers = opts.workers > 0 ? opts.workers : std::min(n_runs, total);
  workers = std::max(1, std::min(workers, n_runs));
  const int per_run = opts.threads_per_run > 0 ? opts.threads_per_run
                                               : std::max(1, total / workers);
  const ExecPolicy exec{per_run, opts.block_rows};

  std::ofstream log;
  if (!opts.log_path.empty()) {
    log.open(opts.log_path, std::ios::app);
    if (!log)
      throw std::runtime_error("run_experiment: cannot open log " +
                               opts.log_path);
  }

  std::vector<RunRecord> records(n_runs);
  std::vector<char> done(n_runs, 0);
  std::mutex mu;  // guards records/done/log/next_write
  int next_write = 0;
  std::atomic<int> cursor{0};
  std::exception_ptr error;

  auto work = [&] {
    for (;;) {
      const int i = cursor.fetch_add(1);
      if (i >= n_runs) return;
      RunRecord rec = single_run(name, src, trg, gold, cfg,
                                 base_seed + static_cast<std::uint64_t>(i), exec);
      std::lock_guard lock(mu);
      records[i] = std::move(rec);
      done[i] = 1;
      // Log lines go out in seed order as soon as the prefix is complete, so
      // the file is append-only and identical for any worker count.
      while (next_write < n_runs && done[next_write]) {
        if (log.is_open()) {
          log << record_to_json(records[next_write], opts.log_timing).dump()
              << '\n';
          log.flush();
          if (!log) {
            if (!error)
              error = std::make_exception_ptr(std::runtime_error(
                  "run_experiment: log write failure on " + opts.log_path));
            return;
          }
        }
        ++next_write;
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return records;
}

std::vector<RunRecord> run_experiment_files(const std::string& name,
                                            const std::string& src_path,
                                            const std::string& trg_path,
                                            const std::string& gold_path,
                                            const PipelineConfig& cfg,
                                            int n_runs,
                                            std::uint64_t base_seed,
                                            const RunOptions& opts) {
  const std::optional<Index> cap =
      cfg.max_vocab > 0 ? std::optional<Index>(cfg.max_vocab) : std::nullopt;
  const EmbeddingSet src = load_embeddings(src_path, cap);
  const EmbeddingSet trg = load_embeddings(trg_path, cap);
  const GoldDictionary gold = load_gold(gold_path);
  return run_experiment(name, src, trg, gold, cfg, n_runs, base_seed, opts);
}

}  // namespace xlmap
