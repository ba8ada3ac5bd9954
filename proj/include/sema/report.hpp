#pragma once

#include "sema/affinity.hpp"
#include "sema/cache.hpp"
#include "sema/chart.hpp"
#include "sema/diagnostics.hpp"
#include "sema/phate.hpp"
#include "sema/providers.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace sema {

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DatasetSpec {
    std::string dataset_id;
    // ordered (language, file) pairs; files follow <dataset-id>-<lang>.txt by
    // convention but explicit paths are accepted
    std::vector<std::pair<std::string, std::filesystem::path>> language_files;
};

struct ExperimentSpec {
    ModelSpec model;
    DatasetSpec dataset;
    int bootstrap_iterations = 1000;
    std::uint64_t seed = 42;
    PhateConfig phate;
    std::filesystem::path output_dir = "out";
    bool charts = true;
    std::vector<ChartFormat> chart_formats = {ChartFormat::svg};
};

struct ExperimentOutcome {
    std::string model_id;
    std::string dataset_id;
    bool ok = false;
    std::string failed_stage;  // load / embed / affinity / phate / export
    std::string error;

    AffinityResult result;
    PhateLayout layout;  // kept so charts can be re-rendered from the report
    std::vector<std::string> chart_paths;
    std::size_t concept_count = 0;    // M
    std::size_t expanded_pairs = 0;   // M'
    FetchStats fetch;
    double seconds = 0.0;
};

struct ModelSummary {
    std::string model_id;
    double avg_sa = 0.0;           // plain mean over datasets (tier table column)
    double weighted_avg_sa = 0.0;  // concept-count weighted, for transparency
    Tier tier = Tier::tier3;
};

struct RunReport {
    std::vector<ExperimentOutcome> experiments;
    std::vector<DiagnosticReport> diagnostics;  // one per model with results
    std::vector<ModelSummary> summaries;        // sorted by avg_sa descending
};

struct RunConfig {
    std::vector<ModelSpec> models;
    std::vector<DatasetSpec> datasets;
    std::filesystem::path cache_root = ".sema-cache";
    std::filesystem::path output_dir = "out";
    int bootstrap_iterations = 1000;
    std::uint64_t seed = 42;
    PhateConfig phate;
    int parallelism = 0;  // 0 = hardware concurrency
    bool charts = true;
    std::vector<ChartFormat> chart_formats = {ChartFormat::svg};
};

/// Parse the declarative JSON run file (see README for the schema).
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(const nlohmann::json& j,
                           const std::filesystem::path& base_dir);

/// Pipeline for one model x dataset: load -> embed (cached) -> spreads ->
/// SA -> bootstrap -> PHATE + legend -> export. A stage failure is captured
/// in the outcome; artifacts are written atomically.
ExperimentOutcome run_experiment(const ExperimentSpec& spec, const EmbeddingCache& cache);

/// All model x dataset experiments on a bounded worker pool. Individual
/// failures are recorded and the run completes.
RunReport run_matrix(const RunConfig& config);

/// Recompute summaries (sorted by Avg SA descending) and per-model diagnoses.
void finalize_report(RunReport& report);

/// CSV with the fixed column schema; stable row order (config order).
std::string report_csv(const RunReport& report);

nlohmann::json report_to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& j);

/// Write CSV + JSON + heatmap/tier-bar SVGs into `dir` (atomic per file).
void export_report(const RunReport& report, const std::filesystem::path& dir);

/// Run fn(0..n-1) on `workers` threads; used for the experiment matrix.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

/// Atomic write helper (temp file + rename).
void write_file_atomic(const std::filesystem::path& path, const std::string& data);
void write_file_atomic(const std::filesystem::path& path,
                       const std::vector<unsigned char>& data);

}  // namespace sema
