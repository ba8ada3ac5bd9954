#include "sema/report.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

using nlohmann::json;

struct CommonFlags {
    std::string config_path;
    std::string output_dir;
    std::string cache_root;
    int iterations = -1;
    std::int64_t seed = -1;
    int parallelism = -1;
    bool no_charts = false;
    std::vector<std::string> formats;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("config", f.config_path, "run configuration file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--output-dir", f.output_dir, "override output directory");
    cmd->add_option("--cache-root", f.cache_root, "override embedding cache root");
    cmd->add_option("--iterations", f.iterations, "override bootstrap iterations");
    cmd->add_option("--seed", f.seed, "override RNG seed");
    cmd->add_option("--parallelism", f.parallelism, "worker pool size (0 = cores)");
    cmd->add_flag("--no-charts", f.no_charts, "skip chart rendering");
    cmd->add_option("--format", f.formats, "chart format: svg, png or pdf (repeatable)");
}

sema::RunConfig build_config(const CommonFlags& f) {
    sema::RunConfig cfg = sema::load_run_config(f.config_path);
    if (!f.output_dir.empty()) cfg.output_dir = f.output_dir;
    if (!f.cache_root.empty()) cfg.cache_root = f.cache_root;
    if (f.iterations >= 0) cfg.bootstrap_iterations = f.iterations;
    if (f.seed >= 0) {
        cfg.seed = std::uint64_t(f.seed);
        cfg.phate.seed = cfg.seed;
    }
    if (f.parallelism >= 0) cfg.parallelism = f.parallelism;
    if (f.no_charts) cfg.charts = false;
    if (!f.formats.empty()) {
        cfg.chart_formats.clear();
        for (const auto& name : f.formats) {
            cfg.chart_formats.push_back(sema::parse_chart_format(name));
        }
    }
    if (cfg.bootstrap_iterations < 2) {
        throw sema::config_error("bootstrap_iterations must be >= 2");
    }
    return cfg;
}

int execute(const sema::RunConfig& cfg) {
    sema::RunReport report = sema::run_matrix(cfg);
    sema::export_report(report, cfg.output_dir);

    std::size_t failed = 0;
    for (const auto& e : report.experiments) {
        if (e.ok) {
            std::printf("[ok]   %s x %s  SA(cos)=%.3f SA(eucl)=%.3f tier=%s (%.1fs)\n",
                        e.model_id.c_str(), e.dataset_id.c_str(), e.result.sa_cosine,
                        e.result.sa_euclidean, sema::to_string(e.result.tier), e.seconds);
        } else {
            ++failed;
            std::printf("[fail] %s x %s  stage=%s: %s\n", e.model_id.c_str(),
                        e.dataset_id.c_str(), e.failed_stage.c_str(), e.error.c_str());
        }
    }
    for (const auto& s : report.summaries) {
        std::printf("model %-32s avg_sa=%.3f weighted=%.3f tier=%s\n", s.model_id.c_str(),
                    s.avg_sa, s.weighted_avg_sa, sema::to_string(s.tier));
    }
    std::printf("artifacts: %s\n", cfg.output_dir.string().c_str());
    return failed == 0 ? 0 : 1;
}

sema::RunReport load_report(const std::string& path_arg) {
    std::filesystem::path path = path_arg;
    if (std::filesystem::is_directory(path)) path /= "report.json";
    std::ifstream in(path);
    if (!in) throw sema::config_error("cannot open report: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw sema::config_error(std::string("report is not valid JSON: ") + e.what());
    }
    return sema::report_from_json(j);
}

void print_diagnostics(const sema::RunReport& report) {
    for (const auto& d : report.diagnostics) {
        std::printf("model %s\n", d.model_id.c_str());
        std::printf("  stage 1: %s\n", sema::to_string(d.stage1_decision));
        if (d.magnitude_finding) {
            std::printf("  magnitude: %s\n", sema::to_string(*d.magnitude_finding));
        }
        if (d.variance_finding) {
            std::printf("  variance: %s%s\n", sema::to_string(*d.variance_finding),
                        d.variance_note ? " (2x-3x band, note)" : "");
        }
        if (d.separation_finding) {
            std::printf("  separation: %s (inter/intra cosine ratio %.2f)\n",
                        sema::to_string(*d.separation_finding), d.inter_intra_ratio_cosine);
        }
        for (const auto& line : d.narrative) std::printf("  - %s\n", line.c_str());
        std::printf("  recommendation: %s\n", d.recommendation.c_str());
    }
}

int rerender_charts(const sema::RunReport& report, const std::string& out_dir,
                    const std::vector<std::string>& formats) {
    std::vector<sema::ChartFormat> fmts;
    for (const auto& name : formats.empty() ? std::vector<std::string>{"svg"} : formats) {
        fmts.push_back(sema::parse_chart_format(name));
    }
    std::filesystem::path dir = out_dir;
    std::size_t rendered = 0;
    for (const auto& e : report.experiments) {
        if (!e.ok || e.layout.labels.empty()) continue;
        sema::ChartSpec cs;
        cs.layout = &e.layout;
        cs.legend = sema::format_sa_legend(e.result);
        cs.title = e.model_id + " - " + e.dataset_id;
        sema::assign_default_palette(cs);
        for (sema::ChartFormat fmt : fmts) {
            cs.format = fmt;
            auto path = dir / (e.model_id + "-" + e.dataset_id + "-phate." +
                               std::string(sema::chart_extension(fmt)));
            sema::write_file_atomic(path, sema::render_scatter(cs));
            std::printf("wrote %s\n", path.string().c_str());
            ++rendered;
        }
    }
    if (rendered == 0) std::printf("no stored layouts to render\n");
    return 0;
}

std::filesystem::path cache_root_or_default(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("SEMABENCH_CACHE_ROOT")) return env;
    return ".sema-cache";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semabench - cross-lingual embedding alignment benchmark"};
    app.require_subcommand(1);

    CommonFlags run_flags;
    std::string run_model, run_dataset;
    auto* run_cmd = app.add_subcommand("run", "run a single model x dataset experiment");
    add_common(run_cmd, run_flags);
    run_cmd->add_option("--model", run_model, "model id (defaults to the only one)");
    run_cmd->add_option("--dataset", run_dataset, "dataset id (defaults to the only one)");

    CommonFlags matrix_flags;
    auto* matrix_cmd = app.add_subcommand("matrix", "run the full model x dataset matrix");
    add_common(matrix_cmd, matrix_flags);

    std::string diag_report;
    auto* diag_cmd = app.add_subcommand("diagnose", "two-stage diagnosis of stored results");
    diag_cmd->add_option("report", diag_report, "report.json or its output directory")
        ->required();

    std::string chart_report, chart_out = ".";
    std::vector<std::string> chart_formats;
    auto* chart_cmd = app.add_subcommand("chart", "re-render charts from stored layouts");
    chart_cmd->add_option("report", chart_report, "report.json or its output directory")
        ->required();
    chart_cmd->add_option("--out", chart_out, "output directory");
    chart_cmd->add_option("--format", chart_formats, "chart format (repeatable)");

    auto* cache_cmd = app.add_subcommand("cache", "inspect or clear the embedding cache");
    cache_cmd->require_subcommand(1);
    std::string cache_root_flag;
    cache_cmd->add_option("--root", cache_root_flag, "cache root directory");
    auto* cache_info = cache_cmd->add_subcommand("info", "show entry count");
    auto* cache_clear = cache_cmd->add_subcommand("clear", "remove every cached record");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*run_cmd) {
            sema::RunConfig cfg = build_config(run_flags);
            if (!run_model.empty()) {
                std::erase_if(cfg.models, [&](const sema::ModelSpec& m) {
                    return m.model_id != run_model;
                });
                if (cfg.models.empty()) {
                    throw sema::config_error("unknown model id: " + run_model);
                }
            }
            if (!run_dataset.empty()) {
                std::erase_if(cfg.datasets, [&](const sema::DatasetSpec& d) {
                    return d.dataset_id != run_dataset;
                });
                if (cfg.datasets.empty()) {
                    throw sema::config_error("unknown dataset id: " + run_dataset);
                }
            }
            if (cfg.models.size() != 1 || cfg.datasets.size() != 1) {
                throw sema::config_error(
                    "run expects exactly one model and one dataset; "
                    "use --model/--dataset to select, or the matrix subcommand");
            }
            return execute(cfg);
        }
        if (*matrix_cmd) {
            return execute(build_config(matrix_flags));
        }
        if (*diag_cmd) {
            sema::RunReport report = load_report(diag_report);
            sema::finalize_report(report);
            print_diagnostics(report);
            return 0;
        }
        if (*chart_cmd) {
            return rerender_charts(load_report(chart_report), chart_out, chart_formats);
        }
        if (*cache_cmd) {
            sema::EmbeddingCache cache(cache_root_or_default(cache_root_flag));
            if (*cache_info) {
                std::printf("root: %s\nentries: %zu\n", cache.root().string().c_str(),
                            cache.entry_count());
            } else if (*cache_clear) {
                std::printf("removed %zu entries\n", cache.clear());
            }
            return 0;
        }
    } catch (const sema::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
