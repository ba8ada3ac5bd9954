#include "sema/report.hpp"

#include "sema/lexicon.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <thread>

namespace sema {
namespace {

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json spread_to_json(const SpreadPair& sp) {
    json j;
    j["metric"] = to_string(sp.metric);
    j["intra"] = sp.intra;
    j["inter"] = sp.inter;
    j["per_language_intra"] = sp.per_language_intra;
    j["num_intra_pairs"] = sp.num_intra_pairs;
    j["num_inter_pairs"] = sp.num_inter_pairs;
    j["num_language_pairs"] = sp.num_language_pairs;
    return j;
}

SpreadPair spread_from_json(const json& j) {
    SpreadPair sp;
    sp.metric = j.at("metric") == "cosine" ? MetricKind::cosine : MetricKind::euclidean;
    sp.intra = j.at("intra");
    sp.inter = j.at("inter");
    sp.per_language_intra = j.at("per_language_intra").get<std::map<std::string, double>>();
    sp.num_intra_pairs = j.at("num_intra_pairs").get<std::map<std::string, std::size_t>>();
    sp.num_inter_pairs = j.at("num_inter_pairs");
    sp.num_language_pairs = j.at("num_language_pairs");
    return sp;
}

Tier tier_from_string(const std::string& s) {
    if (s == "tier1") return Tier::tier1;
    if (s == "tier2") return Tier::tier2;
    if (s == "tier3") return Tier::tier3;
    throw config_error("unknown tier label: " + s);
}

json result_to_json(const AffinityResult& r) {
    json j;
    j["model"] = r.model_id;
    j["dataset"] = r.dataset_id;
    j["language_pair"] = r.language_pair;
    j["sa_cosine"] = r.sa_cosine;
    j["sem_cosine"] = r.sem_cosine;
    j["sa_euclidean"] = r.sa_euclidean;
    j["sem_euclidean"] = r.sem_euclidean;
    j["spreads"] = {{"cosine", spread_to_json(r.cosine_spreads)},
                    {"euclidean", spread_to_json(r.euclidean_spreads)}};
    j["bootstrap"] = {{"iterations", r.bootstrap_iterations},
                      {"seed", r.bootstrap_seed},
                      {"mean_cosine", r.bootstrap_mean_cosine},
                      {"mean_euclidean", r.bootstrap_mean_euclidean}};
    j["tier"] = to_string(r.tier);
    j["collapse_flags"] = r.collapse_flags;
    j["collapse_max_distance"] = r.collapse_max_distance;
    j["chosen_t"] = r.chosen_t;
    return j;
}

AffinityResult result_from_json(const json& j) {
    AffinityResult r;
    r.model_id = j.at("model");
    r.dataset_id = j.at("dataset");
    r.language_pair = j.at("language_pair");
    r.sa_cosine = j.at("sa_cosine");
    r.sem_cosine = j.at("sem_cosine");
    r.sa_euclidean = j.at("sa_euclidean");
    r.sem_euclidean = j.at("sem_euclidean");
    r.cosine_spreads = spread_from_json(j.at("spreads").at("cosine"));
    r.euclidean_spreads = spread_from_json(j.at("spreads").at("euclidean"));
    r.bootstrap_iterations = j.at("bootstrap").at("iterations");
    r.bootstrap_seed = j.at("bootstrap").at("seed");
    r.bootstrap_mean_cosine = j.at("bootstrap").at("mean_cosine");
    r.bootstrap_mean_euclidean = j.at("bootstrap").at("mean_euclidean");
    r.tier = tier_from_string(j.at("tier"));
    r.collapse_flags = j.at("collapse_flags").get<std::map<std::string, bool>>();
    r.collapse_max_distance =
        j.at("collapse_max_distance").get<std::map<std::string, double>>();
    r.chosen_t = j.at("chosen_t");
    return r;
}

json layout_to_json(const PhateLayout& l) {
    json coords = json::array();
    for (Eigen::Index i = 0; i < l.coordinates.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index c = 0; c < l.coordinates.cols(); ++c) row.push_back(l.coordinates(i, c));
        coords.push_back(std::move(row));
    }
    json labels = json::array();
    for (const auto& [lang, word] : l.labels) labels.push_back({lang, word});
    json curve = json::array();
    for (const auto& [t, h] : l.entropy_curve) curve.push_back({json(t), json(h)});
    return {{"coordinates", std::move(coords)},
            {"labels", std::move(labels)},
            {"chosen_t", l.chosen_t},
            {"entropy_curve", std::move(curve)},
            {"degenerate", l.degenerate}};
}

PhateLayout layout_from_json(const json& j) {
    PhateLayout l;
    const auto& coords = j.at("coordinates");
    if (!coords.empty()) {
        l.coordinates.resize(Eigen::Index(coords.size()), Eigen::Index(coords[0].size()));
        for (std::size_t i = 0; i < coords.size(); ++i)
            for (std::size_t c = 0; c < coords[i].size(); ++c)
                l.coordinates(Eigen::Index(i), Eigen::Index(c)) = coords[i][c].get<double>();
    }
    for (const auto& lab : j.at("labels")) {
        l.labels.emplace_back(lab[0].get<std::string>(), lab[1].get<std::string>());
    }
    l.chosen_t = j.at("chosen_t");
    for (const auto& pt : j.at("entropy_curve")) {
        l.entropy_curve.emplace_back(pt[0].get<int>(), pt[1].get<double>());
    }
    l.degenerate = j.at("degenerate");
    return l;
}

json diagnostic_to_json(const DiagnosticReport& d) {
    json j;
    j["model"] = d.model_id;
    j["stage1_decision"] = to_string(d.stage1_decision);
    if (d.magnitude_finding) j["magnitude_finding"] = to_string(*d.magnitude_finding);
    if (d.variance_finding) j["variance_finding"] = to_string(*d.variance_finding);
    j["variance_note"] = d.variance_note;
    if (d.separation_finding) j["separation_finding"] = to_string(*d.separation_finding);
    j["inter_intra_ratio_cosine"] = d.inter_intra_ratio_cosine;
    j["narrative"] = d.narrative;
    j["recommendation"] = d.recommendation;
    return j;
}

DiagnosticReport diagnostic_from_json(const json& j) {
    DiagnosticReport d;
    d.model_id = j.at("model");
    const std::string s1 = j.at("stage1_decision");
    d.stage1_decision = s1 == "deploy" ? Stage1Decision::deploy
                        : s1 == "task_dependent" ? Stage1Decision::task_dependent
                                                 : Stage1Decision::investigate;
    if (j.contains("magnitude_finding")) {
        const std::string m = j.at("magnitude_finding");
        d.magnitude_finding = m == "healthy" ? MagnitudeFinding::healthy
                              : m == "poor_normalization" ? MagnitudeFinding::poor_normalization
                                                          : MagnitudeFinding::near_collapse;
    }
    if (j.contains("variance_finding")) {
        d.variance_finding = j.at("variance_finding") == "stable" ? VarianceFinding::stable
                                                                  : VarianceFinding::inconsistent;
    }
    d.variance_note = j.at("variance_note");
    if (j.contains("separation_finding")) {
        const std::string s = j.at("separation_finding");
        d.separation_finding = s == "co_location" ? SeparationFinding::co_location
                               : s == "partial" ? SeparationFinding::partial
                                                : SeparationFinding::active_separation;
    }
    d.inter_intra_ratio_cosine = j.at("inter_intra_ratio_cosine");
    d.narrative = j.at("narrative").get<std::vector<std::string>>();
    d.recommendation = j.at("recommendation");
    return d;
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::filesystem::path& p) {
    return p.is_absolute() ? p : base / p;
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, const std::string& data) {
    std::filesystem::create_directories(path.parent_path().empty()
                                            ? std::filesystem::path(".")
                                            : path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw config_error("cannot write file: " + tmp.string());
        out.write(data.data(), std::streamsize(data.size()));
    }
    std::filesystem::rename(tmp, path);
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::vector<unsigned char>& data) {
    write_file_atomic(path, std::string(data.begin(), data.end()));
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
    if (workers <= 0) workers = int(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    workers = std::min<std::size_t>(std::size_t(workers), n) == 0
                  ? 1
                  : int(std::min<std::size_t>(std::size_t(workers), n));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

RunConfig parse_run_config(const json& j, const std::filesystem::path& base_dir) {
    RunConfig cfg;
    try {
        if (j.contains("cache_root")) cfg.cache_root = resolve(base_dir, j["cache_root"].get<std::string>());
        if (j.contains("output_dir")) cfg.output_dir = resolve(base_dir, j["output_dir"].get<std::string>());
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("bootstrap_iterations")) cfg.bootstrap_iterations = j["bootstrap_iterations"];
        if (j.contains("parallelism")) cfg.parallelism = j["parallelism"];
        if (j.contains("charts")) cfg.charts = j["charts"];
        if (j.contains("chart_formats")) {
            cfg.chart_formats.clear();
            for (const auto& f : j["chart_formats"]) {
                cfg.chart_formats.push_back(parse_chart_format(f.get<std::string>()));
            }
        }
        if (j.contains("phate")) {
            const auto& p = j["phate"];
            if (p.contains("knn")) cfg.phate.knn = p["knn"];
            if (p.contains("decay")) cfg.phate.decay = p["decay"];
            if (p.contains("t")) {
                if (p["t"].is_string()) {
                    if (p["t"] != "auto") throw config_error("phate.t must be \"auto\" or an integer");
                    cfg.phate.t = 0;
                } else {
                    cfg.phate.t = p["t"];
                }
            }
            if (p.contains("gamma")) cfg.phate.gamma = p["gamma"];
            if (p.contains("n_components")) cfg.phate.n_components = p["n_components"];
            if (p.contains("t_max")) cfg.phate.t_max = p["t_max"];
        }
        cfg.phate.seed = cfg.seed;

        for (const auto& m : j.at("models")) {
            ModelSpec spec;
            spec.model_id = m.at("id");
            const std::string provider = m.at("provider");
            if (provider == "http-api") {
                spec.kind = ModelSpec::Kind::http_api;
                spec.endpoint = m.at("endpoint");
                if (m.contains("auth_env")) spec.auth_env_var = m["auth_env"];
            } else if (provider == "file-import") {
                spec.kind = ModelSpec::Kind::file_import;
                spec.source_path = resolve(base_dir, m.at("path").get<std::string>()).string();
            } else {
                throw config_error("unknown provider kind: " + provider);
            }
            if (m.contains("dimension")) spec.dimension_hint = m["dimension"].get<int>();
            if (m.contains("batch_size")) spec.batch_size = m["batch_size"];
            if (m.contains("max_attempts")) spec.max_attempts = m["max_attempts"];
            if (m.contains("backoff_initial_s")) spec.backoff_initial_s = m["backoff_initial_s"];
            cfg.models.push_back(std::move(spec));
        }
        for (const auto& d : j.at("datasets")) {
            DatasetSpec ds;
            ds.dataset_id = d.at("id");
            std::vector<std::string> langs;
            if (d.contains("languages")) {
                langs = d["languages"].get<std::vector<std::string>>();
            } else {
                for (const auto& [k, v] : d.at("files").items()) langs.push_back(k);
            }
            for (const auto& lang : langs) {
                std::filesystem::path file;
                if (d.contains("files") && d["files"].contains(lang)) {
                    file = resolve(base_dir, d["files"][lang].get<std::string>());
                } else if (d.contains("dir")) {
                    // <dataset-id>-<lang>.txt naming convention
                    file = resolve(base_dir, d["dir"].get<std::string>()) /
                           (ds.dataset_id + "-" + lang + ".txt");
                } else {
                    throw config_error("dataset " + ds.dataset_id + ": no file for language " +
                                       lang);
                }
                ds.language_files.emplace_back(lang, file);
            }
            if (ds.language_files.size() < 2) {
                throw config_error("dataset " + ds.dataset_id + " needs >= 2 languages");
            }
            cfg.datasets.push_back(std::move(ds));
        }
    } catch (const json::exception& e) {
        throw config_error(std::string("bad run config: ") + e.what());
    }
    if (cfg.models.empty()) throw config_error("run config lists no models");
    if (cfg.datasets.empty()) throw config_error("run config lists no datasets");
    if (cfg.bootstrap_iterations < 2) {
        throw config_error("bootstrap_iterations must be >= 2");
    }
    if (const char* env_root = std::getenv("SEMABENCH_CACHE_ROOT")) {
        cfg.cache_root = env_root;
    }
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open run config: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw config_error(std::string("run config is not valid JSON: ") + e.what());
    }
    return parse_run_config(j, path.parent_path());
}

ExperimentOutcome run_experiment(const ExperimentSpec& spec, const EmbeddingCache& cache) {
    ExperimentOutcome out;
    out.model_id = spec.model.model_id;
    out.dataset_id = spec.dataset.dataset_id;
    const auto start = std::chrono::steady_clock::now();
    auto fail = [&](const char* stage, const std::string& what) {
        out.ok = false;
        out.failed_stage = stage;
        out.error = what;
        out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return out;
    };

    TranslationLexicon lexicon;
    try {
        std::vector<std::pair<std::string, std::vector<VariantList>>> lists;
        for (const auto& [lang, file] : spec.dataset.language_files) {
            lists.emplace_back(lang, parse_language_file(file, lang));
        }
        lexicon = align_lexicon(lists, spec.dataset.dataset_id);
        out.concept_count = lexicon.concept_count();
        out.expanded_pairs = expand_meaning_variants(lexicon).tuples.size();
    } catch (const std::exception& e) {
        return fail("load", e.what());
    }

    std::map<std::string, LanguageEmbeddingSet> sets;
    try {
        for (const auto& lang : lexicon.languages) {
            auto words = unique_words(lexicon, lang);
            sets.emplace(lang, acquire_embeddings(spec.model, words, lang, cache, &out.fetch));
        }
    } catch (const std::exception& e) {
        return fail("embed", e.what());
    }

    try {
        AffinityConfig ac;
        ac.bootstrap_iterations = spec.bootstrap_iterations;
        ac.seed = spec.seed;
        out.result = run_affinity(lexicon, sets, ac);
        out.result.model_id = spec.model.model_id;
    } catch (const std::exception& e) {
        return fail("affinity", e.what());
    }

    try {
        PhateConfig pc = spec.phate;
        pc.seed = spec.seed;
        out.layout = phate_fit(sets, pc);
        out.result.chosen_t = out.layout.chosen_t;
    } catch (const std::exception& e) {
        return fail("phate", e.what());
    }

    if (spec.charts) {
        try {
            ChartSpec cs;
            cs.layout = &out.layout;
            cs.legend = format_sa_legend(out.result);
            cs.title = spec.model.model_id + " - " + spec.dataset.dataset_id;
            assign_default_palette(cs);
            for (ChartFormat fmt : spec.chart_formats) {
                cs.format = fmt;
                auto path = spec.output_dir / (spec.model.model_id + "-" +
                                               spec.dataset.dataset_id + "-phate." +
                                               chart_extension(fmt));
                write_file_atomic(path, render_scatter(cs));
                out.chart_paths.push_back(path.string());
            }
        } catch (const std::exception& e) {
            return fail("export", e.what());
        }
    }

    out.ok = true;
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

RunReport run_matrix(const RunConfig& config) {
    EmbeddingCache cache(config.cache_root);
    std::vector<ExperimentSpec> specs;
    for (const auto& model : config.models) {
        for (const auto& dataset : config.datasets) {
            ExperimentSpec s;
            s.model = model;
            s.dataset = dataset;
            s.bootstrap_iterations = config.bootstrap_iterations;
            s.seed = config.seed;
            s.phate = config.phate;
            s.output_dir = config.output_dir;
            s.charts = config.charts;
            s.chart_formats = config.chart_formats;
            specs.push_back(std::move(s));
        }
    }

    RunReport report;
    report.experiments.resize(specs.size());
    parallel_for(specs.size(), config.parallelism, [&](std::size_t i) {
        try {
            report.experiments[i] = run_experiment(specs[i], cache);
        } catch (const std::exception& e) {
            // run_experiment captures stage errors itself; this is a backstop
            report.experiments[i].model_id = specs[i].model.model_id;
            report.experiments[i].dataset_id = specs[i].dataset.dataset_id;
            report.experiments[i].ok = false;
            report.experiments[i].failed_stage = "internal";
            report.experiments[i].error = e.what();
        }
    });

    finalize_report(report);
    return report;
}

void finalize_report(RunReport& report) {
    report.summaries.clear();
    report.diagnostics.clear();

    std::vector<std::string> model_order;
    for (const auto& e : report.experiments) {
        if (std::find(model_order.begin(), model_order.end(), e.model_id) == model_order.end()) {
            model_order.push_back(e.model_id);
        }
    }
    for (const auto& model : model_order) {
        double sum = 0.0, wsum = 0.0, weight = 0.0;
        std::size_t n = 0;
        std::vector<AffinityResult> results;
        std::vector<std::string> charts;
        for (const auto& e : report.experiments) {
            if (e.model_id != model || !e.ok) continue;
            sum += e.result.sa_cosine;
            wsum += e.result.sa_cosine * double(e.concept_count);
            weight += double(e.concept_count);
            ++n;
            results.push_back(e.result);
            charts.insert(charts.end(), e.chart_paths.begin(), e.chart_paths.end());
        }
        if (n == 0) continue;
        ModelSummary s;
        s.model_id = model;
        s.avg_sa = sum / double(n);
        s.weighted_avg_sa = weight > 0.0 ? wsum / weight : s.avg_sa;
        s.tier = classify_tier(s.avg_sa);
        report.summaries.push_back(s);
        report.diagnostics.push_back(stage2_diagnose(results, charts));
    }
    std::stable_sort(report.summaries.begin(), report.summaries.end(),
                     [](const ModelSummary& a, const ModelSummary& b) {
                         return a.avg_sa > b.avg_sa;
                     });
}

std::string report_csv(const RunReport& report) {
    std::string csv =
        "model,dataset,language_pair,sa_cosine,sem_cosine,sa_euclidean,sem_euclidean,"
        "intra_cosine,inter_cosine,intra_euclidean,inter_euclidean,tier,collapse_flag,"
        "chosen_t\n";
    for (const auto& e : report.experiments) {
        if (!e.ok) continue;
        const auto& r = e.result;
        bool collapsed = false;
        for (const auto& [lang, flag] : r.collapse_flags) collapsed = collapsed || flag;
        csv += r.model_id + "," + r.dataset_id + "," + r.language_pair + "," +
               fmt_double(r.sa_cosine) + "," + fmt_double(r.sem_cosine) + "," +
               fmt_double(r.sa_euclidean) + "," + fmt_double(r.sem_euclidean) + "," +
               fmt_double(r.cosine_spreads.intra) + "," + fmt_double(r.cosine_spreads.inter) +
               "," + fmt_double(r.euclidean_spreads.intra) + "," +
               fmt_double(r.euclidean_spreads.inter) + "," + to_string(r.tier) + "," +
               (collapsed ? "true" : "false") + "," + std::to_string(r.chosen_t) + "\n";
    }
    return csv;
}

nlohmann::json report_to_json(const RunReport& report) {
    json experiments = json::array();
    json timing = json::array();
    for (const auto& e : report.experiments) {
        json je;
        je["model"] = e.model_id;
        je["dataset"] = e.dataset_id;
        je["ok"] = e.ok;
        if (!e.ok) {
            je["failed_stage"] = e.failed_stage;
            je["error"] = e.error;
        } else {
            je["result"] = result_to_json(e.result);
            je["layout"] = layout_to_json(e.layout);
            je["concept_count"] = e.concept_count;
            je["expanded_pairs"] = e.expanded_pairs;
        }
        je["chart_paths"] = e.chart_paths;
        je["fetch"] = {{"cache_hits", e.fetch.cache_hits},
                       {"fetched", e.fetch.fetched},
                       {"requests", e.fetch.requests}};
        experiments.push_back(std::move(je));
        timing.push_back({{"model", e.model_id},
                          {"dataset", e.dataset_id},
                          {"seconds", e.seconds}});
    }
    json diagnostics = json::array();
    for (const auto& d : report.diagnostics) diagnostics.push_back(diagnostic_to_json(d));
    json summaries = json::array();
    for (const auto& s : report.summaries) {
        summaries.push_back({{"model", s.model_id},
                             {"avg_sa", s.avg_sa},
                             {"weighted_avg_sa", s.weighted_avg_sa},
                             {"tier", to_string(s.tier)}});
    }
    // timing quarantined so determinism checks can compare "report" alone
    return {{"report",
             {{"experiments", std::move(experiments)},
              {"diagnostics", std::move(diagnostics)},
              {"summaries", std::move(summaries)}}},
            {"timing", std::move(timing)}};
}

RunReport report_from_json(const nlohmann::json& j) {
    RunReport report;
    const auto& rep = j.at("report");
    for (const auto& je : rep.at("experiments")) {
        ExperimentOutcome e;
        e.model_id = je.at("model");
        e.dataset_id = je.at("dataset");
        e.ok = je.at("ok");
        if (!e.ok) {
            e.failed_stage = je.at("failed_stage");
            e.error = je.at("error");
        } else {
            e.result = result_from_json(je.at("result"));
            e.layout = layout_from_json(je.at("layout"));
            e.concept_count = je.at("concept_count");
            e.expanded_pairs = je.at("expanded_pairs");
        }
        e.chart_paths = je.at("chart_paths").get<std::vector<std::string>>();
        e.fetch.cache_hits = je.at("fetch").at("cache_hits");
        e.fetch.fetched = je.at("fetch").at("fetched");
        e.fetch.requests = je.at("fetch").at("requests");
        report.experiments.push_back(std::move(e));
    }
    for (const auto& jd : rep.at("diagnostics")) {
        report.diagnostics.push_back(diagnostic_from_json(jd));
    }
    for (const auto& js : rep.at("summaries")) {
        ModelSummary s;
        s.model_id = js.at("model");
        s.avg_sa = js.at("avg_sa");
        s.weighted_avg_sa = js.at("weighted_avg_sa");
        s.tier = tier_from_string(js.at("tier"));
        report.summaries.push_back(std::move(s));
    }
    return report;
}

void export_report(const RunReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_file_atomic(dir / "results.csv", report_csv(report));
    write_file_atomic(dir / "report.json", report_to_json(report).dump(2) + "\n");

    const std::string run_id =
        dir.filename().empty() ? std::string("run") : dir.filename().string();

    // heatmap: models ordered by Avg SA (tier-table order), datasets in run order
    std::vector<std::string> datasets;
    for (const auto& e : report.experiments) {
        if (std::find(datasets.begin(), datasets.end(), e.dataset_id) == datasets.end()) {
            datasets.push_back(e.dataset_id);
        }
    }
    HeatmapSpec hm;
    hm.datasets = datasets;
    hm.title = "Semantic affinity (cosine)";
    for (const auto& s : report.summaries) {
        hm.models.push_back(s.model_id);
        std::vector<double> row(datasets.size(), std::nan(""));
        for (const auto& e : report.experiments) {
            if (e.model_id != s.model_id || !e.ok) continue;
            auto it = std::find(datasets.begin(), datasets.end(), e.dataset_id);
            row[std::size_t(it - datasets.begin())] = e.result.sa_cosine;
        }
        hm.sa.push_back(std::move(row));
    }
    if (!hm.models.empty()) {
        write_file_atomic(dir / (run_id + "-heatmap.svg"), render_heatmap_svg(hm));
    }

    std::vector<TierBarEntry> bars;
    for (const auto& s : report.summaries) bars.push_back({s.model_id, s.avg_sa, s.tier});
    if (!bars.empty()) {
        write_file_atomic(dir / (run_id + "-tiers.svg"),
                          render_tier_bars_svg(bars, "Average SA by model"));
    }
}

}  // namespace sema
