// Acceptance harness: one pass/fail line per criterion. Run with no
// arguments to execute every criterion, or with a single number (1..11) to
// execute just that one (the ctest registration runs them individually).

#include "oracle.hpp"
#include "sema/affinity.hpp"
#include "sema/diagnostics.hpp"
#include "sema/phate.hpp"
#include "sema/providers.hpp"
#include "sema/report.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace sema;
using nlohmann::json;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

double now_s() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::filesystem::path fresh_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---- criterion 1: published spread -> SA fixtures ----
Check criterion1() {
    Check c;
    c.require(std::abs(semantic_affinity(53.9, 64.4) - 0.456) < 0.001,
              "(53.9, 64.4) != 0.456 +- 0.001");
    c.require(std::abs(semantic_affinity(51.4, 21.8) - 0.702) < 0.001,
              "(51.4, 21.8) != 0.702 +- 0.001");
    c.require(std::abs(semantic_affinity(0.379, 0.090) - 0.807) < 0.002,
              "(0.379, 0.090) != 0.807 +- 0.002");
    c.require(std::abs(semantic_affinity(0.0046, 0.0060) - 0.433) < 0.002,
              "(0.0046, 0.0060) != 0.433 +- 0.002");
    return c;
}

// ---- criterion 2: magnitude invariance / sensitivity ----
Check criterion2() {
    Check c;
    auto syn = oracle::make_synthetic(50, 16, {"a", "b"}, 0.4, 1234);
    auto base_c = compute_spreads(syn.lexicon, syn.sets, MetricKind::cosine);
    auto base_e = compute_spreads(syn.lexicon, syn.sets, MetricKind::euclidean);
    const double sa_c = semantic_affinity(base_c.intra, base_c.inter);
    const double sa_e = semantic_affinity(base_e.intra, base_e.inter);

    // power-of-two factors are exact in float, preserving directions exactly
    auto rescale = [&](bool per_vector, float uniform) {
        std::mt19937_64 rng(99);
        const float pow2[] = {0.25f, 0.5f, 2.0f, 4.0f, 8.0f};
        std::map<std::string, LanguageEmbeddingSet> out;
        for (const auto& [lang, set] : syn.sets) {
            std::vector<std::vector<float>> vecs;
            for (std::size_t i = 0; i < set.size(); ++i) {
                const float s = per_vector ? pow2[rng() % 5] : uniform;
                auto span = set.vector_at(i);
                std::vector<float> v(span.begin(), span.end());
                for (auto& x : v) x *= s;
                vecs.push_back(std::move(v));
            }
            out.emplace(lang, LanguageEmbeddingSet("m", lang, set.words(), vecs));
        }
        return out;
    };

    auto per_vec = rescale(true, 0.0f);
    auto pc = compute_spreads(syn.lexicon, per_vec, MetricKind::cosine);
    auto pe = compute_spreads(syn.lexicon, per_vec, MetricKind::euclidean);
    c.require(std::abs(semantic_affinity(pc.intra, pc.inter) - sa_c) < 1e-9,
              "per-vector rescale moved sa_cosine >= 1e-9");
    c.require(std::abs(semantic_affinity(pe.intra, pe.inter) - sa_e) > 1e-3,
              "non-uniform rescale moved sa_euclidean <= 1e-3");

    auto global = rescale(false, 4.0f);
    auto gc = compute_spreads(syn.lexicon, global, MetricKind::cosine);
    auto ge = compute_spreads(syn.lexicon, global, MetricKind::euclidean);
    c.require(std::abs(semantic_affinity(gc.intra, gc.inter) - sa_c) < 1e-9,
              "global scale moved sa_cosine");
    c.require(std::abs(semantic_affinity(ge.intra, ge.inter) - sa_e) < 1e-9,
              "global scale moved sa_euclidean");
    return c;
}

// ---- criterion 3: analytic endpoints ----
Check criterion3() {
    Check c;
    auto perfect = oracle::make_synthetic(20, 12, {"a", "b"}, 0.0, 5);
    auto sp = compute_spreads(perfect.lexicon, perfect.sets, MetricKind::cosine);
    c.require(semantic_affinity(sp.intra, sp.inter) == 1.0,
              "perfect translation sa_cosine != 1.0 exactly");
    c.require(sp.inter == 0.0, "perfect translation inter != 0");

    double mean = 0.0;
    const int repeats = 20;
    for (int rep = 0; rep < repeats; ++rep) {
        auto syn = oracle::make_random(200, 2, 64, 9000 + std::uint64_t(rep));
        auto s = compute_spreads(syn.lexicon, syn.sets, MetricKind::cosine);
        mean += semantic_affinity(s.intra, s.inter);
    }
    mean /= repeats;
    c.require(std::abs(mean - 0.5) < 0.02,
              "random pairing mean sa_cosine " + std::to_string(mean) +
                  " outside 0.5 +- 0.02");
    return c;
}

// ---- criterion 4: brute-force oracle equivalence ----
Check criterion4() {
    Check c;
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 100 && c.ok; ++trial) {
        const std::size_t M = 1 + rng() % 10;  // 1..10
        const std::size_t L = 2 + rng() % 2;
        auto syn = oracle::make_random(std::max<std::size_t>(2, M), L, 5, rng());
        for (MetricKind metric : {MetricKind::cosine, MetricKind::euclidean}) {
            auto sp = compute_spreads(syn.lexicon, syn.sets, metric);
            const double ri = oracle::naive_intra(syn.lexicon, syn.sets, metric);
            const double re = oracle::naive_inter(syn.lexicon, syn.sets, metric);
            c.require(std::abs(sp.intra - ri) <= 1e-12 * std::max(1.0, std::abs(ri)),
                      "intra mismatch on trial " + std::to_string(trial));
            c.require(std::abs(sp.inter - re) <= 1e-12 * std::max(1.0, std::abs(re)),
                      "inter mismatch on trial " + std::to_string(trial));
        }
        // expansion counts against direct multiplication
        auto expanded = expand_meaning_variants(syn.lexicon);
        std::size_t want_tuples = 0;
        for (const auto& e : syn.lexicon.entries) {
            std::size_t prod = 1;
            for (const auto& lang : syn.lexicon.languages) prod *= e.forms.at(lang).size();
            want_tuples += prod;
        }
        c.require(expanded.tuples.size() == want_tuples,
                  "tuple count mismatch on trial " + std::to_string(trial));
    }
    return c;
}

// ---- criterion 5: bootstrap behavior + performance ----
Check criterion5() {
    Check c;
    auto syn = oracle::make_synthetic(100, 16, {"a", "b"}, 0.5, 31);
    BootstrapConfig cfg;
    cfg.iterations = 500;
    auto e1 = bootstrap_sem(syn.lexicon, syn.sets, MetricKind::cosine, cfg);
    auto e2 = bootstrap_sem(syn.lexicon, syn.sets, MetricKind::cosine, cfg);
    c.require(e1.mean == e2.mean && e1.sem == e2.sem,
              "fixed seed not bit-identical");

    auto large = oracle::make_synthetic(400, 16, {"a", "b"}, 0.5, 31);
    auto el = bootstrap_sem(large.lexicon, large.sets, MetricKind::cosine, cfg);
    const double expected = e1.sem / 2.0;
    c.require(el.sem > expected * 0.75 && el.sem < expected * 1.25,
              "SEM(M=400) " + std::to_string(el.sem) + " not within 25% of SEM(M=100)/2 " +
                  std::to_string(expected));

    auto flat = oracle::make_synthetic(30, 8, {"a", "b"}, 0.0, 8);
    auto ez = bootstrap_sem(flat.lexicon, flat.sets, MetricKind::cosine, cfg);
    c.require(ez.sem == 0.0, "zero-variance input gave nonzero SEM");

    auto big = oracle::make_synthetic(349, 768, {"a", "b"}, 0.4, 77);
    BootstrapConfig perf;
    perf.iterations = 1000;
    const double t0 = now_s();
    bootstrap_sem(big.lexicon, big.sets, MetricKind::cosine, perf);
    const double elapsed = now_s() - t0;
    c.require(elapsed < 10.0,
              "1000-iteration bootstrap on M=349, d=768 took " + std::to_string(elapsed) +
                  " s (>= 10 s)");
    return c;
}

// ---- criterion 6: PHATE sanity + performance ----
double silhouette(const Eigen::MatrixXd& coords, const std::vector<int>& labels) {
    const int n = int(coords.rows());
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        std::map<int, std::pair<double, int>> per;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            per[labels[j]].first += (coords.row(i) - coords.row(j)).norm();
            per[labels[j]].second += 1;
        }
        const double a = per.at(labels[i]).first / std::max(1, per.at(labels[i]).second);
        double b = std::numeric_limits<double>::infinity();
        for (const auto& [lab, sc] : per) {
            if (lab != labels[i]) b = std::min(b, sc.first / sc.second);
        }
        total += (b - a) / std::max(a, b);
    }
    return total / n;
}

Check criterion6() {
    Check c;
    std::mt19937_64 rng(606);
    std::normal_distribution<double> g;

    // determinism
    Eigen::MatrixXd pts(100, 6);
    for (int i = 0; i < pts.size(); ++i) pts(i / 6, i % 6) = g(rng);
    std::vector<PointLabel> labels;
    for (int i = 0; i < 100; ++i) labels.emplace_back("L", "w" + std::to_string(i));
    PhateConfig cfg;
    cfg.knn = 10;
    auto a = phate_fit_matrix(pts, labels, cfg);
    auto b = phate_fit_matrix(pts, labels, cfg);
    c.require(a.chosen_t == b.chosen_t &&
                  (a.coordinates - b.coordinates).cwiseAbs().maxCoeff() == 0.0,
              "fit not deterministic under fixed seed");

    // diffusion rows sum to 1
    auto P = diffusion_operator(alpha_decay_kernel(pts, 10, 40.0));
    double worst = 0.0;
    for (int i = 0; i < P.rows(); ++i) worst = std::max(worst, std::abs(P.row(i).sum() - 1.0));
    c.require(worst < 1e-12, "diffusion row sums off by " + std::to_string(worst));

    // 3-cluster silhouette
    const int per = 100, d = 10;
    Eigen::MatrixXd clusters(3 * per, d);
    std::vector<int> truth(3 * per);
    std::vector<PointLabel> cl_labels;
    for (int k = 0; k < 3; ++k) {
        for (int i = 0; i < per; ++i) {
            const int row = k * per + i;
            for (int j = 0; j < d; ++j) clusters(row, j) = (j == k ? 12.0 : 0.0) + g(rng);
            truth[row] = k;
            cl_labels.emplace_back("L" + std::to_string(k), "w" + std::to_string(row));
        }
    }
    auto layout = phate_fit_matrix(clusters, cl_labels, PhateConfig{});
    const double sil = silhouette(layout.coordinates, truth);
    c.require(sil > 0.3, "3-cluster silhouette " + std::to_string(sil) + " <= 0.3");

    // MDS Procrustes recovery
    Eigen::MatrixXd planted(60, 2);
    for (int i = 0; i < planted.size(); ++i) planted(i / 2, i % 2) = g(rng);
    Eigen::MatrixXd D(60, 60);
    for (int i = 0; i < 60; ++i)
        for (int j = 0; j < 60; ++j) D(i, j) = (planted.row(i) - planted.row(j)).norm();
    auto emb = mds_embed(D, 2, 42);
    Eigen::MatrixXd xc = planted.rowwise() - planted.colwise().mean();
    Eigen::MatrixXd yc = emb.rowwise() - emb.colwise().mean();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(xc.transpose() * yc,
                                          Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::MatrixXd rot = svd.matrixV() * svd.matrixU().transpose();
    const double residual = (yc * rot - xc).norm() / std::sqrt(60.0);
    c.require(residual < 1e-6, "MDS Procrustes residual " + std::to_string(residual));

    // n = 1000 with default config under 60 s
    Eigen::MatrixXd big(1000, 10);
    for (int i = 0; i < big.size(); ++i) big(i / 10, i % 10) = g(rng);
    std::vector<PointLabel> big_labels;
    for (int i = 0; i < 1000; ++i) big_labels.emplace_back("L", "w" + std::to_string(i));
    const double t0 = now_s();
    phate_fit_matrix(big, big_labels, PhateConfig{});
    const double elapsed = now_s() - t0;
    c.require(elapsed < 60.0,
              "n=1000 default fit took " + std::to_string(elapsed) + " s (>= 60 s)");
    return c;
}

// ---- criterion 7: collapse detection ----
Check criterion7() {
    Check c;
    std::vector<std::vector<float>> same(20, std::vector<float>(8, 0.25f));
    std::vector<std::string> words;
    for (int i = 0; i < 20; ++i) words.push_back("w" + std::to_string(i));
    LanguageEmbeddingSet flat("m", "l", words, same);
    c.require(detect_collapse(flat).collapsed, "identical set not flagged");

    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    std::vector<std::vector<float>> rand_vecs;
    for (int i = 0; i < 20; ++i) {
        std::vector<float> v(8);
        double norm = 0.0;
        for (auto& x : v) {
            x = float(g(rng));
            norm += double(x) * double(x);
        }
        for (auto& x : v) x = float(double(x) / std::sqrt(norm));
        rand_vecs.push_back(std::move(v));
    }
    LanguageEmbeddingSet sphere("m", "l", words, rand_vecs);
    c.require(!detect_collapse(sphere).collapsed, "unit-norm random set flagged");
    return c;
}

// ---- criterion 8: diagnostic workflow fixtures ----
Check criterion8() {
    Check c;
    auto mk = [](const std::string& model, const std::string& ds, double ci, double ce,
                 double ei, double ee) {
        AffinityResult r;
        r.model_id = model;
        r.dataset_id = ds;
        r.sa_cosine = semantic_affinity(ci, ce);
        r.cosine_spreads.intra = ci;
        r.cosine_spreads.inter = ce;
        r.euclidean_spreads.intra = ei;
        r.euclidean_spreads.inter = ee;
        return r;
    };
    std::vector<AffinityResult> xlmr = {
        mk("xlmr", "ds1", 0.0046, 0.0060, 0.095, 0.106),
        mk("xlmr", "ds2", 0.0046, 0.0060, 0.095, 0.105),
        mk("xlmr", "ds3", 0.0046, 0.0060, 0.095, 0.109),
        mk("xlmr", "ds4", 0.0046, 0.0060, 0.095, 0.098),
    };
    auto rep = stage2_diagnose(xlmr);
    c.require(rep.stage1_decision == Stage1Decision::investigate, "xlmr stage1 != investigate");
    c.require(rep.magnitude_finding &&
                  *rep.magnitude_finding == MagnitudeFinding::near_collapse,
              "xlmr magnitude != near_collapse");
    c.require(rep.variance_finding && *rep.variance_finding == VarianceFinding::stable,
              "xlmr variance != stable");
    c.require(rep.separation_finding &&
                  *rep.separation_finding == SeparationFinding::active_separation,
              "xlmr separation != active_separation");
    c.require(std::abs(rep.inter_intra_ratio_cosine - 1.30) < 0.01,
              "xlmr ratio " + std::to_string(rep.inter_intra_ratio_cosine) +
                  " != 1.30 +- 0.01");

    auto labse = stage2_diagnose({mk("labse", "ds1", 0.379, 0.090, 12.17, 6.20)});
    c.require(labse.stage1_decision == Stage1Decision::deploy, "labse stage1 != deploy");
    c.require(labse.narrative.empty(), "labse has a pathology narrative");
    c.require(!labse.magnitude_finding && !labse.variance_finding &&
                  !labse.separation_finding,
              "labse has stage-2 findings");
    return c;
}

// ---- criterion 9: end-to-end CLI vs the independent python oracle ----
Check criterion9() {
    Check c;
    const std::string cli = SEMA_CLI_PATH;
    const std::filesystem::path data = std::filesystem::path(SEMA_DATA_DIR) / "toy";
    auto out = fresh_dir("sema_acc9_out");
    auto cache = fresh_dir("sema_acc9_cache");

    auto run_cli = [&]() {
        const std::string cmd = cli + " run " + (data / "run-toy.json").string() +
                                " --output-dir " + out.string() + " --cache-root " +
                                cache.string() + " > " + (out / "cli.log").string() +
                                " 2>&1";
        return std::system(cmd.c_str());
    };
    c.require(run_cli() == 0, "CLI run exited nonzero");
    if (!c.ok) return c;

    // CSV schema
    const std::string csv = slurp(out / "results.csv");
    const std::string header =
        "model,dataset,language_pair,sa_cosine,sem_cosine,sa_euclidean,sem_euclidean,"
        "intra_cosine,inter_cosine,intra_euclidean,inter_euclidean,tier,collapse_flag,"
        "chosen_t";
    c.require(csv.rfind(header + "\n", 0) == 0, "CSV header mismatch");
    std::stringstream rows(csv);
    std::string line, data_row;
    std::getline(rows, line);
    std::getline(rows, data_row);
    std::vector<std::string> cols;
    {
        std::stringstream ss(data_row);
        std::string item;
        while (std::getline(ss, item, ',')) cols.push_back(item);
    }
    c.require(cols.size() == 14, "CSV row has wrong column count");
    if (!c.ok) return c;

    // independent oracle
    const std::string oracle_cmd =
        std::string("python3 ") + SEMA_ORACLE_SCRIPT + " chn " +
        (data / "toy-chn.txt").string() + " " + (data / "toy-noisy-chn.tsv").string() +
        " enu " + (data / "toy-enu.txt").string() + " " +
        (data / "toy-noisy-enu.tsv").string() + " > " + (out / "oracle.txt").string();
    c.require(std::system(oracle_cmd.c_str()) == 0, "oracle script failed");
    if (!c.ok) return c;
    std::ifstream oin(out / "oracle.txt");
    double o_intra_c, o_inter_c, o_sa_c, o_intra_e, o_inter_e, o_sa_e;
    oin >> o_intra_c >> o_inter_c >> o_sa_c >> o_intra_e >> o_inter_e >> o_sa_e;
    c.require(bool(oin), "oracle output unparsable");
    if (!c.ok) return c;

    auto close = [](const std::string& got, double want) {
        return std::abs(std::stod(got) - want) < 1e-9;
    };
    c.require(close(cols[3], o_sa_c), "sa_cosine differs from oracle by >= 1e-9");
    c.require(close(cols[5], o_sa_e), "sa_euclidean differs from oracle by >= 1e-9");
    c.require(close(cols[7], o_intra_c), "intra_cosine differs from oracle");
    c.require(close(cols[8], o_inter_c), "inter_cosine differs from oracle");
    c.require(close(cols[9], o_intra_e), "intra_euclidean differs from oracle");
    c.require(close(cols[10], o_inter_e), "inter_euclidean differs from oracle");

    // SVG legend
    const std::string svg = slurp(out / "toy-noisy-toy-phate.svg");
    c.require(svg.find("SA(cos)=") != std::string::npos, "SVG lacks SA(cos) legend line");
    c.require(svg.find("SA(eucl)=") != std::string::npos, "SVG lacks SA(eucl) legend line");

    // rerun byte-identical excluding timing
    const std::string csv1 = slurp(out / "results.csv");
    const std::string svg1 = svg;
    json rep1 = json::parse(slurp(out / "report.json"));
    c.require(run_cli() == 0, "CLI rerun exited nonzero");
    json rep2 = json::parse(slurp(out / "report.json"));
    c.require(slurp(out / "results.csv") == csv1, "rerun CSV differs");
    c.require(slurp(out / "toy-noisy-toy-phate.svg") == svg1, "rerun SVG differs");
    c.require(rep1.at("report") == rep2.at("report"),
              "rerun report block differs (excluding timing)");
    return c;
}

// ---- criterion 10: published tier-table partition ----
Check criterion10() {
    Check c;
    const std::vector<double> avg_sa = {0.692, 0.671, 0.669, 0.607, 0.596, 0.587, 0.564,
                                        0.558, 0.546, 0.550, 0.495, 0.480, 0.449};
    int t1 = 0, t2 = 0, t3 = 0;
    for (double sa : avg_sa) {
        switch (classify_tier(sa)) {
            case Tier::tier1: ++t1; break;
            case Tier::tier2: ++t2; break;
            case Tier::tier3: ++t3; break;
        }
    }
    c.require(t1 == 3 && t2 == 7 && t3 == 3,
              "partition is " + std::to_string(t1) + "/" + std::to_string(t2) + "/" +
                  std::to_string(t3) + ", expected 3/7/3 (0.607 >= 0.60 classifies as "
                  "tier1 under the stated threshold)");
    return c;
}

// ---- criterion 11: live-endpoint smoke (optional) + local mock matrix ----
std::vector<float> mock_vector(const std::string& word) {
    std::vector<float> v(6);
    std::size_t h = std::hash<std::string>{}(word);
    for (int i = 0; i < 6; ++i) {
        v[std::size_t(i)] = float((h >> (i * 7)) % 89) / 89.0f + 0.05f;
    }
    return v;
}

Check matrix_smoke(const std::string& endpoint, const std::string& model_id,
                   const std::string& auth_env) {
    Check c;
    const std::filesystem::path data = std::filesystem::path(SEMA_DATA_DIR) / "toy";
    RunConfig cfg;
    cfg.cache_root = fresh_dir("sema_acc11_cache");
    cfg.output_dir = fresh_dir("sema_acc11_out");
    cfg.bootstrap_iterations = 200;
    cfg.phate.knn = 5;
    ModelSpec m;
    m.model_id = model_id;
    m.kind = ModelSpec::Kind::http_api;
    m.endpoint = endpoint;
    m.auth_env_var = auth_env;
    m.backoff_initial_s = 0.05;
    cfg.models.push_back(m);
    DatasetSpec ds;
    ds.dataset_id = "toy";
    ds.language_files = {{"chn", data / "toy-chn.txt"}, {"enu", data / "toy-enu.txt"}};
    cfg.datasets.push_back(ds);

    auto report = run_matrix(cfg);
    c.require(report.experiments.size() == 1 && report.experiments[0].ok,
              "matrix run failed: " +
                  (report.experiments.empty() ? std::string("no experiments")
                                              : report.experiments[0].error));
    if (!c.ok) return c;
    c.require(report.experiments[0].fetch.fetched > 0, "no embeddings fetched");

    auto warm = run_matrix(cfg);
    c.require(warm.experiments[0].ok, "warm rerun failed");
    c.require(warm.experiments[0].fetch.fetched == 0,
              "warm rerun fetched " + std::to_string(warm.experiments[0].fetch.fetched));
    c.require(warm.experiments[0].result.sa_cosine ==
                  report.experiments[0].result.sa_cosine,
              "warm rerun changed sa_cosine");

    // invariant suites on the fetched embeddings
    auto sp_c = report.experiments[0].result.cosine_spreads;
    c.require(sp_c.intra > 0.0, "degenerate intra on fetched embeddings");
    const double sa = semantic_affinity(sp_c.intra, sp_c.inter);
    c.require(sa > 0.0 && sa < 1.0 &&
                  sa == report.experiments[0].result.sa_cosine,
              "SA inconsistent on fetched embeddings");
    return c;
}

Check criterion11() {
    Check c;
    {
        // always-on local smoke against an in-process mock endpoint
        httplib::Server server;
        server.Post("/v1/embeddings", [](const httplib::Request& req,
                                         httplib::Response& res) {
            auto body = json::parse(req.body);
            auto inputs = body.at("input").get<std::vector<std::string>>();
            json payload = json::array();
            for (std::size_t i = 0; i < inputs.size(); ++i) {
                payload.push_back({{"index", i}, {"embedding", mock_vector(inputs[i])}});
            }
            res.set_content(json{{"data", payload}}.dump(), "application/json");
        });
        const int port = server.bind_to_any_port("127.0.0.1");
        std::thread listener([&] { server.listen_after_bind(); });
        server.wait_until_ready();
        auto smoke = matrix_smoke(
            "http://127.0.0.1:" + std::to_string(port) + "/v1/embeddings", "mock-model",
            "");
        server.stop();
        listener.join();
        c.require(smoke.ok, "local mock smoke: " + smoke.detail);
    }

    if (const char* live = std::getenv("SEMABENCH_LIVE_ENDPOINT")) {
        const char* model = std::getenv("SEMABENCH_LIVE_MODEL");
        const char* auth = std::getenv("SEMABENCH_LIVE_AUTH_ENV");
        auto smoke = matrix_smoke(live, model ? model : "text-embedding-3-small",
                                  auth ? auth : "");
        c.require(smoke.ok, "live endpoint smoke: " + smoke.detail);
        c.detail += c.detail.empty() ? "live endpoint exercised" : "";
    } else {
        std::printf(
        "criterion 11 note: full 52-experiment benchmark requires credentialed access "
        "to 13 commercial models and is not reproduced here; set "
        "SEMABENCH_LIVE_ENDPOINT (and optionally SEMABENCH_LIVE_MODEL, "
        "SEMABENCH_LIVE_AUTH_ENV) for the optional live smoke test\n");
    }
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    using Fn = Check (*)();
    const std::pair<int, Fn> criteria[] = {
        {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
        {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8},
        {9, criterion9}, {10, criterion10}, {11, criterion11},
    };

    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int failures = 0;
    for (const auto& [num, fn] : criteria) {
        if (only != 0 && num != only) continue;
        Check result;
        try {
            result = fn();
        } catch (const std::exception& e) {
            result.ok = false;
            result.detail = std::string("exception: ") + e.what();
        }
        std::printf("criterion %2d: %s%s%s\n", num, result.ok ? "PASS" : "FAIL",
                    result.detail.empty() ? "" : " - ", result.detail.c_str());
        if (!result.ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
