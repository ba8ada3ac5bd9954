#include "sema/phate.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <random>

namespace sema {
namespace {

Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& x) {
    const Eigen::VectorXd sq = x.rowwise().squaredNorm();
    Eigen::MatrixXd d2 = sq.replicate(1, x.rows()) + sq.transpose().replicate(x.rows(), 1) -
                         2.0 * (x * x.transpose());
    return d2.cwiseMax(0.0).cwiseSqrt();
}

Eigen::MatrixXd matrix_power(const Eigen::MatrixXd& p, int t) {
    Eigen::MatrixXd result = Eigen::MatrixXd::Identity(p.rows(), p.cols());
    Eigen::MatrixXd base = p;
    int e = t;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

}  // namespace

std::pair<Eigen::MatrixXd, std::vector<PointLabel>> preprocess(
    const std::map<std::string, LanguageEmbeddingSet>& sets, std::uint64_t seed,
    int min_points) {
    if (sets.empty()) throw phate_error("preprocess: no embedding sets");
    const std::size_t dim = sets.begin()->second.dimension();

    std::vector<Eigen::VectorXd> rows;
    std::vector<PointLabel> labels;
    for (const auto& [lang, set] : sets) {
        if (set.dimension() != dim) throw phate_error("preprocess: dimension mismatch");
        std::size_t lang_start = rows.size();
        for (std::size_t i = 0; i < set.size(); ++i) {
            auto v = set.vector_at(i);
            Eigen::VectorXd row(dim);
            for (std::size_t k = 0; k < dim; ++k) row(k) = v[k];
            // duplicate rows within one language cause zero kernel bandwidths
            bool dup = false;
            for (std::size_t j = lang_start; j < rows.size() && !dup; ++j) {
                dup = rows[j] == row;
            }
            if (dup) continue;
            rows.push_back(std::move(row));
            labels.emplace_back(lang, set.words()[i]);
        }
    }
    if (rows.size() < std::size_t(std::max(min_points, 2))) {
        throw phate_error("preprocess: too few points after duplicate filtering (" +
                          std::to_string(rows.size()) + ", need >= " +
                          std::to_string(std::max(min_points, 2)) + ")");
    }

    Eigen::MatrixXd x(rows.size(), dim);
    for (std::size_t i = 0; i < rows.size(); ++i) x.row(i) = rows[i];

    // z-score per dimension; constant dimensions are centered, scale 1
    const Eigen::RowVectorXd mean = x.colwise().mean();
    x.rowwise() -= mean;
    Eigen::RowVectorXd std_dev =
        (x.array().square().colwise().sum() / double(x.rows())).sqrt();
    for (Eigen::Index k = 0; k < std_dev.size(); ++k) {
        if (std_dev(k) > 0.0) x.col(k) /= std_dev(k);
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index k = 0; k < x.cols(); ++k) x(i, k) += 1e-10 * noise(rng);

    return {std::move(x), std::move(labels)};
}

Eigen::MatrixXd alpha_decay_kernel(const Eigen::MatrixXd& points, int knn, double decay) {
    const Eigen::Index n = points.rows();
    if (n <= knn) {
        throw phate_error("alpha_decay_kernel: need more points than knn (" +
                          std::to_string(n) + " <= " + std::to_string(knn) + ")");
    }
    Eigen::MatrixXd dist = pairwise_distances(points);

    Eigen::VectorXd eps(n);
    std::vector<double> col(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) col[j] = dist(i, j);
        std::nth_element(col.begin(), col.begin() + knn, col.end());
        eps(i) = col[knn];  // self-distance 0 occupies rank 0
        if (eps(i) <= 0.0) {
            throw phate_error("alpha_decay_kernel: zero bandwidth at point " +
                              std::to_string(i) + " (duplicate points?)");
        }
    }

    Eigen::MatrixXd kernel(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        kernel(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double d = dist(i, j);
            const double k = 0.5 * (std::exp(-std::pow(d / eps(i), decay)) +
                                    std::exp(-std::pow(d / eps(j), decay)));
            kernel(i, j) = k;
            kernel(j, i) = k;
        }
    }
    return kernel;
}

Eigen::MatrixXd diffusion_operator(const Eigen::MatrixXd& kernel) {
    if (kernel.rows() != kernel.cols()) throw phate_error("diffusion_operator: not square");
    Eigen::VectorXd row_sums = kernel.rowwise().sum();
    for (Eigen::Index i = 0; i < row_sums.size(); ++i) {
        if (!(row_sums(i) > 0.0)) {
            throw phate_error("diffusion_operator: zero row sum at row " + std::to_string(i));
        }
    }
    return row_sums.cwiseInverse().asDiagonal() * kernel;
}

std::pair<int, std::vector<std::pair<int, double>>> select_t(const Eigen::MatrixXd& P,
                                                             int t_max) {
    if (t_max < 1) throw phate_error("select_t: t_max must be >= 1");
    // nonnegative diffusion spectrum via singular values
    Eigen::BDCSVD<Eigen::MatrixXd> svd(P);
    if (svd.info() != Eigen::Success) throw phate_error("select_t: SVD failed");
    const Eigen::VectorXd sigma = svd.singularValues();

    std::vector<std::pair<int, double>> curve;
    curve.reserve(t_max);
    for (int t = 1; t <= t_max; ++t) {
        // eta_i = sigma_i^t / sum_j sigma_j^t; H = -sum eta log eta
        double norm = 0.0;
        for (Eigen::Index i = 0; i < sigma.size(); ++i) norm += std::pow(sigma(i), t);
        double h = 0.0;
        for (Eigen::Index i = 0; i < sigma.size(); ++i) {
            const double eta = std::pow(sigma(i), t) / norm;
            if (eta > 0.0) h -= eta * std::log(eta);
        }
        curve.emplace_back(t, h);
    }

    // knee: maximum distance to the chord from (1, H(1)) to (t_max, H(t_max))
    const double x1 = double(curve.front().first), y1 = curve.front().second;
    const double x2 = double(curve.back().first), y2 = curve.back().second;
    const double chord_len = std::hypot(x2 - x1, y2 - y1);
    int best_t = curve.front().first;
    double best_dist = -1.0;
    for (const auto& [t, h] : curve) {
        double d;
        if (chord_len == 0.0) {
            d = 0.0;
        } else {
            d = std::abs((y2 - y1) * t - (x2 - x1) * h + x2 * y1 - y2 * x1) / chord_len;
        }
        if (d > best_dist) {
            best_dist = d;
            best_t = t;
        }
    }
    return {best_t, std::move(curve)};
}

Eigen::MatrixXd potential_distances(const Eigen::MatrixXd& P, int t) {
    if (t < 1) throw phate_error("potential_distances: t must be >= 1");
    Eigen::MatrixXd pt = matrix_power(P, t);
    Eigen::MatrixXd u = (-(pt.array() + 1e-12).log()).matrix();
    Eigen::MatrixXd d = pairwise_distances(u);
    d.diagonal().setZero();
    return d;
}

Eigen::MatrixXd mds_embed(const Eigen::MatrixXd& distances, int n_components,
                          std::uint64_t seed, bool* degenerate) {
    (void)seed;  // classical initialization is deterministic; kept for the contract
    const Eigen::Index n = distances.rows();
    if (distances.cols() != n) throw phate_error("mds_embed: distance matrix not square");
    if (n_components < 1) throw phate_error("mds_embed: n_components must be >= 1");
    if (degenerate) *degenerate = false;

    if (distances.maxCoeff() <= 0.0) {
        if (degenerate) *degenerate = true;
        return Eigen::MatrixXd::Zero(n, n_components);
    }

    // classical MDS: double-center the squared distances, take top eigenpairs
    Eigen::MatrixXd d2 = distances.array().square();
    Eigen::VectorXd row_mean = d2.rowwise().mean();
    const double grand_mean = d2.mean();
    Eigen::MatrixXd b(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            b(i, j) = -0.5 * (d2(i, j) - row_mean(i) - row_mean(j) + grand_mean);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
    if (es.info() != Eigen::Success) throw phate_error("mds_embed: eigendecomposition failed");
    Eigen::MatrixXd x(n, n_components);
    for (int c = 0; c < n_components; ++c) {
        const Eigen::Index idx = n - 1 - c;  // eigenvalues ascending
        const double lambda = idx >= 0 ? es.eigenvalues()(idx) : 0.0;
        if (idx >= 0 && lambda > 0.0) {
            x.col(c) = es.eigenvectors().col(idx) * std::sqrt(lambda);
        } else {
            x.col(c).setZero();
        }
    }

    // SMACOF majorization on the raw dissimilarities
    auto stress_of = [&](const Eigen::MatrixXd& cur) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = i + 1; j < n; ++j) {
                const double dij = (cur.row(i) - cur.row(j)).norm();
                const double diff = distances(i, j) - dij;
                s += diff * diff;
            }
        }
        return s;
    };

    double stress = stress_of(x);
    for (int iter = 0; iter < 300; ++iter) {
        // Guttman transform: X <- (1/n) B(X) X
        Eigen::MatrixXd bx = Eigen::MatrixXd::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                if (i == j) continue;
                const double dij = (x.row(i) - x.row(j)).norm();
                bx(i, j) = dij > 0.0 ? -distances(i, j) / dij : 0.0;
            }
        }
        for (Eigen::Index i = 0; i < n; ++i) bx(i, i) = -bx.row(i).sum();
        x = (bx * x) / double(n);

        const double new_stress = stress_of(x);
        if (stress > 0.0 && (stress - new_stress) / stress < 1e-6) {
            stress = new_stress;
            break;
        }
        stress = new_stress;
        if (stress == 0.0) break;
    }
    return x;
}

PhateLayout phate_fit_matrix(const Eigen::MatrixXd& points, std::vector<PointLabel> labels,
                             const PhateConfig& config) {
    if (config.gamma != 1.0) {
        throw phate_error("only the gamma=1 log potential is supported");
    }
    if (std::size_t(points.rows()) != labels.size()) {
        throw phate_error("phate_fit: label count does not match point count");
    }
    PhateLayout layout;
    layout.labels = std::move(labels);

    Eigen::MatrixXd kernel = alpha_decay_kernel(points, config.knn, config.decay);
    Eigen::MatrixXd p = diffusion_operator(kernel);
    if (config.t > 0) {
        layout.chosen_t = config.t;
    } else {
        auto [t, curve] = select_t(p, config.t_max);
        layout.chosen_t = t;
        layout.entropy_curve = std::move(curve);
    }
    Eigen::MatrixXd pot = potential_distances(p, layout.chosen_t);
    layout.coordinates =
        mds_embed(pot, config.n_components, config.seed, &layout.degenerate);
    if (!layout.coordinates.allFinite()) {
        throw phate_error("phate_fit: non-finite coordinates");
    }
    return layout;
}

PhateLayout phate_fit(const std::map<std::string, LanguageEmbeddingSet>& sets,
                      const PhateConfig& config) {
    auto [x, labels] = preprocess(sets, config.seed, config.knn + 1);
    return phate_fit_matrix(x, std::move(labels), config);
}

}  // namespace sema
