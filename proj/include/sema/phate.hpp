#pragma once

#include "sema/embedding_set.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace sema {

class phate_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PhateConfig {
    int knn = 15;
    double decay = 40.0;
    int t = 0;  // 0 = auto (entropy knee), otherwise fixed diffusion time
    double gamma = 1.0;  // only the log potential (gamma = 1) is supported
    int n_components = 2;
    std::uint64_t seed = 42;
    int t_max = 100;
};

/// (language, word) label per layout row.
using PointLabel = std::pair<std::string, std::string>;

struct PhateLayout {
    Eigen::MatrixXd coordinates;  // n x n_components
    std::vector<PointLabel> labels;
    int chosen_t = 0;
    std::vector<std::pair<int, double>> entropy_curve;
    bool degenerate = false;
};

/// Stack all language vectors, drop duplicate rows per language, z-score each
/// dimension and add 1e-10 noise (deterministic given seed). Zero-variance
/// dimensions pass through centered with scale 1.
std::pair<Eigen::MatrixXd, std::vector<PointLabel>> preprocess(
    const std::map<std::string, LanguageEmbeddingSet>& sets, std::uint64_t seed,
    int min_points);

/// Adaptive-bandwidth kernel: eps_k(x) = distance to the k-th nearest
/// neighbor; K(x,y) = 0.5 [exp(-(d/eps_x)^a) + exp(-(d/eps_y)^a)].
Eigen::MatrixXd alpha_decay_kernel(const Eigen::MatrixXd& points, int knn, double decay);

/// Row-stochastic P = D^-1 K.
Eigen::MatrixXd diffusion_operator(const Eigen::MatrixXd& kernel);

/// Von Neumann entropy of the diffusion spectrum for t = 1..t_max; the chosen
/// t is the knee located by maximum distance to the chord of the curve.
std::pair<int, std::vector<std::pair<int, double>>> select_t(const Eigen::MatrixXd& P,
                                                             int t_max);

/// Rowwise Euclidean distances between -log(P^t + 1e-12) rows.
Eigen::MatrixXd potential_distances(const Eigen::MatrixXd& P, int t);

/// Classical MDS initialization refined by SMACOF stress majorization until
/// the relative stress improvement drops below 1e-6 (or 300 iterations).
Eigen::MatrixXd mds_embed(const Eigen::MatrixXd& distances, int n_components,
                          std::uint64_t seed, bool* degenerate = nullptr);

PhateLayout phate_fit(const std::map<std::string, LanguageEmbeddingSet>& sets,
                      const PhateConfig& config);

/// phate_fit on a raw point matrix with caller-supplied labels (used by the
/// pipeline after its own preprocessing, and handy for synthetic tests).
PhateLayout phate_fit_matrix(const Eigen::MatrixXd& points,
                             std::vector<PointLabel> labels, const PhateConfig& config);

}  // namespace sema
