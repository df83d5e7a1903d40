#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "dsclust/affinity.hpp"
#include "dsclust/dynamics.hpp"
#include "dsclust/error.hpp"
#include "dsclust/simplex.hpp"

namespace dsclust {

/// One extracted cluster, indices in the original numbering.
struct DominantSet {
    std::vector<Eigen::Index> members;  // sorted ascending
    Vector char_vector;                 // converged weights restricted to members, renormalized
    double cohesiveness = 0.0;          // x^T A x at convergence
    Eigen::Index centroid = 0;          // member with the largest weight (ties -> lowest index)
    int extraction_order = 0;
    int iterations = 0;
    bool converged = false;
    bool degenerate = false;  // empty support or zero payoff, emitted as singleton
};

struct ClusteringParams {
    double theta = kDefaultTheta;
    DynamicsConfig dynamics;
    std::optional<double> sigma;  // set when affinities were built from points
};

struct ClusteringResult {
    std::vector<int> labels;        // label of node i == extraction_order of its cluster
    std::vector<bool> outlier;      // singleton with zero cohesiveness
    std::vector<DominantSet> clusters;
    ClusteringParams params;
};

inline double cohesiveness(const Matrix& a, const Vector& x) {
    if (x.size() != a.rows())
        throw InvalidInputError("cohesiveness: dimension mismatch");
    return average_payoff(a, x);
}

namespace detail {

inline DominantSet make_singleton(Eigen::Index node, bool degenerate, int iterations,
                                  bool converged, double coh) {
    DominantSet ds;
    ds.members = {node};
    ds.char_vector = Vector::Ones(1);
    ds.cohesiveness = coh;
    ds.centroid = node;
    ds.iterations = iterations;
    ds.converged = converged;
    ds.degenerate = degenerate;
    return ds;
}

}  // namespace detail

/// Relative strength of the deterministic tie-break applied to the
/// barycenter start. The exact barycenter is a fixed point of the dynamics
/// on any regular (sub)graph, e.g. two disjoint triangles, so extraction
/// would stall at that saddle; a small index-ordered bias lets the dynamics
/// escape while keeping runs bit-for-bit reproducible. Must stay well above
/// the convergence precision. Ties favour lower node indices.
inline constexpr double kStartTieBreak = 1e-2;

/// Deterministically tie-broken barycenter used as the extraction start.
inline Vector extraction_start(Eigen::Index n) {
    Vector x0(n);
    for (Eigen::Index i = 0; i < n; ++i)
        x0[i] = 1.0 + kStartTieBreak * static_cast<double>(n - i) / static_cast<double>(n);
    return renormalize(x0);
}

/// Run the dynamics from the (tie-broken) barycenter on a (sub)matrix and
/// read off the theta-support. Degenerate outcomes (zero payoff, empty
/// support) yield the argmax-weight node as a singleton with zero
/// cohesiveness. Member indices are local to the given matrix; the peeling
/// driver remaps them.
inline DominantSet extract_dominant_set(const Matrix& a_sub, const DynamicsConfig& cfg,
                                        double theta = kDefaultTheta) {
    const Eigen::Index n = a_sub.rows();
    if (n < 1) throw InvalidInputError("extract_dominant_set: empty matrix");

    Vector x0 = extraction_start(n);
    DynamicsResult dyn;
    try {
        dyn = run_dynamics(a_sub, x0, cfg);
    } catch (const ZeroPayoffError&) {
        // Disconnected support; lowest index is the argmax of the uniform start.
        return detail::make_singleton(0, true, 0, false, 0.0);
    }

    Support sup = support(dyn.x_final, theta);
    if (sup.empty()) {
        Eigen::Index argmax = 0;
        dyn.x_final.maxCoeff(&argmax);
        return detail::make_singleton(argmax, true, dyn.iterations, dyn.converged, 0.0);
    }

    DominantSet ds;
    ds.members = std::move(sup.indices);
    Vector restricted(static_cast<Eigen::Index>(ds.members.size()));
    for (std::size_t k = 0; k < ds.members.size(); ++k)
        restricted[static_cast<Eigen::Index>(k)] = dyn.x_final[ds.members[k]];
    ds.char_vector = renormalize(restricted);
    ds.cohesiveness = dyn.payoff;
    Eigen::Index local_argmax = 0;
    ds.char_vector.maxCoeff(&local_argmax);
    // maxCoeff returns the first maximal entry, so ties resolve to the lowest index.
    ds.centroid = ds.members[static_cast<std::size_t>(local_argmax)];
    ds.iterations = dyn.iterations;
    ds.converged = dyn.converged;
    return ds;
}

/// Build labels (and outlier flags) from an extraction-ordered cluster list.
/// Throws InternalConsistencyError unless the clusters partition {0..n-1}.
inline std::pair<std::vector<int>, std::vector<bool>> assign_labels(
    const std::vector<DominantSet>& clusters, Eigen::Index n) {
    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    std::vector<bool> outlier(static_cast<std::size_t>(n), false);
    for (std::size_t k = 0; k < clusters.size(); ++k) {
        const DominantSet& ds = clusters[k];
        if (ds.extraction_order != static_cast<int>(k))
            throw InternalConsistencyError("assign_labels: extraction_order gap");
        const bool is_outlier = ds.members.size() == 1 && ds.cohesiveness == 0.0;
        for (Eigen::Index node : ds.members) {
            if (node < 0 || node >= n)
                throw InternalConsistencyError("assign_labels: node index out of range");
            if (labels[static_cast<std::size_t>(node)] != -1)
                throw InternalConsistencyError("assign_labels: node assigned twice");
            labels[static_cast<std::size_t>(node)] = static_cast<int>(k);
            outlier[static_cast<std::size_t>(node)] = is_outlier;
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (labels[static_cast<std::size_t>(i)] == -1)
            throw InternalConsistencyError("assign_labels: node not covered by any cluster");
    }
    return {std::move(labels), std::move(outlier)};
}

/// Iteratively extract a dominant set, remove its nodes, and repeat on the
/// residual graph until every node is grouped. The input matrix is never
/// mutated; residual submatrices carry an explicit original-index list.
inline ClusteringResult peel_clusters(const Matrix& a, const DynamicsConfig& cfg,
                                      double theta = kDefaultTheta) {
    require_valid_affinity(a);
    cfg.validate();
    const Eigen::Index n = a.rows();
    if (n < 1) throw InvalidInputError("peel_clusters: empty affinity matrix");

    std::vector<Eigen::Index> remaining(static_cast<std::size_t>(n));
    std::iota(remaining.begin(), remaining.end(), Eigen::Index{0});

    ClusteringResult result;
    result.params.theta = theta;
    result.params.dynamics = cfg;

    Matrix residual = a;
    while (!remaining.empty()) {
        DominantSet ds = extract_dominant_set(residual, cfg, theta);

        // Map local member indices back to the original numbering.
        for (Eigen::Index& m : ds.members) m = remaining[static_cast<std::size_t>(m)];
        ds.centroid = remaining[static_cast<std::size_t>(ds.centroid)];
        ds.extraction_order = static_cast<int>(result.clusters.size());

        // Delete member rows/columns from the residual.
        std::vector<Eigen::Index> keep;
        keep.reserve(remaining.size() - ds.members.size());
        std::size_t mi = 0;
        std::vector<Eigen::Index> keep_local;
        for (std::size_t li = 0; li < remaining.size(); ++li) {
            if (mi < ds.members.size() && remaining[li] == ds.members[mi]) {
                ++mi;
            } else {
                keep.push_back(remaining[li]);
                keep_local.push_back(static_cast<Eigen::Index>(li));
            }
        }
        Matrix next(static_cast<Eigen::Index>(keep_local.size()),
                    static_cast<Eigen::Index>(keep_local.size()));
        for (std::size_t r = 0; r < keep_local.size(); ++r)
            for (std::size_t c = 0; c < keep_local.size(); ++c)
                next(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    residual(keep_local[r], keep_local[c]);
        residual = std::move(next);
        remaining = std::move(keep);

        result.clusters.push_back(std::move(ds));
    }

    auto [labels, outlier] = assign_labels(result.clusters, n);
    result.labels = std::move(labels);
    result.outlier = std::move(outlier);
    return result;
}

}  // namespace dsclust
