#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "dsclust/error.hpp"
#include "dsclust/simplex.hpp"

namespace dsclust {

enum class MetricKind { Euclidean };

inline const char* metric_name(MetricKind m) {
    switch (m) {
        case MetricKind::Euclidean: return "euclidean";
    }
    return "unknown";
}

/// m x d coordinate matrix, one point per row.
struct PointCloud {
    Matrix points;

    Eigen::Index size() const { return points.rows(); }
    Eigen::Index dim() const { return points.cols(); }
};

inline void validate_points(const PointCloud& pc) {
    if (pc.size() < 1 || pc.dim() < 1)
        throw InvalidInputError("point cloud must have at least one point and one dimension");
    if (!pc.points.allFinite())
        throw InvalidInputError("point cloud contains a non-finite coordinate");
}

/// Full n x n distance matrix with zero diagonal.
struct DistanceMatrix {
    Matrix values;
    MetricKind metric = MetricKind::Euclidean;

    Eigen::Index size() const { return values.rows(); }
};

inline DistanceMatrix pairwise_distances(const PointCloud& pc,
                                         MetricKind metric = MetricKind::Euclidean) {
    validate_points(pc);
    const Eigen::Index n = pc.size();
    Matrix d = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double dij = (pc.points.row(i) - pc.points.row(j)).norm();
            d(i, j) = dij;
            d(j, i) = dij;
        }
    }
    return DistanceMatrix{std::move(d), metric};
}

/// 3 * unbiased sample variance of the condensed (strict upper triangle)
/// distance vector. Returns 0 when all pairwise distances are equal; the
/// kernel refuses sigma == 0, so callers must reject that case.
inline double sigma_heuristic(const DistanceMatrix& dm) {
    const Eigen::Index n = dm.size();
    if (n < 2) throw InsufficientDataError("sigma_heuristic: need at least 2 points");
    const Eigen::Index m = n * (n - 1) / 2;
    double mean = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) mean += dm.values(i, j);
    mean /= static_cast<double>(m);
    if (m < 2) return 0.0;
    double ss = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double dev = dm.values(i, j) - mean;
            ss += dev * dev;
        }
    }
    return 3.0 * ss / static_cast<double>(m - 1);
}

/// Similarity weights a(i,j) = exp(-d(i,j)/sigma), diagonal forced to zero.
inline Matrix gaussian_kernel(const DistanceMatrix& dm, double sigma) {
    if (!(sigma > 0.0)) throw InvalidParameterError("gaussian_kernel: sigma must be > 0");
    Matrix a = (-dm.values / sigma).array().exp();
    a.diagonal().setZero();
    return a;
}

/// Pure report on affinity-matrix health; never mutates or throws.
struct AffinityDiagnostics {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> negative_entries;
    std::vector<std::pair<Eigen::Index, Eigen::Index>> non_finite_entries;
    std::vector<Eigen::Index> nonzero_diagonal;
    bool square = true;
    bool symmetric = true;       // informational, asymmetry is allowed
    bool fully_disconnected = false;

    bool valid() const {
        return square && negative_entries.empty() && non_finite_entries.empty() &&
               nonzero_diagonal.empty();
    }
};

inline AffinityDiagnostics validate_affinity(const Matrix& a) {
    AffinityDiagnostics diag;
    if (a.rows() != a.cols()) {
        diag.square = false;
        return diag;
    }
    const Eigen::Index n = a.rows();
    bool any_positive = false;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (a(i, i) != 0.0) diag.nonzero_diagonal.push_back(i);
        for (Eigen::Index j = 0; j < n; ++j) {
            const double v = a(i, j);
            if (!std::isfinite(v))
                diag.non_finite_entries.emplace_back(i, j);
            else if (v < 0.0)
                diag.negative_entries.emplace_back(i, j);
            else if (v > 0.0)
                any_positive = true;
            if (i < j && a(i, j) != a(j, i)) diag.symmetric = false;
        }
    }
    diag.fully_disconnected = !any_positive;
    return diag;
}

/// Explicit repair: returns a copy with the diagonal zeroed.
inline Matrix zero_diagonal(Matrix a) {
    a.diagonal().setZero();
    return a;
}

/// Throws InvalidInputError unless the matrix satisfies the affinity
/// contract. Nonzero diagonals are rejected unless repair was requested
/// upstream via zero_diagonal().
inline void require_valid_affinity(const Matrix& a) {
    const AffinityDiagnostics diag = validate_affinity(a);
    if (!diag.square) throw InvalidInputError("affinity matrix must be square");
    if (!diag.non_finite_entries.empty())
        throw InvalidInputError("affinity matrix contains non-finite entries");
    if (!diag.negative_entries.empty())
        throw InvalidInputError("affinity matrix contains negative entries");
    if (!diag.nonzero_diagonal.empty())
        throw InvalidInputError(
            "affinity matrix has a nonzero diagonal (self-loops are not allowed; "
            "zero the diagonal explicitly to repair)");
}

}  // namespace dsclust
