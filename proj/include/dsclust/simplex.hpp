#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "dsclust/error.hpp"

namespace dsclust {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Tolerance on |sum(x) - 1| for a valid probability vector.
inline constexpr double kSimplexSumTol = 1e-12;

/// Entries in [-kNegativeClampTol, 0) are treated as rounding noise and
/// clamped to zero; anything more negative is a hard error.
inline constexpr double kNegativeClampTol = 1e-14;

/// Default support threshold theta.
inline constexpr double kDefaultTheta = 1e-5;

/// Indices of a simplex vector whose entries strictly exceed theta.
struct Support {
    std::vector<Eigen::Index> indices;  // sorted ascending
    double theta = kDefaultTheta;

    bool empty() const { return indices.empty(); }
    std::size_t size() const { return indices.size(); }
};

inline bool is_simplex(const Vector& x) {
    if (x.size() == 0) return false;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (!(x[i] >= 0.0) || !std::isfinite(x[i])) return false;
    }
    return std::abs(x.sum() - 1.0) <= kSimplexSumTol;
}

/// Uniform distribution over n strategies, the standard starting point.
inline Vector barycenter(Eigen::Index n) {
    if (n < 1) throw InvalidParameterError("barycenter: dimension must be >= 1");
    return Vector::Constant(n, 1.0 / static_cast<double>(n));
}

/// {i : x_i > theta}, strict inequality. An empty result is legal and
/// signals a degenerate state the caller must handle.
inline Support support(const Vector& x, double theta = kDefaultTheta) {
    if (theta < 0.0) throw InvalidParameterError("support: theta must be >= 0");
    Support s;
    s.theta = theta;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (x[i] > theta) s.indices.push_back(i);
    }
    return s;
}

/// Clamp tiny negative noise to zero and rescale to unit sum.
/// Entries below -kNegativeClampTol, non-finite entries, or an all-zero
/// vector indicate a genuinely broken state and throw.
inline Vector renormalize(const Vector& raw) {
    if (raw.size() == 0) throw DegenerateStateError("renormalize: empty vector");
    Vector x = raw;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]))
            throw DegenerateStateError("renormalize: non-finite entry");
        if (x[i] < 0.0) {
            if (x[i] < -kNegativeClampTol)
                throw DegenerateStateError("renormalize: negative entry beyond rounding tolerance");
            x[i] = 0.0;
        }
    }
    const double sum = x.sum();
    if (sum <= 0.0)
        throw DegenerateStateError("renormalize: vector has no positive mass");
    // Skipping the division when the sum is already within tolerance makes
    // renormalize an exact fixed point of itself. One extra pass covers the
    // rare case where a single division leaves the sum outside tolerance.
    for (int pass = 0; pass < 2 && std::abs(x.sum() - 1.0) > kSimplexSumTol; ++pass) {
        x /= x.sum();
    }
    if (std::abs(x.sum() - 1.0) > kSimplexSumTol)
        throw DegenerateStateError("renormalize: could not reach unit sum");
    return x;
}

}  // namespace dsclust
