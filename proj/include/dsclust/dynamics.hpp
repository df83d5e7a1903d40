#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "dsclust/error.hpp"
#include "dsclust/simplex.hpp"

namespace dsclust {

enum class DynamicsKind { Replicator, ExponentialReplicator, InfectionImmunization };

inline const char* dynamics_name(DynamicsKind k) {
    switch (k) {
        case DynamicsKind::Replicator: return "rd";
        case DynamicsKind::ExponentialReplicator: return "exprd";
        case DynamicsKind::InfectionImmunization: return "inimdyn";
    }
    return "unknown";
}

struct DynamicsConfig {
    DynamicsKind kind = DynamicsKind::Replicator;
    double kappa = 1.0;       // exponential replicator selection intensity
    double precision = 1e-6;  // L2 distance between successive iterates
    int max_iters = 1000;

    void validate() const {
        if (!(precision > 0.0)) throw InvalidParameterError("precision must be > 0");
        if (max_iters < 1) throw InvalidParameterError("max_iters must be >= 1");
        if (kind == DynamicsKind::ExponentialReplicator && !(kappa > 0.0))
            throw InvalidParameterError("kappa must be > 0");
    }
};

struct DynamicsResult {
    Vector x_final;
    int iterations = 0;
    double payoff = 0.0;  // x^T A x at x_final
    bool converged = false;
    double nash_gap = 0.0;
};

/// x^T A x, the average payoff of the population state.
inline double average_payoff(const Matrix& a, const Vector& x) {
    return x.dot(a * x);
}

/// max_i (Ax)_i - x^T A x. Zero exactly at equilibrium, nonnegative always.
inline double nash_gap(const Matrix& a, const Vector& x) {
    const Vector ax = a * x;
    return ax.maxCoeff() - x.dot(ax);
}

/// One discrete replicator step: x'_i = x_i (Ax)_i / x^T A x.
inline Vector rd_step(const Matrix& a, const Vector& x) {
    const Vector ax = a * x;
    const double pay = x.dot(ax);
    if (pay <= 0.0)
        throw ZeroPayoffError("rd_step: x^T A x == 0 (support induces an empty subgraph)");
    return renormalize(x.cwiseProduct(ax) / pay);
}

/// One exponential (logit-payoff) replicator step:
/// x'_i = x_i exp(kappa (Ax)_i) / sum_j x_j exp(kappa (Ax)_j).
/// The max of kappa*(Ax) is subtracted before exponentiation; the update is
/// invariant under this shift and it prevents overflow.
inline Vector exp_rd_step(const Matrix& a, const Vector& x, double kappa) {
    if (!(kappa > 0.0)) throw InvalidParameterError("exp_rd_step: kappa must be > 0");
    Vector scaled = kappa * (a * x);
    scaled.array() -= scaled.maxCoeff();
    const Vector weighted = x.cwiseProduct(scaled.array().exp().matrix());
    if (!weighted.allFinite())
        throw NumericOverflowError("exp_rd_step: non-finite intermediate");
    return renormalize(weighted);
}

/// One infection-immunization step. Selects the pure strategy with the
/// largest positive payoff excess (Ax)_i - x^T A x, or the co-strategy of
/// the in-support pure strategy with the most negative excess, mixes it in
/// with the optimal invasion share, and returns the renormalized state.
/// If no infective strategy exists the state is a Nash equilibrium and is
/// returned unchanged.
inline Vector inimdyn_step(const Matrix& a, const Vector& x) {
    const Eigen::Index n = x.size();
    const Vector ax = a * x;
    const double pay = x.dot(ax);

    // Pick the candidate with the largest absolute excess.
    Eigen::Index best = -1;
    double best_abs = 0.0;
    bool best_is_pure = true;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double excess = ax[i] - pay;
        if (excess > 0.0 && excess > best_abs) {
            best = i;
            best_abs = excess;
            best_is_pure = true;
        } else if (excess < 0.0 && x[i] > 0.0 && x[i] < 1.0 && -excess > best_abs) {
            best = i;
            best_abs = -excess;
            best_is_pure = false;
        }
    }
    if (best < 0) return x;  // Nash: no infective strategy

    // Infective direction y - x and its payoff excess pi(y|x) = (y-x)^T A x.
    Vector y;
    double excess_y;
    if (best_is_pure) {
        y = Vector::Zero(n);
        y[best] = 1.0;
        excess_y = ax[best] - pay;
    } else {
        y = x;
        y[best] = 0.0;
        y /= (1.0 - x[best]);
        excess_y = -x[best] * (ax[best] - pay) / (1.0 - x[best]);
    }

    const Vector dir = y - x;
    const double curvature = dir.dot(a * dir);
    double share = 1.0;
    if (curvature < 0.0) share = std::min(excess_y / (-curvature), 1.0);
    return renormalize(x + share * dir);
}

/// Apply one step of the configured dynamics.
inline Vector dynamics_step(const Matrix& a, const Vector& x, const DynamicsConfig& cfg) {
    switch (cfg.kind) {
        case DynamicsKind::Replicator: return rd_step(a, x);
        case DynamicsKind::ExponentialReplicator: return exp_rd_step(a, x, cfg.kappa);
        case DynamicsKind::InfectionImmunization: return inimdyn_step(a, x);
    }
    throw InvalidParameterError("unknown dynamics kind");
}

/// Iterate until the L2 distance between successive states drops below
/// cfg.precision or cfg.max_iters steps have been taken. Step errors are
/// rethrown annotated with the iteration index.
inline DynamicsResult run_dynamics(const Matrix& a, const Vector& x0,
                                   const DynamicsConfig& cfg) {
    cfg.validate();
    if (x0.size() != a.rows())
        throw InvalidInputError("run_dynamics: state dimension does not match matrix");
    DynamicsResult res;
    Vector x = x0;
    for (int t = 1; t <= cfg.max_iters; ++t) {
        Vector next;
        try {
            next = dynamics_step(a, x, cfg);
        } catch (const ZeroPayoffError& e) {
            throw ZeroPayoffError("iteration " + std::to_string(t) + ": " + e.what());
        } catch (const DegenerateStateError& e) {
            throw DegenerateStateError("iteration " + std::to_string(t) + ": " + e.what());
        } catch (const NumericOverflowError& e) {
            throw NumericOverflowError("iteration " + std::to_string(t) + ": " + e.what());
        }
        const double dist = (next - x).norm();
        x = std::move(next);
        res.iterations = t;
        if (dist < cfg.precision) {
            res.converged = true;
            break;
        }
    }
    res.x_final = std::move(x);
    res.payoff = average_payoff(a, res.x_final);
    res.nash_gap = nash_gap(a, res.x_final);
    return res;
}

}  // namespace dsclust
