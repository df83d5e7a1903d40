#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "dsclust/dynamics.hpp"
#include "dsclust/error.hpp"
#include "dsclust/simplex.hpp"

namespace dsclust {

/// Result of the exhaustive simplex grid search.
struct GridSolution {
    Vector x_best;
    double payoff_best = 0.0;
    int resolution = 0;  // grid denominator k
    std::uint64_t points_evaluated = 0;
};

namespace detail {

inline std::uint64_t grid_point_count(int n, int k) {
    // C(k + n - 1, n - 1), saturating at a large sentinel.
    std::uint64_t c = 1;
    for (int i = 1; i <= n - 1; ++i) {
        c = c * static_cast<std::uint64_t>(k + i) / static_cast<std::uint64_t>(i);
        if (c > (1ull << 62)) return c;
    }
    return c;
}

}  // namespace detail

inline constexpr std::uint64_t kGridBudget = 10'000'000;
inline constexpr int kGridMaxNodes = 8;
inline constexpr int kDefaultGridResolution = 20;

/// Exhaustively evaluate x^T A x over all points of the simplex whose
/// entries are integer multiples of 1/k. Returns the maximizer; ties keep
/// the first point in enumeration order, which places mass on the lowest
/// indices first.
inline GridSolution grid_simplex_maximizer(const Matrix& a, int k = kDefaultGridResolution) {
    const int n = static_cast<int>(a.rows());
    if (n < 1 || a.rows() != a.cols())
        throw InvalidInputError("grid_simplex_maximizer: matrix must be square and nonempty");
    if (k < 1) throw InvalidParameterError("grid_simplex_maximizer: resolution must be >= 1");
    if (n > kGridMaxNodes)
        throw InvalidParameterError("grid_simplex_maximizer: n = " + std::to_string(n) +
                                    " exceeds the oracle limit of " +
                                    std::to_string(kGridMaxNodes));
    const std::uint64_t count = detail::grid_point_count(n, k);
    if (count > kGridBudget)
        throw InvalidParameterError("grid_simplex_maximizer: " + std::to_string(count) +
                                    " grid points exceed the enumeration budget of " +
                                    std::to_string(kGridBudget));

    GridSolution sol;
    sol.resolution = k;
    sol.payoff_best = -1.0;

    std::vector<int> counts(static_cast<std::size_t>(n), 0);
    Vector x(n);
    const double inv_k = 1.0 / static_cast<double>(k);

    // Depth-first over compositions of k into n parts, highest count for the
    // lowest coordinate first.
    auto recurse = [&](auto&& self, int coord, int left) -> void {
        if (coord == n - 1) {
            counts[static_cast<std::size_t>(coord)] = left;
            for (int i = 0; i < n; ++i) x[i] = counts[static_cast<std::size_t>(i)] * inv_k;
            const double pay = x.dot(a * x);
            ++sol.points_evaluated;
            if (pay > sol.payoff_best) {
                sol.payoff_best = pay;
                sol.x_best = x;
            }
            return;
        }
        for (int c = left; c >= 0; --c) {
            counts[static_cast<std::size_t>(coord)] = c;
            self(self, coord + 1, left - c);
        }
    };
    recurse(recurse, 0, k);
    return sol;
}

/// All maximal cliques of a 0/1 undirected graph (Bron-Kerbosch with
/// pivoting). Each clique is sorted ascending; the list is sorted
/// lexicographically.
inline std::vector<std::vector<Eigen::Index>> maximal_cliques(const Matrix& adjacency) {
    const Eigen::Index n = adjacency.rows();
    if (adjacency.rows() != adjacency.cols())
        throw InvalidInputError("maximal_cliques: matrix must be square");
    if (n > 20) throw InvalidParameterError("maximal_cliques: n > 20 exceeds the oracle limit");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (adjacency(i, i) != 0.0)
            throw InvalidInputError("maximal_cliques: diagonal must be zero");
        for (Eigen::Index j = 0; j < n; ++j) {
            const double v = adjacency(i, j);
            if (v != 0.0 && v != 1.0)
                throw InvalidInputError("maximal_cliques: entries must be 0 or 1");
            if (v != adjacency(j, i))
                throw InvalidInputError("maximal_cliques: matrix must be symmetric");
        }
    }

    using Bits = std::uint32_t;
    std::vector<Bits> adj(static_cast<std::size_t>(n), 0);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (adjacency(i, j) == 1.0) adj[static_cast<std::size_t>(i)] |= Bits{1} << j;

    std::vector<std::vector<Eigen::Index>> cliques;
    auto expand = [&](auto&& self, Bits r, Bits p, Bits x) -> void {
        if (p == 0 && x == 0) {
            std::vector<Eigen::Index> clique;
            for (Eigen::Index i = 0; i < n; ++i)
                if (r & (Bits{1} << i)) clique.push_back(i);
            cliques.push_back(std::move(clique));
            return;
        }
        // Pivot: vertex of P|X with the most neighbours in P.
        int pivot = -1, best_deg = -1;
        Bits px = p | x;
        for (Eigen::Index u = 0; u < n; ++u) {
            if (!(px & (Bits{1} << u))) continue;
            const int deg = std::popcount(p & adj[static_cast<std::size_t>(u)]);
            if (deg > best_deg) {
                best_deg = deg;
                pivot = static_cast<int>(u);
            }
        }
        Bits candidates = p & ~adj[static_cast<std::size_t>(pivot)];
        for (Eigen::Index v = 0; v < n; ++v) {
            const Bits bit = Bits{1} << v;
            if (!(candidates & bit)) continue;
            self(self, r | bit, p & adj[static_cast<std::size_t>(v)],
                 x & adj[static_cast<std::size_t>(v)]);
            p &= ~bit;
            x |= bit;
        }
    };
    const Bits all = n == 0 ? 0 : (n == 32 ? ~Bits{0} : (Bits{1} << n) - 1);
    if (n > 0) expand(expand, 0, all, 0);
    std::sort(cliques.begin(), cliques.end());
    return cliques;
}

}  // namespace dsclust
