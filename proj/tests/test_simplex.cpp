#include <catch_amalgamated.hpp>

#include <random>

#include "dsclust/simplex.hpp"

using namespace dsclust;

TEST_CASE("barycenter is uniform") {
    const Vector x = barycenter(4);
    REQUIRE(x.size() == 4);
    for (Eigen::Index i = 0; i < 4; ++i) REQUIRE(x[i] == 0.25);

    REQUIRE(barycenter(1)[0] == 1.0);

    const Vector big = barycenter(300);
    REQUIRE(big[0] == Catch::Approx(1.0 / 300.0));
    REQUIRE(std::abs(big.sum() - 1.0) <= 1e-12);

    REQUIRE_THROWS_AS(barycenter(0), InvalidParameterError);
}

TEST_CASE("support uses strict inequality") {
    Vector x(2);
    x << 0.5, 0.5;
    REQUIRE(support(x, 1e-5).indices == std::vector<Eigen::Index>{0, 1});

    x << 1.0 - 1e-9, 1e-9;
    REQUIRE(support(x, 1e-5).indices == std::vector<Eigen::Index>{0});

    Vector y(3);
    y << 0.6, 0.3, 0.1;
    REQUIRE(support(y, 0.1).indices == std::vector<Eigen::Index>{0, 1});

    // theta at or above the max gives an empty (soft) support
    REQUIRE(support(x, 1.0).empty());
    REQUIRE_THROWS_AS(support(x, -0.5), InvalidParameterError);
}

TEST_CASE("support of barycenter is everything below 1/n") {
    for (Eigen::Index n : {1, 2, 7, 50}) {
        const auto s = support(barycenter(n), 0.9 / static_cast<double>(n));
        REQUIRE(s.size() == static_cast<std::size_t>(n));
    }
}

TEST_CASE("renormalize scales and clamps") {
    Vector v(2);
    v << 0.2, 0.2;
    Vector r = renormalize(v);
    REQUIRE(r[0] == 0.5);
    REQUIRE(r[1] == 0.5);

    v << 1.0, -1e-15;
    r = renormalize(v);
    REQUIRE(r[0] == 1.0);
    REQUIRE(r[1] == 0.0);

    Vector z = Vector::Zero(3);
    REQUIRE_THROWS_AS(renormalize(z), DegenerateStateError);

    Vector neg(2);
    neg << 1.0, -1e-10;
    REQUIRE_THROWS_AS(renormalize(neg), DegenerateStateError);

    Vector inf(2);
    inf << 1.0, std::numeric_limits<double>::infinity();
    REQUIRE_THROWS_AS(renormalize(inf), DegenerateStateError);
}

TEST_CASE("renormalize is exactly idempotent") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 20);
        Vector v(n);
        for (int i = 0; i < n; ++i) v[i] = u(rng) * 10.0;
        if (v.maxCoeff() == 0.0) v[0] = 1.0;
        const Vector once = renormalize(v);
        const Vector twice = renormalize(once);
        REQUIRE(once == twice);
        REQUIRE(is_simplex(once));
    }
}
