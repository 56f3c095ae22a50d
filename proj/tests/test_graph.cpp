#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "graspel/data.hpp"
#include "graspel/errors.hpp"
#include "graspel/graph.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace graspel;

namespace {

SparseGraph path3() {
    SparseGraph g(3);
    g.add_edge(0, 1, 1.0);
    g.add_edge(1, 2, 1.0);
    return g;
}

}  // namespace

TEST_CASE("graph invariants are enforced") {
    SparseGraph g(4);
    CHECK_THROWS_AS(g.add_edge(1, 1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 4, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 1, -2.0), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 1, std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
    g.add_edge(2, 0, 1.5);  // stored canonically
    CHECK(g.has_edge(0, 2));
    CHECK(g.has_edge(2, 0));
    CHECK(g.edges()[0].u == 0);
    CHECK(g.edges()[0].v == 2);
    CHECK_THROWS_AS(g.add_edge(0, 2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(2, 0, 3.0), std::invalid_argument);
}

TEST_CASE("laplacian of the 3-node path") {
    const LaplacianMatrix L = build_laplacian(path3());
    Eigen::MatrixXd expected(3, 3);
    expected << 1, -1, 0, -1, 2, -1, 0, -1, 1;
    CHECK((L.dense() - expected).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("laplacian of an empty graph is zero") {
    const LaplacianMatrix L = build_laplacian(SparseGraph(4));
    CHECK(L.dense().cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("weighted triangle diagonal sums incident weights") {
    SparseGraph g(3);
    g.add_edge(0, 1, 1.0);
    g.add_edge(1, 2, 2.0);
    g.add_edge(0, 2, 3.0);
    // Incident sums per node, assembled by hand: 1+3, 1+2, 2+3.
    const Eigen::MatrixXd L = build_laplacian(g).dense();
    CHECK(L(0, 0) == doctest::Approx(4.0));
    CHECK(L(1, 1) == doctest::Approx(3.0));
    CHECK(L(2, 2) == doctest::Approx(5.0));
}

TEST_CASE("laplacian structure holds on random graphs") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const SparseGraph g = fixtures::random_connected_graph(20, 1.0, seed);
        const LaplacianMatrix L = build_laplacian(g);
        const Eigen::MatrixXd dense = L.dense();

        // rows sum to zero
        CHECK(dense.rowwise().sum().cwiseAbs().maxCoeff() < 1e-10 * L.degree_scale());
        // symmetric, non-positive off-diagonals
        CHECK((dense - dense.transpose()).cwiseAbs().maxCoeff() == 0.0);
        for (int i = 0; i < dense.rows(); ++i)
            for (int j = 0; j < dense.cols(); ++j)
                if (i != j) CHECK(dense(i, j) <= 0.0);
        // PSD
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
        CHECK(es.eigenvalues()(0) >= -1e-9);
        // L x = 0 for constant x
        CHECK((dense * Eigen::VectorXd::Ones(dense.rows())).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("quadratic form") {
    const LaplacianMatrix L = build_laplacian(path3());
    Eigen::VectorXd constant = Eigen::VectorXd::Constant(3, 2.5);
    CHECK(quadratic_form(L, constant) == doctest::Approx(0.0));

    Eigen::VectorXd ramp(3);
    ramp << 0, 1, 2;
    CHECK(quadratic_form(L, ramp) == doctest::Approx(2.0));

    CHECK_THROWS_AS(quadratic_form(L, Eigen::VectorXd::Zero(4)), std::invalid_argument);
}

TEST_CASE("quadratic form equals the edge sum on random inputs") {
    for (std::uint64_t seed : {10ull, 11ull, 12ull}) {
        const SparseGraph g = fixtures::random_connected_graph(15, 1.5, seed);
        const LaplacianMatrix L = build_laplacian(g);
        Rng rng(seed);
        Eigen::VectorXd x(15);
        for (int i = 0; i < 15; ++i) x(i) = rng.normal();
        const double via_matrix = quadratic_form(L, x);
        const double via_edges = oracles::edge_sum_quadratic_form(g, x);
        CHECK(via_matrix == doctest::Approx(via_edges).epsilon(1e-9));
        CHECK(via_matrix >= 0.0);
    }
}

TEST_CASE("smoothness") {
    const SparseGraph g = fixtures::random_connected_graph(5, 1.0, 42);
    const LaplacianMatrix L = build_laplacian(g);

    SUBCASE("constant columns give zero") {
        Eigen::MatrixXd X = Eigen::MatrixXd::Ones(5, 3);
        X.col(1).setConstant(-7.0);
        CHECK(smoothness(L, DataMatrix(X)) == doctest::Approx(0.0));
    }
    SUBCASE("single column equals the quadratic form") {
        const Eigen::MatrixXd X = fixtures::random_data(5, 1, 7);
        CHECK(smoothness(L, DataMatrix(X)) == doctest::Approx(quadratic_form(L, X.col(0))));
    }
    SUBCASE("matches the column-wise sum") {
        const Eigen::MatrixXd X = fixtures::random_data(5, 3, 8);
        double expected = 0.0;
        for (int j = 0; j < 3; ++j) expected += quadratic_form(L, X.col(j));
        CHECK(smoothness(L, DataMatrix(X)) == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(smoothness(L, DataMatrix(Eigen::MatrixXd::Ones(4, 2))),
                        std::invalid_argument);
    }
}

TEST_CASE("connected components") {
    SUBCASE("isolated nodes") {
        const ComponentInfo info = connected_components(SparseGraph(5));
        CHECK(info.count == 5);
        for (int i = 0; i < 5; ++i) CHECK(info.labels[static_cast<std::size_t>(i)] == i);
    }
    SUBCASE("path is one component") {
        const ComponentInfo info = connected_components(path3());
        CHECK(info.count == 1);
    }
    SUBCASE("two disjoint triangles") {
        SparseGraph g(6);
        for (int base : {0, 3}) {
            g.add_edge(base, base + 1, 1.0);
            g.add_edge(base + 1, base + 2, 1.0);
            g.add_edge(base, base + 2, 1.0);
        }
        const ComponentInfo info = connected_components(g);
        CHECK(info.count == 2);
        CHECK(info.labels[0] == info.labels[2]);
        CHECK(info.labels[3] == info.labels[5]);
        CHECK(info.labels[0] != info.labels[3]);
    }
}

TEST_CASE("zero eigenvalue multiplicity equals component count") {
    SparseGraph g(12);
    // three little cliques
    for (int base : {0, 4, 8}) {
        g.add_edge(base, base + 1, 1.0);
        g.add_edge(base + 1, base + 2, 2.0);
        g.add_edge(base + 2, base + 3, 1.0);
        g.add_edge(base, base + 3, 0.5);
    }
    const LaplacianMatrix L = build_laplacian(g);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L.dense());
    int zeros = 0;
    for (int i = 0; i < 12; ++i)
        if (std::abs(es.eigenvalues()(i)) < 1e-8) ++zeros;
    CHECK(zeros == connected_components(g).count);
}

TEST_CASE("effective resistance") {
    SUBCASE("single edge") {
        SparseGraph g(2);
        g.add_edge(0, 1, 1.0);
        CHECK(effective_resistance_exact(g, 0, 1) == doctest::Approx(1.0));
    }
    SUBCASE("unit triangle") {
        SparseGraph g(3);
        g.add_edge(0, 1, 1.0);
        g.add_edge(1, 2, 1.0);
        g.add_edge(0, 2, 1.0);
        CHECK(effective_resistance_exact(g, 0, 1) == doctest::Approx(2.0 / 3.0));
        CHECK(effective_resistance_exact(g, 1, 2) == doctest::Approx(2.0 / 3.0));
    }
    SUBCASE("path endpoints in series") {
        CHECK(effective_resistance_exact(path3(), 0, 2) == doctest::Approx(2.0));
    }
    SUBCASE("different components") {
        SparseGraph g(4);
        g.add_edge(0, 1, 1.0);
        g.add_edge(2, 3, 1.0);
        CHECK_THROWS_AS(effective_resistance_exact(g, 0, 2), DisconnectedError);
    }
    SUBCASE("metric triangle inequality per component") {
        const SparseGraph g = fixtures::random_connected_graph(10, 1.0, 99);
        for (int a = 0; a < 10; ++a)
            for (int b = a + 1; b < 10; ++b)
                for (int c = 0; c < 10; ++c) {
                    if (c == a || c == b) continue;
                    const double ab = effective_resistance_exact(g, a, b);
                    const double ac = effective_resistance_exact(g, a, c);
                    const double cb = effective_resistance_exact(g, c, b);
                    CHECK(ab <= ac + cb + 1e-9);
                }
    }
}

TEST_CASE("data matrix centering") {
    SUBCASE("simple row") {
        Eigen::MatrixXd X(1, 3);
        X << 1, 2, 3;
        const DataMatrix centered = center_rows(DataMatrix(X));
        CHECK(centered.values()(0, 0) == doctest::Approx(-1.0));
        CHECK(centered.values()(0, 1) == doctest::Approx(0.0));
        CHECK(centered.values()(0, 2) == doctest::Approx(1.0));
        CHECK(centered.centered());
    }
    SUBCASE("idempotent") {
        const DataMatrix once = center_rows(DataMatrix(fixtures::random_data(6, 4, 3)));
        const DataMatrix twice = center_rows(once);
        CHECK((once.values() - twice.values()).cwiseAbs().maxCoeff() < 1e-14);
    }
    SUBCASE("random rows end up mean-free") {
        const DataMatrix centered = center_rows(DataMatrix(fixtures::random_data(8, 5, 4)));
        for (int i = 0; i < 8; ++i)
            CHECK(std::abs(centered.values().row(i).mean()) < 1e-12);
    }
}

TEST_CASE("data distance") {
    SUBCASE("identical rows") {
        Eigen::MatrixXd X = Eigen::MatrixXd::Zero(2, 3);
        CHECK(data_distance(DataMatrix(X), 0, 1) == doctest::Approx(0.0));
    }
    SUBCASE("hand value") {
        Eigen::MatrixXd X(2, 2);
        X << 0, 0, 3, 4;
        CHECK(data_distance(DataMatrix(X), 0, 1) == doctest::Approx(25.0 / 2.0));
    }
    SUBCASE("matches brute force") {
        const Eigen::MatrixXd X = fixtures::random_data(6, 5, 21);
        const DataMatrix D(X);
        for (int p = 0; p < 6; ++p)
            for (int q = 0; q < 6; ++q) {
                double acc = 0.0;
                for (int j = 0; j < 5; ++j) {
                    const double d = X(p, j) - X(q, j);
                    acc += d * d;
                }
                CHECK(data_distance(D, p, q) == doctest::Approx(acc / 5.0));
            }
    }
}
