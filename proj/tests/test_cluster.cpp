#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "graspel/cluster.hpp"
#include "graspel/learn.hpp"
#include "graspel/rng.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace graspel;

TEST_CASE("kmeans") {
    SUBCASE("single cluster centers on the mean") {
        const Eigen::MatrixXd points = fixtures::random_data(20, 3, 1);
        const ClusterResult res = kmeans(points, 1, 0);
        const Eigen::RowVectorXd mean = points.colwise().mean();
        const double variance = (points.rowwise() - mean).squaredNorm();
        CHECK(res.inertia == doctest::Approx(variance).epsilon(1e-9));
    }
    SUBCASE("exact cluster locations give zero inertia") {
        Eigen::MatrixXd points(9, 2);
        for (int i = 0; i < 9; ++i) {
            points(i, 0) = static_cast<double>(i % 3) * 10.0;
            points(i, 1) = 0.0;
        }
        const ClusterResult res = kmeans(points, 3, 5);
        CHECK(res.inertia == doctest::Approx(0.0).epsilon(1e-12));
        CHECK_FALSE(res.empty_cluster);
    }
    SUBCASE("close to the exhaustive optimum on a tiny instance") {
        Rng rng(7);
        Eigen::MatrixXd points(12, 2);
        const double centers[3][2] = {{0, 0}, {5, 0}, {2.5, 4}};
        for (int i = 0; i < 12; ++i) {
            points(i, 0) = centers[i % 3][0] + 0.4 * rng.normal();
            points(i, 1) = centers[i % 3][1] + 0.4 * rng.normal();
        }
        const double optimum = oracles::brute_force_kmeans_inertia(points, 3);
        double best = std::numeric_limits<double>::infinity();
        for (std::uint64_t seed = 0; seed < 10; ++seed)
            best = std::min(best, kmeans(points, 3, seed).inertia);
        CHECK(best <= 1.05 * optimum + 1e-12);
    }
    SUBCASE("bad k") {
        const Eigen::MatrixXd points = fixtures::random_data(4, 2, 2);
        CHECK_THROWS_AS(kmeans(points, 0, 0), std::invalid_argument);
        CHECK_THROWS_AS(kmeans(points, 5, 0), std::invalid_argument);
    }
}

TEST_CASE("spectral clustering") {
    SUBCASE("two disjoint cliques split perfectly") {
        SparseGraph g(10);
        for (int base : {0, 5})
            for (int i = 0; i < 5; ++i)
                for (int j = i + 1; j < 5; ++j) g.add_edge(base + i, base + j, 1.0);
        const ClusterResult res = spectral_clustering(g, 2, 0);
        std::vector<int> truth(10, 0);
        for (int i = 5; i < 10; ++i) truth[static_cast<std::size_t>(i)] = 1;
        CHECK(accuracy(res.labels, truth) == doctest::Approx(1.0));
    }
    SUBCASE("k equal to n is the degenerate per-node clustering") {
        const SparseGraph g = fixtures::random_connected_graph(6, 1.0, 4);
        const ClusterResult res = spectral_clustering(g, 6, 1);
        CHECK(res.inertia == doctest::Approx(0.0).epsilon(1e-9));
        std::set<int> distinct(res.labels.begin(), res.labels.end());
        CHECK(distinct.size() == 6);
    }
    SUBCASE("k-component graphs are recovered exactly") {
        SparseGraph g(15);
        for (int base : {0, 5, 10}) {
            const SparseGraph part = fixtures::random_connected_graph(5, 1.0, 17 + base);
            for (const Edge& e : part.edges()) g.add_edge(base + e.u, base + e.v, e.w);
        }
        const ClusterResult res = spectral_clustering(g, 3, 2);
        const ComponentInfo comps = connected_components(g);
        CHECK(accuracy(res.labels, comps.labels) == doctest::Approx(1.0));
    }
    SUBCASE("learned blob graph clusters with high accuracy") {
        auto [points, labels] = fixtures::gaussian_blobs(60, 3, 8, 2.0, 0.3, 77);
        LearnConfig cfg;
        cfg.seed = 3;
        const LearnResult learned = graspel_learn(DataMatrix(points), cfg);
        const ClusterResult res = spectral_clustering(learned.graph, 3, 4);
        CHECK(accuracy(res.labels, labels) >= 0.95);
    }
    SUBCASE("k out of range") {
        const SparseGraph g = fixtures::random_connected_graph(5, 1.0, 1);
        CHECK_THROWS_AS(spectral_clustering(g, 1, 0), std::invalid_argument);
        CHECK_THROWS_AS(spectral_clustering(g, 6, 0), std::invalid_argument);
    }
}

TEST_CASE("accuracy") {
    SUBCASE("identity and relabeling") {
        const std::vector<int> truth{0, 0, 1, 1, 2, 2};
        CHECK(accuracy(truth, truth) == doctest::Approx(1.0));
        const std::vector<int> relabeled{2, 2, 0, 0, 1, 1};
        CHECK(accuracy(relabeled, truth) == doctest::Approx(1.0));
    }
    SUBCASE("hand-computed mismatch") {
        const std::vector<int> pred{0, 0, 1, 1};
        const std::vector<int> truth{1, 1, 1, 0};
        CHECK(accuracy(pred, truth) == doctest::Approx(0.75));
    }
    SUBCASE("invariant under relabeling either argument") {
        Rng rng(3);
        std::vector<int> pred(40), truth(40);
        for (int i = 0; i < 40; ++i) {
            pred[static_cast<std::size_t>(i)] = static_cast<int>(rng.integer(4));
            truth[static_cast<std::size_t>(i)] = static_cast<int>(rng.integer(4));
        }
        const double base = accuracy(pred, truth);
        std::vector<int> shuffled = pred;
        for (int& v : shuffled) v = (v + 2) % 4;
        CHECK(accuracy(shuffled, truth) == doctest::Approx(base));
        CHECK(base >= 0.0);
        CHECK(base <= 1.0);
    }
    SUBCASE("length mismatch") {
        CHECK_THROWS_AS(accuracy({0, 1}, {0, 1, 2}), std::invalid_argument);
    }
}

TEST_CASE("nmi") {
    SUBCASE("identical partitions") {
        const std::vector<int> labels{0, 1, 0, 2, 1, 2};
        CHECK(nmi(labels, labels) == doctest::Approx(1.0));
    }
    SUBCASE("independent 2x2 table is zero") {
        CHECK(nmi({0, 0, 1, 1}, {0, 1, 0, 1}) == doctest::Approx(0.0));
    }
    SUBCASE("single-cluster partition gives zero") {
        CHECK(nmi({0, 0, 0, 0}, {0, 1, 0, 1}) == doctest::Approx(0.0));
    }
    SUBCASE("random labels on large n are near zero") {
        Rng rng(5);
        std::vector<int> a(10000), b(10000);
        for (int i = 0; i < 10000; ++i) {
            a[static_cast<std::size_t>(i)] = static_cast<int>(rng.integer(3));
            b[static_cast<std::size_t>(i)] = static_cast<int>(rng.integer(3));
        }
        CHECK(nmi(a, b) <= 0.05);
    }
    SUBCASE("symmetric in its arguments") {
        Rng rng(6);
        std::vector<int> a(50), b(50);
        for (int i = 0; i < 50; ++i) {
            a[static_cast<std::size_t>(i)] = static_cast<int>(rng.integer(3));
            b[static_cast<std::size_t>(i)] = static_cast<int>(rng.integer(4));
        }
        CHECK(nmi(a, b) == doctest::Approx(nmi(b, a)).epsilon(1e-12));
    }
}

TEST_CASE("hungarian assignment") {
    SUBCASE("identity-favoring cost") {
        Eigen::MatrixXd cost = Eigen::MatrixXd::Ones(4, 4);
        cost.diagonal().setZero();
        const std::vector<int> assign = hungarian(cost);
        for (int i = 0; i < 4; ++i) CHECK(assign[static_cast<std::size_t>(i)] == i);
    }
    SUBCASE("2x2 swap case") {
        Eigen::MatrixXd cost(2, 2);
        cost << 1, 2, 2, 1;
        const std::vector<int> assign = hungarian(cost);
        CHECK(assign[0] == 0);
        CHECK(assign[1] == 1);
    }
    SUBCASE("matches brute force on random instances") {
        Rng rng(11);
        for (int trial = 0; trial < 100; ++trial) {
            const int k = 2 + static_cast<int>(rng.integer(5));  // up to 6
            Eigen::MatrixXd cost(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) cost(i, j) = rng.uniform() * 10.0 - 3.0;
            const std::vector<int> assign = hungarian(cost);
            double total = 0.0;
            std::set<int> used;
            for (int i = 0; i < k; ++i) {
                total += cost(i, assign[static_cast<std::size_t>(i)]);
                used.insert(assign[static_cast<std::size_t>(i)]);
            }
            CHECK(used.size() == static_cast<std::size_t>(k));
            CHECK(total == doctest::Approx(oracles::brute_force_assignment_cost(cost))
                               .epsilon(1e-9));
        }
    }
}

TEST_CASE("eigengap dimension") {
    SUBCASE("gap in the middle of the spectrum") {
        Eigen::VectorXd ev(5);
        ev << 0.0, 0.01, 0.02, 0.9, 1.0;
        CHECK(eigengap_dimension(ev, 10) == 3);
    }
    SUBCASE("k-component spectrum returns k") {
        Eigen::VectorXd ev(7);
        ev << 0.0, 0.0, 0.0, 2.0, 2.1, 2.2, 2.3;
        CHECK(eigengap_dimension(ev, 10) == 3);
    }
    SUBCASE("blob fixture returns the blob count") {
        auto [points, labels] = fixtures::gaussian_blobs(40, 3, 8, 2.0, 0.3, 31);
        LearnConfig cfg;
        cfg.seed = 8;
        const LearnResult learned = graspel_learn(DataMatrix(points), cfg);
        const SpectralEmbedding emb =
            smallest_eigenpairs(build_laplacian(learned.graph), 10);
        CHECK(eigengap_dimension(emb.eigenvalues, 8) == 3);
    }
    SUBCASE("needs two nonzero eigenvalues") {
        Eigen::VectorXd ev(3);
        ev << 0.0, 0.0, 1.0;
        CHECK_THROWS_AS(eigengap_dimension(ev, 5), std::invalid_argument);
    }
}
