#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "mulab/errors.hpp"
#include "mulab/graph.hpp"
#include "mulab/random_models.hpp"
#include "mulab/rng.hpp"

using namespace mulab;

TEST_CASE("generator streams are deterministic and independent") {
    Rng a({42, 0}), b({42, 0}), c({42, 1});
    bool diverged = false;
    for (int i = 0; i < 100; ++i) {
        uint64_t x = a.next_u64();
        CHECK(x == b.next_u64());
        if (x != c.next_u64()) diverged = true;
    }
    CHECK(diverged);

    Seed s{7, 0};
    CHECK(s.sub(1).stream != s.sub(2).stream);
    CHECK(s.sub(1) == s.sub(1));
    CHECK(s.sub(1).sub(1).stream != s.sub(2).sub(0).stream);

    Rng d({5, 5});
    for (int i = 0; i < 1000; ++i) {
        double u = d.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(d.next_below(17) < 17);
    }
    Rng e({6, 6});
    CHECK(e.bernoulli(0.0) == false);
    CHECK(e.bernoulli(1.0) == true);
    double mean = 0.0;
    for (int i = 0; i < 20000; ++i) mean += double(e.poisson(3.0));
    mean /= 20000.0;
    CHECK(std::fabs(mean - 3.0) < 0.05);
}

TEST_CASE("binomial graph sampling") {
    CHECK(sample_gnp(30, 0.0, {1, 0}) == make_empty(30));
    CHECK(sample_gnp(12, 1.0, {1, 0}) == make_clique(12));
    CHECK(sample_gnp(500, 0.3, {2, 0}) == sample_gnp(500, 0.3, {2, 0}));
    CHECK(sample_gnp(500, 0.3, {2, 0}) != sample_gnp(500, 0.3, {2, 1}));

    // dense regime: edge count within 5 sigma of C(n,2) p
    double m = double(sample_gnp(500, 0.3, {3, 0}).edge_count());
    double mean = 124750.0 * 0.3;
    double sigma = std::sqrt(124750.0 * 0.3 * 0.7);
    CHECK(std::fabs(m - mean) < 5.0 * sigma);

    // sparse regime exercises the geometric pair skipping
    double ms = double(sample_gnp(20000, 1e-4, {4, 0}).edge_count());
    double means = 20000.0 * 19999.0 / 2.0 * 1e-4;
    CHECK(std::fabs(ms - means) < 5.0 * std::sqrt(means));
}

TEST_CASE("regular graph sampling") {
    for (auto [n, d] : {std::pair{10, 3}, {40, 3}, {21, 4}, {16, 5}}) {
        Graph g = sample_regular(n, d, {9, uint64_t(n)});
        for (int v = 0; v < n; ++v) CHECK(g.degree(v) == d);
    }
    CHECK(sample_regular(50, 3, {1, 2}) == sample_regular(50, 3, {1, 2}));
    CHECK(sample_regular(50, 3, {1, 2}) != sample_regular(50, 3, {1, 3}));
    CHECK_THROWS_AS(sample_regular(5, 3, {1, 0}), DomainError);   // odd degree sum
    CHECK_THROWS_AS(sample_regular(4, 5, {1, 0}), DomainError);   // d >= n
    CHECK_THROWS_AS(sample_regular(4, 3, {1, 0}, 0), RetryLimit); // no budget at all
}

TEST_CASE("uniform subsets") {
    CHECK(sample_subset(100, {3, 1}).to_vector() == sample_subset(100, {3, 1}).to_vector());
    double total = 0.0;
    for (int i = 0; i < 300; ++i) total += double(sample_subset(100, Seed{4, 0}.sub(uint64_t(i))).count());
    total /= 300.0;
    CHECK(std::fabs(total - 50.0) < 2.0);
    CHECK(sample_subset(0, {1, 1}).count() == 0);
    CHECK(sample_subset(130, {5, 2}).universe() == 130);
}

TEST_CASE("branching process trees") {
    CHECK_THROWS_AS(sample_gw_tree({0.0, 1000}, {6, 0}), DomainError);
    GwSample one = sample_gw_tree({1e-12, 1000}, {6, 0});
    CHECK(one.tree.size() == 1);
    CHECK_FALSE(one.truncated);

    GwConfig cfg{0.5, 1000000};
    CHECK(sample_gw_tree(cfg, {7, 1}).tree.parent == sample_gw_tree(cfg, {7, 1}).tree.parent);

    double mean = 0.0;
    for (int i = 0; i < 20000; ++i)
        mean += double(sample_gw_tree(cfg, Seed{8, 0}.sub(uint64_t(i))).tree.size());
    mean /= 20000.0;
    CHECK(std::fabs(mean - 2.0) < 0.1);  // subcritical mean size 1/(1-lambda)

    GwSample cut = sample_gw_tree({0.99, 4}, {9, 123});
    CHECK(cut.tree.size() <= 4);
    bool saw_cut = false;
    for (int i = 0; i < 200 && !saw_cut; ++i)
        saw_cut = sample_gw_tree({0.99, 4}, Seed{9, 1}.sub(uint64_t(i))).truncated;
    CHECK(saw_cut);
}
