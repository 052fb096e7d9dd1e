#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "mulab/bigint.hpp"
#include "mulab/errors.hpp"
#include "mulab/graph.hpp"
#include "mulab/mu.hpp"
#include "mulab/rng.hpp"

using namespace mulab;

namespace {

Graph random_graph(int n, double p, Seed seed) {
    Rng rng(seed);
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.next_double() < p) g.add_edge(u, v);
    return g;
}

// every labelled graph on n vertices, indexed by its edge bitmask
Graph graph_from_mask(int n, uint64_t mask) {
    Graph g(n);
    int bit = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++bit)
            if (mask >> bit & 1) g.add_edge(u, v);
    return g;
}

double exact_log2(const MuReport& r) { return log2_big(*r.exact); }

}  // namespace

TEST_CASE("exact engine agrees with the permutation oracle") {
    for (int n = 0; n <= 4; ++n) {
        uint64_t masks = uint64_t(1) << (n * (n - 1) / 2);
        for (uint64_t mask = 0; mask < masks; ++mask) {
            Graph g = graph_from_mask(n, mask);
            CHECK(*mu_exact(g).exact == mu_oracle_naive(g));
        }
    }
    for (int trial = 0; trial < 60; ++trial) {
        int n = 5 + trial % 4;
        Graph g = random_graph(n, 0.2 + 0.6 * (trial % 7) / 6.0, {90, uint64_t(trial)});
        CHECK(*mu_exact(g).exact == mu_oracle_naive(g));
    }
}

TEST_CASE("known values, caps and worker independence") {
    for (int n = 0; n <= 12; ++n) {
        CHECK(*mu_exact(make_clique(n)).exact == n + 1);
        CHECK(*mu_exact(make_empty(n)).exact == n + 1);
    }
    MuReport comb8 = mu_exact(make_comb(8));
    CHECK(*comb8.exact == 819);
    CHECK(*comb8.exact >= 32);
    CHECK(comb8.subsets_enumerated == uint64_t(1) << 16);

    Graph g = random_graph(12, 0.4, {91, 0});
    BigInt one = *mu_exact(g, 1).exact;
    CHECK(one == *mu_exact(g, 3).exact);
    CHECK(one == *mu_exact(g, 8).exact);

    CHECK_THROWS_AS(mu_exact(make_empty(25)), CapExceeded);
    CHECK_THROWS_AS(mu_oracle_naive(make_empty(11)), CapExceeded);
}

TEST_CASE("complementation preserves the count") {
    for (int trial = 0; trial < 20; ++trial) {
        int n = 4 + trial % 7;
        Graph g = random_graph(n, 0.1 + 0.08 * trial, {92, uint64_t(trial)});
        CHECK(*mu_exact(g).exact == *mu_exact(complement(g)).exact);
    }
}

TEST_CASE("sampling lower bounds stay below the exact value") {
    Graph g = make_comb(6);
    MuReport exact = mu_exact(g);
    MuReport s = mu_sample_lower(g, 5000, {93, 0});
    CHECK(s.best_lower() <= exact_log2(exact) + 1e-9);
    CHECK(s.best_lower() > 0.0);
    CHECK(s.collision_freq >= 0.0);
    CHECK(s.collision_freq_stderr >= 0.0);
    CHECK(mu_report_to_line(s) == mu_report_to_line(mu_sample_lower(g, 5000, {93, 0})));
    CHECK(mu_report_to_line(s) != mu_report_to_line(mu_sample_lower(g, 5000, {93, 1})));

    // an undersized subset cap rejects draws and says so
    MuReport capped = mu_sample_lower(make_comb(5), 2000, {93, 2}, 4);
    CHECK(capped.subsets_enumerated < 2000);
    bool noted = false;
    for (const auto& [key, val] : capped.notes) noted = noted || key == "rejected";
    CHECK(noted);
}

TEST_CASE("certified lower bounds on reference graphs") {
    // three distinct tree components, each usable once: 2^3 subset products
    Graph forest(6);
    forest.add_edge(1, 2);
    forest.add_edge(3, 4);
    forest.add_edge(4, 5);
    MuReport cert = mu_lower_certificates(forest, {94, 0});
    REQUIRE(cert.lower_bounds.size() == 1);
    CHECK(cert.lower_bounds[0].first == "tree-components");
    CHECK(cert.lower_bounds[0].second == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(cert.best_lower() <= exact_log2(mu_exact(forest)) + 1e-9);

    // K4 with a two-node chain per vertex: four pendant paths of f = 3
    // subtree types each, divided by the 24 core automorphisms
    Graph kc(12);
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) kc.add_edge(u, v);
    for (int v = 0; v < 4; ++v) {
        kc.add_edge(v, 4 + 2 * v);
        kc.add_edge(4 + 2 * v, 5 + 2 * v);
    }
    MuReport tuple = mu_lower_certificates(kc, {94, 1});
    REQUIRE(tuple.lower_bounds.size() == 1);
    CHECK(tuple.lower_bounds[0].first == "type-tuples");
    CHECK(tuple.lower_bounds[0].second ==
          doctest::Approx(4.0 * std::log2(3.0) - std::log2(24.0)).epsilon(1e-9));
    CHECK(tuple.best_lower() <= exact_log2(mu_exact(kc)) + 1e-9);
    CHECK(*mu_exact(kc).exact == 135);

    // a comb hosts its own certificate: interior teeth minus one
    MuReport comb = mu_lower_certificates(make_comb(10), {94, 2});
    double comb_bound = -1.0;
    for (const auto& [tag, v] : comb.lower_bounds)
        if (tag == "comb") comb_bound = v;
    CHECK(comb_bound >= 3.0);
    CHECK(comb_bound <= 9.0);

    // cliques offer nothing, but must fail with reasons rather than lies
    MuReport k5 = mu_lower_certificates(make_clique(5), {94, 3});
    CHECK(k5.best_lower() <= std::log2(6.0));
    CHECK(k5.notes.size() >= 2);
}

TEST_CASE("subcritical upper bound") {
    // all components below the threshold: census only
    Graph forest(6);
    forest.add_edge(1, 2);
    forest.add_edge(3, 4);
    forest.add_edge(4, 5);
    MuReport up = mu_upper_subcritical(forest);
    CHECK(up.best_upper() >= exact_log2(mu_exact(forest)));

    // one oversized clique: its vertices all land in the free 2^|U| factor,
    // the census still charges the realizable one and two vertex classes
    MuReport k8 = mu_upper_subcritical(make_clique(8));
    CHECK(k8.best_upper() == doctest::Approx(8.0 + 2.0 * std::log2(9.0)).epsilon(1e-9));
    CHECK(k8.best_upper() >= exact_log2(mu_exact(make_clique(8))));

    for (int trial = 0; trial < 8; ++trial) {
        Graph g = random_graph(14, 0.08, {95, uint64_t(trial)});
        CHECK(mu_upper_subcritical(g).best_upper() >= exact_log2(mu_exact(g)));
    }

    // a larger threshold must also cover a complex small component
    Graph mix(7);
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) mix.add_edge(u, v);
    mix.add_edge(4, 5);
    MuReport mixed = mu_upper_subcritical(mix, 4);
    CHECK(mixed.best_upper() >= exact_log2(mu_exact(mix)));
}

TEST_CASE("edge concentration ratios") {
    // complete graph, exhaustive mode: every subset meets its expectation
    EdgeConcentrationReport ec =
        edge_concentration(make_clique(6), VertexSet::full(6), 2, 0, {96, 0}, 1.0);
    CHECK(ec.min_ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ec.max_ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ec.subsets_tested == 57);  // subsets of size >= 2
    CHECK(ec.threshold_size == 2);

    // sampled mode: the trial budget is spent exactly, ratios straddle 1
    Graph g = random_graph(30, 0.5, {96, 1});
    EdgeConcentrationReport sampled =
        edge_concentration(g, VertexSet::full(30), 8, 3000, {96, 2}, 0.5);
    CHECK(sampled.subsets_tested == 3000);
    CHECK(sampled.min_ratio <= 1.0);
    CHECK(sampled.max_ratio >= 1.0);
    CHECK(sampled.min_ratio > 0.0);

    // regular mode normalizes by d|W|^2 / 2n instead of a density
    EdgeConcentrationReport reg =
        edge_concentration(make_cycle(9), VertexSet::full(9), 3, 0, {96, 3}, -1.0, true);
    CHECK(reg.min_ratio == doctest::Approx(0.0));  // an independent size-3 set exists
    CHECK(reg.max_ratio >= 1.0 - 1e-9);            // the full cycle meets d|W|^2/2n exactly
}

TEST_CASE("regular containment log probability") {
    CHECK(mckay_log_prob(10, 3, {1, 1}, 1) ==
          doctest::Approx(2.0 * std::log(3.0) - std::log(2.0) - std::log(15.0)).epsilon(1e-12));
    CHECK(mckay_log_prob(20, 3, {2, 2, 2}, 3) ==
          doctest::Approx(3.0 * std::log(6.0) - 3.0 * std::log(2.0) -
                          std::log(30.0) - std::log(29.0) - std::log(28.0))
              .epsilon(1e-12));
    CHECK_THROWS_AS(mckay_log_prob(10, 3, {4, 1, 1}, 3), DomainError);
    CHECK_THROWS_AS(mckay_log_prob(10, 3, {1, 1}, 2), DomainError);
    CHECK_THROWS_AS(mckay_log_prob(2, 3, {3, 3, 3, 3}, 6), DomainError);
}

TEST_CASE("report validation and serialization") {
    MuReport r;
    r.exact = BigInt(5);
    r.subsets_enumerated = 7;
    r.elapsed = 0.25;
    r.lower_bounds.emplace_back("a", 1.5);
    r.upper_bounds.emplace_back("b", 3.25);
    r.notes.emplace_back("k", "v");
    CHECK(mu_report_to_line(r) ==
          "exact=5;subsets=7;elapsed=0.250;lower:a=1.500000;upper:b=3.250000;notes:k=v");
    CHECK_NOTHROW(r.validate());

    MuReport crossed;
    crossed.lower_bounds.emplace_back("a", 5.0);
    crossed.upper_bounds.emplace_back("b", 4.0);
    CHECK_THROWS_AS(crossed.validate(), DomainError);

    MuReport escaped;
    escaped.exact = BigInt(100);  // log2 about 6.64
    escaped.upper_bounds.emplace_back("b", 4.0);
    CHECK_THROWS_AS(escaped.validate(), DomainError);
}
