#pragma once

#include <utility>

namespace mulab {

// Closed forms used by the experiment verdicts and checked against hand
// values in the unit tests, kept in one place so a transcription slip
// cannot hide inside an experiment.

// q = 1 - 2p(1-p), the probability that a fresh vertex relates to two
// fixed vertices the same way (adjacent to both or to neither).
double xi_q(double p);

// Location and scale of the maximal common-relation count over vertex
// pairs in G(n,p): alpha = n*q, beta = sqrt(8 n p (1-p) q ln n).
double xi_alpha(int n, double p);
double xi_beta(int n, double p);

// Expected number of tree components on exactly k vertices in G(n,p):
// C(n,k) k^(k-2) p^(k-1) (1-p)^(k(n-k) + C(k,2) - (k-1)).
double expected_tree_components(int n, int k, double p);

// Expected number of vertices outside a fixed m-set with no neighbour
// inside it: (n-m)(1-p)^m.
double expected_outside_isolated(int n, int m, double p);

// Conjugate branching parameter: the unique x in (0,1) with
// x e^-x = lambda e^-lambda, for lambda > 1.  Solved by fixed-point
// iteration x <- t e^x, a deliberately different method from the bisection
// solver so the two can cross-check each other.
double conjugate_lambda_oracle(double lambda);

// Asymptotic fraction of vertices in the 2-core of complex components of
// G(n, lambda/n): (1 - lambda')(1 - lambda'/lambda).
double core_fraction(double lambda);

// Verdict floors for the subtree-count experiments: mean ln f(T) must beat
// 0.003/eps, and a forest of N trees must reach total ln f of 0.002 N/eps.
double gw_mean_floor(double eps);
double gw_forest_floor(double eps, long long forest_size);

// Typical-subset window [n/2 - sqrt(n ln n), n/2 + sqrt(n ln n)] as an
// inclusive integer range, clamped to [0, n].
std::pair<int, int> typical_subset_window(int n);

// Degree window np +- sqrt(2 n p (1-p) ln n).
std::pair<double, double> degree_window(int n, double p);

// Both sides of the density inequality 1 + (1-p)^5.4 < 2^(1-2p(1-p)) on
// (0, 1/2], and the e^(-5.4 p) majorant of the left side used to settle
// the small-p range analytically.
double boring_lhs(double p);
double boring_lhs_majorant(double p);
double boring_rhs(double p);

}  // namespace mulab
