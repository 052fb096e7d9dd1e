#include "mulab/formulas.hpp"

#include <algorithm>
#include <cmath>

#include "mulab/anatomy.hpp"
#include "mulab/errors.hpp"

namespace mulab {

double xi_q(double p) { return 1.0 - 2.0 * p * (1.0 - p); }

double xi_alpha(int n, double p) { return double(n) * xi_q(p); }

double xi_beta(int n, double p) {
    return std::sqrt(8.0 * double(n) * p * (1.0 - p) * xi_q(p) * std::log(double(n)));
}

double expected_tree_components(int n, int k, double p) {
    if (k < 1 || k > n) throw DomainError("expected_tree_components: need 1 <= k <= n");
    if (p <= 0.0) return k == 1 ? double(n) : 0.0;
    if (p >= 1.0) return 0.0;
    double lchoose = std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) -
                     std::lgamma(double(n - k) + 1.0);
    double exponent = double(k) * double(n - k) + double(k) * double(k - 1) / 2.0 - double(k - 1);
    return std::exp(lchoose + double(k - 2) * std::log(double(k)) +
                    double(k - 1) * std::log(p) + exponent * std::log1p(-p));
}

double expected_outside_isolated(int n, int m, double p) {
    if (m < 0 || m > n) throw DomainError("expected_outside_isolated: need 0 <= m <= n");
    return double(n - m) * std::exp(double(m) * std::log1p(-p));
}

double conjugate_lambda_oracle(double lambda) {
    if (lambda <= 1.0) throw DomainError("conjugate_lambda_oracle: need lambda > 1");
    const double t = lambda * std::exp(-lambda);
    // x0 = t < x* and x -> t e^x is increasing, so the iterates climb
    // monotonically to the fixed point at rate x* < 1
    double x = t;
    for (int i = 0; i < 20000; ++i) {
        double next = t * std::exp(x);
        bool settled = std::abs(next - x) < 1e-16;
        x = next;
        if (settled) break;
    }
    return x;
}

double core_fraction(double lambda) {
    double lp = conjugate_lambda(lambda);
    return (1.0 - lp) * (1.0 - lp / lambda);
}

double gw_mean_floor(double eps) { return 0.003 / eps; }

double gw_forest_floor(double eps, long long forest_size) {
    return 0.002 * double(forest_size) / eps;
}

std::pair<int, int> typical_subset_window(int n) {
    if (n < 1) return {0, 0};
    double s = std::sqrt(double(n) * std::log(double(n)));
    int lo = int(std::ceil(double(n) / 2.0 - s));
    int hi = int(std::floor(double(n) / 2.0 + s));
    return {std::max(0, lo), std::min(n, hi)};
}

std::pair<double, double> degree_window(int n, double p) {
    double centre = double(n) * p;
    double spread = std::sqrt(2.0 * double(n) * p * (1.0 - p) * std::log(double(n)));
    return {centre - spread, centre + spread};
}

double boring_lhs(double p) { return 1.0 + std::pow(1.0 - p, 5.4); }

double boring_lhs_majorant(double p) { return 1.0 + std::exp(-5.4 * p); }

double boring_rhs(double p) { return std::exp2(xi_q(p)); }

}  // namespace mulab
