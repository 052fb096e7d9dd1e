#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mulab/rng.hpp"

namespace mulab {

// Plain key=value description of one experiment run.  The probability may
// be symbolic in n ("0.3", "2/n", "1.5*ln(n)/n") so sweeps can state the
// regime exactly instead of baking in rounded floats.  Everything that is
// not a core key lands in `options`; verdict thresholds live there so the
// result provenance echoes them.  `workers` is an execution knob: it never
// changes any result byte and is excluded from the spec identity.
struct ExperimentSpec {
    std::string name;
    int n = 0;
    int d = 0;
    int replicas = 1;
    Seed seed{0, 0};
    int workers = 1;
    std::string p_expr;
    std::map<std::string, std::string> options;

    // Evaluate p_expr at this n.  Throws ParseError on malformed input and
    // DomainError when the value leaves [0, 1].
    double resolve_p() const;

    double option_or(const std::string& key, double fallback) const;
    std::string option_or(const std::string& key, const std::string& fallback) const;

    // One "key=value" per line; '#' starts a comment.  Unknown keys become
    // options.  Throws ParseError on malformed lines or replicas < 1.
    static ExperimentSpec parse_text(const std::string& text);

    // Stable one-key-per-line echo of the identity (workers excluded), and
    // the FNV-1a hash of those bytes.
    std::string canonical_text() const;
    uint64_t hash() const;
};

struct ExperimentRow {
    int replica = 0;
    bool failed = false;
    std::string error;
    std::vector<double> values;  // aligned with ExperimentResult::columns
};

// For most experiments a row is a replica; sweep experiments emit one row
// per (grid point, replica) pair and the subtree-count experiment one row
// per epsilon cell, each aggregating `replicas` samples.
struct ExperimentResult {
    ExperimentSpec spec;
    std::vector<std::string> columns;
    std::vector<ExperimentRow> rows;
    std::vector<std::pair<std::string, double>> summary;
    std::vector<std::pair<std::string, std::string>> verdicts;  // pass / fail / info

    int failures() const;
    bool passed() const;  // no verdict says "fail"
    double summary_value(const std::string& key) const;  // DomainError when absent
};

// Byte-stable emission: identical specs (seeds included) give identical
// files for any worker count.
std::string result_to_csv(const ExperimentResult& r);
std::string result_to_json(const ExperimentResult& r);

// Largest common-relation count over vertex pairs of G(n,p), normalized
// against its predicted location alpha and scale beta.
ExperimentResult run_xi_experiment(const ExperimentSpec& spec);

// Exact mu across an (n, p) grid: how far 2^n - mu grows, compared with
// the pair-collision prediction.
ExperimentResult run_second_order_sweep(const ExperimentSpec& spec);

// Isolated-vertex counts inside and outside a typical random subset.
ExperimentResult run_uniqueness_experiment(const ExperimentSpec& spec);

// mu growth across c = np: exact track at small n, certificate and upper
// bound track at large n.
ExperimentResult run_threshold_sweep(const ExperimentSpec& spec);

// Tree components of a fixed size k: count X against its closed form and
// duplicate-type pairs Y.
ExperimentResult run_tree_component_experiment(const ExperimentSpec& spec);

// Mean ln f(T) for subcritical Poisson branching trees over an epsilon
// grid, plus the forest product floor.
ExperimentResult run_gw_experiment(const ExperimentSpec& spec);

// 2-core size law, pendant-subtree certificate mass and the grafted-tree
// model comparison.
ExperimentResult run_anatomy_experiment(const ExperimentSpec& spec);

// Random d-regular graphs: spectral gap, edge concentration in subsets,
// and the comb certificate.
ExperimentResult run_regular_experiment(const ExperimentSpec& spec);

// log2(mu)/n for graphs of bounded maximum degree, random and structured.
ExperimentResult run_bounded_degree_experiment(const ExperimentSpec& spec);

// Dispatch by spec.name.  Throws ParseError for unknown names.
ExperimentResult run_experiment(const ExperimentSpec& spec);

// Scan of 1 + (1-p)^5.4 < 2^(1-2p(1-p)) over (0, 1/2]: a uniform grid plus
// the endpoints 1e-9 and 0.5, with the e^(-5.4p) majorant standing in for
// the left side on (0, 1/3].
struct BoringCheck {
    bool pass = false;
    double worst_margin = 0.0;
    double worst_p = 0.0;
    uint64_t points = 0;
};

BoringCheck check_boring_inequality(long long grid_points);

}  // namespace mulab
