#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mulab/anatomy.hpp"
#include "mulab/errors.hpp"
#include "mulab/experiments.hpp"
#include "mulab/format.hpp"
#include "mulab/graph_io.hpp"
#include "mulab/mu.hpp"
#include "mulab/random_models.hpp"
#include "mulab/rooted_tree.hpp"
#include "mulab/subtree_count.hpp"

namespace {

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw mulab::ParseError("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw mulab::ParseError("cannot open output file: " + path);
    out << content;
}

// One-line echo of the resolved parameters, kept on stderr so stdout stays
// clean for piping.
void echo(const std::string& line) { std::cerr << line << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mu-lab: distinct induced subgraph counts, exact and certified"};
    app.require_subcommand(1);

    int rc = 0;

    std::string in_file;
    std::string out_file;
    uint64_t seed_value = 0, seed_stream = 0;
    int workers = 1;

    // mu exact | sample | bounds
    auto* mu_cmd = app.add_subcommand("mu", "count distinct induced subgraph types");
    mu_cmd->require_subcommand(1);

    int mu_cap = mulab::kMuExactCap;
    auto* mu_exact_cmd =
        mu_cmd->add_subcommand("exact", "enumerate every subset and count types");
    mu_exact_cmd->add_option("file", in_file, "graph6 or edge-list file, - for stdin");
    mu_exact_cmd->add_option("--workers", workers, "worker threads");
    mu_exact_cmd->add_option("--cap", mu_cap, "largest vertex count accepted");
    mu_exact_cmd->add_option("--out", out_file, "output path (default stdout)");
    mu_exact_cmd->callback([&] {
        mulab::Graph g = mulab::parse_graph(read_input(in_file));
        mulab::MuReport r = mulab::mu_exact(g, workers, mu_cap);
        echo("mu exact: n=" + std::to_string(g.vertex_count()) +
             " subsets=" + std::to_string(r.subsets_enumerated) +
             " elapsed=" + mulab::fixed_double(r.elapsed, 3));
        write_output(out_file, r.exact->str() + "\n");
    });

    uint64_t sample_count = 200000;
    int sample_cap = 32;
    auto* mu_sample_cmd =
        mu_cmd->add_subcommand("sample", "lower bounds from uniform random subsets");
    mu_sample_cmd->add_option("file", in_file, "graph6 or edge-list file, - for stdin");
    mu_sample_cmd->add_option("--samples", sample_count, "number of random subsets");
    mu_sample_cmd->add_option("--seed", seed_value, "seed value");
    mu_sample_cmd->add_option("--stream", seed_stream, "seed stream");
    mu_sample_cmd->add_option("--cap", sample_cap, "largest subset canonicalized");
    mu_sample_cmd->add_option("--out", out_file, "output path (default stdout)");
    mu_sample_cmd->callback([&] {
        mulab::Graph g = mulab::parse_graph(read_input(in_file));
        mulab::MuReport r = mulab::mu_sample_lower(g, sample_count,
                                                   {seed_value, seed_stream}, sample_cap);
        echo("mu sample: n=" + std::to_string(g.vertex_count()) +
             " samples=" + std::to_string(sample_count) +
             " seed=" + std::to_string(seed_value));
        write_output(out_file, mulab::mu_report_to_line(r) + "\n");
    });

    double p_hint = -1.0;
    int path_tries = 20, t_cut = 0;
    auto* mu_bounds_cmd =
        mu_cmd->add_subcommand("bounds", "certified lower and upper bounds");
    mu_bounds_cmd->add_option("file", in_file, "graph6 or edge-list file, - for stdin");
    mu_bounds_cmd->add_option("--seed", seed_value, "seed value");
    mu_bounds_cmd->add_option("--stream", seed_stream, "seed stream");
    mu_bounds_cmd->add_option("--p-hint", p_hint, "edge density hint, negative = unset");
    mu_bounds_cmd->add_option("--path-tries", path_tries, "induced path attempts");
    mu_bounds_cmd->add_option("--t", t_cut, "small-component cutoff, 0 = default");
    mu_bounds_cmd->add_option("--out", out_file, "output path (default stdout)");
    mu_bounds_cmd->callback([&] {
        mulab::Graph g = mulab::parse_graph(read_input(in_file));
        std::optional<double> hint;
        if (p_hint >= 0.0) hint = p_hint;
        mulab::MuReport lo = mulab::mu_lower_certificates(g, {seed_value, seed_stream},
                                                          hint, path_tries);
        mulab::MuReport up = mulab::mu_upper_subcritical(g, t_cut);
        mulab::MuReport merged;
        merged.lower_bounds = lo.lower_bounds;
        merged.upper_bounds = up.upper_bounds;
        merged.notes = lo.notes;
        merged.notes.insert(merged.notes.end(), up.notes.begin(), up.notes.end());
        merged.subsets_enumerated = lo.subsets_enumerated + up.subsets_enumerated;
        merged.validate();
        echo("mu bounds: n=" + std::to_string(g.vertex_count()) +
             " seed=" + std::to_string(seed_value));
        write_output(out_file, mulab::mu_report_to_line(merged) + "\n");
    });

    // gen gnp | regular | comb
    auto* gen_cmd = app.add_subcommand("gen", "sample or construct graphs");
    gen_cmd->require_subcommand(1);

    int gen_n = 0, gen_d = 0, gen_teeth = 0, gen_retries = 10000;
    std::string gen_p, gen_format = "graph6";
    auto emit_graph = [&](const mulab::Graph& g) {
        write_output(out_file, gen_format == "edges" ? mulab::to_edge_list(g)
                                                     : mulab::to_graph6(g) + "\n");
    };

    auto* gen_gnp_cmd = gen_cmd->add_subcommand("gnp", "binomial random graph");
    gen_gnp_cmd->add_option("--n", gen_n, "vertex count")->required();
    gen_gnp_cmd->add_option("--p", gen_p, "edge probability: c, c/n or c*ln(n)/n")
        ->required();
    gen_gnp_cmd->add_option("--seed", seed_value, "seed value");
    gen_gnp_cmd->add_option("--stream", seed_stream, "seed stream");
    gen_gnp_cmd->add_option("--format", gen_format, "graph6 or edges")
        ->check(CLI::IsMember({"graph6", "edges"}));
    gen_gnp_cmd->add_option("--out", out_file, "output path (default stdout)");
    gen_gnp_cmd->callback([&] {
        mulab::ExperimentSpec tmp;
        tmp.n = gen_n;
        tmp.p_expr = gen_p;
        double p = tmp.resolve_p();
        echo("gen gnp: n=" + std::to_string(gen_n) + " p=" + mulab::fixed_double(p, 8) +
             " seed=" + std::to_string(seed_value) + " stream=" +
             std::to_string(seed_stream));
        emit_graph(mulab::sample_gnp(gen_n, p, {seed_value, seed_stream}));
    });

    auto* gen_reg_cmd = gen_cmd->add_subcommand("regular", "uniform random regular graph");
    gen_reg_cmd->add_option("--n", gen_n, "vertex count")->required();
    gen_reg_cmd->add_option("--d", gen_d, "degree")->required();
    gen_reg_cmd->add_option("--seed", seed_value, "seed value");
    gen_reg_cmd->add_option("--stream", seed_stream, "seed stream");
    gen_reg_cmd->add_option("--max-retries", gen_retries, "pairing-model retry budget");
    gen_reg_cmd->add_option("--format", gen_format, "graph6 or edges")
        ->check(CLI::IsMember({"graph6", "edges"}));
    gen_reg_cmd->add_option("--out", out_file, "output path (default stdout)");
    gen_reg_cmd->callback([&] {
        echo("gen regular: n=" + std::to_string(gen_n) + " d=" + std::to_string(gen_d) +
             " seed=" + std::to_string(seed_value));
        emit_graph(mulab::sample_regular(gen_n, gen_d, {seed_value, seed_stream},
                                         gen_retries));
    });

    auto* gen_comb_cmd = gen_cmd->add_subcommand("comb", "spine path with one tooth per vertex");
    gen_comb_cmd->add_option("--teeth", gen_teeth, "spine length")->required();
    gen_comb_cmd->add_option("--format", gen_format, "graph6 or edges")
        ->check(CLI::IsMember({"graph6", "edges"}));
    gen_comb_cmd->add_option("--out", out_file, "output path (default stdout)");
    gen_comb_cmd->callback([&] {
        echo("gen comb: teeth=" + std::to_string(gen_teeth));
        emit_graph(mulab::make_comb(gen_teeth));
    });

    // tree count-subtrees
    auto* tree_cmd = app.add_subcommand("tree", "rooted tree utilities");
    tree_cmd->require_subcommand(1);
    auto* tree_count_cmd = tree_cmd->add_subcommand(
        "count-subtrees", "distinct rooted subtrees containing the root");
    tree_count_cmd->add_option("file", in_file,
                               "tree file, one 'node parent' pair per line, - for stdin");
    tree_count_cmd->add_option("--out", out_file, "output path (default stdout)");
    tree_count_cmd->callback([&] {
        mulab::RootedTree t = mulab::tree_from_text(read_input(in_file));
        mulab::SubtreeCount c = mulab::count_subtrees_exact(t);
        echo("tree count-subtrees: nodes=" + std::to_string(t.size()));
        write_output(out_file, "f=" + c.f.str() + " f_plus=" + c.f_plus.str() + "\n");
    });

    // anatomy core | lambda-prime
    auto* anatomy_cmd = app.add_subcommand("anatomy", "sparse graph structure tools");
    anatomy_cmd->require_subcommand(1);

    auto* anatomy_core_cmd =
        anatomy_cmd->add_subcommand("core", "2-core of complex components plus pendant trees");
    anatomy_core_cmd->add_option("file", in_file, "graph6 or edge-list file, - for stdin");
    anatomy_core_cmd->add_option("--out", out_file, "output path (default stdout)");
    anatomy_core_cmd->callback([&] {
        mulab::Graph g = mulab::parse_graph(read_input(in_file));
        mulab::CoreDecomposition dec = mulab::core_decompose(g);
        echo("anatomy core: n=" + std::to_string(g.vertex_count()) +
             " core=" + std::to_string(dec.core_vertices.count()));
        write_output(out_file, mulab::decomposition_to_text(g, dec));
    });

    double lambda_arg = 0.0;
    auto* anatomy_lp_cmd =
        anatomy_cmd->add_subcommand("lambda-prime", "conjugate branching parameter");
    anatomy_lp_cmd->add_option("--lambda", lambda_arg, "offspring mean, must be > 1")
        ->required();
    anatomy_lp_cmd->add_option("--out", out_file, "output path (default stdout)");
    anatomy_lp_cmd->callback([&] {
        write_output(out_file, mulab::fixed_double(mulab::conjugate_lambda(lambda_arg), 6) +
                               "\n");
    });

    // exp <name> --spec <file>
    std::string exp_name, spec_path, exp_format = "csv";
    auto* exp_cmd = app.add_subcommand("exp", "run a seeded experiment from a spec file");
    exp_cmd->add_option("name", exp_name, "experiment name")->required();
    exp_cmd->add_option("--spec", spec_path, "key=value spec file")->required();
    exp_cmd->add_option("--workers", workers, "override the spec worker count");
    exp_cmd->add_option("--seed", seed_value, "override the spec seed value");
    exp_cmd->add_option("--stream", seed_stream, "override the spec seed stream");
    exp_cmd->add_option("--format", exp_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    exp_cmd->add_option("--out", out_file, "output path (default stdout)");
    exp_cmd->callback([&] {
        mulab::ExperimentSpec spec = mulab::ExperimentSpec::parse_text(read_input(spec_path));
        spec.name = exp_name;
        if (exp_cmd->count("--workers")) spec.workers = workers;
        if (exp_cmd->count("--seed")) spec.seed.value = seed_value;
        if (exp_cmd->count("--stream")) spec.seed.stream = seed_stream;
        echo("exp " + spec.name + " resolved spec:");
        std::cerr << spec.canonical_text();
        mulab::ExperimentResult r = mulab::run_experiment(spec);
        write_output(out_file,
                     exp_format == "json" ? mulab::result_to_json(r)
                                          : mulab::result_to_csv(r));
        if (!r.passed()) rc = 1;
    });

    // check boring
    long long grid_points = 1000000;
    auto* check_cmd = app.add_subcommand("check", "closed-form inequality scans");
    check_cmd->require_subcommand(1);
    auto* check_boring_cmd =
        check_cmd->add_subcommand("boring", "scan 1+(1-p)^5.4 < 2^(1-2p(1-p)) on (0, 1/2]");
    check_boring_cmd->add_option("--grid", grid_points, "uniform grid points");
    check_boring_cmd->add_option("--out", out_file, "output path (default stdout)");
    check_boring_cmd->callback([&] {
        mulab::BoringCheck c = mulab::check_boring_inequality(grid_points);
        write_output(out_file,
                     std::string(c.pass ? "pass" : "fail") +
                         " worst_margin=" + mulab::fixed_double(c.worst_margin, 12) +
                         " worst_p=" + mulab::fixed_double(c.worst_p, 12) +
                         " points=" + std::to_string(c.points) + "\n");
        if (!c.pass) rc = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
